#pragma once

// Irreducible S_n character values chi^lambda_mu by the Murnaghan-Nakayama
// recursion, exact (arbitrary precision) or as residues mod a prime. Full
// tables are built column by column; columns are independent and distributed
// across worker threads, each owning its memo store.

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sncharlab/errors.hpp"
#include "sncharlab/partition.hpp"

namespace sncharlab {

// One character value: exact, or a residue in [0, p) tagged with its modulus
// so values from different moduli cannot be mixed silently.
struct CharValue {
    mpz_class value;
    std::optional<int> modulus;

    bool is_residue() const { return modulus.has_value(); }

    friend bool operator==(const CharValue& a, const CharValue& b) {
        return a.value == b.value && a.modulus == b.modulus;
    }
};

namespace detail {

// two bytes per part, little endian; keys are unique per partition
inline std::string pack_parts(const std::vector<int>& parts) {
    std::string key;
    key.reserve(parts.size() * 2);
    for (int p : parts) {
        key.push_back(static_cast<char>(p & 0xff));
        key.push_back(static_cast<char>((p >> 8) & 0xff));
    }
    return key;
}

}  // namespace detail

// Murnaghan-Nakayama evaluator for one fixed cycle type mu. Strips for the
// parts of mu are removed in weakly decreasing order (largest prunes
// hardest); memoization is keyed by (remaining shape, #parts consumed) and
// shared across every lambda evaluated against this mu.
class MnEvaluator {
public:
    MnEvaluator(const Partition& mu, std::optional<int> modulus,
                std::atomic<std::size_t>* memo_bytes = nullptr,
                std::size_t memo_limit = SIZE_MAX)
        : MnEvaluator(mu.parts(), modulus, memo_bytes, memo_limit) {}

    // explicit consumption order for the parts of mu; the value of chi does
    // not depend on it (asserted as a property in the tests)
    MnEvaluator(std::vector<int> mu_parts_in_order, std::optional<int> modulus,
                std::atomic<std::size_t>* memo_bytes = nullptr,
                std::size_t memo_limit = SIZE_MAX)
        : mu_parts_(std::move(mu_parts_in_order)),
          modulus_(modulus),
          memo_bytes_(memo_bytes),
          memo_limit_(memo_limit) {
        memo_.resize(mu_parts_.size() + 1);
    }

    // chi^lambda_mu; requires |lambda| = |mu|
    mpz_class eval(const Partition& lambda) {
        if (lambda.n() != total_of_mu())
            throw std::invalid_argument("chi: lambda and mu must partition the same n");
        return walk(lambda, 0);
    }

    std::optional<int> modulus() const { return modulus_; }

    std::size_t memo_entries() const {
        std::size_t s = 0;
        for (const auto& level : memo_) s += level.size();
        return s;
    }

private:
    long long total_of_mu() const {
        long long s = 0;
        for (int p : mu_parts_) s += p;
        return s;
    }

    mpz_class walk(const Partition& shape, std::size_t depth) {
        if (depth == mu_parts_.size()) return 1;  // shape is empty here
        auto& level = memo_[depth];
        const std::string key = detail::pack_parts(shape.parts());
        if (auto it = level.find(key); it != level.end()) return it->second;

        mpz_class acc = 0;
        for (const StripRemoval& rem : border_strips(shape, mu_parts_[depth])) {
            if (rem.sign > 0)
                acc += walk(rem.result, depth + 1);
            else
                acc -= walk(rem.result, depth + 1);
        }
        if (modulus_) {
            acc %= *modulus_;
            if (acc < 0) acc += *modulus_;
        }
        if (memo_bytes_) {
            const std::size_t approx = key.size() + 48;
            if (memo_bytes_->fetch_add(approx) + approx > memo_limit_)
                throw budget_exceeded("character table memo budget exceeded", 0);
        }
        level.emplace(key, acc);
        return acc;
    }

    std::vector<int> mu_parts_;
    std::optional<int> modulus_;
    std::vector<std::unordered_map<std::string, mpz_class>> memo_;
    std::atomic<std::size_t>* memo_bytes_;
    std::size_t memo_limit_;
};

inline CharValue chi(const Partition& lambda, const Partition& mu) {
    MnEvaluator ev(mu, std::nullopt);
    return CharValue{ev.eval(lambda), std::nullopt};
}

inline CharValue chi_mod(const Partition& lambda, const Partition& mu, int p) {
    if (p < 2) throw std::invalid_argument("chi_mod: modulus must be a prime >= 2");
    MnEvaluator ev(mu, p);
    return CharValue{ev.eval(lambda), p};
}

// One table column: values chi^lambda_mu for every lambda |- n in canonical
// reverse-lexicographic order.
struct CharColumn {
    int n = 0;
    Partition mu;
    std::optional<int> modulus;
    std::vector<mpz_class> values;

    CharValue at(std::size_t lambda_index) const {
        return CharValue{values[lambda_index], modulus};
    }
};

inline CharColumn character_column(const Partition& mu, std::optional<int> modulus) {
    CharColumn col;
    col.n = static_cast<int>(mu.n());
    col.mu = mu;
    col.modulus = modulus;
    MnEvaluator ev(mu, modulus);
    for (const Partition& lambda : enumerate_partitions(col.n))
        col.values.push_back(ev.eval(lambda));
    return col;
}

struct TableOptions {
    int threads = 0;                  // 0 = hardware concurrency
    std::size_t memo_budget_bytes = 0;  // 0 = unlimited
};

struct CharTable {
    int n = 0;
    std::optional<int> modulus;
    std::vector<Partition> index;     // canonical revlex order, shared by rows and columns
    std::vector<CharColumn> columns;  // one per mu, in canonical order

    const mpz_class& value(std::size_t lambda_index, std::size_t mu_index) const {
        return columns[mu_index].values[lambda_index];
    }

    // position of a partition in the canonical order
    std::size_t index_of(const Partition& part) const {
        auto it = std::lower_bound(index.begin(), index.end(), part,
                                   [](const Partition& a, const Partition& b) {
                                       return revlex_before(a.parts(), b.parts());
                                   });
        if (it == index.end() || !(*it == part))
            throw std::invalid_argument("CharTable: partition not in index");
        return static_cast<std::size_t>(it - index.begin());
    }
};

// Full p(n) x p(n) table. Columns are computed independently and distributed
// across threads; each worker owns its memo. With a memo budget configured,
// exceeding it raises budget_exceeded carrying the number of finished columns.
inline CharTable character_table(int n, std::optional<int> modulus = std::nullopt,
                                 const TableOptions& opts = {}) {
    if (n < 0) throw std::invalid_argument("character_table: n must be >= 0");
    CharTable table;
    table.n = n;
    table.modulus = modulus;
    table.index = enumerate_partitions(n);
    const std::size_t cols = table.index.size();
    table.columns.resize(cols);

    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, static_cast<int>(cols));

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<std::size_t> memo_bytes{0};
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));

    auto worker = [&](std::size_t worker_id) {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cols || failed.load()) return;
                CharColumn col;
                col.n = n;
                col.mu = table.index[i];
                col.modulus = modulus;
                col.values.reserve(cols);
                MnEvaluator ev(col.mu, modulus,
                               opts.memo_budget_bytes ? &memo_bytes : nullptr,
                               opts.memo_budget_bytes ? opts.memo_budget_bytes : SIZE_MAX);
                for (const Partition& lambda : table.index)
                    col.values.push_back(ev.eval(lambda));
                table.columns[i] = std::move(col);
                done.fetch_add(1);
            }
        } catch (...) {
            errors[worker_id] = std::current_exception();
            failed.store(true);
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, static_cast<std::size_t>(t));
        for (auto& th : pool) th.join();
    }

    for (const auto& err : errors) {
        if (!err) continue;
        try {
            std::rethrow_exception(err);
        } catch (const budget_exceeded& e) {
            throw budget_exceeded(std::string(e.what()) + " after " +
                                      std::to_string(done.load()) + " of " +
                                      std::to_string(cols) + " columns",
                                  done.load());
        }
    }
    return table;
}

// |lambda|! / prod(hook lengths); equals chi(lambda, (1,...,1)).
inline mpz_class degree(const Partition& lambda) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(lambda.n()));
    for (int h : hook_lengths(lambda).all()) num /= h;
    return num;
}

// z_mu = prod over part sizes m with multiplicity a_m of m^{a_m} a_m!.
inline mpz_class centralizer_size(const Partition& mu) {
    mpz_class z = 1;
    for (const auto& [m, a] : mu.multiplicities()) {
        mpz_class mp;
        mpz_ui_pow_ui(mp.get_mpz_t(), static_cast<unsigned long>(m),
                      static_cast<unsigned long>(a));
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(a));
        z *= mp * fact;
    }
    return z;
}

}  // namespace sncharlab
