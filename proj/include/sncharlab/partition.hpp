#pragma once

// Integer partitions and the combinatorics on Young diagrams used by the
// Murnaghan-Nakayama recursion: hook lengths, beta-sets, t-cores, border
// strips, the p-reduction mu -> mu~, and the M_mu^(k) part-sum statistic.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sncharlab {

// Weakly decreasing positive parts; the empty partition is the unique
// partition of 0.
class Partition {
public:
    Partition() = default;

    // Accepts parts in any order; sorts descending. Rejects nonpositive parts.
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        for (int p : parts_) {
            if (p <= 0) throw std::invalid_argument("Partition: parts must be positive");
            n_ += p;
        }
    }

    // Trusted constructor for parts already sorted weakly decreasing.
    static Partition from_sorted(std::vector<int> parts) {
        Partition out;
        out.parts_ = std::move(parts);
        for (std::size_t i = 0; i < out.parts_.size(); ++i) {
            assert(out.parts_[i] >= 1);
            assert(i == 0 || out.parts_[i - 1] >= out.parts_[i]);
            out.n_ += out.parts_[i];
        }
        return out;
    }

    const std::vector<int>& parts() const { return parts_; }
    long long n() const { return n_; }
    std::size_t rows() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }

    // part size -> multiplicity, ascending by part size
    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int p : parts_) ++m[p];
        return m;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

private:
    std::vector<int> parts_;
    long long n_ = 0;
};

// Canonical order for rows/columns of every table in this library:
// reverse-lexicographic, (n) first, (1,...,1) last.
inline bool revlex_before(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// Streams all partitions of n in reverse-lexicographic order. The visitor
// receives a weakly decreasing parts vector whose storage is reused.
template <typename F>
void for_each_partition(int n, F&& visit) {
    if (n < 0) throw std::invalid_argument("for_each_partition: n must be >= 0");
    std::vector<int> a;
    if (n == 0) {
        visit(static_cast<const std::vector<int>&>(a));
        return;
    }
    a.reserve(static_cast<std::size_t>(n));
    a.push_back(n);
    for (;;) {
        visit(static_cast<const std::vector<int>&>(a));
        // drop trailing ones, decrement the rightmost part > 1, refill greedily
        int rem = 0;
        int k = static_cast<int>(a.size()) - 1;
        while (k >= 0 && a[static_cast<std::size_t>(k)] == 1) {
            ++rem;
            --k;
        }
        if (k < 0) break;
        a.resize(static_cast<std::size_t>(k) + 1);
        --a[static_cast<std::size_t>(k)];
        ++rem;
        const int cap = a[static_cast<std::size_t>(k)];
        while (rem > cap) {
            a.push_back(cap);
            rem -= cap;
        }
        if (rem > 0) a.push_back(rem);
    }
}

inline std::vector<Partition> enumerate_partitions(int n) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const std::vector<int>& parts) {
        out.push_back(Partition::from_sorted(parts));
    });
    return out;
}

inline Partition conjugate(const Partition& lambda) {
    const auto& parts = lambda.parts();
    if (parts.empty()) return Partition{};
    std::vector<int> t(static_cast<std::size_t>(parts[0]));
    for (int c = 0; c < parts[0]; ++c) {
        int count = 0;
        for (int p : parts) {
            if (p > c) ++count;
            else break;
        }
        t[static_cast<std::size_t>(c)] = count;
    }
    return Partition::from_sorted(std::move(t));
}

// hooks[r][c] = arm + leg + 1, one entry per box of the diagram
struct HookTable {
    Partition shape;
    std::vector<std::vector<int>> rows;

    // multiset of all hook lengths, unsorted
    std::vector<int> all() const {
        std::vector<int> out;
        for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
        return out;
    }
};

inline HookTable hook_lengths(const Partition& lambda) {
    HookTable t;
    t.shape = lambda;
    const auto& parts = lambda.parts();
    const Partition conj = conjugate(lambda);
    const auto& cols = conj.parts();
    t.rows.resize(parts.size());
    for (std::size_t r = 0; r < parts.size(); ++r) {
        t.rows[r].resize(static_cast<std::size_t>(parts[r]));
        for (int c = 0; c < parts[r]; ++c)
            t.rows[r][static_cast<std::size_t>(c)] =
                (parts[r] - 1 - c) + (cols[static_cast<std::size_t>(c)] - 1 - static_cast<int>(r)) + 1;
    }
    return t;
}

// First-column hook lengths, descending: beta_i = lambda_i + (rows - 1 - i).
// This is the abacus bead-position set; t-core and strip tests are O(#parts)
// shift queries on it instead of O(#boxes) hook scans.
inline std::vector<int> beta_set(const Partition& lambda) {
    const auto& parts = lambda.parts();
    std::vector<int> beta(parts.size());
    const int L = static_cast<int>(parts.size());
    for (int i = 0; i < L; ++i)
        beta[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)] + (L - 1 - i);
    return beta;
}

namespace detail {
// membership in a descending sorted vector
inline bool contains_desc(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x, std::greater<int>());
}
}  // namespace detail

// True iff no hook length of lambda is divisible by t: for every bead b >= t
// the position b - t is also a bead.
inline bool is_t_core(const Partition& lambda, int t) {
    if (t < 1) throw std::invalid_argument("is_t_core: t must be >= 1");
    const std::vector<int> beta = beta_set(lambda);
    for (int b : beta)
        if (b >= t && !detail::contains_desc(beta, b - t))
            return false;
    return true;
}

// One border-strip removal: the reduced shape, the number of diagram rows the
// strip meets, and the Murnaghan-Nakayama sign (-1)^(height-1).
struct StripRemoval {
    Partition result;
    int height = 0;
    int sign = 0;
};

// All ways to remove a border strip of length t from lambda. Empty iff lambda
// has no hook of length t. A removal moves bead b to the free slot b - t;
// height = 1 + #beads strictly between them.
inline std::vector<StripRemoval> border_strips(const Partition& lambda, int t) {
    if (t < 1) throw std::invalid_argument("border_strips: t must be >= 1");
    std::vector<StripRemoval> out;
    const std::vector<int> beta = beta_set(lambda);
    const int L = static_cast<int>(beta.size());
    for (int i = 0; i < L; ++i) {
        const int b = beta[static_cast<std::size_t>(i)];
        if (b < t || detail::contains_desc(beta, b - t)) continue;
        int between = 0;
        for (int j = i + 1; j < L && beta[static_cast<std::size_t>(j)] > b - t; ++j) ++between;
        std::vector<int> nb = beta;
        nb[static_cast<std::size_t>(i)] = b - t;
        std::sort(nb.begin(), nb.end(), std::greater<int>());
        std::vector<int> parts;
        parts.reserve(nb.size());
        for (int j = 0; j < L; ++j) {
            const int pj = nb[static_cast<std::size_t>(j)] - (L - 1 - j);
            if (pj > 0) parts.push_back(pj);
        }
        StripRemoval rem;
        rem.result = Partition::from_sorted(std::move(parts));
        rem.height = between + 1;
        rem.sign = (between % 2 == 0) ? 1 : -1;
        out.push_back(std::move(rem));
    }
    return out;
}

namespace detail {
// p-reduction on a multiplicity array indexed by part size (size n+1).
// Carries propagate upward; a carried part p*m never exceeds n since the
// parts it merges already sum to p*m <= n.
inline void p_reduce_counts(std::vector<long long>& mult, int p) {
    for (std::size_t m = 1; m < mult.size(); ++m) {
        if (mult[m] >= p) {
            const long long carry = mult[m] / p;
            mult[m] %= p;
            mult[m * static_cast<std::size_t>(p)] += carry;
        }
    }
}
}  // namespace detail

// mu~: repeatedly replace p equal parts m by one part p*m until every
// multiplicity is < p. Order-independent; the carry form below does all
// replacements for one size at once, ascending.
inline Partition p_reduce(const Partition& mu, int p) {
    if (p < 2) throw std::invalid_argument("p_reduce: p must be a prime >= 2");
    if (mu.empty()) return mu;
    const auto n = static_cast<std::size_t>(mu.n());
    std::vector<long long> mult(n + 1, 0);
    for (int part : mu.parts()) ++mult[static_cast<std::size_t>(part)];
    detail::p_reduce_counts(mult, p);
    std::vector<int> parts;
    for (std::size_t m = n; m >= 1; --m)
        for (long long c = 0; c < mult[m]; ++c) parts.push_back(static_cast<int>(m));
    return Partition::from_sorted(std::move(parts));
}

// M_mu^(k) for prime p: the sum of all parts of mu of the form k*p^j, j >= 0.
// k must be coprime to p (for prime p: p must not divide k).
inline long long m_statistic(const Partition& mu, int k, int p) {
    if (k < 1) throw std::invalid_argument("m_statistic: k must be >= 1");
    if (p < 2) throw std::invalid_argument("m_statistic: p must be a prime >= 2");
    if (k % p == 0) throw std::invalid_argument("m_statistic: k must be coprime to p");
    long long sum = 0;
    for (int part : mu.parts()) {
        int m = part;
        while (m % p == 0) m /= p;
        if (m == k) sum += part;
    }
    return sum;
}

}  // namespace sncharlab
