#pragma once

// Experiment drivers: exhaustive verification of the two character
// congruence/vanishing lemmas, exact and certificate-based divisibility
// densities, zero densities, the moment cross-checks, and the trend suite
// behind the density statements.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "sncharlab/asymptotics.hpp"
#include "sncharlab/character.hpp"
#include "sncharlab/partition.hpp"
#include "sncharlab/sampler.hpp"
#include "sncharlab/series.hpp"

namespace sncharlab {

enum class DensityMethod { exact_table, certificate_exact, certificate_sampled };

inline const char* to_string(DensityMethod m) {
    switch (m) {
        case DensityMethod::exact_table: return "exact-table";
        case DensityMethod::certificate_exact: return "certificate-exact";
        case DensityMethod::certificate_sampled: return "certificate-sampled";
    }
    return "?";
}

// Counts over the p(n) x p(n) table for one (n, p). Fields that a method
// does not measure stay disengaged.
struct DensityReport {
    int n = 0;
    std::optional<int> p;
    mpz_class total_entries;
    std::optional<mpz_class> divisible_count;
    std::optional<mpz_class> zero_count;
    std::optional<mpz_class> certified_count;
    DensityMethod method = DensityMethod::exact_table;
    // set only for certificate-sampled reports
    std::optional<DensityEstimate> sampled;

    // headline density of the method: divisible, else certified, else sample
    double density() const {
        const double total = total_entries.get_d();
        if (divisible_count) return divisible_count->get_d() / total;
        if (certified_count) return certified_count->get_d() / total;
        if (sampled) return sampled->estimate;
        return 0.0;
    }
};

// exact and generating-function routes to the first two moments of M^(k)
struct MomentReport {
    int n = 0;
    int k = 1;
    int p = 2;
    mpz_class exact_sum, exact_sum_sq;  // enumeration over mu |- n
    mpz_class gf_sum, gf_sum_sq;        // (P*F_k)[n], (P*G_k)[n]
    double main_term = 0.0;             // p(n) * (sqrt6/(2 pi log p)) sqrt(n) log n
    double main_term_sq = 0.0;
    double ratio = 0.0;     // exact_sum / main_term
    double ratio_sq = 0.0;  // exact_sum_sq / main_term_sq
};

struct ExperimentBudgets {
    int lemma21_max_n = 12;
    int lemma22_max_n = 14;
    int exact_table_max_n = 14;  // exact-value tables (zeros)
    int modp_table_max_n = 16;   // residue tables (divisibility)
    int certified_max_n = 70;
};

// Lemma: replacing p parts of size m by one part pm preserves chi mod p.
// Checks every mu |- n, every size with multiplicity >= p, every lambda.
// Returns the number of violating entries (expected 0).
inline long long verify_lemma21(const CharTable& table, int p) {
    if (table.modulus) throw std::invalid_argument("verify_lemma21: needs an exact table");
    long long violations = 0;
    const std::size_t count = table.index.size();
    for (std::size_t mi = 0; mi < count; ++mi) {
        const Partition& mu = table.index[mi];
        for (const auto& [m, mult] : mu.multiplicities()) {
            if (mult < p) continue;
            // single move: p copies of m -> one part p*m
            std::vector<int> moved;
            moved.reserve(mu.rows());
            int removed = 0;
            for (int part : mu.parts()) {
                if (part == m && removed < p) {
                    ++removed;
                    continue;
                }
                moved.push_back(part);
            }
            moved.push_back(m * p);
            const std::size_t ni = table.index_of(Partition(std::move(moved)));
            for (std::size_t li = 0; li < count; ++li) {
                const mpz_class diff = table.value(li, mi) - table.value(li, ni);
                if (diff % p != 0) ++violations;
            }
        }
    }
    return violations;
}

inline long long verify_lemma21(int n, int p, const TableOptions& opts = {}) {
    return verify_lemma21(character_table(n, std::nullopt, opts), p);
}

// Lemma: chi^lambda_mu = 0 whenever mu has a part t and lambda is a t-core.
// Counts violating (t, lambda, mu) triples (expected 0).
inline long long verify_lemma22(const CharTable& table) {
    if (table.modulus) throw std::invalid_argument("verify_lemma22: needs an exact table");
    const int n = table.n;
    const std::size_t count = table.index.size();
    long long violations = 0;
    for (int t = 1; t <= n; ++t) {
        std::vector<std::size_t> cores;
        for (std::size_t li = 0; li < count; ++li)
            if (is_t_core(table.index[li], t)) cores.push_back(li);
        if (cores.empty()) continue;
        for (std::size_t mi = 0; mi < count; ++mi) {
            const auto& parts = table.index[mi].parts();
            if (std::find(parts.begin(), parts.end(), t) == parts.end()) continue;
            for (std::size_t li : cores)
                if (table.value(li, mi) != 0) ++violations;
        }
    }
    return violations;
}

inline long long verify_lemma22(int n, const TableOptions& opts = {}) {
    return verify_lemma22(character_table(n, std::nullopt, opts));
}

// Divisible (and, within the exact budget, zero) entry counts from a full
// table. Uses one exact table when n allows, else a residue table.
inline DensityReport exact_density_report(int n, int p, const ExperimentBudgets& budgets = {},
                                          const TableOptions& opts = {}) {
    if (n > budgets.modp_table_max_n)
        throw budget_exceeded("exact_density_report: n exceeds the residue-table budget", 0);
    DensityReport rep;
    rep.n = n;
    rep.p = p;
    rep.method = DensityMethod::exact_table;
    const PSeries pn = partition_numbers(n);
    rep.total_entries = pn[n] * pn[n];

    mpz_class divisible = 0, zeros = 0;
    if (n <= budgets.exact_table_max_n) {
        const CharTable table = character_table(n, std::nullopt, opts);
        for (const CharColumn& col : table.columns)
            for (const mpz_class& v : col.values) {
                if (v % p == 0) ++divisible;
                if (v == 0) ++zeros;
            }
        rep.zero_count = zeros;
    } else {
        const CharTable table = character_table(n, p, opts);
        for (const CharColumn& col : table.columns)
            for (const mpz_class& v : col.values)
                if (v == 0) ++divisible;
    }
    rep.divisible_count = divisible;
    return rep;
}

// Certificate count: a pair (lambda, mu) is certified divisible-by-p when
// lambda is a t-core for t the largest part of mu~. Streams over mu and
// multiplies by the exact t-core counts, so it reaches far beyond the table
// budgets. A valid lower bound on the divisible count.
inline DensityReport certified_density_report(int n, int p,
                                              const ExperimentBudgets& budgets = {}) {
    if (n > budgets.certified_max_n)
        throw budget_exceeded("certified_density_report: n exceeds the certificate budget", 0);
    DensityReport rep;
    rep.n = n;
    rep.p = p;
    rep.method = DensityMethod::certificate_exact;
    const PSeries pn = partition_numbers(n);
    rep.total_entries = pn[n] * pn[n];

    // mu count by largest part of the p-reduction
    std::vector<long long> mu_by_t(static_cast<std::size_t>(n) + 1, 0);
    std::vector<long long> mult(static_cast<std::size_t>(n) + 1, 0);
    for_each_partition(n, [&](const std::vector<int>& parts) {
        std::fill(mult.begin(), mult.end(), 0);
        for (int part : parts) ++mult[static_cast<std::size_t>(part)];
        detail::p_reduce_counts(mult, p);
        for (int m = n; m >= 0; --m)
            if (m == 0 || mult[static_cast<std::size_t>(m)] > 0) {
                ++mu_by_t[static_cast<std::size_t>(m)];
                break;
            }
    });

    mpz_class certified = 0;
    for (int t = 1; t <= n; ++t) {
        if (mu_by_t[static_cast<std::size_t>(t)] == 0) continue;
        certified +=
            tcore_counts(t, n)[n] * static_cast<long>(mu_by_t[static_cast<std::size_t>(t)]);
    }
    rep.certified_count = certified;
    return rep;
}

// zero entries of the exact table, recorded for the trend table
inline DensityReport zeros_report(int n, const ExperimentBudgets& budgets = {},
                                  const TableOptions& opts = {}) {
    if (n > budgets.exact_table_max_n)
        throw budget_exceeded("zeros_report: n exceeds the exact-table budget", 0);
    DensityReport rep;
    rep.n = n;
    rep.method = DensityMethod::exact_table;
    const PSeries pn = partition_numbers(n);
    rep.total_entries = pn[n] * pn[n];
    const CharTable table = character_table(n, std::nullopt, opts);
    mpz_class zeros = 0;
    for (const CharColumn& col : table.columns)
        for (const mpz_class& v : col.values)
            if (v == 0) ++zeros;
    rep.zero_count = zeros;
    return rep;
}

// Monte-Carlo certificate density wrapped as a report.
inline DensityReport sampled_density_report(int n, int p, long long samples,
                                            std::uint64_t seed) {
    DensityReport rep;
    rep.n = n;
    rep.p = p;
    rep.method = DensityMethod::certificate_sampled;
    const PSeries pn = partition_numbers(n);
    rep.total_entries = pn[n] * pn[n];
    rep.sampled = estimate_certified_density(n, p, samples, seed);
    return rep;
}

// Both routes to the first two moments of M^(k) over mu |- n. The
// enumeration and generating-function values must agree exactly; a mismatch
// is a defect, not a report.
inline MomentReport moment_crosscheck(int n, int k, int p) {
    MomentReport rep;
    rep.n = n;
    rep.k = k;
    rep.p = p;
    long sum = 0;
    mpz_class sum_sq = 0;
    for (const Partition& mu : enumerate_partitions(n)) {
        const long m = static_cast<long>(m_statistic(mu, k, p));
        sum += m;
        sum_sq += mpz_class(m) * m;
    }
    rep.exact_sum = sum;
    rep.exact_sum_sq = sum_sq;
    const PSeries pser = partition_numbers(n);
    rep.gf_sum = convolve_at(pser, fk_series(k, p, n), n);
    rep.gf_sum_sq = convolve_at(pser, gk_series(k, p, n), n);
    if (rep.gf_sum != rep.exact_sum || rep.gf_sum_sq != rep.exact_sum_sq)
        throw std::logic_error("moment_crosscheck: enumeration and series routes disagree");
    if (n >= 2) {
        rep.main_term = pser[n].get_d() * moment_main_term(n, p);
        rep.main_term_sq = pser[n].get_d() * moment_main_term(n, p) * moment_main_term(n, p);
        rep.ratio = rep.exact_sum.get_d() / rep.main_term;
        rep.ratio_sq = rep.exact_sum_sq.get_d() / rep.main_term_sq;
    }
    return rep;
}

// One trend row per n: whichever densities fit their budgets, plus the
// sampled certificate estimate (always available).
struct TrendRow {
    int n = 0;
    int p = 2;
    std::optional<double> exact_divisible_density;
    std::optional<double> certified_density;
    std::optional<double> zero_density;
    double sampled_density = 0.0;
    double sampled_stderr = 0.0;
};

inline std::vector<TrendRow> trend_suite(int n_min, int n_max, int p,
                                         const ExperimentBudgets& budgets = {},
                                         long long samples = 2000, std::uint64_t seed = 1,
                                         const TableOptions& opts = {}) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("trend_suite: bad range");
    std::vector<TrendRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        TrendRow row;
        row.n = n;
        row.p = p;
        if (n <= budgets.modp_table_max_n) {
            const DensityReport d = exact_density_report(n, p, budgets, opts);
            row.exact_divisible_density = d.density();
            if (d.zero_count) row.zero_density = d.zero_count->get_d() / d.total_entries.get_d();
        }
        if (n <= budgets.certified_max_n)
            row.certified_density = certified_density_report(n, p, budgets).density();
        const DensityEstimate est = estimate_certified_density(n, p, samples, seed);
        row.sampled_density = est.estimate;
        row.sampled_stderr = est.stderr_;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace sncharlab
