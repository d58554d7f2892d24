#pragma once

// Floating-point evaluation of the closed-form asymptotics: Rademacher's
// first term for p(n), the t-core fraction bound, the M-statistic main term,
// direct evaluation of F_k at e^{-t}, Mahler's formula for q_p, the
// Erdos-Lehner largest-part law, the leading-digit predicate, g_p, the
// critical-prime sign scan, and the exact circle-covering check for
// k = 1, 3, 5. Every O(.) term is dropped; exact oracles in the tests and
// acceptance suite measure what was dropped.

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sncharlab/series.hpp"

namespace sncharlab {

// first term of Rademacher's series: e^{pi sqrt(2n/3)} / (4 sqrt(3) n)
inline double rademacher_estimate(long long n) {
    if (n < 1) throw std::invalid_argument("rademacher_estimate: n must be >= 1");
    const double nn = static_cast<double>(n);
    return std::exp(M_PI * std::sqrt(2.0 * nn / 3.0)) / (4.0 * std::sqrt(3.0) * nn);
}

// lower bound on the fraction of partitions of n that are t-cores:
// 1 - (t+1) p(n-t) / p(n), with exact p-values. May be negative.
inline double tcore_fraction_bound(int n, int t, const PSeries& pn) {
    if (t < 1 || t > n) throw std::invalid_argument("tcore_fraction_bound: need 1 <= t <= n");
    mpq_class frac(mpz_class((t + 1) * pn[n - t]), pn[n]);
    frac.canonicalize();
    return 1.0 - frac.get_d();
}

inline double tcore_fraction_bound(int n, int t) {
    return tcore_fraction_bound(n, t, partition_numbers(n));
}

// average size of M_mu^(k): (sqrt(6) / (2 pi log p)) sqrt(n) log n
inline double moment_main_term(long long n, int p) {
    if (n < 2) throw std::invalid_argument("moment_main_term: n must be >= 2");
    if (p < 2) throw std::invalid_argument("moment_main_term: p must be >= 2");
    const double nn = static_cast<double>(n);
    return std::sqrt(6.0) / (2.0 * M_PI * std::log(static_cast<double>(p))) *
           std::sqrt(nn) * std::log(nn);
}

// F_k(e^{-t}) = sum_{j>=0} k p^j e^{-t k p^j} / (1 - e^{-t k p^j}), summed
// until a term drops below 1e-15 of the running sum (terms decay doubly
// exponentially in j once t k p^j > 1).
inline double fk_numeric(int k, int p, double t) {
    if (!(t > 0)) throw std::invalid_argument("fk_numeric: t must be > 0");
    if (k < 1 || p < 2 || k % p == 0) throw std::invalid_argument("fk_numeric: bad k, p");
    double sum = 0.0;
    for (double a = static_cast<double>(k);; a *= p) {
        const double e = std::exp(-t * a);
        if (e >= 1.0) throw std::domain_error("fk_numeric: t too small for double range");
        const double term = a * e / (1.0 - e);
        sum += term;
        if (term < 1e-15 * sum || e == 0.0) break;
    }
    return sum;
}

// Mahler: q_p(n) ~ exp( (1/(2 log p)) (log((n/p)/log(n/p)))^2
//                      + (1/2 + 1/log p + log log p / log p) log n ).
inline double mahler_estimate(int p, long long n) {
    if (p < 2) throw std::invalid_argument("mahler_estimate: p must be >= 2");
    if (n <= p) throw std::invalid_argument("mahler_estimate: requires n > p");
    const double lp = std::log(static_cast<double>(p));
    const double np = static_cast<double>(n) / p;
    const double inner = std::log(np / std::log(np));
    const double lead = inner * inner / (2.0 * lp);
    const double second = (0.5 + 1.0 / lp + std::log(lp) / lp) * std::log(static_cast<double>(n));
    return std::exp(lead + second);
}

// Erdos-Lehner law: a random partition of n has a part of size >= threshold
// with probability 1 - e^{-e^{-M}}. The middle term carries sqrt(n) (the
// flavor without it is not dimensionally consistent with the others).
struct ErdosLehnerPoint {
    double threshold = 0.0;
    double prob = 0.0;
};

inline ErdosLehnerPoint erdos_lehner(long long n, double M) {
    if (n < 2) throw std::invalid_argument("erdos_lehner: n must be >= 2");
    const double s6 = std::sqrt(6.0);
    const double rn = std::sqrt(static_cast<double>(n));
    ErdosLehnerPoint out;
    out.threshold = s6 / (2.0 * M_PI) * rn * std::log(static_cast<double>(n)) +
                    s6 / M_PI * std::log(s6 / M_PI) * rn + s6 / M_PI * M * rn;
    out.prob = 1.0 - std::exp(-std::exp(-M));
    return out;
}

// floor(log_p(Mval / k)) >= log_p((1 + gamma) (sqrt6 / 2pi) sqrt(n) log n / k),
// i.e. k p^{jmax} >= threshold with jmax the leading base-p digit position of
// Mval / k. When true, the p-reduction of any mu with this M-statistic has a
// part >= threshold (largest base-p digit of Mval/k is nonzero).
inline bool eq21_predicate(long long Mval, int k, int p, double gamma, long long n) {
    if (Mval < 0 || k < 1 || p < 2) throw std::invalid_argument("eq21_predicate: bad inputs");
    if (Mval == 0) return false;
    const double threshold = (1.0 + gamma) * std::sqrt(6.0) / (2.0 * M_PI) *
                             std::sqrt(static_cast<double>(n)) *
                             std::log(static_cast<double>(n));
    long long lead = k;  // k * p^jmax with p^jmax <= Mval / k
    while (lead <= Mval / p) lead *= p;
    if (lead > Mval) return false;  // Mval < k: no digit at all
    return static_cast<double>(lead) >= threshold;
}

// inputs of g_p; t0 = pi / sqrt(6 m) is kept with its m for reporting
struct GpParams {
    int p = 2;
    double gamma = 1.0;
    double eps = 0.0;
    double delta = 0.0;
    double t0 = 0.0;
    long long m = 0;
};

// g_p(gamma, eps) = ((1/4 + eps)(1 + log(2 gamma / (p (1 + 4 eps)))
//                    + log log p)) / log p - gamma / 2
inline double g_p(const GpParams& params) {
    if (!(params.gamma > 0)) throw std::invalid_argument("g_p: gamma must be > 0");
    if (params.p < 2 || params.eps < 0 || params.eps > 0.25)
        throw std::invalid_argument("g_p: need p >= 2 and eps in [0, 1/4]");
    const double lp = std::log(static_cast<double>(params.p));
    return (0.25 + params.eps) *
               (1.0 + std::log(2.0 * params.gamma / (params.p * (1.0 + 4.0 * params.eps))) +
                std::log(lp)) /
               lp -
           params.gamma / 2.0;
}

// sup over eps in [0, 1/4] of g_p(1 + delta, eps), attained at eps = 0:
// -1/2 + (1 - 2 delta log p - log(p / (2 - 2 delta)) + log log p) / (4 log p)
inline double gp_sup_at_eps0(int p, double delta) {
    if (p < 2 || delta < 0 || delta >= 1) throw std::invalid_argument("gp_sup_at_eps0: bad inputs");
    const double lp = std::log(static_cast<double>(p));
    return -0.5 + (1.0 - 2.0 * delta * lp - std::log(p / (2.0 - 2.0 * delta)) + std::log(lp)) /
                      (4.0 * lp);
}

// Sign of 1 - 2 delta log p - log(p / (2 - 2 delta)) + log log p for each
// prime p <= 50. Positive exactly on {2,3,5,7,11,13} as delta -> 0+.
inline std::map<int, int> critical_prime_check(double delta) {
    if (delta < 0 || delta >= 1)
        throw std::invalid_argument("critical_prime_check: need 0 <= delta < 1");
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::map<int, int> signs;
    for (int p : primes) {
        const double lp = std::log(static_cast<double>(p));
        const double v = 1.0 - 2.0 * delta * lp - std::log(p / (2.0 - 2.0 * delta)) + std::log(lp);
        signs[p] = v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    return signs;
}

// True iff the arcs [{log_p k}, {log_p k} + bound] mod 1 cover the circle.
// Exact interval bookkeeping: split wrapping arcs, sort, sweep for gaps.
inline bool circle_covered_by_arcs(const std::vector<double>& anchors, double bound) {
    if (bound >= 1.0) return true;
    if (bound <= 0.0 || anchors.empty()) return false;
    std::vector<std::pair<double, double>> segs;
    for (double a : anchors) {
        double start = a - std::floor(a);
        double end = start + bound;
        if (end <= 1.0) {
            segs.emplace_back(start, end);
        } else {
            segs.emplace_back(start, 1.0);
            segs.emplace_back(0.0, end - 1.0);
        }
    }
    std::sort(segs.begin(), segs.end());
    if (segs.front().first > 0.0) return false;
    double reach = segs.front().second;
    for (std::size_t i = 1; i < segs.size(); ++i) {
        if (segs[i].first > reach) return false;
        reach = std::max(reach, segs[i].second);
    }
    return reach >= 1.0;
}

// Covering step of the p = 2 argument: every r in [0,1) satisfies
// {r - log2 k} <= log2((1/log2 - 1/100)/(1 + 1/100)) for some k in ks.
inline bool covering_check_p2(const std::vector<int>& ks, double bound) {
    std::vector<double> anchors;
    anchors.reserve(ks.size());
    for (int k : ks) anchors.push_back(std::log2(static_cast<double>(k)));
    return circle_covered_by_arcs(anchors, bound);
}

inline double covering_bound_p2() {
    return std::log2((1.0 / std::log(2.0) - 0.01) / 1.01);
}

inline bool covering_check_p2() { return covering_check_p2({1, 3, 5}, covering_bound_p2()); }

// Pairing of an estimate with the exact value it approximates.
struct AsymptoticReport {
    std::string quantity;
    mpz_class exact;
    bool has_exact = false;
    double estimate = 0.0;
    double relative_error = 0.0;

    static AsymptoticReport make(std::string quantity, const mpz_class& exact, double estimate) {
        AsymptoticReport r;
        r.quantity = std::move(quantity);
        r.exact = exact;
        r.has_exact = true;
        r.estimate = estimate;
        if (exact != 0) r.relative_error = std::abs(estimate - exact.get_d()) / exact.get_d();
        return r;
    }
};

}  // namespace sncharlab
