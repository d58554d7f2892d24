#pragma once

// Exact truncated integer power series and the counting functions built on
// them: p(n), t-core counts, q_p, r_{k1..kM;p}, the moment series F_k/G_k,
// the M-statistic distribution h(n,m), and the exact-rational truncated sums
// behind the density bound and its product factorization.

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sncharlab/partition.hpp"

namespace sncharlab {

// Truncated integer power series c_0 + c_1 x + ... + c_N x^N. Arithmetic is
// exact and closed under the truncation; multiplying and then dividing by
// (1 - x^a) is the identity up to N.
class PSeries {
public:
    explicit PSeries(int truncation)
        : coeffs_(static_cast<std::size_t>(truncation >= 0
                      ? truncation + 1
                      : throw std::invalid_argument("PSeries: truncation must be >= 0"))) {}

    static PSeries one(int truncation) {
        PSeries s(truncation);
        s.coeffs_[0] = 1;
        return s;
    }

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }

    const mpz_class& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    mpz_class& coeff(int i) { return coeffs_[static_cast<std::size_t>(i)]; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    PSeries& operator+=(const PSeries& o) {
        check_same_truncation(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    PSeries& operator-=(const PSeries& o) {
        check_same_truncation(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    friend PSeries operator+(PSeries a, const PSeries& b) { return a += b; }
    friend PSeries operator-(PSeries a, const PSeries& b) { return a -= b; }

    // full truncated convolution, O(N^2)
    friend PSeries operator*(const PSeries& a, const PSeries& b) {
        a.check_same_truncation(b);
        const int N = a.truncation();
        PSeries out(N);
        mpz_class term;
        for (int i = 0; i <= N; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; i + j <= N; ++j) {
                if (b[j] == 0) continue;
                term = a[i] * b[j];
                out.coeff(i + j) += term;
            }
        }
        return out;
    }

    // *(1 - x^a), O(N)
    PSeries& mul_one_minus_pow(int a) {
        check_exponent(a);
        for (int i = truncation(); i >= a; --i)
            coeffs_[static_cast<std::size_t>(i)] -= coeffs_[static_cast<std::size_t>(i - a)];
        return *this;
    }

    // /(1 - x^a), O(N)
    PSeries& div_one_minus_pow(int a) {
        check_exponent(a);
        for (int i = a; i <= truncation(); ++i)
            coeffs_[static_cast<std::size_t>(i)] += coeffs_[static_cast<std::size_t>(i - a)];
        return *this;
    }

    friend bool operator==(const PSeries& a, const PSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
    void check_same_truncation(const PSeries& o) const {
        if (coeffs_.size() != o.coeffs_.size())
            throw std::invalid_argument("PSeries: truncation mismatch");
    }
    static void check_exponent(int a) {
        if (a < 1) throw std::invalid_argument("PSeries: exponent must be >= 1");
    }

    std::vector<mpz_class> coeffs_;
};

// p(0..N) by the pentagonal-number recurrence
// p(n) = sum_{k>=1} (-1)^(k-1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
inline PSeries partition_numbers(int N) {
    PSeries p(N);
    p.coeff(0) = 1;
    for (int n = 1; n <= N; ++n) {
        mpz_class acc = 0;
        for (int k = 1;; ++k) {
            const long long g1 = static_cast<long long>(k) * (3LL * k - 1) / 2;
            const long long g2 = static_cast<long long>(k) * (3LL * k + 1) / 2;
            if (g1 > n) break;
            if (k % 2 == 1) {
                acc += p[static_cast<int>(n - g1)];
                if (g2 <= n) acc += p[static_cast<int>(n - g2)];
            } else {
                acc -= p[static_cast<int>(n - g1)];
                if (g2 <= n) acc -= p[static_cast<int>(n - g2)];
            }
        }
        p.coeff(n) = acc;
    }
    return p;
}

// Number of t-core partitions of n for n = 0..N, as the coefficients of
// prod_{m>=1} (1 - x^{tm})^t / (1 - x^m).
inline PSeries tcore_counts(int t, int N) {
    if (t < 1) throw std::invalid_argument("tcore_counts: t must be >= 1");
    PSeries s = PSeries::one(N);
    for (int m = 1; m <= N; ++m) s.div_one_minus_pow(m);
    for (long long tm = t; tm <= N; tm += t)
        for (int rep = 0; rep < t; ++rep) s.mul_one_minus_pow(static_cast<int>(tm));
    return s;
}

// p(n) - (t+1) p(n-t): the exact value of the lower bound on the number of
// t-core partitions of n. May be negative; returned as-is.
inline mpz_class morotti_lower_bound(int t, int n, const PSeries& pn) {
    if (t < 1 || t > n) throw std::invalid_argument("morotti_lower_bound: need 1 <= t <= n");
    if (pn.truncation() < n) throw std::invalid_argument("morotti_lower_bound: series too short");
    return pn[n] - (t + 1) * pn[n - t];
}

inline mpz_class morotti_lower_bound(int t, int n) {
    return morotti_lower_bound(t, n, partition_numbers(n));
}

// q_p(0..N): partitions into powers of p, via prod_{j>=0} 1/(1 - x^{p^j}).
inline PSeries qp_counts(int p, int N) {
    if (p < 2) throw std::invalid_argument("qp_counts: p must be >= 2");
    PSeries s = PSeries::one(N);
    for (long long q = 1; q <= N; q *= p) {
        s.div_one_minus_pow(static_cast<int>(q));
        if (q > N / p) break;  // overflow guard
    }
    return s;
}

namespace detail {
inline void check_ks(const std::vector<int>& ks, int p) {
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] < 1) throw std::invalid_argument("ks must be positive");
        if (ks[i] % p == 0) throw std::invalid_argument("ks must be coprime to p");
        for (std::size_t j = i + 1; j < ks.size(); ++j)
            if (ks[i] == ks[j]) throw std::invalid_argument("ks must be distinct");
    }
}
}  // namespace detail

// r_{k1,...,kM;p}(0..N): partitions into parts not of the form k_i p^j,
// via P(x) * prod_i prod_j (1 - x^{k_i p^j}).
inline PSeries r_counts(const std::vector<int>& ks, int p, int N) {
    if (p < 2) throw std::invalid_argument("r_counts: p must be >= 2");
    detail::check_ks(ks, p);
    PSeries s = partition_numbers(N);
    for (int k : ks)
        for (long long a = k; a <= N; a *= p) {
            s.mul_one_minus_pow(static_cast<int>(a));
            if (a > N / p) break;
        }
    return s;
}

// F_k(x) = sum_{j>=0} k p^j x^{k p^j} / (1 - x^{k p^j}); P*F_k generates
// sum_{mu |- n} M_mu^(k).
inline PSeries fk_series(int k, int p, int N) {
    if (p < 2) throw std::invalid_argument("fk_series: p must be >= 2");
    if (k < 1 || k % p == 0) throw std::invalid_argument("fk_series: k must be coprime to p");
    PSeries s(N);
    for (long long a = k; a <= N; a *= p) {
        for (long long m = a; m <= N; m += a)
            s.coeff(static_cast<int>(m)) += static_cast<long>(a);
        if (a > N / p) break;
    }
    return s;
}

// G_k(x) = F_k(x)^2 + sum_{j>=0} k^2 p^{2j} x^{k p^j} / (1 - x^{k p^j})^2;
// P*G_k generates sum_{mu |- n} (M_mu^(k))^2.
inline PSeries gk_series(int k, int p, int N) {
    const PSeries f = fk_series(k, p, N);
    PSeries s = f * f;
    for (long long a = k; a <= N; a *= p) {
        const mpz_class a2 = mpz_class(static_cast<long>(a)) * static_cast<long>(a);
        for (long long m = a, i = 1; m <= N; m += a, ++i)
            s.coeff(static_cast<int>(m)) += a2 * static_cast<long>(i);
        if (a > N / p) break;
    }
    return s;
}

// coefficient of x^n in a*b without forming the whole product
inline mpz_class convolve_at(const PSeries& a, const PSeries& b, int n) {
    if (n > a.truncation() || n > b.truncation())
        throw std::invalid_argument("convolve_at: n beyond truncation");
    mpz_class acc = 0;
    for (int m = 0; m <= n; ++m) acc += a[m] * b[n - m];
    return acc;
}

// h(n, m) for m = 0..n: the number of partitions of n with M^(k) = m.
// h(n, m) = r_{k;p}(n - m) q_p(m / k) when k | m, else 0. Includes
// h(0, 0) = 1 so that sum_m h(n, m) = p(n) holds at n = 0 too.
inline std::vector<mpz_class> m_distribution(int k, int p, int n) {
    if (n < 0) throw std::invalid_argument("m_distribution: n must be >= 0");
    const PSeries r = r_counts({k}, p, n);
    const PSeries q = qp_counts(p, n / std::max(k, 1));
    std::vector<mpz_class> h(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m)
        if (m % k == 0) h[static_cast<std::size_t>(m)] = r[n - m] * q[m / k];
    return h;
}

// (1/p(n)) sum over l_1..l_M <= cap with k_i | l_i of
// r_{k1..kM;p}(n - sum l_i) prod_i q_p(l_i / k_i), as an exact rational.
// The sum over tuples is the coefficient-wise product of the per-k capped
// series A_i(x) = sum_{l <= cap, k_i | l} q_p(l/k_i) x^l.
inline mpq_class eq41_bound(int n, int p, const std::vector<int>& ks, int cap) {
    if (n < 0 || cap < 0 || cap > n) throw std::invalid_argument("eq41_bound: need 0 <= cap <= n");
    detail::check_ks(ks, p);
    const PSeries q = qp_counts(p, n);
    PSeries prod = PSeries::one(n);
    for (int k : ks) {
        PSeries a(n);
        for (int l = 0; l <= cap; l += k) a.coeff(l) = q[l / k];
        prod = prod * a;
    }
    const PSeries r = r_counts(ks, p, n);
    mpz_class num = 0;
    for (int s = 0; s <= n; ++s) num += prod[s] * r[n - s];
    const PSeries pn = partition_numbers(n);
    mpq_class out(num, pn[n]);
    out.canonicalize();
    return out;
}

// f_p(k) with the threshold replaced by an explicit cap:
// (1/p(n)) sum_{l <= cap, k | l} r_{k;p}(n - l) q_p(l / k).
inline mpq_class fp_exact(int n, int k, int p, int cap) {
    return eq41_bound(n, p, {k}, cap);
}

// eq41_bound(n, p, ks, cap) / prod_i fp_exact(n, k_i, p, cap). The lemma
// asserts this tends to 1; experiments check the trend.
inline mpq_class lemma41_ratio(int n, int p, const std::vector<int>& ks, int cap) {
    if (ks.size() < 2) throw std::invalid_argument("lemma41_ratio: need at least two ks");
    const mpq_class joint = eq41_bound(n, p, ks, cap);
    mpq_class denom = 1;
    for (int k : ks) {
        const mpq_class f = fp_exact(n, k, p, cap);
        if (f == 0) throw std::domain_error("lemma41_ratio: degenerate, fp_exact = 0");
        denom *= f;
    }
    mpq_class out = joint / denom;
    out.canonicalize();
    return out;
}

}  // namespace sncharlab
