#pragma once

// Exactly uniform random partitions of n by part-multiplicity Boltzmann
// sampling at x = e^{-pi/sqrt(6n)} with rejection. Multiplicities of parts
// >= 2 are geometric with ratio x^j; the part-1 multiplicity is set to the
// deficit n - S and the attempt is kept with probability x^{n-S}, which
// gives every partition of n the same weight x^n. Part sizes with zero
// multiplicity are skipped in bulk by thinned geometric jumps, so an attempt
// costs O(#distinct parts) draws rather than O(n).
//
// RNG: SplitMix64 (Steele-Lea-Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014), fixed increment 0x9e3779b97f4a7c15. All
// randomness in this module flows through it, so a (seed, n) pair pins the
// byte-exact output stream.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "sncharlab/asymptotics.hpp"
#include "sncharlab/errors.hpp"
#include "sncharlab/partition.hpp"
#include "sncharlab/series.hpp"

namespace sncharlab {

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // disjoint stream for a worker: two mixing rounds over (seed, index)
    static SplitMix64 for_worker(std::uint64_t seed, std::uint64_t worker_index) {
        SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (worker_index + 1)));
        const std::uint64_t s = g.next();
        return SplitMix64(s);
    }
};

struct SamplerConfig {
    long long n = 1;
    std::uint64_t seed = 0;
    long long max_rejections = 1'000'000;
};

class PartitionSampler {
public:
    explicit PartitionSampler(const SamplerConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
        if (cfg.n < 1) throw std::invalid_argument("PartitionSampler: n must be >= 1");
        if (cfg.max_rejections < 1)
            throw std::invalid_argument("PartitionSampler: max_rejections must be >= 1");
        log_x_ = -M_PI / std::sqrt(6.0 * static_cast<double>(cfg.n));
    }

    // multiplicity view of one uniform sample: (part size, multiplicity),
    // descending by part size
    std::vector<std::pair<long long, long long>> next_multiplicities() {
        for (long long attempt = 1; attempt <= cfg_.max_rejections; ++attempt) {
            scratch_.clear();
            long long ones = 0;
            if (try_attempt(ones)) {
                ++accepted_;
                std::reverse(scratch_.begin(), scratch_.end());
                if (ones > 0) scratch_.emplace_back(1, ones);
                return scratch_;
            }
        }
        throw sampler_exhausted("PartitionSampler: rejection budget exhausted",
                                cfg_.max_rejections);
    }

    Partition next() {
        std::vector<int> parts;
        for (const auto& [size, mult] : next_multiplicities())
            for (long long i = 0; i < mult; ++i) parts.push_back(static_cast<int>(size));
        return Partition::from_sorted(std::move(parts));
    }

    long long accepted() const { return accepted_; }

private:
    // One Boltzmann attempt; collects parts >= 2 ascending into scratch_ and
    // reports the part-1 deficit through `ones`. Parts > n are never
    // sampled: any such part forces a rejection, and dropping them rescales
    // every outcome's probability by the same constant, so uniformity is
    // unaffected.
    bool try_attempt(long long& ones) {
        const long long n = cfg_.n;
        long long total = 0;
        long long cur = 1;  // part sizes scanned so far
        while (cur < n) {
            const long long pos = next_nonzero_position(cur);
            if (pos > n) break;
            // multiplicity, conditioned on being >= 1
            const double lq = log_x_ * static_cast<double>(pos);
            const long long mult = 1 + geometric(lq);
            if (mult > (n - total) / pos) return false;  // overshoot
            total += pos * mult;
            scratch_.emplace_back(pos, mult);
            cur = pos;
        }
        // fill with ones, damped so every partition keeps weight x^n
        ones = n - total;
        if (ones > 0 && rng_.uniform01() >= std::exp(log_x_ * static_cast<double>(ones)))
            return false;
        return true;
    }

    // Smallest j > cur with geometric multiplicity >= 1, i.e. the first
    // success among independent Bernoulli(x^j). Thinning: jump with the
    // dominating homogeneous rate x^{cur+1}, keep a candidate at m with
    // probability x^{m-cur-1}, tighten the rate after each miss. Returns a
    // position > n when no part size in (cur, n] fires.
    long long next_nonzero_position(long long cur) {
        const long long n = cfg_.n;
        while (cur < n) {
            const double lq = log_x_ * static_cast<double>(cur + 1);
            const long long gap = geometric_one_minus(lq);
            if (gap > n - cur - 1) return n + 1;  // jumped past every part size <= n
            const long long m = cur + 1 + gap;
            if (m == cur + 1) return m;  // thinning factor is 1
            const double keep = std::exp(log_x_ * static_cast<double>(m - cur - 1));
            if (rng_.uniform01() < keep) return m;
            cur = m;
        }
        return n + 1;
    }

    // Geom(1 - e^{lq}): number of failures before a success with success
    // probability 1 - e^{lq}; lq = log of the per-trial failure probability.
    long long geometric(double lq) {
        const double u = 1.0 - rng_.uniform01();  // (0, 1]
        const double g = std::floor(std::log(u) / lq);
        if (g >= 9.0e18) return static_cast<long long>(9e18);
        return static_cast<long long>(g);
    }

    // Geom with success probability q = e^{lq}: failures before success.
    long long geometric_one_minus(double lq) {
        const double q = std::exp(lq);
        const double u = 1.0 - rng_.uniform01();
        const double l1mq = std::log1p(-q);
        // q below double resolution: the success never lands in range
        if (l1mq == 0.0) return static_cast<long long>(9e18);
        const double g = std::floor(std::log(u) / l1mq);
        if (g >= 9.0e18) return static_cast<long long>(9e18);
        return static_cast<long long>(g);
    }

    SamplerConfig cfg_;
    SplitMix64 rng_;
    double log_x_ = 0.0;
    long long accepted_ = 0;
    std::vector<std::pair<long long, long long>> scratch_;
};

// one-shot draw; a fresh sampler per call, so the result is a pure function
// of the config
inline Partition sample_partition(const SamplerConfig& cfg) {
    return PartitionSampler(cfg).next();
}

struct DensityEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;  // infinity when samples == 1
    long long samples = 0;
};

// Monte-Carlo certificate density: sample mu, reduce, take the largest part
// t of mu~, and score the fraction of lambda that are t-cores — exact counts
// for n <= 200, the Rademacher-backed bound (clamped at 0) beyond.
inline DensityEstimate estimate_certified_density(int n, int p, long long samples,
                                                  std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("estimate_certified_density: samples >= 1");
    const bool exact = n <= 200;
    const PSeries pn = partition_numbers(n);
    const double pn_d = pn[n].get_d();
    std::map<int, double> fraction_by_t;
    auto fraction_for = [&](int t) {
        if (t == 0) return 0.0;
        auto it = fraction_by_t.find(t);
        if (it != fraction_by_t.end()) return it->second;
        double f;
        if (exact)
            f = tcore_counts(t, n)[n].get_d() / pn_d;
        else
            f = std::max(0.0, tcore_fraction_bound(n, t, pn));
        fraction_by_t.emplace(t, f);
        return f;
    };

    PartitionSampler sampler(SamplerConfig{n, seed, 1'000'000});
    std::vector<long long> counts(static_cast<std::size_t>(n) + 1);
    double sum = 0.0, sumsq = 0.0;
    for (long long s = 0; s < samples; ++s) {
        counts.assign(counts.size(), 0);
        for (const auto& [size, mult] : sampler.next_multiplicities())
            counts[static_cast<std::size_t>(size)] = mult;
        detail::p_reduce_counts(counts, p);
        int t = 0;
        for (int m = n; m >= 1; --m)
            if (counts[static_cast<std::size_t>(m)] > 0) {
                t = m;
                break;
            }
        const double f = fraction_for(t);
        sum += f;
        sumsq += f * f;
    }
    DensityEstimate out;
    out.samples = samples;
    out.estimate = sum / static_cast<double>(samples);
    if (samples == 1) {
        out.stderr_ = std::numeric_limits<double>::infinity();
    } else {
        const double var =
            std::max(0.0, (sumsq - sum * sum / static_cast<double>(samples)) /
                              (static_cast<double>(samples) - 1.0));
        out.stderr_ = std::sqrt(var / static_cast<double>(samples));
    }
    return out;
}

// histogram of the largest part over uniform samples
inline std::map<long long, long long> largest_part_histogram(long long n, long long samples,
                                                             std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("largest_part_histogram: samples >= 1");
    PartitionSampler sampler(SamplerConfig{n, seed, 1'000'000});
    std::map<long long, long long> hist;
    for (long long s = 0; s < samples; ++s) {
        const auto mults = sampler.next_multiplicities();
        ++hist[mults.empty() ? 0 : mults.front().first];
    }
    return hist;
}

}  // namespace sncharlab
