#pragma once

// Independent test oracles. Everything here recomputes, by brute force or a
// direct definition, quantities the library computes by faster routes; none
// of it shares code with the implementation paths it checks.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace oracles {

// All partitions of n with parts <= max_part, by plain recursion.
inline void brute_partitions_rec(int n, int max_part, std::vector<int>& stack,
                                 std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(stack);
        return;
    }
    for (int part = std::min(n, max_part); part >= 1; --part) {
        stack.push_back(part);
        brute_partitions_rec(n - part, part, stack, out);
        stack.pop_back();
    }
}

inline std::vector<std::vector<int>> brute_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> stack;
    brute_partitions_rec(n, n == 0 ? 1 : n, stack, out);
    return out;
}

// count of partitions of n avoiding every part in `banned`
inline long brute_count_avoiding(int n, const std::set<int>& banned) {
    long count = 0;
    for (const auto& parts : brute_partitions(n)) {
        bool ok = true;
        for (int p : parts)
            if (banned.count(p)) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

// count of partitions of n with every part in `allowed`
inline long brute_count_within(int n, const std::set<int>& allowed) {
    long count = 0;
    for (const auto& parts : brute_partitions(n)) {
        bool ok = true;
        for (int p : parts)
            if (!allowed.count(p)) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

// hook length of box (r, c) by walking the diagram directly
inline int brute_hook(const std::vector<int>& parts, int r, int c) {
    int arm = parts[static_cast<std::size_t>(r)] - 1 - c;
    int leg = 0;
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < parts.size(); ++i)
        if (parts[i] > c) ++leg;
    return arm + leg + 1;
}

// multiset of all hook lengths of a shape
inline std::vector<int> brute_hook_multiset(const std::vector<int>& parts) {
    std::vector<int> hooks;
    for (std::size_t r = 0; r < parts.size(); ++r)
        for (int c = 0; c < parts[r]; ++c) hooks.push_back(brute_hook(parts, static_cast<int>(r), c));
    std::sort(hooks.begin(), hooks.end());
    return hooks;
}

// t-core test straight from the definition: no hook divisible by t
inline bool brute_is_t_core(const std::vector<int>& parts, int t) {
    for (int h : brute_hook_multiset(parts))
        if (h % t == 0) return false;
    return true;
}

// p-reduction by literal repeated replacement, largest size first (the
// library merges smallest first; results must agree).
inline std::vector<int> brute_p_reduce(std::vector<int> parts, int p) {
    for (;;) {
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        bool changed = false;
        for (std::size_t i = 0; i + static_cast<std::size_t>(p) <= parts.size(); ++i) {
            if (parts[i] != parts[i + static_cast<std::size_t>(p) - 1]) continue;
            const int m = parts[i];
            parts.erase(parts.begin() + static_cast<long>(i),
                        parts.begin() + static_cast<long>(i) + p);
            parts.push_back(m * p);
            changed = true;
            break;
        }
        if (!changed) break;
    }
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return parts;
}

// upper critical value of chi-square at the given significance, via exact
// values for df <= 2 and Wilson-Hilferty otherwise
inline double chi_square_critical(int df, double alpha) {
    const double z = alpha <= 0.001 ? 3.0902 : (alpha <= 0.01 ? 2.3263 : 1.6449);
    if (df == 1) return alpha <= 0.001 ? 10.828 : (alpha <= 0.01 ? 6.635 : 2.706);
    if (df == 2) return alpha <= 0.001 ? 13.816 : (alpha <= 0.01 ? 9.210 : 4.605);
    const double d = static_cast<double>(df);
    const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

}  // namespace oracles
