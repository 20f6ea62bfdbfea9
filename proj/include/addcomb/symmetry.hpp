#pragma once

#include <vector>

#include "setops.hpp"

namespace addcomb {

/// Threshold set S = { x : (A*(-B))(x) >= sigma }. Antitone in sigma.
/// sigma < 1 is admitted but lies outside the dimension bound's range;
/// callers surface that condition, not this function.
inline GroupSet symmetry_set(const GroupSet& A, const GroupSet& B, const Rational& sigma) {
    check_same_group(A.group(), B.group());
    if (!sigma.positive()) throw std::invalid_argument("symmetry_set: sigma must be positive");
    const IntFunction corr = correlate(A, B);
    std::vector<elem_index> elems;
    for (elem_index x = 0; x < corr.values.size(); ++x)
        if (int_ge(corr.values[x], sigma)) elems.push_back(x);
    return GroupSet(A.group(), std::move(elems));
}

/// Threshold set of the k-fold convolution A_1 * ... * A_{k-2} * A_k * (-A_{k-1})
/// where A_1 <= ... <= A_k is the cardinality-sorted input (stable on ties).
inline GroupSet kfold_symmetry_set(std::vector<GroupSet> sets, const Rational& sigma) {
    if (sets.size() < 2) throw std::invalid_argument("kfold_symmetry_set: need at least two sets");
    if (!sigma.positive()) throw std::invalid_argument("kfold_symmetry_set: sigma must be positive");
    for (std::size_t i = 1; i < sets.size(); ++i) check_same_group(sets[0].group(), sets[i].group());
    std::stable_sort(sets.begin(), sets.end(),
                     [](const GroupSet& a, const GroupSet& b) { return a.size() < b.size(); });
    const std::size_t k = sets.size();
    std::vector<GroupSet> order;
    order.reserve(k);
    for (std::size_t i = 0; i + 2 < k; ++i) order.push_back(sets[i]); // A_1 .. A_{k-2}
    order.push_back(sets[k - 1]);                                     // A_k
    order.push_back(sets[k - 2]);                                     // A_{k-1}, negated below
    const IntFunction conv = kfold_convolve(order, /*negate_last=*/true);
    std::vector<elem_index> elems;
    for (elem_index x = 0; x < conv.values.size(); ++x)
        if (int_ge(conv.values[x], sigma)) elems.push_back(x);
    return GroupSet(sets[0].group(), std::move(elems));
}

// Dyadic level decomposition of (A*B): level j holds the x with
// c 2^(j-2) |B| <= (A*B)(x) < c 2^(j-1) |B|, where c = E(A,B)/(|A||B|^2) is
// the exact energy density. Levels 1..s cover every x at or above c|B|/2;
// empty levels are retained so indices stay aligned.
struct DyadicLevel {
    int j = 0;
    GroupSet set;
    Rational cj; // (1/(|A||B|^2)) sum_{x in S_j} (A*B)(x)^2
};

struct LevelDecomposition {
    Rational c;
    int s = 0;
    std::vector<DyadicLevel> levels;
    IntFunction convolution;
};

inline LevelDecomposition dyadic_levels(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    if (A.empty() || B.empty()) throw std::invalid_argument("dyadic_levels: empty input set");
    check_energy_capacity(A, B);

    IntFunction conv = convolve(A, B);
    std::int64_t e = 0, maxv = 0;
    for (const auto v : conv.values) {
        e += v * v;
        maxv = std::max(maxv, v);
    }
    const int128 denom = (int128)A.size() * B.size() * B.size();
    const Rational c = Rational::from_int128(e, denom);

    // v >= c 2^(j-2) |B|  <=>  4 v q >= p 2^j |B|   (c = p/q)
    const int128 p = c.num(), q = c.den(), bsize = static_cast<int128>(B.size());
    auto below_upper = [&](std::int64_t v, int j) { // v < c 2^(j-1) |B|
        return 4 * (int128)v * q < p * (int128{1} << (j + 1)) * bsize;
    };
    auto at_least_lower = [&](std::int64_t v, int j) { // v >= c 2^(j-2) |B|
        return 4 * (int128)v * q >= p * (int128{1} << j) * bsize;
    };

    int s = 1;
    while (!below_upper(maxv, s) && s < 96) ++s; // least s with c 2^(s-1)|B| > max
    LevelDecomposition out{c, s, {}, IntFunction(A.group())};

    std::vector<std::vector<elem_index>> buckets(static_cast<std::size_t>(s) + 1);
    for (elem_index x = 0; x < conv.values.size(); ++x) {
        const std::int64_t v = conv.values[x];
        if (v == 0 || !at_least_lower(v, 1)) continue; // below c|B|/2
        int j = 1;
        while (!below_upper(v, j)) ++j;
        buckets[static_cast<std::size_t>(j)].push_back(x);
    }
    for (int j = 1; j <= s; ++j) {
        std::int64_t ej = 0;
        for (const auto x : buckets[static_cast<std::size_t>(j)]) ej += conv.values[x] * conv.values[x];
        out.levels.push_back({j, GroupSet(A.group(), std::move(buckets[static_cast<std::size_t>(j)])),
                              Rational::from_int128(ej, denom)});
    }
    out.convolution = std::move(conv);
    return out;
}

} // namespace addcomb
