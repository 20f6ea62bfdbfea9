#pragma once

#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "cycle_graph.hpp"
#include "rng.hpp"
#include "setops.hpp"

namespace addcomb::corpus {

// A named instance with the quantities its construction predicts. Every
// prediction is re-checked against oracle computation in the test suites,
// never assumed.
struct Prediction {
    std::string name;
    std::string relation; // ">=", "<=", "=="
    std::int64_t value = 0;
    std::string note;
};

struct ExampleInstance {
    std::string name;
    GroupSpec group;
    GroupSet A;
    GroupSet B;
    std::vector<Prediction> predictions;
};

namespace detail {

inline GroupSpec boolean_group(int n) { return GroupSpec(std::vector<std::int64_t>(n, 2)); }

// Basis vector e_i of (Z/2)^n under the most-significant-first encoding.
inline elem_index basis_bit(int n, int i) { return elem_index{1} << (n - 1 - i); }

// Coordinate subspace spanned by basis vectors [first, first+dim).
inline std::vector<elem_index> block_subspace(int n, int first, int dim) {
    std::vector<elem_index> elems;
    elems.reserve(std::size_t{1} << dim);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << dim); ++m) {
        elem_index x = 0;
        for (int b = 0; b < dim; ++b)
            if (m & (std::uint32_t{1} << b)) x |= basis_bit(n, first + b);
        elems.push_back(x);
    }
    return elems;
}

inline std::uint32_t support_mask(const std::vector<elem_index>& elems) {
    std::uint32_t s = 0;
    for (const auto e : elems) s |= e;
    return s;
}

} // namespace detail

/// A = H_1 u ... u H_t: t coordinate subspaces of (Z/2)^n of dimension d on
/// pairwise disjoint coordinate blocks (they share only 0, so
/// |A| = t(2^d - 1) + 1). Predicts E(A) >= t h^3 with h = 2^d.
inline ExampleInstance example_disjoint_subspaces(int t, int d, int n) {
    if (t < 1 || d < 1 || t * d > n) throw std::invalid_argument("example_disjoint_subspaces: t*d must fit in n");
    GroupSpec g = detail::boolean_group(n);
    std::vector<std::uint8_t> ind(g.size(), 0);
    std::uint32_t seen_support = 0;
    for (int i = 0; i < t; ++i) {
        const auto block = detail::block_subspace(n, i * d, d);
        const std::uint32_t sup = detail::support_mask(block);
        if (seen_support & sup) throw std::logic_error("example_disjoint_subspaces: overlapping supports");
        seen_support |= sup;
        for (const auto e : block) ind[e] = 1;
    }
    ExampleInstance inst;
    inst.name = "disjoint_subspaces_t" + std::to_string(t) + "_d" + std::to_string(d) + "_n" + std::to_string(n);
    inst.group = g;
    inst.A = GroupSet::from_indicator(g, ind);
    inst.B = inst.A;
    const std::int64_t h = std::int64_t{1} << d;
    const std::int64_t expected_size = static_cast<std::int64_t>(t) * (h - 1) + 1;
    if (static_cast<std::int64_t>(inst.A.size()) != expected_size)
        throw std::logic_error("example_disjoint_subspaces: wrong cardinality");
    inst.predictions.push_back({"energy_A", ">=", t * h * h * h, "union of disjoint-support subspaces"});
    return inst;
}

/// A = H u Lambda in (Z/2)^n: a coordinate subspace of dimension h_dim plus
/// lambda_count basis vectors outside its support (disjoint union).
inline ExampleInstance example_H_union_dissociated(int h_dim, int lambda_count, int n) {
    if (h_dim < 0 || lambda_count < 0 || h_dim + lambda_count > n)
        throw std::invalid_argument("example_H_union_dissociated: dimensions do not fit");
    GroupSpec g = detail::boolean_group(n);
    std::vector<std::uint8_t> ind(g.size(), 0);
    for (const auto e : detail::block_subspace(n, 0, h_dim)) ind[e] = 1;
    for (int i = 0; i < lambda_count; ++i) {
        const elem_index l = detail::basis_bit(n, h_dim + i);
        if (ind[l]) throw std::logic_error("example_H_union_dissociated: lambda meets H");
        ind[l] = 1;
    }
    ExampleInstance inst;
    inst.name = "H_union_dissociated_h" + std::to_string(h_dim) + "_l" + std::to_string(lambda_count) + "_n" +
                std::to_string(n);
    inst.group = g;
    inst.A = GroupSet::from_indicator(g, ind);
    inst.B = inst.A;
    inst.predictions.push_back(
        {"cardinality_A", "==", (std::int64_t{1} << h_dim) + lambda_count, "disjoint union"});
    return inst;
}

/// B a coordinate subspace of dimension h_dim, A = B + Lambda with Lambda
/// basis vectors outside supp(B); all |B||Lambda| sums distinct. At
/// sigma = |B| the symmetry set equals A and its dimension is
/// h_dim + lambda_count exactly.
inline ExampleInstance example_B_subspace_A_directsum(int h_dim, int lambda_count, int n) {
    if (h_dim < 0 || lambda_count < 1 || h_dim + lambda_count > n)
        throw std::invalid_argument("example_B_subspace_A_directsum: dimensions do not fit");
    GroupSpec g = detail::boolean_group(n);
    GroupSet B(g, detail::block_subspace(n, 0, h_dim));
    std::vector<elem_index> lambda;
    for (int i = 0; i < lambda_count; ++i) lambda.push_back(detail::basis_bit(n, h_dim + i));
    GroupSet A = sumset(B, GroupSet(g, lambda));
    if (A.size() != B.size() * lambda.size())
        throw std::logic_error("example_B_subspace_A_directsum: direct sum is not direct");
    ExampleInstance inst;
    inst.name = "B_subspace_A_directsum_h" + std::to_string(h_dim) + "_l" + std::to_string(lambda_count) +
                "_n" + std::to_string(n);
    inst.group = g;
    inst.A = std::move(A);
    inst.B = std::move(B);
    inst.predictions.push_back({"sigma", "==", std::int64_t{1} << h_dim, "threshold |B|"});
    inst.predictions.push_back(
        {"dim_symmetry_set", "==", h_dim + lambda_count, "dim(S) = dim(B) + |Lambda| at sigma = |B|"});
    return inst;
}

/// Connected-pair variant: A = H + L1 + L2 and B = H + L1 (all sums
/// distinct). At sigma = |H| the symmetry set spans H, the pairwise sums of
/// L1 and all of L2, so its dimension is h_dim + (l1 - 1) + l2.
inline ExampleInstance example_connected_pair(int h_dim, int l1, int l2, int n) {
    if (h_dim < 0 || l1 < 1 || l2 < 1 || h_dim + l1 + l2 > n)
        throw std::invalid_argument("example_connected_pair: dimensions do not fit");
    GroupSpec g = detail::boolean_group(n);
    GroupSet H(g, detail::block_subspace(n, 0, h_dim));
    std::vector<elem_index> lam1, lam2;
    for (int i = 0; i < l1; ++i) lam1.push_back(detail::basis_bit(n, h_dim + i));
    for (int i = 0; i < l2; ++i) lam2.push_back(detail::basis_bit(n, h_dim + l1 + i));
    GroupSet B = sumset(H, GroupSet(g, lam1));
    if (B.size() != H.size() * lam1.size()) throw std::logic_error("example_connected_pair: B sum not direct");
    GroupSet A = sumset(B, GroupSet(g, lam2));
    if (A.size() != B.size() * lam2.size()) throw std::logic_error("example_connected_pair: A sum not direct");
    ExampleInstance inst;
    inst.name = "connected_pair_h" + std::to_string(h_dim) + "_l" + std::to_string(l1) + "_m" +
                std::to_string(l2) + "_n" + std::to_string(n);
    inst.group = g;
    inst.A = std::move(A);
    inst.B = std::move(B);
    inst.predictions.push_back({"sigma", "==", std::int64_t{1} << h_dim, "threshold |H|"});
    inst.predictions.push_back(
        {"dim_symmetry_set", "==", h_dim + (l1 - 1) + l2, "dim(S) at sigma = |H|"});
    return inst;
}

/// Uniform random subset of the given size, deterministic in the rng state
/// (partial Fisher-Yates over the index space).
inline GroupSet random_subset(const GroupSpec& g, std::size_t size, SplitMix64& rng) {
    if (size > g.size()) throw std::invalid_argument("random_subset: size exceeds group");
    std::vector<elem_index> pool(g.size());
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(size);
    return GroupSet(g, std::move(pool));
}

} // namespace addcomb::corpus

// ---------------------------------------------------------------------------
// Reference oracles: direct-definition computations sharing no algorithmic
// path with the production implementations. They exist to catch bugs, so
// they stay deliberately naive.
// ---------------------------------------------------------------------------

namespace addcomb::oracle {

/// E(A,B) by enumerating pairs of pairs: precompute all |A||B| sums, then
/// count coincidences quadratically. Capped at |A||B| <= 10^4.
inline std::int64_t oracle_energy(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    const GroupSpec& g = A.group();
    if (A.size() * B.size() > 10000) throw capacity_error("oracle_energy: quadruple loop too large");
    std::vector<elem_index> sums;
    sums.reserve(A.size() * B.size());
    for (const auto a : A.elements())
        for (const auto b : B.elements()) sums.push_back(g.add(a, b));
    std::int64_t count = 0;
    for (const auto s1 : sums)
        for (const auto s2 : sums) count += (s1 == s2);
    return count;
}

/// (A*B)(x) recomputed per output point: for each x count a with x-a in B.
inline IntFunction oracle_convolve(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    const GroupSpec& g = A.group();
    if (static_cast<std::uint64_t>(A.size()) * g.size() > 100000000ull)
        throw capacity_error("oracle_convolve: loop too large");
    std::vector<std::uint8_t> in_b(g.size(), 0);
    for (const auto b : B.elements()) in_b[b] = 1;
    IntFunction out(g);
    for (elem_index x = 0; x < g.size(); ++x) {
        std::int64_t c = 0;
        for (const auto a : A.elements()) c += in_b[g.sub(x, a)];
        out.values[x] = c;
    }
    return out;
}

namespace detail {

// Distinct {0,1}-subset sums characterize dissociated sets: two different
// subsets with equal sums differ by a {0,+-1} relation and conversely.
inline bool all_subset_sums_distinct(const GroupSpec& g, const std::vector<elem_index>& subset) {
    std::vector<elem_index> sums{g.zero()};
    sums.reserve(std::size_t{1} << subset.size());
    for (const auto e : subset) {
        const std::size_t sz = sums.size();
        for (std::size_t i = 0; i < sz; ++i) sums.push_back(g.add(sums[i], e));
    }
    std::sort(sums.begin(), sums.end());
    return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

} // namespace detail

/// dim(Q) by scanning subsets in decreasing size and testing each via
/// subset-sum distinctness. Capped at |Q| <= 18.
inline int oracle_dim(const GroupSpec& g, const std::vector<elem_index>& Q) {
    if (Q.size() > 18) throw capacity_error("oracle_dim: capped at 18 elements");
    int ceiling = 0;
    while ((std::uint64_t{1} << (ceiling + 1)) <= g.size()) ++ceiling;
    const int top = std::min<int>(ceiling, static_cast<int>(Q.size()));
    for (int k = top; k >= 1; --k) {
        // all k-subsets of Q
        std::vector<int> pick(static_cast<std::size_t>(k));
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<elem_index> subset;
            subset.reserve(static_cast<std::size_t>(k));
            for (const auto i : pick) subset.push_back(Q[static_cast<std::size_t>(i)]);
            if (detail::all_subset_sums_distinct(g, subset)) return k;
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<int>(Q.size()) - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return 0;
}

/// Exhaustive scan for special cycles of length 4 (and 6 when maxlen >= 6).
/// Cycles are reported in a fixed canonical orientation.
inline std::vector<SpecialCycle> oracle_cycle_scan(const ColoredBipartiteGraph& graph, int maxlen) {
    if (maxlen < 4) throw std::invalid_argument("oracle_cycle_scan: maxlen must be >= 4");
    if (maxlen > 6) throw capacity_error("oracle_cycle_scan: capped at length 6");
    const std::size_t nl = graph.left_size(), nr = graph.right_size();
    if (nl * nr > 4000000) throw capacity_error("oracle_cycle_scan: graph too large");

    // Dense (left, right) -> edge id lookup; -1 when absent.
    std::vector<std::int32_t> edge_at(nl * nr, -1);
    for (std::uint32_t e = 0; e < graph.edges.size(); ++e)
        edge_at[graph.edges[e].left * nr + graph.edges[e].right] = static_cast<std::int32_t>(e);
    auto edge = [&](std::uint32_t l, std::uint32_t r) { return edge_at[l * nr + r]; };

    std::vector<SpecialCycle> found;
    auto emit = [&](std::vector<CycleVertex> vs, std::vector<std::uint32_t> es) {
        SpecialCycle c;
        c.vertices = std::move(vs);
        c.edge_ids = std::move(es);
        c.special_positions = compute_special_positions(graph, c.edge_ids);
        if (!c.special_positions.empty()) found.push_back(std::move(c));
    };

    for (std::uint32_t l1 = 0; l1 < nl; ++l1)
        for (std::uint32_t l2 = l1 + 1; l2 < nl; ++l2)
            for (std::uint32_t r1 = 0; r1 < nr; ++r1) {
                if (edge(l1, r1) < 0 || edge(l2, r1) < 0) continue;
                for (std::uint32_t r2 = r1 + 1; r2 < nr; ++r2) {
                    if (edge(l1, r2) < 0 || edge(l2, r2) < 0) continue;
                    emit({{true, l1}, {false, r1}, {true, l2}, {false, r2}},
                         {static_cast<std::uint32_t>(edge(l1, r1)), static_cast<std::uint32_t>(edge(l2, r1)),
                          static_cast<std::uint32_t>(edge(l2, r2)), static_cast<std::uint32_t>(edge(l1, r2))});
                }
            }

    if (maxlen >= 6) {
        for (std::uint32_t l1 = 0; l1 < nl; ++l1)
            for (std::uint32_t l2 = l1 + 1; l2 < nl; ++l2)
                for (std::uint32_t l3 = l2 + 1; l3 < nl; ++l3) {
                    // Traversal l1 -> r1 -> la -> r2 -> lb -> r3 -> l1 with
                    // {la, lb} = {l2, l3}; both assignments scanned, r's
                    // distinct, reflection excluded by fixing la = l2.
                    for (std::uint32_t r1 = 0; r1 < nr; ++r1) {
                        if (edge(l1, r1) < 0 || edge(l2, r1) < 0) continue;
                        for (std::uint32_t r2 = 0; r2 < nr; ++r2) {
                            if (r2 == r1 || edge(l2, r2) < 0 || edge(l3, r2) < 0) continue;
                            for (std::uint32_t r3 = 0; r3 < nr; ++r3) {
                                if (r3 == r1 || r3 == r2 || edge(l3, r3) < 0 || edge(l1, r3) < 0) continue;
                                emit({{true, l1},
                                      {false, r1},
                                      {true, l2},
                                      {false, r2},
                                      {true, l3},
                                      {false, r3}},
                                     {static_cast<std::uint32_t>(edge(l1, r1)),
                                      static_cast<std::uint32_t>(edge(l2, r1)),
                                      static_cast<std::uint32_t>(edge(l2, r2)),
                                      static_cast<std::uint32_t>(edge(l3, r2)),
                                      static_cast<std::uint32_t>(edge(l3, r3)),
                                      static_cast<std::uint32_t>(edge(l1, r3))}});
                            }
                        }
                    }
                }
    }
    return found;
}

} // namespace addcomb::oracle
