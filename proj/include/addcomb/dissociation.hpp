#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "setops.hpp"

namespace addcomb {

// Signed combination sum_j eps_j * base_j = target with eps_j in {-1,0,1}.
// Witnesses span membership (target = x) and refutes dissociativity
// (target = 0, some eps_j != 0).
struct SignWitness {
    std::vector<elem_index> base;
    std::vector<std::int8_t> coeffs;
    elem_index target = 0;

    int weight() const {
        int w = 0;
        for (const auto c : coeffs) w += (c != 0);
        return w;
    }

    bool trivial() const { return weight() == 0; }
};

inline bool verify_sign_witness(const GroupSpec& g, const SignWitness& w) {
    if (w.base.size() != w.coeffs.size()) return false;
    elem_index acc = g.zero();
    for (std::size_t j = 0; j < w.base.size(); ++j) {
        if (w.coeffs[j] == 1)
            acc = g.add(acc, w.base[j]);
        else if (w.coeffs[j] == -1)
            acc = g.sub(acc, w.base[j]);
        else if (w.coeffs[j] != 0)
            return false;
    }
    return acc == w.target;
}

/// Hard cap for the meet-in-the-middle sign-pattern search.
constexpr std::size_t mitm_element_cap = 40;

namespace detail {

inline void check_mitm_input(const GroupSpec& g, const std::vector<elem_index>& elems) {
    if (elems.size() > mitm_element_cap)
        throw capacity_error("sign-pattern search capped at " + std::to_string(mitm_element_cap) + " elements");
    std::vector<elem_index> sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("element list contains duplicates");
    for (const auto e : elems) g.check_index(e);
}

// Enumerates {0,+1,-1} patterns over elems[first..last) with at most
// max_weight nonzero coefficients, in a fixed order (digit 0, then +1,
// then -1; leftmost position outermost). Codes are base-3 with digit
// mapping 0 -> 0, 1 -> +1, 2 -> -1 and elems[first] least significant.
// Visit returns false to halt the enumeration.
template <class Visit>
void enumerate_sign_patterns(const GroupSpec& g, const std::vector<elem_index>& elems, std::size_t first,
                             std::size_t last, int max_weight, Visit&& visit) {
    struct Rec {
        const GroupSpec& g;
        const std::vector<elem_index>& elems;
        std::size_t last;
        int max_weight;
        Visit& visit;
        bool stop = false;

        void go(std::size_t pos, elem_index sum, std::uint64_t code, std::uint64_t pow, int weight) {
            if (stop) return;
            if (pos == last) {
                if (!visit(sum, code, weight)) stop = true;
                return;
            }
            go(pos + 1, sum, code, pow * 3, weight);
            if (weight < max_weight && !stop) {
                go(pos + 1, g.add(sum, elems[pos]), code + pow, pow * 3, weight + 1);
                go(pos + 1, g.sub(sum, elems[pos]), code + 2 * pow, pow * 3, weight + 1);
            }
        }
    } rec{g, elems, last, max_weight, visit};
    rec.go(first, g.zero(), 0, 1, 0);
}

inline void apply_code(std::vector<std::int8_t>& coeffs, std::uint64_t code, std::size_t first, std::size_t last) {
    for (std::size_t pos = first; pos < last; ++pos) {
        const auto digit = code % 3;
        code /= 3;
        coeffs[pos] = digit == 0 ? 0 : (digit == 1 ? 1 : -1);
    }
}

struct HalfPattern {
    std::uint64_t code = 0;
    int weight = 0;
};

// Meet-in-the-middle solver: find eps in {0,+-1}^t with weight <= max_weight
// and sum eps_j elems_j = target. With require_nonzero the all-zero pattern
// (only possible for target = 0) is excluded.
inline std::optional<SignWitness> mitm_solve(const GroupSpec& g, const std::vector<elem_index>& elems,
                                             elem_index target, int max_weight, bool require_nonzero) {
    check_mitm_input(g, elems);
    const std::size_t t = elems.size();
    const std::size_t t2 = t / 2;      // map half (smaller)
    const std::size_t t1 = t - t2;     // probe half

    std::unordered_map<elem_index, HalfPattern> table;
    std::optional<HalfPattern> zero_sum_nonzero; // min-weight nonzero pattern summing to 0
    enumerate_sign_patterns(g, elems, t1, t, max_weight, [&](elem_index sum, std::uint64_t code, int weight) {
        auto [it, inserted] = table.try_emplace(sum, HalfPattern{code, weight});
        if (!inserted && weight < it->second.weight) it->second = HalfPattern{code, weight};
        if (sum == g.zero() && code != 0 && (!zero_sum_nonzero || weight < zero_sum_nonzero->weight))
            zero_sum_nonzero = HalfPattern{code, weight};
        return true;
    });

    std::optional<SignWitness> found;
    enumerate_sign_patterns(g, elems, 0, t1, max_weight, [&](elem_index sum, std::uint64_t code, int weight) {
        const elem_index need = g.sub(target, sum);
        const auto it = table.find(need);
        if (it == table.end()) return true;
        HalfPattern half = it->second;
        if (require_nonzero && code == 0 && half.code == 0) {
            if (need != g.zero() || !zero_sum_nonzero) return true;
            half = *zero_sum_nonzero;
        }
        if (weight + half.weight > max_weight) return true;
        SignWitness w;
        w.base = elems;
        w.coeffs.assign(t, 0);
        apply_code(w.coeffs, code, 0, t1);
        apply_code(w.coeffs, half.code, t1, t);
        w.target = target;
        found = std::move(w);
        return false;
    });
    return found;
}

} // namespace detail

/// Nontrivial {0,+-1}-relation summing to zero, or nullopt when L is
/// dissociated. Exhaustive (meet in the middle over sign patterns).
inline std::optional<SignWitness> dissociation_witness(const GroupSpec& g, const std::vector<elem_index>& L) {
    return detail::mitm_solve(g, L, g.zero(), static_cast<int>(L.size()), /*require_nonzero=*/true);
}

inline bool is_dissociated(const GroupSpec& g, const std::vector<elem_index>& L) {
    return !dissociation_witness(g, L).has_value();
}

/// Same contract restricted to relations of weight sum |eps_j| <= k.
inline std::optional<SignWitness> k_dissociation_witness(const GroupSpec& g, const std::vector<elem_index>& L,
                                                         int k) {
    if (k < 1) throw std::invalid_argument("k_dissociation_witness: k must be >= 1");
    return detail::mitm_solve(g, L, g.zero(), std::min<int>(k, static_cast<int>(L.size())),
                              /*require_nonzero=*/true);
}

inline bool is_k_dissociated(const GroupSpec& g, const std::vector<elem_index>& L, int k) {
    return !k_dissociation_witness(g, L, k).has_value();
}

/// Witness that x lies in Span(L) = { sum eps_j l_j : eps_j in {0,-1,1} },
/// or nullopt. x = 0 yields the empty combination.
inline std::optional<SignWitness> span_contains(const GroupSpec& g, const std::vector<elem_index>& L,
                                                elem_index x) {
    return detail::mitm_solve(g, L, x, static_cast<int>(L.size()), /*require_nonzero=*/false);
}

// ---------------------------------------------------------------------------
// GF(2) fast paths. Over an all-orders-2 group the mixed-radix index of an
// element *is* its coordinate bitmask, +1 and -1 coincide, and dissociated
// means linearly independent over GF(2) with 0 excluded.
// ---------------------------------------------------------------------------

namespace detail {

inline void check_gf2_group(const GroupSpec& g) {
    if (!g.all_orders_two()) throw std::invalid_argument("GF(2) path requires every cyclic order to equal 2");
}

// Row-reduction basis that tracks, for each pivot row, the set of original
// row indices whose XOR produced it.
struct Gf2Basis {
    struct PivotRow {
        std::uint32_t mask = 0;
        std::vector<std::uint32_t> combo; // sorted original row ids
    };
    std::vector<PivotRow> pivots; // by leading bit, descending scan

    static std::vector<std::uint32_t> merge_xor(const std::vector<std::uint32_t>& a,
                                                const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> out;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    // Reduces mask; returns the combination of original rows used. If the
    // result is zero the combination expresses mask as a sum of prior rows.
    std::pair<std::uint32_t, std::vector<std::uint32_t>> reduce(std::uint32_t mask,
                                                                std::vector<std::uint32_t> combo) const {
        for (const auto& p : pivots) {
            if (mask == 0) break;
            const std::uint32_t lead = std::uint32_t{1} << (31 - __builtin_clz(p.mask));
            if (mask & lead) {
                mask ^= p.mask;
                combo = merge_xor(combo, p.combo);
            }
        }
        return {mask, std::move(combo)};
    }

    // Inserts row; returns nullopt if independent, else the dependent combo.
    std::optional<std::vector<std::uint32_t>> insert(std::uint32_t mask, std::uint32_t row_id) {
        auto [m, combo] = reduce(mask, {row_id});
        if (m == 0) return combo;
        pivots.push_back({m, std::move(combo)});
        std::sort(pivots.begin(), pivots.end(),
                  [](const PivotRow& a, const PivotRow& b) { return a.mask > b.mask; });
        return std::nullopt;
    }
};

} // namespace detail

/// GF(2) dissociativity: dependency from the first row that reduces to zero.
inline std::optional<SignWitness> dissociation_witness_gf2(const GroupSpec& g, const std::vector<elem_index>& L) {
    detail::check_gf2_group(g);
    std::vector<elem_index> sorted = L;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("element list contains duplicates");
    detail::Gf2Basis basis;
    for (std::uint32_t j = 0; j < L.size(); ++j) {
        g.check_index(L[j]);
        if (auto combo = basis.insert(L[j], j)) {
            SignWitness w;
            w.base = L;
            w.coeffs.assign(L.size(), 0);
            for (const auto id : *combo) w.coeffs[id] = 1;
            w.target = g.zero();
            return w;
        }
    }
    return std::nullopt;
}

inline bool is_dissociated_gf2(const GroupSpec& g, const std::vector<elem_index>& L) {
    return !dissociation_witness_gf2(g, L).has_value();
}

/// GF(2) rank of a list of elements (0 rows contribute nothing).
inline int gf2_rank(const GroupSpec& g, const std::vector<elem_index>& elems) {
    detail::check_gf2_group(g);
    std::vector<std::uint32_t> basis;
    int rank = 0;
    for (auto e : elems) {
        g.check_index(e);
        std::uint32_t m = e;
        for (const auto b : basis) m = std::min(m, m ^ b);
        if (m) {
            basis.push_back(m);
            std::sort(basis.rbegin(), basis.rend());
            ++rank;
        }
    }
    return rank;
}

/// GF(2) span membership with witness via linear solve.
inline std::optional<SignWitness> span_contains_gf2(const GroupSpec& g, const std::vector<elem_index>& L,
                                                    elem_index x) {
    detail::check_gf2_group(g);
    detail::Gf2Basis basis;
    for (std::uint32_t j = 0; j < L.size(); ++j) {
        g.check_index(L[j]);
        basis.insert(L[j], j);
    }
    auto [m, combo] = basis.reduce(x, {});
    if (m != 0) return std::nullopt;
    SignWitness w;
    w.base = L;
    w.coeffs.assign(L.size(), 0);
    for (const auto id : combo) w.coeffs[id] = 1;
    w.target = x;
    return w;
}

// ---------------------------------------------------------------------------
// Greedy maximal dissociated subsets and exact dimension.
//
// For a dissociated Lambda and a candidate q, Lambda + {q} stays dissociated
// exactly when q lies outside Span(Lambda): a relation with eps_q = +-1
// rewrites q as a span element, and eps_q = 0 would contradict Lambda.
// The greedy scan therefore only needs incremental span membership.
// ---------------------------------------------------------------------------

namespace detail {

// Dense span tracker for arbitrary groups; supports undo for backtracking.
struct SpanTracker {
    const GroupSpec& g;
    std::vector<std::uint8_t> in_span;
    std::vector<elem_index> members;

    explicit SpanTracker(const GroupSpec& group) : g(group), in_span(group.size(), 0) {
        in_span[g.zero()] = 1;
        members.push_back(g.zero());
    }

    bool contains(elem_index x) const { return in_span[x]; }

    // Adds lambda; returns how many members existed before (undo point).
    std::size_t add(elem_index lambda) {
        const std::size_t mark = members.size();
        for (std::size_t i = 0; i < mark; ++i) {
            const elem_index s = members[i];
            for (const elem_index cand : {g.add(s, lambda), g.sub(s, lambda)}) {
                if (!in_span[cand]) {
                    in_span[cand] = 1;
                    members.push_back(cand);
                }
            }
        }
        return mark;
    }

    void undo(std::size_t mark) {
        while (members.size() > mark) {
            in_span[members.back()] = 0;
            members.pop_back();
        }
    }
};

} // namespace detail

/// Greedy maximal dissociated subset of Q, scanning in canonical index
/// order. The result spans Q; it is maximal, not necessarily maximum.
inline std::vector<elem_index> maximal_dissociated(const GroupSet& Q) {
    const GroupSpec& g = Q.group();
    std::vector<elem_index> lambda;
    if (g.all_orders_two()) {
        detail::Gf2Basis basis;
        for (const auto q : Q.elements())
            if (!basis.insert(q, static_cast<std::uint32_t>(lambda.size()))) lambda.push_back(q);
        return lambda;
    }
    detail::SpanTracker span(g);
    for (const auto q : Q.elements()) {
        if (!span.contains(q)) {
            lambda.push_back(q);
            span.add(q);
        }
    }
    return lambda;
}

/// Cap for the exact-dimension branch and bound on general groups.
constexpr std::size_t dim_exact_general_cap = 24;

/// Exact maximum dissociated-subset size by branch and bound (include-first,
/// so large candidates are found early; pruned by |Q| remainder and the
/// log2 N ceiling that distinct subset sums force).
inline int dim_exact_general(const GroupSet& Q) {
    if (Q.size() > dim_exact_general_cap)
        throw capacity_error("dim_exact: general search capped at " + std::to_string(dim_exact_general_cap) +
                             " elements");
    const GroupSpec& g = Q.group();
    const auto& elems = Q.elements();
    int ceiling = 0;
    while ((std::uint64_t{1} << (ceiling + 1)) <= g.size()) ++ceiling;

    detail::SpanTracker span(g);
    int best = 0;
    struct Rec {
        const GroupSpec& g;
        const std::vector<elem_index>& elems;
        detail::SpanTracker& span;
        int& best;
        int ceiling;

        void go(std::size_t i, int depth) {
            best = std::max(best, depth);
            if (i == elems.size() || depth == ceiling) return;
            if (depth + static_cast<int>(elems.size() - i) <= best) return;
            const elem_index q = elems[i];
            if (!span.contains(q)) {
                const std::size_t mark = span.add(q);
                go(i + 1, depth + 1);
                span.undo(mark);
            }
            go(i + 1, depth);
        }
    } rec{g, elems, span, best, ceiling};
    rec.go(0, 0);
    return best;
}

/// Exact dimension: GF(2) rank on all-orders-2 groups, branch and bound
/// otherwise.
inline int dim_exact(const GroupSet& Q) {
    if (Q.group().all_orders_two()) return gf2_rank(Q.group(), Q.elements());
    return dim_exact_general(Q);
}

/// Dispatching span membership: GF(2) solve when available, else MITM.
inline std::optional<SignWitness> span_witness(const GroupSpec& g, const std::vector<elem_index>& L,
                                               elem_index x) {
    if (g.all_orders_two()) return span_contains_gf2(g, L, x);
    return span_contains(g, L, x);
}

} // namespace addcomb
