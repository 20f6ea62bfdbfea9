#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "group.hpp"
#include "rational.hpp"

namespace addcomb {

// Subset of a group: strictly increasing element indices plus a dense
// indicator over the full index space. Immutable after construction.
class GroupSet {
  public:
    GroupSet() = default;

    explicit GroupSet(GroupSpec g) : group_(std::move(g)), indicator_(group_.size(), 0) {}

    GroupSet(GroupSpec g, std::vector<elem_index> elems) : group_(std::move(g)) {
        std::sort(elems.begin(), elems.end());
        if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
            throw std::invalid_argument("GroupSet: duplicate elements");
        if (!elems.empty()) group_.check_index(elems.back());
        elements_ = std::move(elems);
        indicator_.assign(group_.size(), 0);
        for (const auto e : elements_) indicator_[e] = 1;
    }

    static GroupSet from_indicator(GroupSpec g, const std::vector<std::uint8_t>& ind) {
        std::vector<elem_index> elems;
        for (elem_index i = 0; i < ind.size(); ++i)
            if (ind[i]) elems.push_back(i);
        return GroupSet(std::move(g), std::move(elems));
    }

    const GroupSpec& group() const { return group_; }
    const std::vector<elem_index>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    bool contains(elem_index x) const { return x < indicator_.size() && indicator_[x]; }

    bool operator==(const GroupSet& o) const { return group_ == o.group_ && elements_ == o.elements_; }
    bool operator!=(const GroupSet& o) const { return !(*this == o); }

  private:
    GroupSpec group_;
    std::vector<elem_index> elements_;
    std::vector<std::uint8_t> indicator_;
};

// Integer-valued function on a group, indexed by element. Convolutions of
// indicator sets land here; values are exact 64-bit counts.
struct IntFunction {
    GroupSpec group;
    std::vector<std::int64_t> values;

    explicit IntFunction(GroupSpec g) : group(std::move(g)), values(group.size(), 0) {}

    std::int64_t operator[](elem_index x) const { return values[x]; }

    std::int64_t mass() const {
        std::int64_t s = 0;
        for (const auto v : values) s += v;
        return s;
    }

    std::int64_t max_value() const {
        std::int64_t m = 0;
        for (const auto v : values) m = std::max(m, v);
        return m;
    }

    GroupSet support() const {
        std::vector<elem_index> elems;
        for (elem_index i = 0; i < values.size(); ++i)
            if (values[i] != 0) elems.push_back(i);
        return GroupSet(group, std::move(elems));
    }
};

/// (A*B)(x) = #{(a,b) in A x B : a + b = x}. Exact; total mass |A||B|.
inline IntFunction convolve(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    IntFunction out(A.group());
    const auto& g = A.group();
    for (const auto a : A.elements())
        for (const auto b : B.elements())
            ++out.values[g.add(a, b)];
    return out;
}

/// Convolution of an integer function with an indicator set.
inline IntFunction convolve(const IntFunction& f, const GroupSet& S) {
    check_same_group(f.group, S.group());
    IntFunction out(f.group);
    const auto& g = f.group;
    for (elem_index x = 0; x < f.values.size(); ++x) {
        const std::int64_t v = f.values[x];
        if (v == 0) continue;
        for (const auto s : S.elements()) out.values[g.add(x, s)] += v;
    }
    return out;
}

/// (A*(-B))(x) = |A meet (B+x)|, accumulated directly over pairs a - b.
inline IntFunction correlate(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    IntFunction out(A.group());
    const auto& g = A.group();
    for (const auto a : A.elements())
        for (const auto b : B.elements())
            ++out.values[g.sub(a, b)];
    return out;
}

inline GroupSet negate(const GroupSet& A) {
    std::vector<elem_index> elems;
    elems.reserve(A.size());
    for (const auto a : A.elements()) elems.push_back(A.group().neg(a));
    return GroupSet(A.group(), std::move(elems));
}

inline GroupSet translate(const GroupSet& A, elem_index x) {
    std::vector<elem_index> elems;
    elems.reserve(A.size());
    for (const auto a : A.elements()) elems.push_back(A.group().add(a, x));
    return GroupSet(A.group(), std::move(elems));
}

inline GroupSet sumset(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    std::vector<std::uint8_t> ind(A.group().size(), 0);
    const auto& g = A.group();
    for (const auto a : A.elements())
        for (const auto b : B.elements())
            ind[g.add(a, b)] = 1;
    return GroupSet::from_indicator(A.group(), ind);
}

/// Left fold of convolutions over k >= 2 sets; with negate_last the final
/// set enters negated. Total mass is the product of cardinalities.
inline IntFunction kfold_convolve(const std::vector<GroupSet>& sets, bool negate_last = false) {
    if (sets.size() < 2) throw std::invalid_argument("kfold_convolve: need at least two sets");
    for (std::size_t i = 1; i < sets.size(); ++i) check_same_group(sets[0].group(), sets[i].group());
    int128 mass = 1;
    for (const auto& s : sets) {
        mass *= static_cast<int128>(s.size());
        if (mass >= (int128{1} << 62)) throw capacity_error("kfold_convolve: mass overflows 64-bit counters");
    }
    const std::size_t k = sets.size();
    auto term = [&](std::size_t i) { return (negate_last && i + 1 == k) ? negate(sets[i]) : sets[i]; };
    IntFunction acc = convolve(term(0), term(1));
    for (std::size_t i = 2; i < k; ++i) acc = convolve(acc, term(i));
    return acc;
}

/// Guard for E(A,B): the energy is bounded by |A||B|min(|A|,|B|).
inline void check_energy_capacity(const GroupSet& A, const GroupSet& B) {
    const int128 bound = (int128)A.size() * B.size() * std::min(A.size(), B.size());
    if (bound >= (int128{1} << 62)) throw capacity_error("energy: count may overflow 64-bit integers");
}

/// E(A,B) = #{a1 + b1 = a2 + b2} = sum_x (A*B)(x)^2, exact.
inline std::int64_t energy(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    check_energy_capacity(A, B);
    const IntFunction conv = convolve(A, B);
    std::int64_t e = 0;
    for (const auto v : conv.values) e += v * v;
    return e;
}

/// Exact energy density c = E(A,B) / (|A| |B|^2).
inline Rational energy_density(const GroupSet& A, const GroupSet& B) {
    if (A.empty() || B.empty()) throw std::invalid_argument("energy_density: empty set");
    return Rational::from_int128(energy(A, B), (int128)A.size() * B.size() * B.size());
}

} // namespace addcomb
