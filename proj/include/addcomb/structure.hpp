#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dissociation.hpp"
#include "symmetry.hpp"

namespace addcomb {

// One audited inequality: lhs <relation> rhs, with both sides kept exact.
struct CheckRecord {
    std::string name;
    Rational lhs;
    std::string relation; // ">=", "<=", "=="
    Rational rhs;
    bool holds = false;
};

inline CheckRecord make_check(std::string name, const Rational& lhs, const std::string& relation,
                              const Rational& rhs) {
    bool holds = false;
    if (relation == ">=")
        holds = lhs >= rhs;
    else if (relation == "<=")
        holds = lhs <= rhs;
    else if (relation == "==")
        holds = lhs == rhs;
    else
        throw std::invalid_argument("make_check: unknown relation " + relation);
    return {std::move(name), lhs, relation, rhs, holds};
}

inline std::uint64_t set_pair_fingerprint(const GroupSet& A, const GroupSet& B) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const auto o : A.group().orders()) mix(static_cast<std::uint64_t>(o));
    mix(0xA5);
    for (const auto a : A.elements()) mix(a + 1);
    mix(0xB5);
    for (const auto b : B.elements()) mix(b + 1);
    return h;
}

// Extraction outcome: a subset B1 of B of small dissociated dimension that
// still carries a constant fraction of E(A,B), together with the greedy
// maximal dissociated set Lambda spanning it, per-element span witnesses,
// and every inequality the construction promises, re-verified from the raw
// sets at build time.
struct StructureResult {
    std::string method; // "simple" | "levelset"
    bool swapped = false;
    GroupSet B1;
    std::vector<elem_index> lambda;
    std::vector<SignWitness> span_witnesses; // aligned with B1.elements()
    Rational c;
    Rational threshold;
    std::int64_t energy_ab = 0;
    std::int64_t energy_ab1 = 0;

    // levelset-specific
    int level_j = 0;
    int level_count_s = 0;
    Rational cj;
    GroupSet Sj;
    std::string dim_branch; // which of max{|S_j|, |A|} governs the bound

    std::vector<CheckRecord> checks;
    std::uint64_t input_fingerprint = 0;

    bool all_checks_hold() const {
        for (const auto& c : checks)
            if (!c.holds) return false;
        return true;
    }
};

namespace detail {

inline Rational log2_bound(std::size_t n) {
    // Exceeds log2(2n) while staying rational: ceil(1024 log2(2n)) / 1024.
    const double v = std::log2(2.0 * static_cast<double>(n));
    return Rational(static_cast<std::int64_t>(std::ceil(v * 1024.0)), 1024);
}

inline void add_span_witnesses(StructureResult& r, const GroupSpec& g) {
    r.span_witnesses.clear();
    for (const auto x : r.B1.elements()) {
        auto w = span_witness(g, r.lambda, x);
        if (!w || !verify_sign_witness(g, *w))
            throw std::logic_error("structure extraction: element of B1 has no verified span witness");
        r.span_witnesses.push_back(std::move(*w));
    }
}

// |Lambda| <= 16 c^{-1} log2(2 |A|): the explicit-constant dimension report.
inline CheckRecord dimension_check(const std::vector<elem_index>& lambda, const Rational& c, std::size_t a_size) {
    const Rational bound = Rational(16) / c * log2_bound(a_size);
    return make_check("dim_le_16_over_c_log2_2A", Rational(static_cast<std::int64_t>(lambda.size())), "<=", bound);
}

} // namespace detail

/// One-shot extractor via the triple convolution: with |A| >= |B| (inputs
/// swapped if needed, recorded), B1 keeps the x in B where (B*A*(-A))(x)
/// reaches half its B-average c|A||B|/2. Guarantees
/// E(A,B1) >= 2^-2 c |A||B|^2 with c = E(A,B)/(|A||B|^2) exact.
inline StructureResult extract_core_simple(GroupSet A, GroupSet B) {
    check_same_group(A.group(), B.group());
    if (A.empty() || B.empty()) throw std::invalid_argument("extract_core_simple: empty input set");
    StructureResult r;
    r.method = "simple";
    r.input_fingerprint = set_pair_fingerprint(A, B);
    if (A.size() < B.size()) {
        std::swap(A, B);
        r.swapped = true;
    }
    const GroupSpec& g = A.group();
    const std::int64_t e = energy(A, B);
    r.energy_ab = e;
    r.c = Rational::from_int128(e, (int128)A.size() * B.size() * B.size());

    // threshold = c |A| |B| / 2 = E / (2|B|)
    r.threshold = Rational::from_int128(e, 2 * (int128)B.size());

    const IntFunction conv3 = kfold_convolve({B, A, A}, /*negate_last=*/true); // B*A*(-A)
    std::vector<elem_index> kept;
    std::int64_t kept_mass = 0;
    for (const auto x : B.elements())
        if (int_ge(conv3.values[x], r.threshold)) {
            kept.push_back(x);
            kept_mass += conv3.values[x];
        }
    r.B1 = GroupSet(g, std::move(kept));
    r.lambda = maximal_dissociated(r.B1);
    detail::add_span_witnesses(r, g);

    const std::int64_t e1 = energy(A, r.B1);
    r.energy_ab1 = e1;

    // sum over B1 of (B*A*(-A)) carries at least half of E(A,B); the same
    // sum equals sum_s (A*B1)(s)(A*B)(s), which Cauchy-Schwarz turns into
    // the energy guarantee.
    const IntFunction convAB = convolve(A, B);
    const IntFunction convAB1 = convolve(A, r.B1);
    std::int64_t cross = 0;
    for (elem_index s = 0; s < convAB.values.size(); ++s) cross += convAB.values[s] * convAB1.values[s];

    r.checks.push_back(make_check("triple_mass_over_B1_ge_half_E", Rational(kept_mass), ">=",
                                  Rational::from_int128(e, 2)));
    r.checks.push_back(make_check("triple_mass_equals_cross_sum", Rational(kept_mass), "==", Rational(cross)));
    r.checks.push_back(make_check("energy_AB1_ge_quarter_E", Rational(e1), ">=", Rational::from_int128(e, 4)));
    r.checks.push_back(make_check("B1_nonempty", Rational(static_cast<std::int64_t>(r.B1.size())), ">=", Rational(1)));
    r.checks.push_back(detail::dimension_check(r.lambda, r.c, A.size()));
    return r;
}

/// Level-set extractor: decompose (A*B) into dyadic levels, pick the first
/// level j with c_j >= c/(2s), and keep the x in B where (S_j*(-A))(x)
/// reaches 2^-j (c_j/c) |A|. Guarantees E(A,B1) >= 2^-4 s^-1 E(A,B).
inline StructureResult extract_core_levelset(const GroupSet& A, const GroupSet& B) {
    check_same_group(A.group(), B.group());
    if (A.empty() || B.empty()) throw std::invalid_argument("extract_core_levelset: empty input set");
    const GroupSpec& g = A.group();
    StructureResult r;
    r.method = "levelset";
    r.input_fingerprint = set_pair_fingerprint(A, B);

    const LevelDecomposition levels = dyadic_levels(A, B);
    r.c = levels.c;
    r.level_count_s = levels.s;
    r.energy_ab = energy(A, B);

    Rational cj_sum(0);
    for (const auto& lv : levels.levels) cj_sum = cj_sum + lv.cj;
    const Rational half_c = levels.c / Rational(2);
    r.checks.push_back(make_check("half_c_le_sum_cj", half_c, "<=", cj_sum));
    r.checks.push_back(make_check("sum_cj_le_c", cj_sum, "<=", levels.c));

    const Rational pick_bound = levels.c / Rational(2 * levels.s);
    const DyadicLevel* chosen = nullptr;
    for (const auto& lv : levels.levels)
        if (lv.cj >= pick_bound) {
            chosen = &lv;
            break;
        }
    if (!chosen) throw std::logic_error("extract_core_levelset: no level with c_j >= c/(2s)");
    r.level_j = chosen->j;
    r.cj = chosen->cj;
    r.Sj = chosen->set;
    r.checks.push_back(make_check("cj_ge_c_over_2s", r.cj, ">=", pick_bound));

    // threshold = 2^-j (c_j / c) |A|; with c_j = E_j/D and c = E/D this is
    // |A| E_j / (E 2^j).
    const Rational ratio = r.cj / r.c;
    r.threshold = ratio * Rational::from_int128((int128)A.size(), int128{1} << r.level_j);

    const IntFunction corr = correlate(r.Sj, A); // (S_j * (-A))
    std::vector<elem_index> kept;
    for (const auto x : B.elements())
        if (int_ge(corr.values[x], r.threshold)) kept.push_back(x);
    r.B1 = GroupSet(g, std::move(kept));
    r.lambda = maximal_dissociated(r.B1);
    detail::add_span_witnesses(r, g);

    const IntFunction convAB1 = convolve(A, r.B1);
    std::int64_t mass_on_level = 0;
    for (const auto x : r.Sj.elements()) mass_on_level += convAB1.values[x];
    const Rational mass_bound = r.threshold * Rational(static_cast<std::int64_t>(B.size()));
    r.checks.push_back(make_check("conv_mass_on_Sj_ge_bound", Rational(mass_on_level), ">=", mass_bound));

    const std::int64_t e1 = energy(A, r.B1);
    r.energy_ab1 = e1;
    const Rational guarantee = Rational(r.energy_ab) / Rational(16 * levels.s);
    r.checks.push_back(make_check("energy_AB1_ge_E_over_16s", Rational(e1), ">=", guarantee));
    r.checks.push_back(make_check("B1_nonempty", Rational(static_cast<std::int64_t>(r.B1.size())), ">=", Rational(1)));

    r.dim_branch = r.Sj.size() > A.size() ? "Sj" : "A";
    r.checks.push_back(detail::dimension_check(r.lambda, r.c, A.size()));
    return r;
}

struct VerifyReport {
    std::vector<CheckRecord> checks;
    bool ok = true;

    void add(CheckRecord c) {
        ok = ok && c.holds;
        checks.push_back(std::move(c));
    }
};

/// Recomputes every promised inequality of a StructureResult from the raw
/// input sets and the result's B1/Lambda. Tampered results fail here.
inline VerifyReport verify_structure(const GroupSet& A_in, const GroupSet& B_in, const StructureResult& r) {
    check_same_group(A_in.group(), B_in.group());
    if (set_pair_fingerprint(A_in, B_in) != r.input_fingerprint)
        throw std::invalid_argument("verify_structure: result was not produced from these inputs");

    const bool swap = r.swapped;
    const GroupSet& A = swap ? B_in : A_in;
    const GroupSet& B = swap ? A_in : B_in;
    const GroupSpec& g = A.group();
    VerifyReport report;

    bool subset = true;
    for (const auto x : r.B1.elements()) subset = subset && B.contains(x);
    report.add(make_check("B1_subset_of_B", Rational(subset ? 1 : 0), "==", Rational(1)));
    report.add(make_check("B1_nonempty", Rational(static_cast<std::int64_t>(r.B1.size())), ">=", Rational(1)));

    const bool lambda_ok = is_dissociated(g, r.lambda);
    report.add(make_check("lambda_dissociated", Rational(lambda_ok ? 1 : 0), "==", Rational(1)));

    std::int64_t witnessed = 0;
    for (const auto x : r.B1.elements()) {
        const auto w = span_witness(g, r.lambda, x);
        if (w && verify_sign_witness(g, *w) && w->target == x) ++witnessed;
    }
    report.add(make_check("B1_in_span_lambda", Rational(witnessed), "==",
                          Rational(static_cast<std::int64_t>(r.B1.size()))));

    const std::int64_t e = energy(A, B);
    const std::int64_t e1 = energy(A, r.B1);
    report.add(make_check("energy_AB_matches", Rational(e), "==", Rational(r.energy_ab)));
    report.add(make_check("energy_AB1_matches", Rational(e1), "==", Rational(r.energy_ab1)));

    if (r.method == "simple") {
        report.add(make_check("energy_AB1_ge_quarter_E", Rational(e1), ">=", Rational::from_int128(e, 4)));
    } else if (r.method == "levelset") {
        const LevelDecomposition levels = dyadic_levels(A, B);
        report.add(make_check("level_count_matches", Rational(levels.s), "==", Rational(r.level_count_s)));
        report.add(make_check("energy_AB1_ge_E_over_16s", Rational(e1), ">=",
                              Rational(e) / Rational(16 * std::max(levels.s, 1))));
    } else {
        throw std::invalid_argument("verify_structure: unknown method " + r.method);
    }

    report.add(detail::dimension_check(r.lambda, r.c, A.size()));

    if (A_in == B_in) {
        // E(A1) >= E(A,A1)^2 / E(A), checked as E(A1) E(A) >= E(A,A1)^2
        // in integers.
        const std::int64_t e11 = energy(r.B1, r.B1);
        const int128 lhs = (int128)e11 * e;
        const int128 rhs = (int128)e1 * e1;
        report.add(make_check("energy_A1_cauchy_schwarz", Rational(lhs >= rhs ? 1 : 0), "==", Rational(1)));
    }
    return report;
}

} // namespace addcomb
