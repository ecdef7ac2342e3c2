#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "quadtor/tate.hpp"
#include "quadtor/torsion.hpp"

namespace quadtor {

// One quadratic field where torsion grows: label D and the torsion H there.
struct GrowthRecord {
    Int D;
    GroupStructure H;
};

inline bool operator==(const GrowthRecord& a, const GrowthRecord& b) {
    return a.D == b.D && a.H == b.H;
}

// canonical order: |D| ascending, negative label first, then group shape
inline bool growth_record_less(const GrowthRecord& a, const GrowthRecord& b) {
    if (a.D != b.D) return label_less(a.D, b.D);
    return a.H < b.H;
}

// Quadratic fields predicted to yield new even torsion, straight from the
// torsion structure over Q:
//  - C2: shift the 2-torsion point to the origin, y^2 = x(x^2+ax+b); a point
//    of order 4 appears over Q(sqrt(a+2s)) and Q(sqrt(a-2s)) when b = s^2.
//  - C4, C6, C8: Tate normal form of a maximal generator; the doubling fields
//    exist exactly when the Tate parameter t satisfies a square condition.
//  - C2xC2: per 2-torsion point, the shifted model y^2 = x(x-A)(x-B) halves
//    over a single quadratic field determined by which of -A, -B is a square.
// All other groups get their growth fields from discriminant and halving
// candidates, so the prediction is empty.
inline std::vector<Int> predict_even_growth_fields(const Curve& E) {
    std::vector<Int> out;
    auto add = [&out](const Rat& v) {
        if (v == 0) return;
        const Int d = squarefree_part(v).first;
        if (d != 1 && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    };
    const TorsionData base = torsion_over_Q(E);
    const GroupStructure G = base.structure;
    const auto [Eb, f] = to_b_form(E);
    const Poly cubic({Eb.a6, Eb.a4, Eb.a2, Rat(1)});

    if (G == GroupStructure(1, 2)) {
        for (const Rat& r : rational_roots(cubic)) {
            const Rat a = 3 * r + Eb.a2;
            const Rat b = 3 * r * r + 2 * Eb.a2 * r + Eb.a4;
            const auto s = rat_sqrt(b);
            if (!s) continue;
            add(a + 2 * *s);
            add(a - 2 * *s);
        }
    } else if (G == GroupStructure(1, 4) || G == GroupStructure(1, 6) ||
               G == GroupStructure(1, 8)) {
        const TateForm tf = tate_normal_form(E, base.generators.back());
        const Rat t = tate_parameter(tf);
        if (G.m == 4) {
            if (const auto s = rat_sqrt(-t)) {
                add(1 + 4 * *s);
                add(1 - 4 * *s);
            }
        } else if (G.m == 6) {
            if (const auto s = rat_sqrt(-t)) {
                add((1 + *s) * (1 - 3 * *s));
                add((1 - *s) * (1 + 3 * *s));
            }
        } else if (t != 1) {
            if (const auto s = rat_sqrt(t / (1 - t))) {
                const Rat s2 = *s * *s, s4 = s2 * s2;
                add((s4 - 1) * (s2 + 2 * *s - 1));
                add((s4 - 1) * (s2 - 2 * *s - 1));
            }
        }
    } else if (G == GroupStructure(2, 2)) {
        for (const Rat& r : rational_roots(cubic)) {
            const Rat a = 3 * r + Eb.a2;
            const Rat b = 3 * r * r + 2 * Eb.a2 * r + Eb.a4;
            const auto w = rat_sqrt(a * a - 4 * b);
            if (!w) throw ConsistencyError("full 2-torsion expected");
            const Rat u1 = (a + *w) / 2, u2 = (a - *w) / 2; // -A and -B
            const bool q1 = rat_sqrt(u1).has_value(), q2 = rat_sqrt(u2).has_value();
            if (q1 && q2) continue;
            if (q1)
                add(u2);
            else if (q2)
                add(u1);
            else if (squarefree_part(u1).first == squarefree_part(u2).first)
                add(u1);
        }
    }
    return out;
}

// Every quadratic field that can carry torsion growth for E: the field of the
// 2-torsion (discriminant), the cyclotomic labels -1 and -3, the fields where
// an odd division polynomial root gains its y-coordinate, the halving fields
// of the rational points of maximal 2-power order, and the predicted doubling
// fields.  Sorted canonically.
inline std::vector<Int> candidate_fields(const Curve& E) {
    std::vector<Int> out;
    auto add = [&out](const Int& d) {
        if (d != 1 && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    };
    add(squarefree_part(E.disc).first);
    add(Int(-1));
    add(Int(-3));
    const auto [Eb, f] = to_b_form(E);
    const Poly rhs({Eb.a6, Eb.a4, Eb.a2, Rat(1)});
    for (int p : {3, 5, 7, 9}) {
        for (const Rat& x0 : rational_roots(division_polynomial(Eb, p))) {
            const Rat fx = rhs.eval(x0);
            if (fx == 0) continue;
            if (!rat_sqrt(fx)) add(squarefree_part(fx).first);
        }
    }
    const auto syl = detail::two_sylow(Eb, TowerField::rationals());
    if (syl.b > 0) {
        const int m2 = 1 << syl.b;
        for (const auto& pt : syl.elements) {
            if (pt.is_infinity()) continue;
            const auto o = order_at_most(Eb, pt, 16);
            if (!o || *o != m2) continue;
            for (const auto& d : halving_fields(Eb, pt)) add(d);
        }
    }
    for (const auto& d : predict_even_growth_fields(E)) add(d);
    std::sort(out.begin(), out.end(), label_less);
    return out;
}

// Consistency verdict for a growth report, checked against the
// classification tables.  Lookups only; never throws on bad data.
struct VerifyFlags {
    bool targets_ok = true; // every H possible for this G over a quadratic field
    bool counts_ok = true;  // every H realized by an admissible number of fields
    bool shape_ok = true;   // the growth multiset is an admissible full set
    bool size_ok = true;    // at most four growth fields
    bool tower_ok = true;   // tower torsion among the twenty admissible groups
    bool ambiguous = false; // informational: shape shared by two tower structures
    bool all_ok() const { return targets_ok && counts_ok && shape_ok && size_ok && tower_ok; }
};

inline VerifyFlags verify_growth(const GroupStructure& G,
                                 const std::vector<GrowthRecord>& growth,
                                 const GroupStructure& tower) {
    VerifyFlags flags;
    const auto& tab = tables();
    const auto targets = tab.growth_targets.find(G);
    std::map<GroupStructure, int> mult;
    GroupList shapes;
    for (const auto& rec : growth) {
        if (targets == tab.growth_targets.end() || !targets->second.count(rec.H))
            flags.targets_ok = false;
        ++mult[rec.H];
        shapes.push_back(rec.H);
    }
    for (const auto& [H, k] : mult) {
        const auto it = tab.growth_counts.find({G, H});
        if (it == tab.growth_counts.end() || !it->second.count(k)) flags.counts_ok = false;
    }
    if (!growth.empty()) {
        flags.shape_ok = shape_allowed(G, shapes);
        flags.ambiguous = shape_ambiguous(G, shapes);
    }
    flags.size_ok = growth.size() <= static_cast<std::size_t>(kMaxGrowthFields);
    flags.tower_ok = tab.over_two_tower.count(tower) > 0;
    return flags;
}

// Full growth analysis of one curve.
struct AnalysisReport {
    Curve curve;
    TorsionData base;                // torsion over Q
    std::vector<GrowthRecord> growth;
    std::vector<Int> tower_gens;     // independent labels spanning the growth tower
    TorsionData tower;               // torsion over that tower
    int degree = 1;                  // [F : Q]
    VerifyFlags flags;
};

inline bool tower_contains_label(const TowerPtr& F, const Int& d) {
    for (const auto& [mask, lab] : F->quad_subfields())
        if (lab == d) return true;
    return false;
}

// Compute the torsion over Q, scan every candidate quadratic field for
// growth, span the compositum of the growth fields, compute the torsion
// there, and check the whole picture against the classification.
inline AnalysisReport analyze(const Curve& E) {
    TorsionData base = torsion_over_Q(E);
    std::vector<GrowthRecord> growth;
    for (const Int& D : candidate_fields(E)) {
        TorsionData over = torsion_over_quadratic(E, D);
        if (!(over.structure == base.structure)) growth.push_back({D, over.structure});
    }
    std::vector<Int> gens;
    TowerPtr F = TowerField::rationals();
    for (const auto& rec : growth) {
        if (tower_contains_label(F, rec.D)) continue;
        if (gens.size() == 3)
            throw ConsistencyError("growth fields span a tower of degree above 8");
        gens.push_back(rec.D);
        F = TowerField::make(gens);
    }
    TorsionData tower = torsion_over_tower(E, F);
    const VerifyFlags flags = verify_growth(base.structure, growth, tower.structure);
    return AnalysisReport{E,
                          std::move(base),
                          std::move(growth),
                          std::move(gens),
                          std::move(tower),
                          1 << static_cast<int>(F->k()),
                          flags};
}

inline VerifyFlags verify_report(const AnalysisReport& r) {
    return verify_growth(r.base.structure, r.growth, r.tower.structure);
}

} // namespace quadtor
