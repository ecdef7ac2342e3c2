#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "quadtor/groups.hpp"

namespace quadtor {

using GroupList = std::vector<GroupStructure>; // multiset of growth targets, kept sorted

// Growth sets never exceed four fields.
inline constexpr int kMaxGrowthFields = 4;

// Classification data for torsion of elliptic curves over Q and its growth in
// quadratic and multiquadratic extensions.  All sets are finite and fixed.
struct ClassificationTables {
    // torsion groups over Q (15 groups)
    std::set<GroupStructure> over_Q;
    // torsion groups over quadratic fields, arbitrary curves (26 groups)
    std::set<GroupStructure> over_quadratic;
    // torsion over quadratic fields of curves defined over Q (22 groups)
    std::set<GroupStructure> base_change_quadratic;
    // torsion over the compositum of all quadratic fields, curves over Q (20 groups)
    std::set<GroupStructure> over_two_tower;
    // G -> all groups that can occur over some quadratic field for a curve with
    // rational torsion G (includes G itself)
    std::map<GroupStructure, std::set<GroupStructure>> growth_targets;
    // (G, H) with H != G -> allowed number of quadratic fields realizing H,
    // given that at least one does
    std::map<std::pair<GroupStructure, GroupStructure>, std::set<int>> growth_counts;
    // G -> all multisets of growth targets that occur as a full growth set
    // (empty set of shapes means torsion never grows)
    std::map<GroupStructure, std::set<GroupList>> growth_shapes;
    // shapes (G, S) realized by two distinct tower torsion structures
    std::set<std::pair<GroupStructure, GroupList>> ambiguous_shapes;
};

namespace detail {

inline ClassificationTables build_tables() {
    ClassificationTables T;
    auto C = [](int m) { return GroupStructure(1, m); };
    auto P = [](int n, int m) { return GroupStructure(n, m); };

    for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12}) T.over_Q.insert(C(m));
    for (int m : {2, 4, 6, 8}) T.over_Q.insert(P(2, m));

    for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 18})
        T.over_quadratic.insert(C(m));
    for (int m : {2, 4, 6, 8, 10, 12}) T.over_quadratic.insert(P(2, m));
    T.over_quadratic.insert(P(3, 3));
    T.over_quadratic.insert(P(3, 6));
    T.over_quadratic.insert(P(4, 4));

    for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16})
        T.base_change_quadratic.insert(C(m));
    for (int m : {2, 4, 6, 8, 10, 12}) T.base_change_quadratic.insert(P(2, m));
    T.base_change_quadratic.insert(P(3, 3));
    T.base_change_quadratic.insert(P(3, 6));
    T.base_change_quadratic.insert(P(4, 4));

    for (int m : {1, 3, 5, 7, 9, 15}) T.over_two_tower.insert(C(m));
    for (int N : {1, 2, 3, 4, 5, 6, 8}) T.over_two_tower.insert(P(2, 2 * N));
    for (int N : {1, 2, 3, 4}) T.over_two_tower.insert(P(4, 4 * N));
    T.over_two_tower.insert(P(3, 3));
    T.over_two_tower.insert(P(6, 6));
    T.over_two_tower.insert(P(8, 8));

    auto targets = [&](GroupStructure g, std::vector<GroupStructure> hs) {
        T.growth_targets[g] = std::set<GroupStructure>(hs.begin(), hs.end());
    };
    targets(C(1), {C(1), C(3), C(5), C(7), C(9)});
    targets(C(2), {C(2), C(4), C(6), C(8), C(10), C(12), C(16), P(2, 2), P(2, 6), P(2, 10)});
    targets(C(3), {C(3), C(15), P(3, 3)});
    targets(C(4), {C(4), C(8), C(12), P(2, 4), P(2, 8), P(2, 12), P(4, 4)});
    targets(C(5), {C(5), C(15)});
    targets(C(6), {C(6), C(12), P(2, 6), P(3, 6)});
    targets(C(7), {C(7)});
    targets(C(8), {C(8), C(16), P(2, 8)});
    targets(C(9), {C(9)});
    targets(C(10), {C(10), P(2, 10)});
    targets(C(12), {C(12), P(2, 12)});
    targets(P(2, 2), {P(2, 2), P(2, 4), P(2, 6), P(2, 8), P(2, 12)});
    targets(P(2, 4), {P(2, 4), P(2, 8), P(4, 4)});
    targets(P(2, 6), {P(2, 6), P(2, 12)});
    targets(P(2, 8), {P(2, 8)});

    auto counts = [&](GroupStructure g, GroupStructure h, std::set<int> ks) {
        T.growth_counts[{g, h}] = std::move(ks);
    };
    counts(C(1), C(3), {1, 2});
    counts(C(1), C(5), {1});
    counts(C(1), C(7), {1});
    counts(C(1), C(9), {1});
    counts(C(2), C(4), {1, 2});
    counts(C(2), C(6), {1, 2});
    counts(C(2), C(8), {1, 2});
    counts(C(2), C(10), {1});
    counts(C(2), C(12), {1});
    counts(C(2), C(16), {1});
    counts(C(2), P(2, 2), {1});
    counts(C(2), P(2, 6), {1});
    counts(C(2), P(2, 10), {1});
    counts(C(3), C(15), {1});
    counts(C(3), P(3, 3), {1});
    counts(C(4), C(8), {2});
    counts(C(4), C(12), {1});
    counts(C(4), P(2, 4), {1});
    counts(C(4), P(2, 8), {1});
    counts(C(4), P(2, 12), {1});
    counts(C(4), P(4, 4), {1});
    counts(C(5), C(15), {1});
    counts(C(6), C(12), {2});
    counts(C(6), P(2, 6), {1});
    counts(C(6), P(3, 6), {1});
    counts(C(8), C(16), {2});
    counts(C(8), P(2, 8), {1});
    counts(C(10), P(2, 10), {1});
    counts(C(12), P(2, 12), {1});
    counts(P(2, 2), P(2, 4), {1, 2, 3});
    counts(P(2, 2), P(2, 6), {1});
    counts(P(2, 2), P(2, 8), {1});
    counts(P(2, 2), P(2, 12), {1});
    counts(P(2, 4), P(2, 8), {1, 2});
    counts(P(2, 4), P(4, 4), {1});
    counts(P(2, 6), P(2, 12), {1});

    auto shape = [&](GroupStructure g, GroupList s) {
        std::sort(s.begin(), s.end());
        T.growth_shapes[g].insert(std::move(s));
    };
    for (int m : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12}) T.growth_shapes[C(m)];
    for (int m : {2, 4, 6, 8}) T.growth_shapes[P(2, m)];

    shape(C(1), {C(3)});
    shape(C(1), {C(5)});
    shape(C(1), {C(7)});
    shape(C(1), {C(9)});
    shape(C(1), {C(3), C(3)});
    shape(C(1), {C(3), C(5)});

    shape(C(2), {P(2, 2)});
    shape(C(2), {P(2, 6)});
    shape(C(2), {P(2, 10)});
    shape(C(2), {P(2, 2), C(6)});
    shape(C(2), {P(2, 2), C(10)});
    shape(C(2), {P(2, 6), C(6)});
    shape(C(2), {P(2, 2), C(4), C(4)});
    shape(C(2), {P(2, 2), C(6), C(6)});
    shape(C(2), {P(2, 2), C(8), C(8)});
    shape(C(2), {P(2, 2), C(4), C(8)});
    shape(C(2), {P(2, 2), C(4), C(12)});
    shape(C(2), {P(2, 2), C(4), C(16)});
    shape(C(2), {P(2, 6), C(4), C(4)});
    shape(C(2), {P(2, 2), C(4), C(4), C(6)});

    shape(C(3), {C(15)});
    shape(C(3), {P(3, 3)});

    shape(C(4), {P(2, 4)});
    shape(C(4), {P(2, 8)});
    shape(C(4), {P(2, 12)});
    shape(C(4), {P(4, 4)});
    shape(C(4), {P(2, 4), C(12)});
    shape(C(4), {P(2, 4), C(8), C(8)});
    shape(C(4), {P(2, 8), C(8), C(8)});

    shape(C(5), {C(15)});

    shape(C(6), {P(2, 6)});
    shape(C(6), {P(2, 6), P(3, 6)});
    shape(C(6), {P(2, 6), C(12), C(12)});

    shape(C(8), {P(2, 8)});
    shape(C(8), {P(2, 8), C(16), C(16)});

    shape(C(10), {P(2, 10)});

    shape(C(12), {P(2, 12)});

    shape(P(2, 2), {P(2, 4)});
    shape(P(2, 2), {P(2, 6)});
    shape(P(2, 2), {P(2, 8)});
    shape(P(2, 2), {P(2, 12)});
    shape(P(2, 2), {P(2, 4), P(2, 4)});
    shape(P(2, 2), {P(2, 4), P(2, 6)});
    shape(P(2, 2), {P(2, 4), P(2, 8)});
    shape(P(2, 2), {P(2, 4), P(2, 4), P(2, 4)});
    shape(P(2, 2), {P(2, 4), P(2, 4), P(2, 8)});

    shape(P(2, 4), {P(2, 8)});
    shape(P(2, 4), {P(4, 4)});
    shape(P(2, 4), {P(2, 8), P(4, 4)});
    shape(P(2, 4), {P(2, 8), P(2, 8)});
    shape(P(2, 4), {P(2, 8), P(2, 8), P(4, 4)});

    shape(P(2, 6), {P(2, 12)});

    auto ambiguous = [&](GroupStructure g, GroupList s) {
        std::sort(s.begin(), s.end());
        T.ambiguous_shapes.insert({g, std::move(s)});
    };
    ambiguous(C(2), {P(2, 2), C(4), C(4)});
    ambiguous(P(2, 2), {P(2, 4), P(2, 4)});

    return T;
}

} // namespace detail

inline const ClassificationTables& tables() {
    static const ClassificationTables t = detail::build_tables();
    return t;
}

// True when the multiset s (any order) is an admissible full growth set for g.
inline bool shape_allowed(const GroupStructure& g, GroupList s) {
    std::sort(s.begin(), s.end());
    const auto it = tables().growth_shapes.find(g);
    if (it == tables().growth_shapes.end()) return false;
    return it->second.count(s) > 0;
}

inline bool shape_ambiguous(const GroupStructure& g, GroupList s) {
    std::sort(s.begin(), s.end());
    return tables().ambiguous_shapes.count({g, std::move(s)}) > 0;
}

} // namespace quadtor
