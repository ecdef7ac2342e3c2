#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "quadtor/growth.hpp"

namespace quadtor {

// One golden row: a labelled curve with its expected analysis outcome.
struct FixtureRow {
    std::string label;
    Int a1, a2, a3, a4, a6;
    GroupStructure expected_G;
    std::vector<GrowthRecord> expected_records; // canonical order
    GroupStructure expected_tower;
    int expected_degree = 1;

    Curve curve() const { return Curve(Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6)); }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline Int parse_int(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) throw ParseError("empty integer");
    try {
        return Int(t);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad integer '" + t + "'");
    }
}

} // namespace detail

// Plain-text fixture: one row per line, six '|'-separated fields
//   label | a1,a2,a3,a4,a6 | G | growth records or - | tower torsion | degree
// with groups as "nxm" and growth records as space-separated "D:nxm".
// '#' lines and blank lines are skipped.
inline std::vector<FixtureRow> load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture '" + path + "'");
    std::vector<FixtureRow> rows;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = detail::trim(line);
        if (body.empty() || body[0] == '#') continue;
        const auto fields = detail::split(body, '|');
        if (fields.size() != 6) throw fail("expected 6 fields, got " + std::to_string(fields.size()));
        FixtureRow row;
        try {
            row.label = detail::trim(fields[0]);
            if (row.label.empty()) throw ParseError("empty label");
            const auto cs = detail::split(fields[1], ',');
            if (cs.size() != 5) throw ParseError("expected 5 coefficients");
            row.a1 = detail::parse_int(cs[0]);
            row.a2 = detail::parse_int(cs[1]);
            row.a3 = detail::parse_int(cs[2]);
            row.a4 = detail::parse_int(cs[3]);
            row.a6 = detail::parse_int(cs[4]);
            row.expected_G = GroupStructure::parse(detail::trim(fields[2]));
            const std::string recs = detail::trim(fields[3]);
            if (recs != "-") {
                for (const auto& tok : detail::split(recs, ' ')) {
                    if (tok.empty()) continue;
                    const auto colon = tok.find(':');
                    if (colon == std::string::npos) throw ParseError("bad record '" + tok + "'");
                    GrowthRecord rec{detail::parse_int(tok.substr(0, colon)),
                                     GroupStructure::parse(tok.substr(colon + 1))};
                    row.expected_records.push_back(std::move(rec));
                }
            }
            row.expected_tower = GroupStructure::parse(detail::trim(fields[4]));
            row.expected_degree = static_cast<int>(detail::parse_int(fields[5]).get_si());
        } catch (const ParseError& e) {
            throw fail(e.what());
        }
        if (!seen.insert(row.label).second) throw fail("duplicate label '" + row.label + "'");
        // row invariants, reported by label
        try {
            (void)row.curve();
            for (const auto& rec : row.expected_records) (void)SquarefreeLabel(rec.D);
        } catch (const DomainError& e) {
            throw ParseError(path + ": row " + row.label + ": " + e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace quadtor
