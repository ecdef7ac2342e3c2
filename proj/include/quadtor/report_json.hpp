#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quadtor/growth.hpp"

namespace quadtor {

inline constexpr int kReportSchemaVersion = 1;

// The comparable core of an analysis report: everything except the generator
// points, which are emitted for human consumption only.
struct ReportSummary {
    Rat a1, a2, a3, a4, a6;
    GroupStructure G;
    std::vector<GrowthRecord> growth;
    std::vector<Int> tower_labels;
    GroupStructure tower_torsion;
    int degree = 1;
    VerifyFlags flags;
};

inline bool operator==(const VerifyFlags& a, const VerifyFlags& b) {
    return a.targets_ok == b.targets_ok && a.counts_ok == b.counts_ok &&
           a.shape_ok == b.shape_ok && a.size_ok == b.size_ok && a.tower_ok == b.tower_ok &&
           a.ambiguous == b.ambiguous;
}

inline bool operator==(const ReportSummary& a, const ReportSummary& b) {
    return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a4 == b.a4 && a.a6 == b.a6 &&
           a.G == b.G && a.growth == b.growth && a.tower_labels == b.tower_labels &&
           a.tower_torsion == b.tower_torsion && a.degree == b.degree && a.flags == b.flags;
}

inline ReportSummary summarize(const AnalysisReport& r) {
    return ReportSummary{r.curve.a1,       r.curve.a2, r.curve.a3,           r.curve.a4,
                         r.curve.a6,       r.base.structure, r.growth,       r.tower_gens,
                         r.tower.structure, r.degree,  r.flags};
}

inline nlohmann::json flags_to_json(const VerifyFlags& f) {
    return nlohmann::json{{"targets", f.targets_ok}, {"counts", f.counts_ok},
                          {"shape", f.shape_ok},     {"size", f.size_ok},
                          {"tower", f.tower_ok},     {"ambiguous_shape", f.ambiguous},
                          {"all", f.all_ok()}};
}

// Exact values are serialized as decimal strings so that nothing is rounded.
inline nlohmann::json report_to_json(const AnalysisReport& r) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["curve"] = {{"a1", r.curve.a1.get_str()}, {"a2", r.curve.a2.get_str()},
                  {"a3", r.curve.a3.get_str()}, {"a4", r.curve.a4.get_str()},
                  {"a6", r.curve.a6.get_str()}, {"disc", r.curve.disc.get_str()},
                  {"j", r.curve.j.get_str()}};
    nlohmann::json base;
    base["structure"] = r.base.structure.key();
    base["display"] = r.base.structure.display();
    base["order"] = r.base.structure.order();
    base["generators"] = nlohmann::json::array();
    for (const auto& g : r.base.generators) base["generators"].push_back(g.describe());
    j["torsion_over_Q"] = std::move(base);
    j["growth"] = nlohmann::json::array();
    for (const auto& rec : r.growth)
        j["growth"].push_back({{"D", rec.D.get_str()},
                               {"structure", rec.H.key()},
                               {"display", rec.H.display()}});
    nlohmann::json tower;
    tower["labels"] = nlohmann::json::array();
    for (const auto& d : r.tower_gens) tower["labels"].push_back(d.get_str());
    tower["field"] = r.tower.field->describe();
    tower["degree"] = r.degree;
    tower["structure"] = r.tower.structure.key();
    tower["display"] = r.tower.structure.display();
    tower["generators"] = nlohmann::json::array();
    for (const auto& g : r.tower.generators) tower["generators"].push_back(g.describe());
    j["tower"] = std::move(tower);
    j["flags"] = flags_to_json(r.flags);
    return j;
}

inline ReportSummary summary_from_json(const nlohmann::json& j) {
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kReportSchemaVersion)
        throw ParseError("unsupported report schema");
    ReportSummary s;
    const auto& c = j.at("curve");
    s.a1 = Rat(c.at("a1").get<std::string>());
    s.a2 = Rat(c.at("a2").get<std::string>());
    s.a3 = Rat(c.at("a3").get<std::string>());
    s.a4 = Rat(c.at("a4").get<std::string>());
    s.a6 = Rat(c.at("a6").get<std::string>());
    s.G = GroupStructure::parse(j.at("torsion_over_Q").at("structure").get<std::string>());
    for (const auto& rec : j.at("growth"))
        s.growth.push_back({Int(rec.at("D").get<std::string>()),
                            GroupStructure::parse(rec.at("structure").get<std::string>())});
    const auto& t = j.at("tower");
    for (const auto& d : t.at("labels")) s.tower_labels.push_back(Int(d.get<std::string>()));
    s.tower_torsion = GroupStructure::parse(t.at("structure").get<std::string>());
    s.degree = t.at("degree").get<int>();
    const auto& f = j.at("flags");
    s.flags.targets_ok = f.at("targets").get<bool>();
    s.flags.counts_ok = f.at("counts").get<bool>();
    s.flags.shape_ok = f.at("shape").get<bool>();
    s.flags.size_ok = f.at("size").get<bool>();
    s.flags.tower_ok = f.at("tower").get<bool>();
    s.flags.ambiguous = f.at("ambiguous_shape").get<bool>();
    return s;
}

} // namespace quadtor
