#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "corpus.hpp"
#include "cycle_graph.hpp"
#include "structure.hpp"
#include "symmetry.hpp"

namespace addcomb::io {

// Insertion-ordered JSON keeps documents byte-stable across runs.
using json = nlohmann::ordered_json;

class parse_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline json group_to_json(const GroupSpec& g) {
    json j;
    j["orders"] = g.orders();
    return j;
}

inline GroupSpec group_from_json(const json& j) {
    if (!j.contains("orders") || !j["orders"].is_array())
        throw parse_error("group descriptor needs an \"orders\" array");
    return GroupSpec(j["orders"].get<std::vector<std::int64_t>>());
}

inline json element_to_json(const GroupSpec& g, elem_index x) { return json(g.decode(x)); }

inline elem_index element_from_json(const GroupSpec& g, const json& j) {
    if (!j.is_array()) throw parse_error("element must be a coordinate array");
    return g.encode(j.get<Coords>());
}

inline json elements_to_json(const GroupSpec& g, const std::vector<elem_index>& elems) {
    json arr = json::array();
    for (const auto e : elems) arr.push_back(element_to_json(g, e));
    return arr;
}

inline std::vector<elem_index> elements_from_json(const GroupSpec& g, const json& j) {
    if (!j.is_array()) throw parse_error("expected an array of elements");
    std::vector<elem_index> elems;
    elems.reserve(j.size());
    for (const auto& e : j) elems.push_back(element_from_json(g, e));
    return elems;
}

/// Set file: {"group": {"orders": [...]}, "elements": [[...], ...]}.
/// Extra keys are ignored so command outputs can be fed back as inputs.
inline json set_to_json(const GroupSet& A) {
    json j;
    j["group"] = group_to_json(A.group());
    j["elements"] = elements_to_json(A.group(), A.elements());
    return j;
}

inline GroupSet set_from_json(const json& j) {
    if (!j.contains("group")) throw parse_error("set document needs a \"group\" key");
    if (!j.contains("elements")) throw parse_error("set document needs an \"elements\" key");
    const GroupSpec g = group_from_json(j["group"]);
    return GroupSet(g, elements_from_json(g, j["elements"]));
}

inline json witness_to_json(const GroupSpec& g, const SignWitness& w) {
    json j;
    j["base"] = elements_to_json(g, w.base);
    j["coeffs"] = json::array();
    for (const auto c : w.coeffs) j["coeffs"].push_back(static_cast<int>(c));
    j["target"] = element_to_json(g, w.target);
    return j;
}

inline SignWitness witness_from_json(const GroupSpec& g, const json& j) {
    SignWitness w;
    w.base = elements_from_json(g, j.at("base"));
    for (const auto& c : j.at("coeffs")) w.coeffs.push_back(static_cast<std::int8_t>(c.get<int>()));
    w.target = element_from_json(g, j.at("target"));
    return w;
}

inline json certificate_to_json(const GroupSpec& g, const DependencyCertificate& cert) {
    json j;
    j["base"] = elements_to_json(g, cert.base);
    j["coeffs"] = cert.coeffs;
    j["weight"] = cert.weight;
    return j;
}

inline DependencyCertificate certificate_from_json(const GroupSpec& g, const json& j) {
    DependencyCertificate cert;
    cert.base = elements_from_json(g, j.at("base"));
    cert.coeffs = j.at("coeffs").get<std::vector<int>>();
    cert.weight = j.value("weight", 0);
    return cert;
}

inline json cycle_to_json(const ColoredBipartiteGraph& graph, const SpecialCycle& cycle) {
    json j;
    json verts = json::array();
    for (const auto& v : cycle.vertices) {
        json jv;
        jv["side"] = v.left ? "left" : "right";
        jv["value"] =
            element_to_json(graph.group, v.left ? graph.left_value[v.id] : graph.right_value[v.id]);
        verts.push_back(jv);
    }
    j["vertices"] = verts;
    json colors = json::array();
    for (const auto e : cycle.edge_ids)
        colors.push_back(element_to_json(graph.group, graph.lambda[graph.edges[e].color]));
    j["colors"] = colors;
    json signs = json::array();
    for (const auto s : cycle_signs(cycle)) signs.push_back(static_cast<int>(s));
    j["signs"] = signs;
    j["special_positions"] = cycle.special_positions;
    j["length"] = cycle.length();
    return j;
}

inline json check_to_json(const CheckRecord& c) {
    json j;
    j["name"] = c.name;
    j["lhs"] = c.lhs.str();
    j["relation"] = c.relation;
    j["rhs"] = c.rhs.str();
    j["holds"] = c.holds;
    return j;
}

inline json structure_result_to_json(const GroupSet& A, const GroupSet& B, const StructureResult& r) {
    const GroupSpec& g = A.group();
    json j;
    j["kind"] = "structure_result";
    j["method"] = r.method;
    j["inputs"] = json{{"A", set_to_json(A)}, {"B", set_to_json(B)}};
    j["swapped"] = r.swapped;
    j["c"] = r.c.str();
    j["threshold"] = r.threshold.str();
    j["energy_AB"] = r.energy_ab;
    j["energy_AB1"] = r.energy_ab1;
    j["B1"] = elements_to_json(g, r.B1.elements());
    j["lambda"] = elements_to_json(g, r.lambda);
    json witnesses = json::array();
    for (const auto& w : r.span_witnesses) witnesses.push_back(witness_to_json(g, w));
    j["span_witnesses"] = witnesses;
    if (r.method == "levelset") {
        j["level_j"] = r.level_j;
        j["level_count_s"] = r.level_count_s;
        j["c_j"] = r.cj.str();
        j["S_j"] = elements_to_json(g, r.Sj.elements());
        j["dim_branch"] = r.dim_branch;
    }
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));
    j["checks"] = checks;
    return j;
}

inline json levels_to_json(const GroupSet& A, const GroupSet& B, const LevelDecomposition& d) {
    json j;
    j["kind"] = "level_decomposition";
    j["c"] = d.c.str();
    j["s"] = d.s;
    json levels = json::array();
    for (const auto& lv : d.levels) {
        json jl;
        jl["j"] = lv.j;
        jl["c_j"] = lv.cj.str();
        jl["elements"] = elements_to_json(A.group(), lv.set.elements());
        levels.push_back(jl);
    }
    j["levels"] = levels;
    return j;
}

inline json predictions_to_json(const corpus::ExampleInstance& inst) {
    json j;
    j["kind"] = "example";
    j["name"] = inst.name;
    j["group"] = group_to_json(inst.group);
    j["A"] = elements_to_json(inst.group, inst.A.elements());
    j["B"] = elements_to_json(inst.group, inst.B.elements());
    json preds = json::array();
    for (const auto& p : inst.predictions) {
        json jp;
        jp["name"] = p.name;
        jp["relation"] = p.relation;
        jp["value"] = p.value;
        jp["note"] = p.note;
        preds.push_back(jp);
    }
    j["predictions"] = preds;
    return j;
}

inline std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ":" + std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
    }
}

inline GroupSet load_set_file(const std::string& path) {
    try {
        return set_from_json(load_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace addcomb::io
