#include "modelth/json_io.hpp"

#include <fstream>

#include "modelth/errors.hpp"

namespace modelth {

Json signature_to_json(const Signature& sig) {
    Json j;
    j["relations"] = Json::array();
    for (const auto& [n, a] : sig.relations) j["relations"].push_back(Json::array({n, a}));
    j["functions"] = Json::array();
    for (const auto& [n, a] : sig.functions) j["functions"].push_back(Json::array({n, a}));
    j["membership"] = sig.membership ? Json(*sig.membership) : Json(nullptr);
    return j;
}

Signature signature_from_json(const Json& j) {
    Signature sig;
    for (const auto& e : j.value("relations", Json::array()))
        sig.relations.push_back({e.at(0).get<std::string>(), e.at(1).get<int>()});
    for (const auto& e : j.value("functions", Json::array()))
        sig.functions.push_back({e.at(0).get<std::string>(), e.at(1).get<int>()});
    if (j.contains("membership") && !j["membership"].is_null()) {
        sig.membership = j["membership"].get<std::string>();
        if (!sig.has_relation(*sig.membership)) sig.relations.push_back({*sig.membership, 2});
    }
    sig.validate();
    return sig;
}

Json structure_to_json(const FinStructure& m) {
    Json j;
    j["size"] = m.size;
    j["relations"] = Json::object();
    for (const auto& [name, r] : m.relations) {
        Json arr = Json::array();
        for (const auto& t : m.rel_tuples(name)) arr.push_back(t);
        j["relations"][name] = std::move(arr);
    }
    j["functions"] = Json::object();
    for (const auto& [name, f] : m.functions) {
        Json arr = Json::array();
        for (int idx = 0; idx < static_cast<int>(f.cells.size()); idx++) {
            std::vector<int> row = m.index_tuple(idx, f.arity);
            row.push_back(f.cells[idx]);
            arr.push_back(row);
        }
        j["functions"][name] = std::move(arr);
    }
    return j;
}

FinStructure structure_from_json(const Json& j, const Signature& sig) {
    FinStructure m = FinStructure::empty(sig, j.at("size").get<int>());
    Json rels = j.value("relations", Json::object());
    for (const auto& [name, arr] : rels.items())
        for (const auto& t : arr) m.set_rel(name, t.get<std::vector<int>>(), true);
    Json funcs = j.value("functions", Json::object());
    for (const auto& [name, arr] : funcs.items())
        for (const auto& row : arr) {
            std::vector<int> r = row.get<std::vector<int>>();
            int val = r.back();
            r.pop_back();
            m.set_func(name, r, val);
        }
    m.validate();
    return m;
}

Json code_to_json(const PointedCode& c) {
    Json j;
    j["domain"] = c.domain;
    Json arr = Json::array();
    for (auto [u, v] : c.rel) arr.push_back(Json::array({u, v}));
    j["rel"] = std::move(arr);
    return j;
}

PointedCode code_from_json(const Json& j) {
    PointedCode c;
    c.domain = j.at("domain").get<int>();
    for (const auto& e : j.value("rel", Json::array()))
        c.rel.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    c.normalize();
    return c;
}

Json class_to_json(const BoundedClass& c) {
    Json j;
    j["signature"] = signature_to_json(c.sig);
    j["size_bound"] = c.size_bound;
    j["axioms"] = Json::array();
    for (const auto& ax : c.axioms) j["axioms"].push_back(print(ax));
    j["models"] = Json::array();
    for (const auto& m : c.models) j["models"].push_back(structure_to_json(m));
    return j;
}

BoundedClass class_from_json(const Json& j) {
    BoundedClass c;
    c.sig = signature_from_json(j.at("signature"));
    c.size_bound = j.at("size_bound").get<int>();
    for (const auto& s : j.value("axioms", Json::array()))
        c.axioms.push_back(parse(s.get<std::string>(), c.sig));
    for (const auto& m : j.value("models", Json::array()))
        c.models.push_back(structure_from_json(m, c.sig));
    c.validate();
    return c;
}

Json ec_report_to_json(const EcReport& r) {
    Json j;
    j["model"] = r.model_index;
    j["verdict"] = to_string(r.verdict);
    if (r.verdict == EcVerdict::Refuted) {
        j["extension"] = r.extension_index;
        j["embedding"] = r.embedding.map;
        j["witness"] = print(*r.witness);
        Json params = Json::object();
        for (const auto& [v, e] : r.parameters) params[v] = e;
        j["parameters"] = std::move(params);
    }
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open file '" + path + "'");
    Json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw SpecError("cannot write file '" + path + "'");
    out << text;
}

} // namespace modelth
