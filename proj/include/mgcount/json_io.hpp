#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgcount/asymptotic.hpp"
#include "mgcount/errors.hpp"
#include "mgcount/multigraph.hpp"
#include "mgcount/numeric.hpp"
#include "mgcount/pairing_model.hpp"
#include "mgcount/switching_calculus.hpp"
#include "mgcount/switching_engine.hpp"

namespace mgcount {

// Ordered JSON keeps field order stable across round trips.
using json = nlohmann::ordered_json;

inline std::string int_to_string(const Int& v) { return v.str(); }

inline Int int_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Int(j.get<long long>());
        if (j.is_string()) return Int(j.get<std::string>());
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad integer: ") + e.what());
    }
    throw parse_error("expected integer or decimal string");
}

// Rationals serialize as "p/q" (plain "p" when q = 1); integers and exact
// binary floats are accepted on input.
inline std::string rat_to_string(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

inline Rat rat_from_json(const json& j) {
    try {
        if (j.is_number_integer()) return Rat(j.get<long long>());
        if (j.is_number_float()) return Rat(j.get<double>());
        if (j.is_string()) {
            const std::string s = j.get<std::string>();
            auto slash = s.find('/');
            if (slash == std::string::npos) return Rat(Int(s));
            return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
        }
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad rational: ") + e.what());
    }
    throw parse_error("expected rational as number or \"p/q\" string");
}

// --- multigraph: {"n": n, "mult": full symmetric matrix} -------------------

inline json to_json(const multigraph& g) {
    json rows = json::array();
    for (int i = 0; i < g.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < g.n(); ++j) row.push_back(g.get(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"n", g.n()}, {"mult", std::move(rows)}};
}

inline multigraph multigraph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("mult"))
        throw parse_error("multigraph needs fields n and mult");
    int n = j.at("n").get<int>();
    std::vector<std::vector<long long>> mat;
    for (const auto& row : j.at("mult")) {
        mat.push_back(row.get<std::vector<long long>>());
    }
    if (static_cast<int>(mat.size()) != n) throw parse_error("mult must have n rows");
    return multigraph::from_matrix(mat);
}

// --- pairing: degrees plus 1-based point pairs -----------------------------

inline json to_json(const pairing& p) {
    json pairs = json::array();
    for (const auto& [a, b] : p.pairs) pairs.push_back(json::array({a, b}));
    return json{{"degrees", p.degrees}, {"pairs", std::move(pairs)}};
}

inline pairing pairing_from_json(const json& j) {
    if (!j.is_object() || !j.contains("degrees") || !j.contains("pairs"))
        throw parse_error("pairing needs fields degrees and pairs");
    pairing p;
    p.degrees = j.at("degrees").get<std::vector<int>>();
    for (const auto& pr : j.at("pairs")) {
        if (!pr.is_array() || pr.size() != 2) throw parse_error("each pair is [i, j]");
        p.pairs.push_back({pr[0].get<int>(), pr[1].get<int>()});
    }
    p.validate();
    return p;
}

// --- switching move: colour plus vertex sequence, 1-based on the wire ------

inline json to_json(const switching_move& m) {
    std::vector<int> seq;
    seq.reserve(m.seq.size());
    for (int v : m.seq) seq.push_back(v + 1);
    return json{{"colour", m.colour}, {"seq", seq}};
}

inline switching_move move_from_json(const json& j) {
    if (!j.is_object() || !j.contains("colour") || !j.contains("seq"))
        throw parse_error("move needs fields colour and seq");
    switching_move m;
    m.colour = j.at("colour").get<int>();
    m.seq = j.at("seq").get<std::vector<int>>();
    for (int& v : m.seq) {
        if (v < 1) throw parse_error("move vertices are 1-based");
        --v;
    }
    return m;
}

// --- flow network with optional Y/Z selection -------------------------------

struct network_document {
    flow_network net;
    std::vector<std::string> Y, Z;
};

inline json to_json(const flow_network& net) {
    json verts = json::array();
    for (const auto& v : net.vertices) {
        verts.push_back(json{{"id", v.id}, {"N", rat_to_string(v.N)}});
    }
    json edges = json::array();
    for (const auto& e : net.edges) {
        edges.push_back(json{{"from", e.from},
                             {"to", e.to},
                             {"colour", e.colour},
                             {"alpha", rat_to_string(e.alpha)},
                             {"s", rat_to_string(e.s)}});
    }
    json lambda = json::object();
    for (const auto& [v, colours] : net.lambda) {
        json inner = json::object();
        for (const auto& [c, val] : colours) inner[c] = rat_to_string(val);
        lambda[v] = std::move(inner);
    }
    return json{{"vertices", std::move(verts)},
                {"edges", std::move(edges)},
                {"lambda", std::move(lambda)}};
}

inline json to_json(const network_document& doc) {
    json j = to_json(doc.net);
    j["Y"] = doc.Y;
    j["Z"] = doc.Z;
    return j;
}

inline flow_network network_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw parse_error("network needs fields vertices and edges");
    flow_network net;
    for (const auto& v : j.at("vertices")) {
        net.vertices.push_back({v.at("id").get<std::string>(), rat_from_json(v.at("N"))});
    }
    for (const auto& e : j.at("edges")) {
        net.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                             e.at("colour").get<std::string>(), rat_from_json(e.at("alpha")),
                             rat_from_json(e.at("s"))});
    }
    if (j.contains("lambda")) {
        for (const auto& [v, colours] : j.at("lambda").items()) {
            for (const auto& [c, val] : colours.items()) {
                net.lambda[v][c] = rat_from_json(val);
            }
        }
    }
    return net;
}

inline network_document network_document_from_json(const json& j) {
    network_document doc;
    doc.net = network_from_json(j);
    if (j.contains("Y")) doc.Y = j.at("Y").get<std::vector<std::string>>();
    if (j.contains("Z")) doc.Z = j.at("Z").get<std::vector<std::string>>();
    return doc;
}

// --- estimates --------------------------------------------------------------

inline json to_json(const estimate& e) {
    json terms = json::object();
    for (const auto& [name, v] : e.exponent_terms) {
        terms[name] = static_cast<double>(v);
    }
    return json{{"log_value", static_cast<double>(e.log_value)},
                {"leading_term", rat_to_string(e.leading_term)},
                {"exponent_terms", std::move(terms)},
                {"error_scale", rat_to_string(e.error_scale)}};
}

// --- files ------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

}  // namespace mgcount
