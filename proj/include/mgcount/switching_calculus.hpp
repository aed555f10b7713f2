#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mgcount/errors.hpp"
#include "mgcount/numeric.hpp"

namespace mgcount {

// Weighted edge-coloured directed multigraph: each vertex carries a mass
// N(v) >= 0, each edge a colour, a weight alpha > 0 and a load s >= 0.
// lambda assigns per-vertex positive colour weights summing to at most 1
// over the colours entering that vertex.
struct flow_vertex {
    std::string id;
    Rat N;
};

struct flow_edge {
    std::string from, to;
    std::string colour;
    Rat alpha;
    Rat s;
};

struct flow_network {
    std::vector<flow_vertex> vertices;
    std::vector<flow_edge> edges;
    std::map<std::string, std::map<std::string, Rat>> lambda;

    int vertex_index(const std::string& id) const {
        for (size_t i = 0; i < vertices.size(); ++i) {
            if (vertices[i].id == id) return static_cast<int>(i);
        }
        return -1;
    }

    // Colours with at least one edge entering each vertex.
    std::map<std::string, std::set<std::string>> entering_colours() const {
        std::map<std::string, std::set<std::string>> in;
        for (const auto& e : edges) in[e.to].insert(e.colour);
        return in;
    }

    // Structural invariants of the type (distinct from load feasibility):
    // well-formed incidences, positive weights, and lambda admissibility.
    void validate() const {
        std::set<std::string> seen;
        for (const auto& v : vertices) {
            if (v.id.empty()) throw structural_violation("vertex with empty id");
            if (!seen.insert(v.id).second)
                throw structural_violation("duplicate vertex id " + v.id);
        }
        for (const auto& e : edges) {
            if (vertex_index(e.from) < 0 || vertex_index(e.to) < 0)
                throw structural_violation("edge references unknown vertex " +
                                           (vertex_index(e.from) < 0 ? e.from : e.to));
            if (e.alpha <= 0)
                throw structural_violation("edge " + e.from + "->" + e.to +
                                           " has non-positive alpha");
            if (e.s < 0)
                throw structural_violation("edge " + e.from + "->" + e.to +
                                           " has negative load");
        }
        for (const auto& [v, colours] : entering_colours()) {
            Rat sum = 0;
            for (const auto& c : colours) {
                auto vit = lambda.find(v);
                if (vit == lambda.end() || !vit->second.count(c))
                    throw structural_violation("lambda undefined at (" + v + ", " + c + ")");
                const Rat& l = vit->second.at(c);
                if (l <= 0)
                    throw structural_violation("lambda non-positive at (" + v + ", " + c + ")");
                sum += l;
            }
            if (sum > 1)
                throw structural_violation("lambda sums to more than 1 at " + v);
        }
    }

    // Fills lambda uniformly over each vertex's entering colours, keeping
    // any explicitly provided values.
    flow_network with_uniform_lambda() const {
        flow_network out = *this;
        for (const auto& [v, colours] : entering_colours()) {
            for (const auto& c : colours) {
                auto& slot = out.lambda[v];
                if (!slot.count(c)) slot[c] = Rat(1, static_cast<long long>(colours.size()));
            }
        }
        return out;
    }
};

inline Rat hat_alpha_of(const flow_network& net, const flow_edge& e) {
    auto vit = net.lambda.find(e.to);
    if (vit == net.lambda.end() || !vit->second.count(e.colour))
        throw structural_violation("lambda undefined at (" + e.to + ", " + e.colour + ")");
    const Rat& l = vit->second.at(e.colour);
    if (l <= 0)
        throw structural_violation("lambda non-positive at (" + e.to + ", " + e.colour + ")");
    return e.alpha / l;
}

// One feasibility defect.  kind is the violated inequality family:
//   "ineq1"  N(v) < 0                        (vertex set)
//   "ineq2"  s(e) < 0                        (vertex = "from->to")
//   "ineq3"  entering colour-c load exceeds N(v)
//   "ineq4"  weighted leaving colour-c load falls short of N(v)
struct violation {
    std::string kind;
    std::string vertex;
    std::string colour;
};

inline std::vector<violation> feasibility_violations(const flow_network& net) {
    std::vector<violation> out;
    for (const auto& v : net.vertices) {
        if (v.N < 0) out.push_back({"ineq1", v.id, ""});
    }
    for (const auto& e : net.edges) {
        if (e.s < 0) out.push_back({"ineq2", e.from + "->" + e.to, e.colour});
    }
    // Group loads by (vertex, colour) on each side.
    std::map<std::pair<std::string, std::string>, Rat> in_load, out_load;
    std::set<std::pair<std::string, std::string>> has_out;
    for (const auto& e : net.edges) {
        in_load[{e.to, e.colour}] += e.s;
        out_load[{e.from, e.colour}] += e.alpha * e.s;
        has_out.insert({e.from, e.colour});
    }
    for (const auto& v : net.vertices) {
        for (const auto& [key, load] : in_load) {
            if (key.first == v.id && load > v.N)
                out.push_back({"ineq3", v.id, key.second});
        }
        for (const auto& key : has_out) {
            if (key.first == v.id && out_load[key] < v.N)
                out.push_back({"ineq4", v.id, key.second});
        }
    }
    return out;
}

inline bool feasible(const flow_network& net) {
    return feasibility_violations(net).empty();
}

// The one-colour reduction: loads become s*lambda, weights become hat-alpha,
// and the single remaining colour gets lambda = 1 everywhere.  Feasibility
// of the original system implies feasibility of the collapsed one.
inline flow_network collapse_colours(const flow_network& net) {
    flow_network out;
    out.vertices = net.vertices;
    for (const auto& e : net.edges) {
        auto lit = net.lambda.find(e.to);
        if (lit == net.lambda.end() || !lit->second.count(e.colour))
            throw structural_violation("lambda undefined at (" + e.to + ", " + e.colour + ")");
        const Rat& l = lit->second.at(e.colour);
        out.edges.push_back({e.from, e.to, "*", e.alpha / l, e.s * l});
    }
    for (const auto& v : net.vertices) out.lambda[v.id]["*"] = 1;
    return out;
}

namespace detail {

struct path_maxima {
    Rat to_z = 0;
    Rat to_y = 0;
    bool any_to_z = false;
    bool any_to_y = false;
};

// Exhaustive DFS over vertex-simple directed paths that start in Y, avoid
// Y and Z internally, and end on first arrival in Z (recorded in to_z) or
// Y (recorded in to_y).  Arrival back at the start vertex counts as a Y
// ending: treating such cycles as paths can only enlarge the maxima, which
// keeps the certified bound on the safe side.
inline void path_dfs(const flow_network& net,
                     const std::vector<std::vector<std::pair<int, Rat>>>& adj,
                     const std::vector<int>& side,  // 0 none, 1 Y, 2 Z
                     int at, Rat product, std::vector<char>& visited, path_maxima& mx) {
    for (const auto& [next, ha] : adj[at]) {
        Rat p = product * ha;
        if (side[next] == 2) {
            if (!mx.any_to_z || p > mx.to_z) mx.to_z = p;
            mx.any_to_z = true;
            continue;
        }
        if (side[next] == 1) {
            if (!mx.any_to_y || p > mx.to_y) mx.to_y = p;
            mx.any_to_y = true;
            continue;
        }
        if (visited[next]) continue;
        visited[next] = 1;
        path_dfs(net, adj, side, next, p, visited, mx);
        visited[next] = 0;
    }
}

}  // namespace detail

// Maxima of the hat-alpha product over non-trivial directed simple paths
// from Y to Z and from Y to Y, with no internal vertices in Y or Z; the
// maximum over an empty path set is 0.
inline std::pair<Rat, Rat> hat_alpha_path(const flow_network& net,
                                          const std::vector<std::string>& y,
                                          const std::vector<std::string>& z) {
    std::set<std::string> ys(y.begin(), y.end()), zs(z.begin(), z.end());
    for (const auto& id : ys) {
        if (zs.count(id)) throw set_overlap("vertex " + id + " lies in both Y and Z");
    }
    const int n = static_cast<int>(net.vertices.size());
    std::vector<int> side(n, 0);
    auto index_of = [&](const std::string& id) {
        int i = net.vertex_index(id);
        if (i < 0) throw parse_error("unknown vertex id " + id);
        return i;
    };
    for (const auto& id : ys) side[index_of(id)] = 1;
    for (const auto& id : zs) side[index_of(id)] = 2;

    std::vector<std::vector<std::pair<int, Rat>>> adj(n);
    for (const auto& e : net.edges) {
        int from = net.vertex_index(e.from), to = net.vertex_index(e.to);
        adj[from].push_back({to, hat_alpha_of(net, e)});
    }

    detail::path_maxima mx;
    std::vector<char> visited(n, 0);
    for (int v = 0; v < n; ++v) {
        if (side[v] != 1) continue;
        visited.assign(n, 0);
        visited[v] = 1;
        detail::path_dfs(net, adj, side, v, Rat(1), visited, mx);
    }
    return {mx.to_z, mx.to_y};
}

// Outcome of checking the path inequality on the stored (N, s).
struct bound_certificate {
    Rat lhs;      // sum of N over Y
    Rat rhs;      // max_YZ / (1 - max_YY) times the sum of N over Z
    Rat max_yz;
    Rat max_yy;
    bool holds = false;
};

// Verifies the path inequality.  Structural conditions (nonempty disjoint
// Z, sinks inside Z, hat-alpha >= 1 edges only out of Z) are hard errors;
// a false inequality on a well-formed network is data.
inline bound_certificate verify_bound(const flow_network& net,
                                      const std::vector<std::string>& y,
                                      const std::vector<std::string>& z) {
    net.validate();
    std::set<std::string> ys(y.begin(), y.end()), zs(z.begin(), z.end());
    if (zs.empty()) throw structural_violation("condition 1: Z is empty");
    for (const auto& id : ys) {
        if (zs.count(id))
            throw structural_violation("condition 1: vertex " + id + " lies in both Y and Z");
    }
    for (const auto& id : ys) {
        if (net.vertex_index(id) < 0) throw parse_error("unknown vertex id " + id);
    }
    for (const auto& id : zs) {
        if (net.vertex_index(id) < 0) throw parse_error("unknown vertex id " + id);
    }
    std::set<std::string> has_out;
    for (const auto& e : net.edges) has_out.insert(e.from);
    for (const auto& v : net.vertices) {
        if (!has_out.count(v.id) && !zs.count(v.id))
            throw structural_violation("condition 2: sink " + v.id + " lies outside Z");
    }
    for (const auto& e : net.edges) {
        if (hat_alpha_of(net, e) >= 1 && !zs.count(e.from))
            throw structural_violation("condition 2: edge " + e.from + "->" + e.to +
                                       " has hat-alpha >= 1 but " + e.from +
                                       " lies outside Z");
    }

    auto [max_yz, max_yy] = hat_alpha_path(net, y, z);
    if (max_yy >= 1)
        throw divergent_bound("max over Y-to-Y paths reaches " + max_yy.str());

    bound_certificate cert;
    cert.max_yz = max_yz;
    cert.max_yy = max_yy;
    for (const auto& id : ys) cert.lhs += net.vertices[net.vertex_index(id)].N;
    Rat zsum = 0;
    for (const auto& id : zs) zsum += net.vertices[net.vertex_index(id)].N;
    cert.rhs = max_yz / (1 - max_yy) * zsum;
    cert.holds = cert.lhs <= cert.rhs;
    return cert;
}

// A finite family of disjoint object classes, per-colour multisets of
// ordered object pairs, and the claimed per-class application counts:
// a[(v,c)] a lower bound on how often the colour-c relation applies to
// each object of class v, b[(w,c)] an upper bound on how often an object
// of class w is hit.
struct counting_setup {
    std::map<std::string, std::vector<std::string>> classes;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations;
    std::map<std::pair<std::string, std::string>, Rat> a;
    std::map<std::pair<std::string, std::string>, Rat> b;
};

// Builds the weighted network of the counting recipe: N(v) = |S(v)|,
// s(vw) = s'(vw)/b_c(w), alpha(vw) = b_c(w)/a_c(v), after exhaustively
// checking each claimed a and b against the relation.  The result is
// feasible by construction.
inline flow_network from_counting_setup(
    const counting_setup& cs,
    const std::map<std::string, std::map<std::string, Rat>>& lambda = {}) {
    std::map<std::string, std::string> class_of;
    for (const auto& [v, objs] : cs.classes) {
        for (const auto& o : objs) {
            if (class_of.count(o))
                throw parse_error("object " + o + " appears in more than one class");
            class_of[o] = v;
        }
    }

    // s'(v,w,c), plus per-object out/in application counts per colour.
    std::map<std::tuple<std::string, std::string, std::string>, Rat> sprime;
    std::map<std::string, std::map<std::string, long long>> out_count, in_count;
    for (const auto& [c, pairs] : cs.relations) {
        for (const auto& [qo, ro] : pairs) {
            if (!class_of.count(qo)) throw parse_error("object " + qo + " not in any class");
            if (!class_of.count(ro)) throw parse_error("object " + ro + " not in any class");
            sprime[{class_of[qo], class_of[ro], c}] += 1;
            ++out_count[c][qo];
            ++in_count[c][ro];
        }
    }

    // Validate claimed a against every object's true out-count, b against
    // every in-count, exactly where the network has edges.
    std::set<std::pair<std::string, std::string>> out_vc, in_wc;
    for (const auto& [key, val] : sprime) {
        out_vc.insert({std::get<0>(key), std::get<2>(key)});
        in_wc.insert({std::get<1>(key), std::get<2>(key)});
    }
    for (const auto& [v, c] : out_vc) {
        auto it = cs.a.find({v, c});
        if (it == cs.a.end() || it->second <= 0)
            throw invalid_bound("missing or non-positive a at (" + v + ", " + c + ")");
        for (const auto& o : cs.classes.at(v)) {
            long long outs = 0;
            auto cit = out_count.find(c);
            if (cit != out_count.end()) {
                auto oit = cit->second.find(o);
                if (oit != cit->second.end()) outs = oit->second;
            }
            if (Rat(outs) < it->second)
                throw invalid_bound("a too large at (" + v + ", " + c + "): object " + o +
                                    " has out-count " + std::to_string(outs));
        }
    }
    for (const auto& [w, c] : in_wc) {
        auto it = cs.b.find({w, c});
        if (it == cs.b.end() || it->second <= 0)
            throw invalid_bound("missing or non-positive b at (" + w + ", " + c + ")");
        for (const auto& o : cs.classes.at(w)) {
            long long ins = 0;
            auto cit = in_count.find(c);
            if (cit != in_count.end()) {
                auto oit = cit->second.find(o);
                if (oit != cit->second.end()) ins = oit->second;
            }
            if (Rat(ins) > it->second)
                throw invalid_bound("b too small at (" + w + ", " + c + "): object " + o +
                                    " has in-count " + std::to_string(ins));
        }
    }

    flow_network net;
    for (const auto& [v, objs] : cs.classes) {
        net.vertices.push_back({v, Rat(static_cast<long long>(objs.size()))});
    }
    for (const auto& [key, sp] : sprime) {
        const auto& [v, w, c] = key;
        const Rat& bv = cs.b.at({w, c});
        const Rat& av = cs.a.at({v, c});
        net.edges.push_back({v, w, c, bv / av, sp / bv});
    }
    net.lambda = lambda;
    net = net.with_uniform_lambda();
    return net;
}

}  // namespace mgcount
