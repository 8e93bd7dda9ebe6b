#ifndef CYLREF_GRAPH_HPP
#define CYLREF_GRAPH_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cylref/errors.hpp"
#include "cylref/extnat.hpp"
#include "cylref/rational.hpp"

namespace cylref {

enum class VertexKind { Cylindrical, Rigid, Hanging };

inline const char* kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Cylindrical: return "cylindrical";
        case VertexKind::Rigid: return "rigid";
        case VertexKind::Hanging: return "hanging";
    }
    return "?";
}

struct VertexRecord {
    std::string id;
    VertexKind kind = VertexKind::Rigid;
    std::optional<std::string> qi_type;
    std::optional<std::string> rel_qi_type;
    bool dihedral = false;
    std::optional<std::string> oracle;
};

/**
 * One quotient edge. The cylindrical endpoint is canonical, so edges are
 * stored undirected with a fixed (cyl, ne) orientation; the two directed
 * readings are derived views.
 *
 * `sign` is the attaching sign relative to a per-cylinder reference
 * orientation and the edge line's own reference direction; 0 means the
 * input carried no orientation data. `k` scales a minimal-index cyclic
 * subgroup of the edge group against the cylinder's reference generator,
 * and `length` is the model-space translation length at a rigid endpoint.
 */
struct EdgeRecord {
    std::string id;
    std::string cyl;
    std::string ne;
    std::uint64_t mult_at_cyl = 1;
    ExtNat mult_at_ne;
    int sign = 0;
    PosRational k{1, 1};
    std::optional<PosRational> length;
    bool reversible = true;
};

enum class OracleType { Flexible, Trivial, SignedPermGroup };

struct SignedPerm {
    std::vector<int> perm;   // slot i maps to slot perm[i]
    std::vector<int> signs;  // orientation factor carried from slot i
};

struct OracleSpec {
    std::string id;
    OracleType type = OracleType::Flexible;
    int slots = 0;
    std::vector<SignedPerm> generators;
    // per bound vertex id: slot index -> incident edge id
    std::map<std::string, std::map<int, std::string>> slot_edge;
};

/**
 * Finite quotient graph of a tree of cylinders, bipartite between
 * cylindrical and non-elementary vertices. Immutable after validation.
 */
struct CylinderGraph {
    std::string name;
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
    std::vector<OracleSpec> oracles;

    std::unordered_map<std::string, int> vertex_index;
    std::unordered_map<std::string, int> edge_index;
    std::unordered_map<std::string, int> oracle_index;
    std::vector<std::vector<int>> incident;  // vertex -> incident edge positions

    const VertexRecord& vertex(const std::string& id) const {
        return vertices[vertex_index.at(id)];
    }

    bool is_cylindrical(int v) const { return vertices[v].kind == VertexKind::Cylindrical; }

    void build_indexes_and_validate();
};

inline void CylinderGraph::build_indexes_and_validate() {
    if (vertices.empty()) throw schema_error("vertex list is empty");

    vertex_index.clear();
    edge_index.clear();
    oracle_index.clear();
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& v = vertices[i];
        if (v.id.empty()) throw schema_error("vertex with empty id");
        if (!vertex_index.emplace(v.id, static_cast<int>(i)).second)
            throw schema_error("duplicate vertex id '" + v.id + "'");
        if (v.dihedral && v.kind != VertexKind::Cylindrical)
            throw schema_error("vertex '" + v.id + "': dihedral only applies to cylindrical vertices");
        if (v.oracle && v.kind == VertexKind::Cylindrical)
            throw schema_error("vertex '" + v.id + "': oracle bindings only apply to non-elementary vertices");
    }
    for (std::size_t i = 0; i < oracles.size(); ++i) {
        if (!oracle_index.emplace(oracles[i].id, static_cast<int>(i)).second)
            throw schema_error("duplicate oracle id '" + oracles[i].id + "'");
    }

    incident.assign(vertices.size(), {});
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (e.id.empty()) throw schema_error("edge with empty id");
        if (!edge_index.emplace(e.id, static_cast<int>(i)).second)
            throw schema_error("duplicate edge id '" + e.id + "'");
        auto ci = vertex_index.find(e.cyl);
        auto ni = vertex_index.find(e.ne);
        if (ci == vertex_index.end())
            throw dangling_reference("edge '" + e.id + "' references unknown vertex '" + e.cyl + "'");
        if (ni == vertex_index.end())
            throw dangling_reference("edge '" + e.id + "' references unknown vertex '" + e.ne + "'");
        const auto& cv = vertices[ci->second];
        const auto& nv = vertices[ni->second];
        if (cv.kind != VertexKind::Cylindrical)
            throw bipartite_error("edge '" + e.id + "': endpoint '" + e.cyl + "' is not cylindrical");
        if (nv.kind == VertexKind::Cylindrical)
            throw bipartite_error("edge '" + e.id + "': endpoint '" + e.ne + "' is not non-elementary");
        if (e.cyl == e.ne) throw bipartite_error("edge '" + e.id + "' is a loop");
        if (e.mult_at_cyl == 0) throw schema_error("edge '" + e.id + "': mult_at_cyl must be positive");
        if (e.mult_at_ne.is_zero()) throw schema_error("edge '" + e.id + "': mult_at_ne must be positive");
        incident[ci->second].push_back(static_cast<int>(i));
        incident[ni->second].push_back(static_cast<int>(i));
    }

    for (const auto& v : vertices) {
        if (!v.oracle) continue;
        auto oi = oracle_index.find(*v.oracle);
        if (oi == oracle_index.end())
            throw dangling_reference("vertex '" + v.id + "' references unknown oracle '" + *v.oracle + "'");
        const OracleSpec& o = oracles[oi->second];
        if (o.type == OracleType::SignedPermGroup && !o.slot_edge.count(v.id))
            throw schema_error("oracle '" + o.id + "' has no slot_edge binding for vertex '" + v.id + "'");
    }
    for (const auto& o : oracles) {
        if (o.type == OracleType::SignedPermGroup) {
            if (o.slots <= 0) throw schema_error("oracle '" + o.id + "': slots must be positive");
            for (const auto& g : o.generators) {
                if (static_cast<int>(g.perm.size()) != o.slots ||
                    static_cast<int>(g.signs.size()) != o.slots)
                    throw schema_error("oracle '" + o.id + "': generator size mismatch");
                std::vector<bool> seen(o.slots, false);
                for (int p : g.perm) {
                    if (p < 0 || p >= o.slots || seen[p])
                        throw schema_error("oracle '" + o.id + "': generator is not a permutation");
                    seen[p] = true;
                }
                for (int s : g.signs)
                    if (s != 1 && s != -1)
                        throw schema_error("oracle '" + o.id + "': generator signs must be +-1");
            }
        }
        for (const auto& [vid, m] : o.slot_edge) {
            auto vi = vertex_index.find(vid);
            if (vi == vertex_index.end())
                throw dangling_reference("oracle '" + o.id + "' binds unknown vertex '" + vid + "'");
            // every slot maps to an incident edge, covering all of them
            std::vector<bool> covered;
            covered.assign(incident[vi->second].size(), false);
            for (const auto& [slot, eid] : m) {
                if (o.type == OracleType::SignedPermGroup && (slot < 0 || slot >= o.slots))
                    throw schema_error("oracle '" + o.id + "': slot index out of range for '" + vid + "'");
                auto ei = edge_index.find(eid);
                if (ei == edge_index.end())
                    throw dangling_reference("oracle '" + o.id + "' maps slot to unknown edge '" + eid + "'");
                const auto& inc = incident[vi->second];
                auto pos = std::find(inc.begin(), inc.end(), ei->second);
                if (pos == inc.end())
                    throw schema_error("oracle '" + o.id + "': edge '" + eid + "' is not incident to '" + vid + "'");
                covered[pos - inc.begin()] = true;
            }
            if (o.type == OracleType::SignedPermGroup) {
                if (static_cast<int>(m.size()) != o.slots)
                    throw schema_error("oracle '" + o.id + "': slot_edge for '" + vid + "' must bind every slot");
                if (std::find(covered.begin(), covered.end(), false) != covered.end())
                    throw schema_error("oracle '" + o.id + "': slot_edge for '" + vid +
                                       "' does not cover all incident edges");
            }
        }
    }

    // Connectivity over the undirected incidence structure.
    std::vector<bool> seen(vertices.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int ei : incident[v]) {
            for (const std::string& oid : {edges[ei].cyl, edges[ei].ne}) {
                int w = vertex_index.at(oid);
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw schema_error("graph is not connected");
}

// ---------------------------------------------------------------------------
// JSON input format
// ---------------------------------------------------------------------------

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* field,
                                     const std::string& ctx) {
    auto it = j.find(field);
    if (it == j.end()) throw schema_error(ctx + ": missing field '" + field + "'");
    return *it;
}

inline std::string require_string(const nlohmann::json& j, const char* field,
                                  const std::string& ctx) {
    const auto& v = require(j, field, ctx);
    if (!v.is_string()) throw schema_error(ctx + ": field '" + field + "' must be a string");
    return v.get<std::string>();
}

}  // namespace detail

inline CylinderGraph parse_graph_json(const nlohmann::json& j) {
    using detail::require;
    using detail::require_string;

    if (!j.is_object()) throw schema_error("top level must be an object");
    CylinderGraph g;
    g.name = j.value("name", std::string{});

    const auto& vs = require(j, "vertices", "top level");
    if (!vs.is_array()) throw schema_error("'vertices' must be an array");
    for (const auto& vj : vs) {
        VertexRecord v;
        v.id = require_string(vj, "id", "vertex");
        std::string kind = require_string(vj, "kind", "vertex '" + v.id + "'");
        if (kind == "cylindrical") v.kind = VertexKind::Cylindrical;
        else if (kind == "rigid") v.kind = VertexKind::Rigid;
        else if (kind == "hanging") v.kind = VertexKind::Hanging;
        else throw schema_error("vertex '" + v.id + "': unknown kind '" + kind + "'");
        if (vj.contains("qi_type") && !vj["qi_type"].is_null())
            v.qi_type = vj["qi_type"].get<std::string>();
        if (vj.contains("rel_qi_type") && !vj["rel_qi_type"].is_null())
            v.rel_qi_type = vj["rel_qi_type"].get<std::string>();
        if (vj.contains("dihedral") && !vj["dihedral"].is_null())
            v.dihedral = vj["dihedral"].get<bool>();
        if (vj.contains("oracle") && !vj["oracle"].is_null())
            v.oracle = vj["oracle"].get<std::string>();
        g.vertices.push_back(std::move(v));
    }

    const auto& es = require(j, "edges", "top level");
    if (!es.is_array()) throw schema_error("'edges' must be an array");
    for (const auto& ej : es) {
        EdgeRecord e;
        e.id = require_string(ej, "id", "edge");
        std::string ctx = "edge '" + e.id + "'";
        e.cyl = require_string(ej, "cyl", ctx);
        e.ne = require_string(ej, "ne", ctx);
        const auto& mc = require(ej, "mult_at_cyl", ctx);
        if (mc.is_string() && mc.get<std::string>() == "inf")
            throw infinite_cylinder_valence(ctx + ": mult_at_cyl must be finite");
        if (!mc.is_number_unsigned() || mc.get<std::uint64_t>() == 0)
            throw schema_error(ctx + ": mult_at_cyl must be a positive integer");
        e.mult_at_cyl = mc.get<std::uint64_t>();
        const auto& mn = require(ej, "mult_at_ne", ctx);
        if (mn.is_string()) {
            if (mn.get<std::string>() != "inf")
                throw schema_error(ctx + ": mult_at_ne must be an integer or \"inf\"");
            e.mult_at_ne = ExtNat::infinity();
        } else if (mn.is_number_unsigned()) {
            e.mult_at_ne = ExtNat(mn.get<std::uint64_t>());
        } else {
            throw schema_error(ctx + ": mult_at_ne must be an integer or \"inf\"");
        }
        if (ej.contains("sign") && !ej["sign"].is_null()) {
            int s = ej["sign"].get<int>();
            if (s != 1 && s != -1) throw schema_error(ctx + ": sign must be 1, -1 or null");
            e.sign = s;
        }
        try {
            e.k = PosRational::parse(require_string(ej, "k", ctx));
            if (ej.contains("length") && !ej["length"].is_null())
                e.length = PosRational::parse(ej["length"].get<std::string>());
        } catch (const std::invalid_argument& ex) {
            throw schema_error(ctx + ": " + ex.what());
        }
        if (ej.contains("reversible") && !ej["reversible"].is_null())
            e.reversible = ej["reversible"].get<bool>();
        g.edges.push_back(std::move(e));
    }

    if (j.contains("oracles")) {
        const auto& os = j["oracles"];
        if (!os.is_array()) throw schema_error("'oracles' must be an array");
        for (const auto& oj : os) {
            OracleSpec o;
            o.id = require_string(oj, "id", "oracle");
            std::string ctx = "oracle '" + o.id + "'";
            std::string type = require_string(oj, "type", ctx);
            if (type == "flexible") o.type = OracleType::Flexible;
            else if (type == "trivial") o.type = OracleType::Trivial;
            else if (type == "signed_perm_group") o.type = OracleType::SignedPermGroup;
            else throw schema_error(ctx + ": unknown type '" + type + "'");
            if (oj.contains("slots")) o.slots = oj["slots"].get<int>();
            if (oj.contains("generators")) {
                for (const auto& gj : oj["generators"]) {
                    SignedPerm p;
                    p.perm = gj.at("perm").get<std::vector<int>>();
                    p.signs = gj.at("signs").get<std::vector<int>>();
                    o.generators.push_back(std::move(p));
                }
            }
            if (oj.contains("slot_edge")) {
                for (auto it = oj["slot_edge"].begin(); it != oj["slot_edge"].end(); ++it) {
                    std::map<int, std::string> m;
                    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                        m[std::stoi(jt.key())] = jt.value().get<std::string>();
                    o.slot_edge[it.key()] = std::move(m);
                }
            }
            g.oracles.push_back(std::move(o));
        }
    }

    g.build_indexes_and_validate();
    return g;
}

inline CylinderGraph parse_graph(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error(std::string("invalid JSON: ") + e.what());
    }
    try {
        return parse_graph_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("malformed field: ") + e.what());
    }
}

inline nlohmann::json graph_to_json(const CylinderGraph& g) {
    nlohmann::json j;
    j["name"] = g.name;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices) {
        nlohmann::json vj;
        vj["id"] = v.id;
        vj["kind"] = kind_name(v.kind);
        if (v.qi_type) vj["qi_type"] = *v.qi_type;
        if (v.rel_qi_type) vj["rel_qi_type"] = *v.rel_qi_type;
        if (v.dihedral) vj["dihedral"] = true;
        if (v.oracle) vj["oracle"] = *v.oracle;
        j["vertices"].push_back(vj);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) {
        nlohmann::json ej;
        ej["id"] = e.id;
        ej["cyl"] = e.cyl;
        ej["ne"] = e.ne;
        ej["mult_at_cyl"] = e.mult_at_cyl;
        if (e.mult_at_ne.is_infinite()) ej["mult_at_ne"] = "inf";
        else ej["mult_at_ne"] = e.mult_at_ne.finite_value();
        if (e.sign != 0) ej["sign"] = e.sign;
        else ej["sign"] = nullptr;
        ej["k"] = e.k.str();
        if (e.length) ej["length"] = e.length->str();
        if (!e.reversible) ej["reversible"] = false;
        j["edges"].push_back(ej);
    }
    if (!g.oracles.empty()) {
        j["oracles"] = nlohmann::json::array();
        for (const auto& o : g.oracles) {
            nlohmann::json oj;
            oj["id"] = o.id;
            oj["type"] = o.type == OracleType::Flexible ? "flexible"
                         : o.type == OracleType::Trivial ? "trivial"
                                                         : "signed_perm_group";
            if (o.type == OracleType::SignedPermGroup) oj["slots"] = o.slots;
            if (!o.generators.empty()) {
                oj["generators"] = nlohmann::json::array();
                for (const auto& p : o.generators)
                    oj["generators"].push_back({{"perm", p.perm}, {"signs", p.signs}});
            }
            if (!o.slot_edge.empty()) {
                nlohmann::json se;
                for (const auto& [vid, m] : o.slot_edge) {
                    nlohmann::json mm;
                    for (const auto& [slot, eid] : m) mm[std::to_string(slot)] = eid;
                    se[vid] = mm;
                }
                oj["slot_edge"] = se;
            }
            j["oracles"].push_back(oj);
        }
    }
    return j;
}

}  // namespace cylref

#endif
