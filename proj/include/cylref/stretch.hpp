#ifndef CYLREF_STRETCH_HPP
#define CYLREF_STRETCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "cylref/errors.hpp"
#include "cylref/graph.hpp"
#include "cylref/rational.hpp"

namespace cylref {

/**
 * Modulus of a pair of edges in one cylinder: the index ratio of the
 * minimal-index cyclic subgroups they carry, expressed against the
 * cylinder's reference generator. Equals k(e0)/k(e1).
 */
inline PosRational modulus(const CylinderGraph& g, const std::string& e0, const std::string& e1) {
    const EdgeRecord& a = g.edges.at(g.edge_index.at(e0));
    const EdgeRecord& b = g.edges.at(g.edge_index.at(e1));
    if (a.cyl != b.cyl)
        throw different_cylinders("edges '" + e0 + "' and '" + e1 + "' meet different cylinders");
    return a.k / b.k;
}

/// Normalized per-edge translation length: length(e) / k(e).
inline PosRational normalized_length(const EdgeRecord& e) {
    if (!e.length)
        throw missing_length("edge '" + e.id + "' carries no length");
    return *e.length / e.k;
}

/**
 * Relative stretch between two rigid endpoints across one cylinder:
 * the length ratio corrected by the modulus of the connecting edges.
 */
inline PosRational relative_stretch(const CylinderGraph& g, const std::string& v0,
                                    const std::string& e0, const std::string& v1,
                                    const std::string& e1) {
    const EdgeRecord& a = g.edges.at(g.edge_index.at(e0));
    const EdgeRecord& b = g.edges.at(g.edge_index.at(e1));
    if (a.cyl != b.cyl)
        throw different_cylinders("edges '" + e0 + "' and '" + e1 + "' meet different cylinders");
    if (a.ne != v0 || b.ne != v1)
        throw ill_posed_query("edge/vertex pairing mismatch in relative stretch query");
    // (length(e1)/length(e0)) * modulus(e0, e1) == L(v1)/L(v0)
    return normalized_length(b) / normalized_length(a);
}

struct StretchEntry {
    int edge_pos;
    PosRational rs;
};

/**
 * Stretch normalization at one cylinder: every rigid-incident edge gets
 * rs(e) = L(edge) / min L over the cylinder's rigid-incident edges, so
 * all values are >= 1 and at least one equals 1.
 */
inline std::vector<StretchEntry> normalize_cylinder(const CylinderGraph& g,
                                                    const std::string& cyl_id) {
    int c = g.vertex_index.at(cyl_id);
    std::vector<StretchEntry> out;
    std::optional<PosRational> min_len;
    for (int ei : g.incident[c]) {
        const EdgeRecord& e = g.edges[ei];
        if (e.cyl != cyl_id) continue;
        if (g.vertex(e.ne).kind != VertexKind::Rigid) continue;
        PosRational L = normalized_length(e);
        if (!min_len || L < *min_len) min_len = L;
        out.push_back({ei, L});
    }
    for (auto& entry : out) entry.rs = entry.rs / *min_len;
    return out;
}

/**
 * Stretch labels for a whole graph: rs(e) on rigid-incident edges,
 * nothing on the rest. With `lenient`, cylinders whose rigid-incident
 * edges carry no lengths are skipped instead of failing.
 */
inline std::vector<std::optional<PosRational>> stretch_decoration(const CylinderGraph& g,
                                                                  bool lenient = false) {
    std::vector<std::optional<PosRational>> labels(g.edges.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (g.vertices[v].kind != VertexKind::Cylindrical) continue;
        bool has_rigid = false;
        bool has_all_lengths = true;
        for (int ei : g.incident[v]) {
            if (g.vertex(g.edges[ei].ne).kind == VertexKind::Rigid) {
                has_rigid = true;
                if (!g.edges[ei].length) has_all_lengths = false;
            }
        }
        if (!has_rigid) continue;
        if (!has_all_lengths) {
            if (lenient) continue;
            throw missing_length("cylinder '" + g.vertices[v].id +
                                 "' has rigid-incident edges without length data");
        }
        for (const auto& entry : normalize_cylinder(g, g.vertices[v].id))
            labels[entry.edge_pos] = entry.rs;
    }
    return labels;
}

}  // namespace cylref

#endif
