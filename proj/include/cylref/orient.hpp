#ifndef CYLREF_ORIENT_HPP
#define CYLREF_ORIENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cylref/decoration.hpp"

namespace cylref {

/**
 * Orientation state of a workspace.
 *
 * Cylindrical vertex cells carry 0 (unoriented) or +-1, read as a flip
 * against the cylinder's input reference orientation. Edge cells carry 0
 * or +-1 for their line, read against the line's own input reference.
 * Dihedral cylinders stay unoriented forever.
 */
struct PartialOrientation {
    std::vector<std::int8_t> cyl_orient;
    std::vector<std::int8_t> line_orient;

    static PartialOrientation trivial(std::size_t cells) {
        PartialOrientation o;
        o.cyl_orient.assign(cells, 0);
        o.line_orient.assign(cells, 0);
        return o;
    }

    bool operator==(const PartialOrientation& other) const {
        return cyl_orient == other.cyl_orient && line_orient == other.line_orient;
    }
};

/// Attaching sign of an edge record; inputs without sign data read as +1
/// against the edge's own reference direction.
inline int input_sign(const EdgeRecord& e) { return e.sign == 0 ? 1 : e.sign; }

/**
 * Per-ornament signed lift count at a cylinder, stored canonically:
 * entries sorted by ornament order, zeros dropped, and the leading entry
 * made positive (the value is only defined up to a global sign).
 */
struct ImbalanceVector {
    std::vector<std::pair<OrnId, long long>> entries;

    bool is_zero() const { return entries.empty(); }

    bool operator==(const ImbalanceVector& other) const { return entries == other.entries; }
    bool operator!=(const ImbalanceVector& other) const { return !(*this == other); }

    std::string str(const OrnamentUniverse& uni) const {
        if (entries.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i) s += ", ";
            s += uni.serialize(entries[i].first) + ": " + std::to_string(entries[i].second);
        }
        return s;
    }
};

inline ImbalanceVector canonicalize_imbalance(const OrnamentUniverse& uni,
                                              std::map<OrnId, long long> raw) {
    std::vector<std::pair<OrnId, long long>> v;
    for (const auto& [orn, val] : raw)
        if (val != 0) v.push_back({orn, val});
    std::sort(v.begin(), v.end(),
              [&uni](const auto& a, const auto& b) { return uni.less(a.first, b.first); });
    if (!v.empty() && v.front().second < 0)
        for (auto& e : v) e.second = -e.second;
    return ImbalanceVector{std::move(v)};
}

/**
 * Orientation imbalance at one cylindrical vertex cell: per edge
 * ornament, the signed sum of attaching maps over oriented lines,
 * weighted by lift multiplicity. Dihedral cylinders are balanced by
 * construction. `edge_flip` lets callers flip whole edge-ornament
 * classes (identity when null).
 */
inline ImbalanceVector imbalance(const RefinementComplex& cx, const OrnamentUniverse& uni,
                                 const Decoration& d, const PartialOrientation& o, int cyl_cell,
                                 const std::map<OrnId, int>* edge_flip = nullptr) {
    const VertexRecord& v = cx.vertex_of(cyl_cell);
    if (v.kind != VertexKind::Cylindrical)
        throw ill_posed_query("imbalance requested at non-cylindrical vertex '" + v.id + "'");
    std::map<OrnId, long long> raw;
    if (v.dihedral) return canonicalize_imbalance(uni, raw);

    int gi = cx.cell(cyl_cell).graph;
    const CylinderGraph& g = cx.graph(gi);
    for (int ei : g.incident[cx.cell(cyl_cell).index]) {
        const EdgeRecord& e = g.edges[ei];
        int ec = cx.edge_cell(gi, ei);
        int line = o.line_orient[ec];
        if (line == 0) continue;
        if (edge_flip) {
            auto it = edge_flip->find(d[ec]);
            if (it != edge_flip->end()) line *= it->second;
        }
        raw[d[ec]] += static_cast<long long>(e.mult_at_cyl) * input_sign(e) * line;
    }
    return canonicalize_imbalance(uni, raw);
}

struct CylinderRefineResult {
    Decoration decoration;
    PartialOrientation orientation;
    bool oriented_any = false;
};

/**
 * Cylinder refinement. Unoriented, unbalanced, non-dihedral cylinders
 * get the orientation that puts their imbalance in canonical positive
 * form; unoriented lines at oriented cylinders inherit the pushforward
 * orientation; and every cell is re-labeled with its attaching sign
 * (zero away from oriented cylinder/line pairs).
 */
inline CylinderRefineResult cylinder_refine(const RefinementComplex& cx, OrnamentUniverse& uni,
                                            const Decoration& d, const PartialOrientation& o) {
    CylinderRefineResult res{d, o, false};

    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c) {
        if (!cx.is_cylindrical_vertex(c)) continue;
        if (res.orientation.cyl_orient[c] != 0 || cx.vertex_of(c).dihedral) continue;
        // Recover the preferred gauge from the raw (gauge +1) sums: the
        // canonical representative has its leading entry positive.
        int gi = cx.cell(c).graph;
        const CylinderGraph& g = cx.graph(gi);
        std::map<OrnId, long long> raw;
        for (int ei : g.incident[cx.cell(c).index]) {
            int ec = cx.edge_cell(gi, ei);
            if (o.line_orient[ec] == 0) continue;
            raw[d[ec]] += static_cast<long long>(g.edges[ei].mult_at_cyl) *
                          input_sign(g.edges[ei]) * o.line_orient[ec];
        }
        std::vector<std::pair<OrnId, long long>> nz;
        for (const auto& [orn, val] : raw)
            if (val != 0) nz.push_back({orn, val});
        if (nz.empty()) continue;  // balanced
        std::sort(nz.begin(), nz.end(),
                  [&uni](const auto& a, const auto& b) { return uni.less(a.first, b.first); });
        res.orientation.cyl_orient[c] = nz.front().second > 0 ? 1 : -1;
        res.oriented_any = true;
    }

    // Push orientations of oriented cylinders onto their unoriented lines.
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c) {
        if (!cx.is_edge(c)) continue;
        int cyl = cx.cyl_endpoint(c);
        int co = res.orientation.cyl_orient[cyl];
        if (co == 0 || res.orientation.line_orient[c] != 0) continue;
        res.orientation.line_orient[c] =
            static_cast<std::int8_t>(co * input_sign(cx.edge_of(c)));
        res.oriented_any = true;
    }

    // Re-label with attaching signs.
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c) {
        int s = 0;
        if (cx.is_edge(c)) {
            int co = res.orientation.cyl_orient[cx.cyl_endpoint(c)];
            int line = res.orientation.line_orient[c];
            if (co != 0 && line != 0) s = co * input_sign(cx.edge_of(c)) * line;
        }
        res.decoration[c] = uni.signed_wrap(d[c], s);
    }
    return res;
}

/**
 * Applies a per-ornament-class sign flip to a partial orientation.
 * Unoriented values stay unoriented; double application is the identity.
 */
inline PartialOrientation xi_apply(const RefinementComplex& cx, const Decoration& d,
                                   const PartialOrientation& o, const std::map<OrnId, int>& xi) {
    PartialOrientation out = o;
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c) {
        auto it = xi.find(d[c]);
        int f = it == xi.end() ? 1 : it->second;
        if (cx.is_vertex(c)) {
            if (out.cyl_orient[c] != 0) out.cyl_orient[c] = static_cast<std::int8_t>(out.cyl_orient[c] * f);
        } else {
            if (out.line_orient[c] != 0) out.line_orient[c] = static_cast<std::int8_t>(out.line_orient[c] * f);
        }
    }
    return out;
}

}  // namespace cylref

#endif
