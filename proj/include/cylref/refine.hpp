#ifndef CYLREF_REFINE_HPP
#define CYLREF_REFINE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cylref/decoration.hpp"
#include "cylref/errors.hpp"

namespace cylref {

/**
 * One neighbor-refinement step: every cell is re-labeled by its initial
 * ornament together with the count, per current ornament, of its
 * neighbors carrying that ornament (multiplicity-weighted, saturating).
 */
inline Decoration neighbor_refine_step(const RefinementComplex& cx, const Decoration& initial,
                                       const Decoration& current, OrnamentUniverse& uni) {
    Decoration next(current.size(), kInvalidOrn);
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c) {
        std::map<OrnId, ExtNat> counts;
        for (const auto& arc : cx.arcs(c)) counts[current[arc.to]] += arc.count;
        std::vector<std::pair<OrnId, ExtNat>> vec(counts.begin(), counts.end());
        next[c] = uni.neighbor(initial[c], std::move(vec));
    }
    return next;
}

struct FixpointResult {
    Decoration stable;
    int strict_steps = 0;
};

/**
 * Iterates neighbor refinement until the induced partition stops getting
 * strictly finer, returning the last strictly finer decoration. The
 * number of strict steps never exceeds the number of cells.
 */
inline FixpointResult neighbor_refine_fix(const RefinementComplex& cx, const Decoration& d0,
                                          OrnamentUniverse& uni) {
    FixpointResult res{d0, 0};
    while (true) {
        Decoration next = neighbor_refine_step(cx, d0, res.stable, uni);
        if (same_partition(res.stable, next)) return res;
        res.stable = std::move(next);
        ++res.strict_steps;
        if (res.strict_steps > static_cast<int>(cx.cell_count()))
            throw std::logic_error("refinement failed to stabilize within the cell bound");
    }
}

/**
 * The structure invariant of a stably decorated complex: for every pair
 * of stable ornaments (j, k), the count of class-j neighbors at any cell
 * of class k, keyed by the canonical ornament values themselves. Also
 * retains each stable ornament's initial Base projection.
 */
struct StructureInvariant {
    // (neighbor class j, observer class k) -> count of j-neighbors at a k-cell
    std::map<std::pair<std::string, std::string>, ExtNat> entries;
    std::map<std::string, std::string> base_projection;  // stable ornament -> Base ornament

    friend bool operator==(const StructureInvariant& a, const StructureInvariant& b) {
        if (a.base_projection != b.base_projection) return false;
        if (a.entries.size() != b.entries.size()) return false;
        for (auto ia = a.entries.begin(), ib = b.entries.begin(); ia != a.entries.end();
             ++ia, ++ib) {
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const StructureInvariant& a, const StructureInvariant& b) {
        return !(a == b);
    }
};

inline StructureInvariant structure_invariant(const RefinementComplex& cx,
                                              const OrnamentUniverse& uni,
                                              const Decoration& stable) {
    StructureInvariant inv;
    auto classes = partition_classes(uni, stable);
    for (const auto& members : classes) {
        OrnId k = stable[members.front()];
        const std::string& kstr = uni.serialize(k);
        inv.base_projection[kstr] = uni.serialize(uni.base_projection(k));
        std::map<OrnId, ExtNat> counts;
        for (const auto& arc : cx.arcs(members.front())) counts[stable[arc.to]] += arc.count;
        // Well-definedness: every member of the class must see the same counts.
        for (std::size_t m = 1; m < members.size(); ++m) {
            std::map<OrnId, ExtNat> other;
            for (const auto& arc : cx.arcs(members[m])) other[stable[arc.to]] += arc.count;
            if (other.size() != counts.size() ||
                !std::equal(other.begin(), other.end(), counts.begin(),
                            [](const auto& x, const auto& y) {
                                return x.first == y.first && x.second == y.second;
                            }))
                throw not_stable("class members disagree on neighbor counts; decoration is not stable");
        }
        for (const auto& [j, n] : counts)
            inv.entries[{uni.serialize(j), kstr}] = n;
    }
    return inv;
}

/// Keyed equality; canonical ornaments make block matching implicit.
inline bool invariants_equal(const StructureInvariant& a, const StructureInvariant& b) {
    return a == b;
}

// ---------------------------------------------------------------------------
// Quotient-level class table (the human-readable projection)
// ---------------------------------------------------------------------------

/**
 * Stable vertex classes with their tree-level neighbor counts: for vertex
 * classes A, B the entry at (A, B) is the number of neighbors in B of any
 * single tree vertex over A, recovered by summing lift multiplicities of
 * incident edge classes.
 */
struct VertexClassTable {
    std::vector<std::vector<std::string>> members;  // per class, sorted cell ids
    std::vector<std::string> ornaments;             // canonical stable ornament per class
    std::vector<std::string> base;                  // Base projection per class
    std::vector<std::vector<ExtNat>> counts;        // counts[row][col]
};

inline VertexClassTable vertex_class_table(const RefinementComplex& cx,
                                           const OrnamentUniverse& uni, const Decoration& stable,
                                           int graph_filter = -1) {
    auto classes = partition_classes(uni, stable);
    std::vector<std::vector<int>> vclasses;
    std::unordered_map<OrnId, int> class_of;
    for (const auto& members : classes) {
        std::vector<int> vs;
        for (int c : members) {
            if (!cx.is_vertex(c)) continue;
            if (graph_filter >= 0 && cx.cell(c).graph != graph_filter) continue;
            vs.push_back(c);
        }
        if (!vs.empty()) {
            class_of[stable[vs.front()]] = static_cast<int>(vclasses.size());
            vclasses.push_back(std::move(vs));
        }
    }

    VertexClassTable t;
    int n = static_cast<int>(vclasses.size());
    t.counts.assign(n, std::vector<ExtNat>(n, ExtNat(0)));
    for (int row = 0; row < n; ++row) {
        const auto& members = vclasses[row];
        OrnId orn = stable[members.front()];
        t.ornaments.push_back(uni.serialize(orn));
        t.base.push_back(uni.serialize(uni.base_projection(orn)));
        std::vector<std::string> ids;
        for (int c : members) ids.push_back(cx.cell(c).id);
        std::sort(ids.begin(), ids.end());
        t.members.push_back(std::move(ids));

        int rep = members.front();
        const CylinderGraph& g = cx.graph(cx.cell(rep).graph);
        for (int ei : g.incident[cx.cell(rep).index]) {
            const EdgeRecord& e = g.edges[ei];
            bool at_cyl = g.vertex_index.at(e.cyl) == cx.cell(rep).index;
            int other_pos = at_cyl ? g.vertex_index.at(e.ne) : g.vertex_index.at(e.cyl);
            int other_cell = cx.vertex_cell(cx.cell(rep).graph, other_pos);
            auto it = class_of.find(stable[other_cell]);
            if (it == class_of.end()) continue;  // other graph filtered out: cannot happen
            ExtNat lifts = at_cyl ? ExtNat(e.mult_at_cyl) : e.mult_at_ne;
            t.counts[row][it->second] += lifts;
        }
    }
    return t;
}

}  // namespace cylref

#endif
