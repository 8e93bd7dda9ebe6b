#ifndef CYLREF_COMPLEX_HPP
#define CYLREF_COMPLEX_HPP

#include <string>
#include <utility>
#include <vector>

#include "cylref/extnat.hpp"
#include "cylref/graph.hpp"

namespace cylref {

enum class CellType { Vertex, Edge };

struct CellInfo {
    CellType type;
    int graph;     // workspace-local graph index
    int index;     // position in the source vertex/edge list
    std::string id;
};

/**
 * The refinement complex: one cell per quotient vertex and one per
 * quotient edge, with directed adjacency counts. A vertex cell sees each
 * incident edge cell with the lift multiplicity on its side; an edge cell
 * sees each endpoint once.
 *
 * Decorations and all refinement passes run on this structure. It may
 * hold several graphs at once (as a disjoint union), which keeps refined
 * ornaments comparable across the graphs it contains.
 */
class RefinementComplex {
public:
    struct Arc {
        int to;
        ExtNat count;
    };

    /// Appends a graph's cells; returns the workspace-local graph index.
    int add_graph(const CylinderGraph& g) {
        int gi = static_cast<int>(graphs_.size());
        graphs_.push_back(&g);
        int vbase = static_cast<int>(cells_.size());
        for (std::size_t i = 0; i < g.vertices.size(); ++i)
            cells_.push_back({CellType::Vertex, gi, static_cast<int>(i), g.vertices[i].id});
        int ebase = static_cast<int>(cells_.size());
        for (std::size_t i = 0; i < g.edges.size(); ++i)
            cells_.push_back({CellType::Edge, gi, static_cast<int>(i), g.edges[i].id});
        adj_.resize(cells_.size());
        vertex_base_.push_back(vbase);
        edge_base_.push_back(ebase);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const EdgeRecord& e = g.edges[i];
            int ec = ebase + static_cast<int>(i);
            int cc = vbase + g.vertex_index.at(e.cyl);
            int nc = vbase + g.vertex_index.at(e.ne);
            adj_[cc].push_back({ec, ExtNat(e.mult_at_cyl)});
            adj_[nc].push_back({ec, e.mult_at_ne});
            adj_[ec].push_back({cc, ExtNat(1)});
            adj_[ec].push_back({nc, ExtNat(1)});
        }
        return gi;
    }

    std::size_t cell_count() const { return cells_.size(); }
    const CellInfo& cell(int c) const { return cells_[c]; }
    const std::vector<Arc>& arcs(int c) const { return adj_[c]; }

    int graph_count() const { return static_cast<int>(graphs_.size()); }
    const CylinderGraph& graph(int gi) const { return *graphs_[gi]; }

    int vertex_cell(int gi, int vertex_pos) const { return vertex_base_[gi] + vertex_pos; }
    int edge_cell(int gi, int edge_pos) const { return edge_base_[gi] + edge_pos; }

    const VertexRecord& vertex_of(int c) const {
        return graphs_[cells_[c].graph]->vertices[cells_[c].index];
    }
    const EdgeRecord& edge_of(int c) const {
        return graphs_[cells_[c].graph]->edges[cells_[c].index];
    }

    bool is_vertex(int c) const { return cells_[c].type == CellType::Vertex; }
    bool is_edge(int c) const { return cells_[c].type == CellType::Edge; }
    bool is_cylindrical_vertex(int c) const {
        return is_vertex(c) && vertex_of(c).kind == VertexKind::Cylindrical;
    }
    bool is_nonelementary_vertex(int c) const {
        return is_vertex(c) && vertex_of(c).kind != VertexKind::Cylindrical;
    }

    /// Cell of the non-elementary endpoint of an edge cell.
    int ne_endpoint(int edge_cell_idx) const {
        const CellInfo& ci = cells_[edge_cell_idx];
        const CylinderGraph& g = *graphs_[ci.graph];
        return vertex_cell(ci.graph, g.vertex_index.at(g.edges[ci.index].ne));
    }
    /// Cell of the cylindrical endpoint of an edge cell.
    int cyl_endpoint(int edge_cell_idx) const {
        const CellInfo& ci = cells_[edge_cell_idx];
        const CylinderGraph& g = *graphs_[ci.graph];
        return vertex_cell(ci.graph, g.vertex_index.at(g.edges[ci.index].cyl));
    }

private:
    std::vector<const CylinderGraph*> graphs_;
    std::vector<CellInfo> cells_;
    std::vector<std::vector<Arc>> adj_;
    std::vector<int> vertex_base_;
    std::vector<int> edge_base_;
};

/// Subdivision of a single validated graph into its refinement complex.
inline RefinementComplex subdivide(const CylinderGraph& g) {
    RefinementComplex cx;
    cx.add_graph(g);
    return cx;
}

// ---------------------------------------------------------------------------
// Plain multigraphs (degree-refinement regime)
// ---------------------------------------------------------------------------

/**
 * A finite multigraph with parallel edges, used by the brute-force cover
 * oracle and for feeding undecorated inputs to the refinement engine.
 */
struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    std::vector<std::vector<int>> incidence() const {
        std::vector<std::vector<int>> inc(n);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            inc[edges[i].first].push_back(static_cast<int>(i));
            inc[edges[i].second].push_back(static_cast<int>(i));
        }
        return inc;
    }

    int degree(int v) const {
        int d = 0;
        for (const auto& e : edges) d += (e.first == v) + (e.second == v);
        return d;
    }
};

/**
 * Wraps a multigraph as a CylinderGraph-shaped object purely so the
 * refinement complex can be built on it. Every vertex is treated alike;
 * the bipartite typing plays no role in this regime.
 */
class MultigraphComplexHolder {
public:
    explicit MultigraphComplexHolder(const Multigraph& m) {
        g_.name = "multigraph";
        for (int v = 0; v < m.n; ++v) {
            VertexRecord vr;
            vr.id = "v" + std::to_string(v);
            vr.kind = VertexKind::Rigid;
            g_.vertices.push_back(vr);
        }
        for (std::size_t i = 0; i < m.edges.size(); ++i) {
            EdgeRecord er;
            er.id = "e" + std::to_string(i);
            er.cyl = "v" + std::to_string(m.edges[i].first);  // typing unused here
            er.ne = "v" + std::to_string(m.edges[i].second);
            er.mult_at_cyl = 1;
            er.mult_at_ne = ExtNat(1);
            g_.edges.push_back(er);
        }
        // Bypass bipartite validation: build the index structures directly.
        for (std::size_t i = 0; i < g_.vertices.size(); ++i)
            g_.vertex_index.emplace(g_.vertices[i].id, static_cast<int>(i));
        for (std::size_t i = 0; i < g_.edges.size(); ++i)
            g_.edge_index.emplace(g_.edges[i].id, static_cast<int>(i));
        g_.incident.assign(g_.vertices.size(), {});
        for (std::size_t i = 0; i < g_.edges.size(); ++i) {
            g_.incident[g_.vertex_index.at(g_.edges[i].cyl)].push_back(static_cast<int>(i));
            g_.incident[g_.vertex_index.at(g_.edges[i].ne)].push_back(static_cast<int>(i));
        }
        cx_.add_graph(g_);
    }

    const RefinementComplex& complex() const { return cx_; }
    const CylinderGraph& graph() const { return g_; }

private:
    CylinderGraph g_;
    RefinementComplex cx_;
};

}  // namespace cylref

#endif
