#ifndef CYLREF_BALL_HPP
#define CYLREF_BALL_HPP

#include <array>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cylref/complex.hpp"
#include "cylref/decoration.hpp"
#include "cylref/errors.hpp"

namespace cylref {

/**
 * Brute-force side of the test oracle: finite balls in the covering tree
 * of a finite-multiplicity quotient, rooted tree isomorphism on them,
 * and an independently coded classical degree refinement.
 */

struct BallNode {
    int qvertex;  // quotient vertex position
    std::vector<std::pair<int, BallNode>> children;  // (quotient edge position, subtree)
};

struct Ball {
    BallNode root;
    int radius = 0;
    std::size_t node_count = 1;
};

namespace detail {

struct CoverView {
    // per vertex: (edge position, other endpoint, lift count at this side)
    std::vector<std::vector<std::array<int, 2>>> ends;
    std::vector<std::vector<std::uint64_t>> mult;
};

inline CoverView cover_view(const CylinderGraph& g) {
    CoverView cv;
    cv.ends.resize(g.vertices.size());
    cv.mult.resize(g.vertices.size());
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        const EdgeRecord& e = g.edges[ei];
        int cp = g.vertex_index.at(e.cyl);
        int np = g.vertex_index.at(e.ne);
        if (e.mult_at_ne.is_infinite())
            throw infinite_multiplicity("edge '" + e.id + "' has infinite lift count");
        cv.ends[cp].push_back({static_cast<int>(ei), np});
        cv.mult[cp].push_back(e.mult_at_cyl);
        cv.ends[np].push_back({static_cast<int>(ei), cp});
        cv.mult[np].push_back(e.mult_at_ne.finite_value());
    }
    return cv;
}

inline void expand(const CoverView& cv, BallNode& node, int entered_edge, int depth,
                   std::size_t& count) {
    if (depth == 0) return;
    bool consumed = false;
    const auto& ends = cv.ends[node.qvertex];
    for (std::size_t i = 0; i < ends.size(); ++i) {
        std::uint64_t lifts = cv.mult[node.qvertex][i];
        // The entering tree edge uses up one lift of its quotient edge.
        if (!consumed && ends[i][0] == entered_edge && lifts > 0) {
            --lifts;
            consumed = true;
        }
        for (std::uint64_t l = 0; l < lifts; ++l) {
            node.children.push_back({ends[i][0], BallNode{ends[i][1], {}}});
            ++count;
            expand(cv, node.children.back().second, ends[i][0], depth - 1, count);
        }
    }
}

}  // namespace detail

/// The radius-r ball around a lift of the given vertex in the covering tree.
inline Ball expand_ball(const CylinderGraph& g, const std::string& vertex_id, int radius) {
    detail::CoverView cv = detail::cover_view(g);
    Ball b;
    b.radius = radius;
    b.root.qvertex = g.vertex_index.at(vertex_id);
    detail::expand(cv, b.root, -1, radius, b.node_count);
    return b;
}

/**
 * Decoration-preserving rooted isomorphism between two literal balls.
 * Labels come per quotient cell: `vlabel[v]` for vertices, `elabel[e]`
 * for edges. Subtrees are matched by recursively computed canonical
 * signatures, which makes interchangeable children sort together.
 */
inline std::string ball_signature(const BallNode& n, const std::vector<std::string>& vlabel,
                                  const std::vector<std::string>& elabel) {
    std::vector<std::string> parts;
    parts.reserve(n.children.size());
    for (const auto& [ep, child] : n.children)
        parts.push_back(elabel[ep] + "~" + ball_signature(child, vlabel, elabel));
    std::sort(parts.begin(), parts.end());
    std::string s = "(" + vlabel[n.qvertex];
    for (const auto& p : parts) s += "," + p;
    s += ")";
    return s;
}

inline bool ball_isomorphic(const Ball& b1, const Ball& b2, const std::vector<std::string>& vlabel,
                            const std::vector<std::string>& elabel) {
    if (b1.radius != b2.radius) throw ill_posed_query("balls have different radii");
    return ball_signature(b1.root, vlabel, elabel) == ball_signature(b2.root, vlabel, elabel);
}

/**
 * Scalable form of the same question: canonical classes of covering-tree
 * balls computed on quotient data with memoization, so radii on the
 * order of the cell count stay cheap. Two vertices get the same class id
 * at radius r exactly when their literal radius-r balls are isomorphic.
 */
/// Shared signature table; class ids handed out by one interner are
/// comparable across every CoverBallClasses built on it.
class CoverBallInterner {
public:
    int intern(const std::string& sig) {
        return sig_ids_.emplace(sig, static_cast<int>(sig_ids_.size())).first->second;
    }

private:
    std::map<std::string, int> sig_ids_;
};

class CoverBallClasses {
public:
    CoverBallClasses(const CylinderGraph& g, std::vector<std::string> vlabel,
                     std::vector<std::string> elabel, CoverBallInterner& interner)
        : cv_(detail::cover_view(g)), vlabel_(std::move(vlabel)), elabel_(std::move(elabel)),
          interner_(interner) {}

    int class_of(int vertex, int radius) { return shape(vertex, -1, radius); }

private:
    // Canonical id of the depth-r subtree hanging below a lift of
    // `vertex` entered along `edge` (-1 at the root).
    int shape(int vertex, int edge, int depth) {
        auto key = std::tuple<int, int, int>(vertex, edge, depth);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::string sig = vlabel_[vertex] + "{";
        if (depth > 0) {
            std::vector<std::pair<std::string, std::uint64_t>> child_counts;
            const auto& ends = cv_.ends[vertex];
            bool consumed = false;
            for (std::size_t i = 0; i < ends.size(); ++i) {
                std::uint64_t lifts = cv_.mult[vertex][i];
                if (!consumed && ends[i][0] == edge && lifts > 0) {
                    --lifts;
                    consumed = true;
                }
                if (lifts == 0) continue;
                int child = shape(ends[i][1], ends[i][0], depth - 1);
                child_counts.push_back(
                    {elabel_[ends[i][0]] + "~" + std::to_string(child), lifts});
            }
            std::sort(child_counts.begin(), child_counts.end());
            for (const auto& [s, n] : child_counts) sig += s + "x" + std::to_string(n) + ",";
        }
        sig += "}";
        int id = interner_.intern(sig);
        memo_.emplace(key, id);
        return id;
    }

    detail::CoverView cv_;
    std::vector<std::string> vlabel_;
    std::vector<std::string> elabel_;
    CoverBallInterner& interner_;
    std::map<std::tuple<int, int, int>, int> memo_;
};

// ---------------------------------------------------------------------------
// Classical degree refinement (independent implementation)
// ---------------------------------------------------------------------------

/**
 * Iterated degree partition of a finite multigraph with its class count
 * matrix. Two graphs are processed jointly (color refinement on the
 * disjoint union), so class ids are canonical and directly comparable:
 * equal refinements mean equal class-id sets and equal matrices. Class
 * sizes deliberately do not enter, matching the covering-space reading.
 */
struct DegreeRefinement {
    std::vector<int> class_ids;                 // sorted distinct ids in this graph
    std::map<std::pair<int, int>, int> matrix;  // (class j, class k) -> j-neighbors of a k-vertex
    std::vector<int> class_of_vertex;

    friend bool operator==(const DegreeRefinement& a, const DegreeRefinement& b) {
        return a.class_ids == b.class_ids && a.matrix == b.matrix;
    }
    friend bool operator!=(const DegreeRefinement& a, const DegreeRefinement& b) {
        return !(a == b);
    }
};

inline std::pair<DegreeRefinement, DegreeRefinement> degree_refinement_pair(const Multigraph& m1,
                                                                            const Multigraph& m2) {
    int n = m1.n + m2.n;
    Multigraph joint;
    joint.n = n;
    joint.edges = m1.edges;
    for (const auto& [u, v] : m2.edges) joint.edges.push_back({u + m1.n, v + m1.n});
    auto inc = joint.incidence();

    std::vector<int> color(n);
    for (int v = 0; v < n; ++v) color[v] = joint.degree(v);
    {
        // Normalize the initial coloring to dense canonical ids.
        std::map<int, int> ids;
        for (int v = 0; v < n; ++v) ids.emplace(color[v], 0);
        int idx = 0;
        for (auto& [deg, id] : ids) id = idx++;
        for (int v = 0; v < n; ++v) color[v] = ids[color[v]];
    }

    for (int round = 0; round < n + 1; ++round) {
        std::vector<std::string> sigs(n);
        std::map<std::string, int> ids;
        for (int v = 0; v < n; ++v) {
            std::vector<int> neigh;
            for (int ei : inc[v]) {
                int u = joint.edges[ei].first == v ? joint.edges[ei].second : joint.edges[ei].first;
                neigh.push_back(color[u]);
            }
            std::sort(neigh.begin(), neigh.end());
            std::string s = std::to_string(color[v]) + "|";
            for (int c : neigh) s += std::to_string(c) + ",";
            sigs[v] = std::move(s);
            ids.emplace(sigs[v], 0);
        }
        int idx = 0;
        for (auto& [s, id] : ids) id = idx++;
        bool changed = false;
        for (int v = 0; v < n; ++v) {
            int nc = ids[sigs[v]];
            changed |= nc != color[v];
            color[v] = nc;
        }
        if (!changed) break;
    }

    auto extract = [&](int lo, int hi) {
        DegreeRefinement out;
        std::set<int> ids;
        for (int v = lo; v < hi; ++v) {
            ids.insert(color[v]);
            out.class_of_vertex.push_back(color[v]);
            std::map<int, int> counts;
            for (int ei : inc[v]) {
                int u = joint.edges[ei].first == v ? joint.edges[ei].second : joint.edges[ei].first;
                ++counts[color[u]];
            }
            for (const auto& [j, cnt] : counts) out.matrix[{j, color[v]}] = cnt;
        }
        out.class_ids.assign(ids.begin(), ids.end());
        return out;
    };
    return {extract(0, m1.n), extract(m1.n, n)};
}

inline DegreeRefinement degree_refinement(const Multigraph& m) {
    return degree_refinement_pair(m, m).first;
}

inline bool degree_refinement_equal(const Multigraph& m1, const Multigraph& m2) {
    auto [a, b] = degree_refinement_pair(m1, m2);
    return a == b;
}

}  // namespace cylref

#endif
