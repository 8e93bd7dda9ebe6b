#ifndef CYLREF_CLASSIFY_HPP
#define CYLREF_CLASSIFY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cylref/localsym.hpp"
#include "cylref/refine.hpp"

namespace cylref {

enum class RoundOp { Neighbor, Cylinder, Vertex };

using RoundOrder = std::array<RoundOp, 3>;
constexpr RoundOrder kDefaultOrder{RoundOp::Neighbor, RoundOp::Cylinder, RoundOp::Vertex};

/// All six round-robin schedules, for the order-robustness audit.
inline std::vector<RoundOrder> all_round_orders() {
    return {
        {RoundOp::Neighbor, RoundOp::Cylinder, RoundOp::Vertex},
        {RoundOp::Neighbor, RoundOp::Vertex, RoundOp::Cylinder},
        {RoundOp::Cylinder, RoundOp::Neighbor, RoundOp::Vertex},
        {RoundOp::Cylinder, RoundOp::Vertex, RoundOp::Neighbor},
        {RoundOp::Vertex, RoundOp::Neighbor, RoundOp::Cylinder},
        {RoundOp::Vertex, RoundOp::Cylinder, RoundOp::Neighbor},
    };
}

/**
 * A refinement workspace: one or two graphs sharing one ornament
 * universe, one oracle registry and one complex, so refined ornaments
 * and class tokens are comparable across the graphs it holds.
 */
class Workspace {
public:
    Workspace(std::vector<const CylinderGraph*> graphs, DecorationMode mode,
              bool lenient_stretch = false)
        : graphs_(std::move(graphs)), mode_(mode) {
        for (const CylinderGraph* g : graphs_) {
            cx_.add_graph(*g);
            registry_.add_graph(*g);
        }
        initial_ = initial_decoration(cx_, mode_, uni_, lenient_stretch);
        current_ = initial_;
        orientation_ = PartialOrientation::trivial(cx_.cell_count());
    }

    const RefinementComplex& complex() const { return cx_; }
    OrnamentUniverse& universe() { return uni_; }
    const OrnamentUniverse& universe() const { return uni_; }
    const OracleRegistry& registry() const { return registry_; }
    DecorationMode mode() const { return mode_; }
    const Decoration& initial() const { return initial_; }
    const Decoration& decoration() const { return current_; }
    const PartialOrientation& orientation() const { return orientation_; }
    bool tainted() const { return tainted_; }
    int rounds() const { return rounds_; }

    /**
     * Runs neighbor, cylinder and vertex refinement round-robin until a
     * full round neither refines the partition nor extends the partial
     * orientation. A pass is adopted only when it makes progress, so the
     * stable decoration carries no trailing trivial re-labelings.
     */
    void full_refine(const RoundOrder& order = kDefaultOrder) {
        LocalSymmetryEngine engine(cx_, registry_);
        int limit = 2 * static_cast<int>(cx_.cell_count()) + 4;
        for (rounds_ = 0; rounds_ < limit; ++rounds_) {
            bool progressed = false;
            for (RoundOp op : order) {
                switch (op) {
                    case RoundOp::Neighbor: {
                        FixpointResult fr = neighbor_refine_fix(cx_, current_, uni_);
                        if (fr.strict_steps > 0) {
                            current_ = std::move(fr.stable);
                            progressed = true;
                        }
                        break;
                    }
                    case RoundOp::Cylinder: {
                        CylinderRefineResult cr = cylinder_refine(cx_, uni_, current_, orientation_);
                        if (!same_partition(current_, cr.decoration)) {
                            current_ = std::move(cr.decoration);
                            progressed = true;
                        }
                        if (cr.oriented_any) {
                            progressed = true;
                        }
                        orientation_ = std::move(cr.orientation);
                        break;
                    }
                    case RoundOp::Vertex: {
                        VertexRefineResult vr =
                            vertex_refine(cx_, uni_, current_, orientation_, engine);
                        tainted_ |= vr.tainted;
                        if (!same_partition(current_, vr.decoration)) {
                            current_ = std::move(vr.decoration);
                            progressed = true;
                        }
                        if (vr.oriented_any) progressed = true;
                        orientation_ = std::move(vr.orientation);
                        break;
                    }
                }
            }
            if (!progressed) return;
        }
        throw std::logic_error("joint refinement failed to stabilize within its round bound");
    }

    /// Ornaments of stable classes restricted to one member graph.
    std::vector<OrnId> class_set(int graph) const {
        std::set<OrnId> seen;
        std::vector<OrnId> out;
        for (int c = 0; c < static_cast<int>(cx_.cell_count()); ++c)
            if (cx_.cell(c).graph == graph && seen.insert(current_[c]).second)
                out.push_back(current_[c]);
        std::sort(out.begin(), out.end(),
                  [this](OrnId a, OrnId b) { return uni_.less(a, b); });
        return out;
    }

    /// Structure invariant of one member graph under the joint stable state.
    StructureInvariant invariant_of(int graph) const {
        StructureInvariant inv;
        std::map<OrnId, std::vector<int>> classes;
        for (int c = 0; c < static_cast<int>(cx_.cell_count()); ++c)
            if (cx_.cell(c).graph == graph) classes[current_[c]].push_back(c);
        for (const auto& [k, members] : classes) {
            const std::string& kstr = uni_.serialize(k);
            inv.base_projection[kstr] = uni_.serialize(uni_.base_projection(k));
            std::map<OrnId, ExtNat> counts;
            for (const auto& arc : cx_.arcs(members.front())) counts[current_[arc.to]] += arc.count;
            for (const auto& [j, n] : counts) inv.entries[{uni_.serialize(j), kstr}] = n;
        }
        return inv;
    }

private:
    std::vector<const CylinderGraph*> graphs_;
    DecorationMode mode_;
    OrnamentUniverse uni_;
    RefinementComplex cx_;
    OracleRegistry registry_;
    Decoration initial_;
    Decoration current_;
    PartialOrientation orientation_;
    bool tainted_ = false;
    int rounds_ = 0;
};

// ---------------------------------------------------------------------------
// The equivalence decision
// ---------------------------------------------------------------------------

enum class VerdictKind { Equivalent, Distinct, Inconclusive };

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::string reason;
    // Witness on Equivalent: the ornament matching is the identity on the
    // listed canonical class values; xi records the sign flips used.
    std::vector<std::string> beta;
    std::map<std::string, int> xi;

    int exit_code() const {
        switch (kind) {
            case VerdictKind::Equivalent: return 0;
            case VerdictKind::Distinct: return 1;
            case VerdictKind::Inconclusive: return 2;
        }
        return 70;
    }
};

struct CompareOptions {
    int max_xi_classes = 20;
    bool lenient_stretch = false;
};

/**
 * Decides equivalence of two inputs in the given mode: joint refinement
 * to simultaneous stability, then the four conditions — matching initial
 * projections of the stable classes, equal structure invariants,
 * realizability of one representative per non-elementary class, and
 * imbalance equality under some global sign pattern.
 */
/// True when every rigid-incident edge carries a length.
inline bool has_complete_lengths(const CylinderGraph& g) {
    for (const auto& e : g.edges)
        if (g.vertex(e.ne).kind == VertexKind::Rigid && !e.length) return false;
    return true;
}

inline Verdict compare(const CylinderGraph& a, const CylinderGraph& b, DecorationMode mode,
                       const CompareOptions& opt = {}) {
    // Quasi-isometry comparisons honor stretch data when both inputs
    // carry complete lengths and fall back to the plain decoration
    // otherwise; the strict mode insists on complete length data.
    DecorationMode effective = mode;
    if (mode == DecorationMode::Qi && has_complete_lengths(a) && has_complete_lengths(b))
        effective = DecorationMode::QiStretch;
    Workspace ws({&a, &b}, effective, opt.lenient_stretch);
    ws.full_refine();

    Verdict v;
    if (ws.tainted()) {
        v.kind = VerdictKind::Inconclusive;
        v.reason = "refinement involved vertices with incomparable oracle ids";
        return v;
    }

    const OrnamentUniverse& uni = ws.universe();
    const RefinementComplex& cx = ws.complex();
    const Decoration& d = ws.decoration();
    const PartialOrientation& o = ws.orientation();

    // (a) Stable classes must correspond; with canonical interned values
    // the matching is the identity, and matching values agree on their
    // initial projections by construction.
    std::vector<OrnId> ca = ws.class_set(0);
    std::vector<OrnId> cb = ws.class_set(1);
    if (ca != cb) {
        v.kind = VerdictKind::Distinct;
        v.reason = "condition (a): stable decorations induce different class sets";
        return v;
    }

    // (b) Equal structure invariants, keyed by canonical class values.
    if (!invariants_equal(ws.invariant_of(0), ws.invariant_of(1))) {
        v.kind = VerdictKind::Distinct;
        v.reason = "condition (b): structure invariants differ";
        return v;
    }

    // Representatives per stable class and per graph; condition (a)
    // guarantees every class meets both graphs.
    std::map<OrnId, std::array<int, 2>> reps;
    for (int c = static_cast<int>(cx.cell_count()) - 1; c >= 0; --c) {
        auto it = reps.try_emplace(d[c], std::array<int, 2>{-1, -1}).first;
        it->second[cx.cell(c).graph] = c;
    }

    LocalSymmetryEngine engine(cx, ws.registry());

    // Orientation-carrying edge classes drive the sign search.
    std::vector<OrnId> oriented_classes;
    {
        std::set<OrnId> seen;
        for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c)
            if (cx.is_edge(c) && o.line_orient[c] != 0) seen.insert(d[c]);
        oriented_classes.assign(seen.begin(), seen.end());
        std::sort(oriented_classes.begin(), oriented_classes.end(),
                  [&uni](OrnId x, OrnId y) { return uni.less(x, y); });
    }
    if (static_cast<int>(oriented_classes.size()) > opt.max_xi_classes) {
        v.kind = VerdictKind::Inconclusive;
        v.reason = "sign search space exceeds the configured bound";
        return v;
    }

    int best_stage = 0;  // 0: none, 1: passed (c), 2: passed (d)
    for (std::uint64_t bits = 0; bits < (1ull << oriented_classes.size()); ++bits) {
        std::map<OrnId, int> xi;
        for (std::size_t i = 0; i < oriented_classes.size(); ++i)
            xi[oriented_classes[i]] = (bits >> i) & 1 ? -1 : 1;

        // (c) realizability, with the sign pattern applied to the first
        // graph's side of each query.
        bool ok = true;
        for (const auto& [orn, pair] : reps) {
            if (!cx.is_nonelementary_vertex(pair[0])) continue;
            MatchAnswer ans = engine.match(pair[0], -1, pair[1], -1, d, o, &xi);
            if (ans.verdict == MatchVerdict::Unknown) {
                v.kind = VerdictKind::Inconclusive;
                v.reason = "condition (c): oracle ids are not comparable across the inputs";
                return v;
            }
            if (ans.verdict == MatchVerdict::No) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        best_stage = std::max(best_stage, 1);

        // (d) imbalances agree class-wise under the sign pattern.
        for (const auto& [orn, pair] : reps) {
            if (!cx.is_vertex(pair[0]) || cx.is_nonelementary_vertex(pair[0])) continue;
            ImbalanceVector ia = imbalance(cx, uni, d, o, pair[0], &xi);
            ImbalanceVector ib = imbalance(cx, uni, d, o, pair[1]);
            if (ia != ib) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        v.kind = VerdictKind::Equivalent;
        v.reason = "all conditions hold";
        for (OrnId orn : ca) v.beta.push_back(uni.serialize(orn));
        for (const auto& [orn, s] : xi) v.xi[uni.serialize(orn)] = s;
        return v;
    }

    v.kind = VerdictKind::Distinct;
    v.reason = best_stage >= 1
                   ? "condition (d): no sign pattern matches the orientation imbalances"
                   : "condition (c): no sign pattern realizes the non-elementary classes";
    return v;
}

}  // namespace cylref

#endif
