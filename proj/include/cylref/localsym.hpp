#ifndef CYLREF_LOCALSYM_HPP
#define CYLREF_LOCALSYM_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cylref/orient.hpp"

namespace cylref {

inline bool oracle_specs_equal(const OracleSpec& a, const OracleSpec& b) {
    if (a.type != b.type || a.slots != b.slots) return false;
    if (a.generators.size() != b.generators.size()) return false;
    for (std::size_t i = 0; i < a.generators.size(); ++i)
        if (a.generators[i].perm != b.generators[i].perm ||
            a.generators[i].signs != b.generators[i].signs)
            return false;
    return true;  // slot_edge bindings are per-vertex and may differ
}

/**
 * All oracle specs visible in a workspace, merged by id. Two graphs may
 * declare the same oracle id only with identical group data; their
 * slot_edge bindings are merged (vertex ids are assumed distinct or
 * identically bound).
 */
class OracleRegistry {
public:
    void add_graph(const CylinderGraph& g) {
        for (const auto& o : g.oracles) {
            auto it = specs_.find(o.id);
            if (it == specs_.end()) {
                specs_.emplace(o.id, o);
                continue;
            }
            if (!oracle_specs_equal(it->second, o))
                throw schema_error("oracle id '" + o.id +
                                   "' is declared with conflicting content across inputs");
            for (const auto& [vid, m] : o.slot_edge) it->second.slot_edge[vid] = m;
        }
    }

    const OracleSpec* find(const std::string& id) const {
        auto it = specs_.find(id);
        return it == specs_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::string, OracleSpec> specs_;
};

enum class MatchVerdict { Yes, No, Unknown };

struct MatchAnswer {
    MatchVerdict verdict = MatchVerdict::No;
    int sign = 1;  // orientation carried onto the marked line by a witness
};

/**
 * Decides local-symmetry questions at non-elementary vertices: whether a
 * (vertex, marked edge) pair can be carried to another by an admissible
 * symmetry preserving the current decoration and partial orientation,
 * and whether a marked line admits an orientation-reversing symmetry.
 *
 * Signed-permutation oracles answer by orbit search over slot
 * configurations; the flexible and trivial oracles answer from the
 * decorated data directly.
 */
class LocalSymmetryEngine {
public:
    LocalSymmetryEngine(const RefinementComplex& cx, const OracleRegistry& reg)
        : cx_(cx), reg_(reg) {}

    const std::string& oracle_id_of(int v_cell) const {
        const VertexRecord& v = cx_.vertex_of(v_cell);
        if (!v.oracle)
            throw oracle_missing("non-elementary vertex '" + v.id + "' has no oracle binding");
        return *v.oracle;
    }

    MatchAnswer match(int v_cell, int v_marked, int w_cell, int w_marked, const Decoration& d,
                      const PartialOrientation& o,
                      const std::map<OrnId, int>* source_flip = nullptr) const {
        if (!cx_.is_nonelementary_vertex(v_cell) || !cx_.is_nonelementary_vertex(w_cell))
            throw ill_posed_query("match endpoints must be non-elementary vertices");
        if (d[v_cell] != d[w_cell])
            throw ill_posed_query("match endpoints carry different ornaments");
        if ((v_marked < 0) != (w_marked < 0))
            throw ill_posed_query("exactly one side of the match carries a mark");
        if (v_marked >= 0 && d[v_marked] != d[w_marked]) return {MatchVerdict::No, 1};

        const std::string& oid_v = oracle_id_of(v_cell);
        const std::string& oid_w = oracle_id_of(w_cell);
        if (oid_v != oid_w) return {MatchVerdict::Unknown, 1};
        const OracleSpec* spec = reg_.find(oid_v);
        if (!spec) throw oracle_missing("oracle '" + oid_v + "' is not registered");

        switch (spec->type) {
            case OracleType::Flexible:
                return flexible_match(v_cell, v_marked, w_cell, w_marked, d, o);
            case OracleType::Trivial:
                // Equal vertex ornaments plus equal marked ornaments is all
                // the trivial oracle can check.
                return {MatchVerdict::Yes, 1};
            case OracleType::SignedPermGroup:
                return perm_match(*spec, v_cell, v_marked, w_cell, w_marked, d, o, source_flip);
        }
        return {MatchVerdict::No, 1};
    }

    bool reversal(int v_cell, int edge_cell, const Decoration& d,
                  const PartialOrientation& o) const {
        const OracleSpec* spec = reg_.find(oracle_id_of(v_cell));
        if (!spec) throw oracle_missing("oracle not registered");
        switch (spec->type) {
            case OracleType::Flexible:
                return true;
            case OracleType::Trivial:
                return cx_.edge_of(edge_cell).reversible;
            case OracleType::SignedPermGroup:
                return perm_reversal(*spec, v_cell, edge_cell, d, o);
        }
        return true;
    }

private:
    struct SlotState {
        std::vector<std::pair<OrnId, int>> slots;  // (ornament, oriented line value)
        int marked = -1;
        int marked_sign = 1;

        bool operator<(const SlotState& other) const {
            if (slots != other.slots) return slots < other.slots;
            if (marked != other.marked) return marked < other.marked;
            return marked_sign < other.marked_sign;
        }
        bool operator==(const SlotState& other) const {
            return slots == other.slots && marked == other.marked &&
                   marked_sign == other.marked_sign;
        }
    };

    MatchAnswer flexible_match(int v, int vm, int w, int wm, const Decoration& d,
                               const PartialOrientation& o) const {
        auto profile = [&](int cell) {
            std::map<std::pair<OrnId, bool>, ExtNat> p;
            int gi = cx_.cell(cell).graph;
            const CylinderGraph& g = cx_.graph(gi);
            for (int ei : g.incident[cx_.cell(cell).index]) {
                int ec = cx_.edge_cell(gi, ei);
                p[{d[ec], o.line_orient[ec] != 0}] += g.edges[ei].mult_at_ne;
            }
            return p;
        };
        auto pv = profile(v);
        auto pw = profile(w);
        bool ok = pv.size() == pw.size() &&
                  std::equal(pv.begin(), pv.end(), pw.begin(), [](const auto& a, const auto& b) {
                      return a.first == b.first && a.second == b.second;
                  });
        if (ok && vm >= 0)
            ok = d[vm] == d[wm] && (o.line_orient[vm] != 0) == (o.line_orient[wm] != 0);
        return {ok ? MatchVerdict::Yes : MatchVerdict::No, 1};
    }

    std::vector<int> slots_of_edge(const OracleSpec& spec, int v_cell, int edge_cell) const {
        const std::string& vid = cx_.vertex_of(v_cell).id;
        const std::string& eid = cx_.edge_of(edge_cell).id;
        std::vector<int> out;
        auto it = spec.slot_edge.find(vid);
        if (it == spec.slot_edge.end())
            throw schema_error("oracle '" + spec.id + "' has no slot bindings for '" + vid + "'");
        for (const auto& [slot, bound] : it->second)
            if (bound == eid) out.push_back(slot);
        if (out.empty())
            throw ill_posed_query("edge '" + eid + "' is not bound to a slot at '" + vid + "'");
        return out;
    }

    SlotState base_state(const OracleSpec& spec, int v_cell, const Decoration& d,
                         const PartialOrientation& o,
                         const std::map<OrnId, int>* flip) const {
        const std::string& vid = cx_.vertex_of(v_cell).id;
        const auto& binding = spec.slot_edge.at(vid);
        SlotState st;
        st.slots.assign(spec.slots, {kInvalidOrn, 0});
        int gi = cx_.cell(v_cell).graph;
        const CylinderGraph& g = cx_.graph(gi);
        for (const auto& [slot, eid] : binding) {
            int ec = cx_.edge_cell(gi, g.edge_index.at(eid));
            int line = o.line_orient[ec];
            if (line != 0 && flip) {
                auto it = flip->find(d[ec]);
                if (it != flip->end()) line *= it->second;
            }
            st.slots[slot] = {d[ec], line};
        }
        return st;
    }

    static SlotState apply(const SignedPerm& gperm, const SlotState& st) {
        SlotState out;
        out.slots.assign(st.slots.size(), {kInvalidOrn, 0});
        for (std::size_t i = 0; i < st.slots.size(); ++i) {
            out.slots[gperm.perm[i]] = {st.slots[i].first, st.slots[i].second * gperm.signs[i]};
        }
        out.marked = st.marked < 0 ? -1 : gperm.perm[st.marked];
        out.marked_sign = st.marked < 0 ? 1 : st.marked_sign * gperm.signs[st.marked];
        return out;
    }

    // Breadth-first closure of the generated group acting on one state.
    std::set<SlotState> orbit(const OracleSpec& spec, const SlotState& start) const {
        static constexpr std::size_t kOrbitCap = 1u << 21;
        std::set<SlotState> seen{start};
        std::deque<SlotState> queue{start};
        while (!queue.empty()) {
            SlotState st = queue.front();
            queue.pop_front();
            for (const auto& gen : spec.generators) {
                SlotState next = apply(gen, st);
                if (seen.insert(next).second) {
                    if (seen.size() > kOrbitCap)
                        throw InputError("OracleSearchLimit",
                                         "orbit of oracle '" + spec.id + "' exceeds the search cap");
                    queue.push_back(next);
                }
            }
        }
        return seen;
    }

    MatchAnswer perm_match(const OracleSpec& spec, int v, int vm, int w, int wm,
                           const Decoration& d, const PartialOrientation& o,
                           const std::map<OrnId, int>* source_flip) const {
        SlotState target = base_state(spec, w, d, o, nullptr);
        SlotState source = base_state(spec, v, d, o, source_flip);
        if (vm < 0) {
            auto orb = orbit(spec, source);
            return {orb.count(target) ? MatchVerdict::Yes : MatchVerdict::No, 1};
        }
        std::vector<int> src_slots = slots_of_edge(spec, v, vm);
        std::vector<int> dst_slots = slots_of_edge(spec, w, wm);
        for (int s : src_slots) {
            SlotState marked_src = source;
            marked_src.marked = s;
            auto orb = orbit(spec, marked_src);
            for (const SlotState& st : orb) {
                if (st.marked < 0 || st.slots != target.slots) continue;
                if (std::find(dst_slots.begin(), dst_slots.end(), st.marked) != dst_slots.end())
                    return {MatchVerdict::Yes, st.marked_sign};
            }
        }
        return {MatchVerdict::No, 1};
    }

    bool perm_reversal(const OracleSpec& spec, int v, int edge_cell, const Decoration& d,
                       const PartialOrientation& o) const {
        SlotState source = base_state(spec, v, d, o, nullptr);
        for (int s : slots_of_edge(spec, v, edge_cell)) {
            SlotState marked = source;
            marked.marked = s;
            SlotState reversed = marked;
            reversed.marked_sign = -1;
            if (orbit(spec, marked).count(reversed)) return true;
        }
        return false;
    }

    const RefinementComplex& cx_;
    const OracleRegistry& reg_;
};

// ---------------------------------------------------------------------------
// Vertex refinement
// ---------------------------------------------------------------------------

struct VertexRefineResult {
    Decoration decoration;
    PartialOrientation orientation;
    bool oriented_any = false;
    bool tainted = false;  // some query across distinct oracle ids was undecidable
};

/**
 * Vertex refinement: splits non-elementary vertex cells and edge cells
 * into local-symmetry classes (new ornaments carry a canonical class
 * token), and orients every edge class whose line admits no reversing
 * symmetry, anchoring the least cell at +1 and propagating orientations
 * through matching witnesses.
 */
inline VertexRefineResult vertex_refine(const RefinementComplex& cx, OrnamentUniverse& uni,
                                        const Decoration& d, const PartialOrientation& o,
                                        const LocalSymmetryEngine& engine) {
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c)
        if (cx.is_nonelementary_vertex(c) && !cx.vertex_of(c).oracle)
            throw oracle_missing("non-elementary vertex '" + cx.cell(c).id +
                                 "' has no oracle binding");

    VertexRefineResult res{d, o, false, false};

    // Canonical cell order for anchors and deterministic tie-breaking.
    auto cell_less = [&cx](int a, int b) {
        const CellInfo& ca = cx.cell(a);
        const CellInfo& cb = cx.cell(b);
        if (ca.graph != cb.graph) return ca.graph < cb.graph;
        if (ca.type != cb.type) return ca.type < cb.type;
        return ca.id < cb.id;
    };

    // Adjacency profile under the current decoration; used to order the
    // match subclasses canonically before handing out tokens.
    auto fingerprint = [&](int cell) {
        std::map<OrnId, ExtNat> counts;
        for (const auto& arc : cx.arcs(cell)) counts[d[arc.to]] += arc.count;
        std::vector<std::pair<OrnId, ExtNat>> vec(counts.begin(), counts.end());
        std::sort(vec.begin(), vec.end(),
                  [&uni](const auto& a, const auto& b) { return uni.less(a.first, b.first); });
        std::string s;
        for (const auto& [orn, n] : vec) s += uni.serialize(orn) + "=" + n.str() + ";";
        return s;
    };

    struct Subclass {
        std::vector<int> members;
        std::string key;
    };

    std::uint32_t next_token = 0;
    auto split_class = [&](const std::vector<int>& members, bool edges) {
        std::vector<Subclass> subs;
        for (int cell : members) {
            bool placed = false;
            for (auto& sub : subs) {
                int rep = sub.members.front();
                MatchAnswer ans = edges ? engine.match(cx.ne_endpoint(rep), rep,
                                                       cx.ne_endpoint(cell), cell, d, o)
                                        : engine.match(rep, -1, cell, -1, d, o);
                if (ans.verdict == MatchVerdict::Unknown) res.tainted = true;
                if (ans.verdict == MatchVerdict::Yes) {
                    sub.members.push_back(cell);
                    placed = true;
                    break;
                }
            }
            if (!placed) subs.push_back({{cell}, {}});
        }
        for (auto& sub : subs) {
            std::sort(sub.members.begin(), sub.members.end(), cell_less);
            std::vector<std::string> prints;
            for (int m : sub.members) prints.push_back(fingerprint(m));
            std::sort(prints.begin(), prints.end());
            for (const auto& p : prints) sub.key += p + "|";
        }
        std::sort(subs.begin(), subs.end(), [&](const Subclass& a, const Subclass& b) {
            if (a.key != b.key) return a.key < b.key;
            return cell_less(a.members.front(), b.members.front());
        });
        return subs;
    };

    Decoration next = d;
    auto classes = partition_classes(uni, d);
    for (const auto& members : classes) {
        bool edge_class = cx.is_edge(members.front());
        bool ne_class = cx.is_nonelementary_vertex(members.front());
        if (!edge_class && !ne_class) continue;  // cylinders keep their ornament
        if (ne_class) {
            for (const auto& sub : split_class(members, false)) {
                std::uint32_t token = next_token++;
                for (int cell : sub.members) next[cell] = uni.orbit(d[cell], token);
            }
            continue;
        }
        // Before neighbor stability an edge class may mix endpoint
        // ornaments; matches are only posed within a common one.
        std::map<OrnId, std::vector<int>> by_endpoint;
        for (int cell : members) by_endpoint[d[cx.ne_endpoint(cell)]].push_back(cell);
        std::vector<OrnId> eps;
        for (const auto& [ep, _] : by_endpoint) eps.push_back(ep);
        std::sort(eps.begin(), eps.end(), [&uni](OrnId a, OrnId b) { return uni.less(a, b); });
        for (OrnId ep : eps) {
            for (const auto& sub : split_class(by_endpoint[ep], true)) {
                std::uint32_t token = next_token++;
                for (int cell : sub.members) next[cell] = uni.orbit(d[cell], token);
            }
        }
    }

    // Orient freshly distinguishable lines: an edge class with no
    // reversing symmetry gets a canonical orientation anchored at its
    // least member and pushed along match witnesses. All queries run
    // against the pre-extension state.
    std::unordered_map<OrnId, std::vector<int>> new_edge_classes;
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c)
        if (cx.is_edge(c)) new_edge_classes[next[c]].push_back(c);
    std::vector<OrnId> keys;
    for (const auto& [k, _] : new_edge_classes) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [&uni](OrnId a, OrnId b) { return uni.less(a, b); });
    for (OrnId k : keys) {
        auto& cells = new_edge_classes[k];
        std::sort(cells.begin(), cells.end(), cell_less);
        bool any_oriented = false;
        for (int c : cells) any_oriented |= o.line_orient[c] != 0;
        if (any_oriented) continue;
        int anchor = cells.front();
        if (engine.reversal(cx.ne_endpoint(anchor), anchor, d, o)) continue;
        res.orientation.line_orient[anchor] = 1;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            MatchAnswer ans = engine.match(cx.ne_endpoint(anchor), anchor,
                                           cx.ne_endpoint(cells[i]), cells[i], d, o);
            res.orientation.line_orient[cells[i]] =
                static_cast<std::int8_t>(ans.verdict == MatchVerdict::Yes ? ans.sign : 1);
        }
        res.oriented_any = true;
    }

    res.decoration = std::move(next);
    return res;
}

}  // namespace cylref

#endif
