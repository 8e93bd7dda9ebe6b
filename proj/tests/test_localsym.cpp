#include <map>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "cylref/classify.hpp"
#include "helpers.hpp"

using namespace cylref;

namespace {

struct Rig {
    CylinderGraph g;
    OrnamentUniverse uni;
    RefinementComplex cx;
    OracleRegistry reg;
    Decoration d;
    PartialOrientation o;

    explicit Rig(CylinderGraph graph, DecorationMode mode = DecorationMode::Boundary)
        : g(std::move(graph)), cx(subdivide(g)) {
        reg.add_graph(g);
        d = neighbor_refine_fix(cx, initial_decoration(cx, mode, uni), uni).stable;
        o = PartialOrientation::trivial(cx.cell_count());
    }

    int vcell(const std::string& id) const { return cx.vertex_cell(0, g.vertex_index.at(id)); }
    int ecell(const std::string& id) const { return cx.edge_cell(0, g.edge_index.at(id)); }
};

}  // namespace

TEST_CASE("full signed symmetric oracle carries one edge class to the other") {
    Rig rig(load_fixture("ex11-g0.json"));
    LocalSymmetryEngine engine(rig.cx, rig.reg);

    // Both parallel edges land in one neighbor-stable class, and the
    // oracle confirms a symmetry carrying one marked line to the other.
    REQUIRE(rig.d[rig.ecell("eu")] == rig.d[rig.ecell("ev")]);
    MatchAnswer ans = engine.match(rig.vcell("r"), rig.ecell("eu"), rig.vcell("r"),
                                   rig.ecell("ev"), rig.d, rig.o);
    CHECK(ans.verdict == MatchVerdict::Yes);

    // Reversals exist (a sign flip fixes each slot), so no orientation.
    CHECK(engine.reversal(rig.vcell("r"), rig.ecell("eu"), rig.d, rig.o));
    CHECK(engine.reversal(rig.vcell("r"), rig.ecell("ev"), rig.d, rig.o));
}

TEST_CASE("identity-only signed permutation oracle moves nothing") {
    std::string doc = R"({
        "name": "rigidoracle",
        "vertices": [
            {"id": "r", "kind": "rigid", "oracle": "id2"},
            {"id": "c", "kind": "cylindrical"}
        ],
        "edges": [
            {"id": "e0", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"},
            {"id": "e1", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"}
        ],
        "oracles": [
            {"id": "id2", "type": "signed_perm_group", "slots": 2,
             "generators": [{"perm": [0, 1], "signs": [1, 1]}],
             "slot_edge": {"r": {"0": "e0", "1": "e1"}}}
        ]
    })";
    Rig rig(parse_graph(doc), DecorationMode::Type);
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    REQUIRE(rig.d[rig.ecell("e0")] == rig.d[rig.ecell("e1")]);
    MatchAnswer ans = engine.match(rig.vcell("r"), rig.ecell("e0"), rig.vcell("r"),
                                   rig.ecell("e1"), rig.d, rig.o);
    CHECK(ans.verdict == MatchVerdict::No);
    // No sign flip exists either, so the line is orientable.
    CHECK_FALSE(engine.reversal(rig.vcell("r"), rig.ecell("e0"), rig.d, rig.o));
    // The vertex refinement therefore splits the two parallel edges.
    VertexRefineResult vr = vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine);
    CHECK(vr.decoration[rig.ecell("e0")] != vr.decoration[rig.ecell("e1")]);
    CHECK(vr.oriented_any);
}

TEST_CASE("signed permutation oracles detect slot-fixing reversals") {
    std::string doc = R"({
        "name": "revoracle",
        "vertices": [
            {"id": "r", "kind": "rigid", "oracle": "fl"},
            {"id": "c", "kind": "cylindrical"}
        ],
        "edges": [
            {"id": "e0", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"}
        ],
        "oracles": [
            {"id": "fl", "type": "signed_perm_group", "slots": 1,
             "generators": [{"perm": [0], "signs": [-1]}],
             "slot_edge": {"r": {"0": "e0"}}}
        ]
    })";
    Rig rig(parse_graph(doc), DecorationMode::Type);
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    CHECK(engine.reversal(rig.vcell("r"), rig.ecell("e0"), rig.d, rig.o));
}

TEST_CASE("trivial oracle: reversal comes from the input flag") {
    Rig rig(load_fixture("fig5.json"));
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    CHECK_FALSE(engine.reversal(rig.vcell("r1"), rig.ecell("f1"), rig.d, rig.o));

    CylinderGraph g2 = load_fixture("fig5.json");
    g2.edges[g2.edge_index.at("f1")].reversible = true;
    Rig rig2(g2);
    LocalSymmetryEngine engine2(rig2.cx, rig2.reg);
    CHECK(engine2.reversal(rig2.vcell("r1"), rig2.ecell("f1"), rig2.d, rig2.o));
}

TEST_CASE("flexible oracle: always reversible, matches by count profile") {
    Rig rig(load_fixture("fig3.json"), DecorationMode::Type);
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    CHECK(engine.reversal(rig.vcell("r"), rig.ecell("e4"), rig.d, rig.o));
    MatchAnswer ans = engine.match(rig.vcell("r"), -1, rig.vcell("rp"), -1, rig.d, rig.o);
    CHECK(ans.verdict == MatchVerdict::Yes);
}

TEST_CASE("vertex refinement is trivial for the transitive oracle example") {
    Rig rig(load_fixture("ex11-g0.json"));
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    VertexRefineResult vr = vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine);
    CHECK(same_partition(rig.d, vr.decoration));
    CHECK(!vr.oriented_any);
    CHECK(!vr.tainted);

    // Idempotent once stable: a second pass refines nothing further.
    VertexRefineResult vr2 = vertex_refine(rig.cx, rig.uni, vr.decoration, vr.orientation, engine);
    CHECK(same_partition(vr.decoration, vr2.decoration));
}

TEST_CASE("vertex refinement orients the non-reversible lines of the star") {
    Rig rig(load_fixture("fig5.json"));
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    VertexRefineResult vr = vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine);
    CHECK(vr.oriented_any);
    for (const char* e : {"f1", "f2", "f3", "u1", "u2", "u3", "g1", "g2", "g3"})
        CHECK(vr.orientation.line_orient[rig.ecell(e)] != 0);
    // The partition itself does not move; only the orientation grows.
    CHECK(same_partition(rig.d, vr.decoration));
}

TEST_CASE("missing oracle bindings are an error for vertex refinement") {
    std::string doc = R"({
        "name": "nooracle",
        "vertices": [
            {"id": "r", "kind": "rigid"},
            {"id": "c", "kind": "cylindrical"}
        ],
        "edges": [
            {"id": "e", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"}
        ]
    })";
    Rig rig(parse_graph(doc), DecorationMode::Type);
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    CHECK_THROWS_AS(vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine), InputError);
}

TEST_CASE("matching is symmetric and transitive on the fixtures") {
    Rig rig(load_fixture("fig5.json"));
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    std::vector<int> rs{rig.vcell("r1"), rig.vcell("r2"), rig.vcell("r3")};
    for (int v : rs)
        for (int w : rs) {
            MatchAnswer fwd = engine.match(v, -1, w, -1, rig.d, rig.o);
            MatchAnswer bwd = engine.match(w, -1, v, -1, rig.d, rig.o);
            CHECK(fwd.verdict == bwd.verdict);
            CHECK(fwd.verdict == MatchVerdict::Yes);
        }
}

TEST_CASE("slot relabeling does not change refinement results") {
    CylinderGraph base = load_fixture("ex11-g0.json");
    CylinderGraph relabeled = base;
    // Rotate all slot indices by two positions.
    OracleSpec& spec = relabeled.oracles[0];
    auto rot = [](int s) { return (s + 2) % 6; };
    for (auto& gen : spec.generators) {
        SignedPerm np;
        np.perm.assign(6, 0);
        np.signs.assign(6, 1);
        for (int i = 0; i < 6; ++i) {
            np.perm[rot(i)] = rot(gen.perm[i]);
            np.signs[rot(i)] = gen.signs[i];
        }
        gen = np;
    }
    std::map<int, std::string> rotated;
    for (const auto& [slot, eid] : spec.slot_edge["r"]) rotated[rot(slot)] = eid;
    spec.slot_edge["r"] = rotated;
    relabeled.build_indexes_and_validate();

    auto stable_edges = [](const CylinderGraph& g) {
        Rig rig(g);
        LocalSymmetryEngine engine(rig.cx, rig.reg);
        VertexRefineResult vr = vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine);
        return std::pair<bool, bool>(same_partition(rig.d, vr.decoration), vr.oriented_any);
    };
    CHECK(stable_edges(base) == stable_edges(relabeled));
}

TEST_CASE("matching is an equivalence relation on a partially symmetric oracle") {
    // Four parallel edges; the symmetry group only swaps within the
    // pairs {e0,e1} and {e2,e3}.
    std::string doc = R"({
        "name": "pairs",
        "vertices": [
            {"id": "r", "kind": "rigid", "oracle": "pair"},
            {"id": "c", "kind": "cylindrical"}
        ],
        "edges": [
            {"id": "e0", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"},
            {"id": "e1", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"},
            {"id": "e2", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"},
            {"id": "e3", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"}
        ],
        "oracles": [
            {"id": "pair", "type": "signed_perm_group", "slots": 4,
             "generators": [{"perm": [1, 0, 2, 3], "signs": [1, 1, 1, 1]},
                             {"perm": [0, 1, 3, 2], "signs": [1, 1, 1, 1]}],
             "slot_edge": {"r": {"0": "e0", "1": "e1", "2": "e2", "3": "e3"}}}
        ]
    })";
    Rig rig(parse_graph(doc), DecorationMode::Type);
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    std::vector<std::string> es{"e0", "e1", "e2", "e3"};
    auto yes = [&](const std::string& a, const std::string& b) {
        return engine
                   .match(rig.vcell("r"), rig.ecell(a), rig.vcell("r"), rig.ecell(b), rig.d, rig.o)
                   .verdict == MatchVerdict::Yes;
    };
    CHECK(yes("e0", "e1"));
    CHECK(yes("e2", "e3"));
    CHECK_FALSE(yes("e0", "e2"));
    for (const auto& a : es) {
        CHECK(yes(a, a));
        for (const auto& b : es) {
            CHECK(yes(a, b) == yes(b, a));
            for (const auto& c : es)
                if (yes(a, b) && yes(b, c)) CHECK(yes(a, c));
        }
    }

    // The refinement splits the class along the oracle's orbits.
    VertexRefineResult vr = vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine);
    CHECK(vr.decoration[rig.ecell("e0")] == vr.decoration[rig.ecell("e1")]);
    CHECK(vr.decoration[rig.ecell("e2")] == vr.decoration[rig.ecell("e3")]);
    CHECK(vr.decoration[rig.ecell("e0")] != vr.decoration[rig.ecell("e2")]);
}

TEST_CASE("vertex refinement output refines its input") {
    Rig rig(load_fixture("fig5.json"));
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    VertexRefineResult vr = vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine);
    std::unordered_map<OrnId, OrnId> to_coarse;
    for (std::size_t i = 0; i < vr.decoration.size(); ++i) {
        auto it = to_coarse.emplace(vr.decoration[i], rig.d[i]);
        if (!it.second) CHECK(it.first->second == rig.d[i]);
    }
}

TEST_CASE("oriented lines never admit a reversal afterwards") {
    Rig rig(load_fixture("fig5.json"));
    LocalSymmetryEngine engine(rig.cx, rig.reg);
    VertexRefineResult vr = vertex_refine(rig.cx, rig.uni, rig.d, rig.o, engine);
    for (const char* e : {"f1", "u2", "g3"}) {
        int ec = rig.ecell(e);
        REQUIRE(vr.orientation.line_orient[ec] != 0);
        CHECK_FALSE(engine.reversal(rig.cx.ne_endpoint(ec), ec, vr.decoration, vr.orientation));
    }
}
