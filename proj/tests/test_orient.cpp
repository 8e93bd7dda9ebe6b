#include <map>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "cylref/classify.hpp"
#include "helpers.hpp"

using namespace cylref;

namespace {

struct Pipeline {
    CylinderGraph g;
    OrnamentUniverse uni;
    RefinementComplex cx;
    OracleRegistry reg;
    Decoration d;
    PartialOrientation o;

    explicit Pipeline(CylinderGraph graph, DecorationMode mode = DecorationMode::Boundary)
        : g(std::move(graph)), cx(subdivide(g)), o(PartialOrientation::trivial(0)) {
        reg.add_graph(g);
        d = neighbor_refine_fix(cx, initial_decoration(cx, mode, uni), uni).stable;
        o = PartialOrientation::trivial(cx.cell_count());
    }

    void run_vertex_refine() {
        LocalSymmetryEngine engine(cx, reg);
        VertexRefineResult r = vertex_refine(cx, uni, d, o, engine);
        d = r.decoration;
        o = r.orientation;
    }

    int cell(const std::string& id, bool edge) const {
        if (edge) return cx.edge_cell(0, g.edge_index.at(id));
        return cx.vertex_cell(0, g.vertex_index.at(id));
    }
};

std::set<std::set<std::string>> edge_partition(const Pipeline& p) {
    std::map<OrnId, std::set<std::string>> groups;
    for (int c = 0; c < static_cast<int>(p.cx.cell_count()); ++c)
        if (p.cx.is_edge(c)) groups[p.d[c]].insert(p.cx.cell(c).id);
    std::set<std::set<std::string>> out;
    for (auto& [k, v] : groups) out.insert(std::move(v));
    return out;
}

}  // namespace

TEST_CASE("imbalance of the unbalanced central cylinder is nonzero") {
    Pipeline p(load_fixture("fig5.json"));
    p.run_vertex_refine();  // orients the non-reversible lines

    ImbalanceVector iv = imbalance(p.cx, p.uni, p.d, p.o, p.cell("c1", false));
    REQUIRE(iv.entries.size() == 1);
    CHECK(iv.entries[0].second == 1);

    // Unbalancedness survives the refinement pass.
    CylinderRefineResult r = cylinder_refine(p.cx, p.uni, p.d, p.o);
    ImbalanceVector after = imbalance(p.cx, p.uni, r.decoration, r.orientation, p.cell("c1", false));
    CHECK(!after.is_zero());
}

TEST_CASE("cylinder refinement separates the reversed attaching edge") {
    Pipeline p(load_fixture("fig5.json"));
    p.run_vertex_refine();
    CylinderRefineResult r = cylinder_refine(p.cx, p.uni, p.d, p.o);
    p.d = r.decoration;
    p.o = r.orientation;

    CHECK(p.d[p.cell("f1", true)] == p.d[p.cell("f2", true)]);
    CHECK(p.d[p.cell("f1", true)] != p.d[p.cell("f3", true)]);
    CHECK(p.o.cyl_orient[p.cell("c1", false)] != 0);

    // After one more neighbor pass the third branch vertex separates.
    Decoration stable = neighbor_refine_fix(p.cx, p.d, p.uni).stable;
    CHECK(stable[p.cell("r1", false)] == stable[p.cell("r2", false)]);
    CHECK(stable[p.cell("r1", false)] != stable[p.cell("r3", false)]);
}

TEST_CASE("after refinement, each edge class at an unbalanced cylinder has one sign") {
    Pipeline p(load_fixture("fig5.json"));
    p.run_vertex_refine();
    CylinderRefineResult r = cylinder_refine(p.cx, p.uni, p.d, p.o);

    int c1 = p.cell("c1", false);
    REQUIRE(r.orientation.cyl_orient[c1] != 0);
    std::map<OrnId, std::set<int>> signs_per_class;
    for (int ei : p.g.incident[p.cx.cell(c1).index]) {
        int ec = p.cx.edge_cell(0, ei);
        int s = r.orientation.cyl_orient[c1] * input_sign(p.g.edges[ei]) *
                r.orientation.line_orient[ec];
        signs_per_class[r.decoration[ec]].insert(s);
    }
    for (const auto& [orn, signs] : signs_per_class) CHECK(signs.size() == 1);
}

TEST_CASE("dihedral cylinders are balanced by construction and stay unoriented") {
    std::string doc = R"({
        "name": "dihedral",
        "vertices": [
            {"id": "c", "kind": "cylindrical", "dihedral": true},
            {"id": "r1", "kind": "rigid", "oracle": "t"},
            {"id": "r2", "kind": "rigid", "oracle": "t"}
        ],
        "edges": [
            {"id": "e1", "cyl": "c", "ne": "r1", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": 1, "k": "1/1", "reversible": false},
            {"id": "e2", "cyl": "c", "ne": "r2", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": 1, "k": "1/1", "reversible": false}
        ],
        "oracles": [{"id": "t", "type": "trivial"}]
    })";
    Pipeline p(parse_graph(doc), DecorationMode::Type);
    p.run_vertex_refine();
    for (int c = 0; c < static_cast<int>(p.cx.cell_count()); ++c)
        if (p.cx.is_edge(c)) CHECK(p.o.line_orient[c] != 0);

    CHECK(imbalance(p.cx, p.uni, p.d, p.o, p.cell("c", false)).is_zero());
    CylinderRefineResult r = cylinder_refine(p.cx, p.uni, p.d, p.o);
    CHECK(r.orientation.cyl_orient[p.cell("c", false)] == 0);
    CHECK(same_partition(p.d, r.decoration));
    CHECK(!r.oriented_any);
}

TEST_CASE("opposite attaching signs on one ornament cancel") {
    std::string doc = R"({
        "name": "cancel",
        "vertices": [
            {"id": "c", "kind": "cylindrical"},
            {"id": "r1", "kind": "rigid", "oracle": "t"},
            {"id": "r2", "kind": "rigid", "oracle": "t"}
        ],
        "edges": [
            {"id": "e1", "cyl": "c", "ne": "r1", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": 1, "k": "1/1", "reversible": false},
            {"id": "e2", "cyl": "c", "ne": "r2", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": -1, "k": "1/1", "reversible": false}
        ],
        "oracles": [{"id": "t", "type": "trivial"}]
    })";
    Pipeline p(parse_graph(doc), DecorationMode::Type);
    p.run_vertex_refine();
    CHECK(imbalance(p.cx, p.uni, p.d, p.o, p.cell("c", false)).is_zero());
}

TEST_CASE("sign pattern application is an involution and preserves magnitudes") {
    Pipeline p(load_fixture("fig5.json"));
    p.run_vertex_refine();
    CylinderRefineResult r = cylinder_refine(p.cx, p.uni, p.d, p.o);
    p.d = r.decoration;
    p.o = r.orientation;

    // Flip one oriented edge class.
    std::map<OrnId, int> xi;
    for (int c = 0; c < static_cast<int>(p.cx.cell_count()); ++c)
        if (p.cx.is_edge(c) && p.o.line_orient[c] != 0) xi.emplace(p.d[c], 1);
    REQUIRE(!xi.empty());
    xi.begin()->second = -1;

    PartialOrientation flipped = xi_apply(p.cx, p.d, p.o, xi);
    CHECK(!(flipped == p.o));
    PartialOrientation twice = xi_apply(p.cx, p.d, flipped, xi);
    CHECK(twice == p.o);

    std::map<OrnId, int> identity;
    CHECK(xi_apply(p.cx, p.d, p.o, identity) == p.o);

    // Per-coordinate magnitudes of every imbalance are unchanged.
    for (int c = 0; c < static_cast<int>(p.cx.cell_count()); ++c) {
        if (!p.cx.is_cylindrical_vertex(c)) continue;
        ImbalanceVector a = imbalance(p.cx, p.uni, p.d, p.o, c);
        ImbalanceVector b = imbalance(p.cx, p.uni, p.d, flipped, c);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i) {
            CHECK(a.entries[i].first == b.entries[i].first);
            CHECK(std::abs(a.entries[i].second) == std::abs(b.entries[i].second));
        }
    }
}

TEST_CASE("negating the input signs at a cylinder changes nothing observable") {
    CylinderGraph plain = load_fixture("fig5.json");
    CylinderGraph negated = plain;
    for (auto& e : negated.edges)
        if (e.cyl == "c1" && e.sign != 0) e.sign = -e.sign;

    auto run = [](const CylinderGraph& g) {
        Pipeline p(g);
        p.run_vertex_refine();
        CylinderRefineResult r = cylinder_refine(p.cx, p.uni, p.d, p.o);
        p.d = neighbor_refine_fix(p.cx, r.decoration, p.uni).stable;
        p.o = r.orientation;
        return std::pair<std::set<std::set<std::string>>, std::string>(
            edge_partition(p),
            imbalance(p.cx, p.uni, p.d, p.o, p.cell("c1", false)).str(p.uni));
    };
    auto a = run(plain);
    auto b = run(negated);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
}

TEST_CASE("canonical imbalance ignores the reference gauge of the cylinder") {
    // A 2:1 weighted star whose raw sums flip sign with the gauge.
    std::string doc = R"({
        "name": "gauge",
        "vertices": [
            {"id": "c", "kind": "cylindrical"},
            {"id": "r1", "kind": "rigid", "oracle": "t"},
            {"id": "r2", "kind": "rigid", "oracle": "t"}
        ],
        "edges": [
            {"id": "e1", "cyl": "c", "ne": "r1", "mult_at_cyl": 2, "mult_at_ne": "inf", "sign": -1, "k": "1/1", "reversible": false},
            {"id": "e2", "cyl": "c", "ne": "r2", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": 1, "k": "1/1", "reversible": false}
        ],
        "oracles": [{"id": "t", "type": "trivial"}]
    })";
    Pipeline p(parse_graph(doc), DecorationMode::Type);
    p.run_vertex_refine();
    // Raw sum against the input gauge is 1*(+1) + 2*(-1) = -1; the
    // canonical representative flips it positive.
    ImbalanceVector iv = imbalance(p.cx, p.uni, p.d, p.o, p.cell("c", false));
    REQUIRE(iv.entries.size() == 1);
    CHECK(iv.entries[0].second == 1);
}
