#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cylref/corpus.hpp"
#include "cylref/stretch.hpp"
#include "helpers.hpp"

using namespace cylref;

namespace {

// Independent check of the modulus on integer lattices: find the least
// common multiple by scanning, then form the two subgroup indexes by
// counting multiples directly.
PosRational lattice_modulus(std::int64_t k0, std::int64_t k1) {
    std::int64_t common = 0;
    for (std::int64_t x = 1; x <= k0 * k1; ++x) {
        if (x % k0 == 0 && x % k1 == 0) {
            common = x;
            break;
        }
    }
    std::int64_t idx1 = 0, idx0 = 0;  // indexes of the intersection
    for (std::int64_t x = k1; x <= common; x += k1) ++idx1;
    for (std::int64_t x = k0; x <= common; x += k0) ++idx0;
    return PosRational(idx1, idx0);
}

CylinderGraph two_edge_cylinder(const std::string& k0, const std::string& k1) {
    std::string doc = R"({
        "name": "loop",
        "vertices": [
            {"id": "r", "kind": "rigid"},
            {"id": "c", "kind": "cylindrical"}
        ],
        "edges": [
            {"id": "e0", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": ")" +
                      k0 + R"("},
            {"id": "e1", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": ")" +
                      k1 + R"("}
        ]
    })";
    return parse_graph(doc);
}

}  // namespace

TEST_CASE("modulus is the scale ratio and matches the lattice oracle") {
    CylinderGraph g = two_edge_cylinder("2/1", "3/1");
    CHECK(modulus(g, "e0", "e1") == PosRational(2, 3));
    CHECK(modulus(g, "e0", "e0") == PosRational(1, 1));
    CHECK(modulus(g, "e0", "e1") * modulus(g, "e1", "e0") == PosRational(1, 1));

    for (std::int64_t a = 1; a <= 12; ++a) {
        for (std::int64_t b = 1; b <= 12; ++b) {
            CylinderGraph h =
                two_edge_cylinder(std::to_string(a) + "/1", std::to_string(b) + "/1");
            CHECK(modulus(h, "e0", "e1") == lattice_modulus(a, b));
        }
    }
}

TEST_CASE("modulus rejects edges of different cylinders") {
    CylinderGraph g = load_fixture("fig1.json");
    CHECK_THROWS_AS(modulus(g, "a1", "b1"), InputError);
}

TEST_CASE("relative stretch across the two known branch cylinders") {
    CylinderGraph g = load_fixture("fig1.json");
    // Lengths 3 and 6 across one cylinder, 2 and 6 across the other.
    CHECK(relative_stretch(g, "r2", "b2", "r7", "d2") == PosRational(2, 1));
    CHECK(relative_stretch(g, "r3", "b3", "r8", "d3") == PosRational(3, 1));
    CHECK(relative_stretch(g, "r2", "b2", "r2", "b2") == PosRational(1, 1));
}

TEST_CASE("stretch factors multiply along triples in a common cylinder") {
    CylinderGraph g = load_fixture("fig1.json");
    std::vector<std::pair<std::string, std::string>> branches{
        {"r1", "a1"}, {"r2", "a2"}, {"r3", "a3"}, {"r4", "a4"}, {"r5", "a5"}};
    for (const auto& [v0, e0] : branches)
        for (const auto& [v1, e1] : branches)
            for (const auto& [v2, e2] : branches) {
                PosRational r01 = relative_stretch(g, v0, e0, v1, e1);
                PosRational r12 = relative_stretch(g, v1, e1, v2, e2);
                PosRational r02 = relative_stretch(g, v0, e0, v2, e2);
                CHECK(r01 * r12 == r02);
            }
}

TEST_CASE("normalization yields the published stretch tables") {
    auto rs_set = [](const CylinderGraph& g) {
        std::multiset<std::string> out;
        for (const auto& e : normalize_cylinder(g, "c")) out.insert(e.rs.str());
        return out;
    };
    CHECK(rs_set(load_fixture("ex11-g0.json")) == std::multiset<std::string>{"1/1", "5/1"});
    CHECK(rs_set(load_fixture("ex11-g1.json")) == std::multiset<std::string>{"1/1", "2/1"});
    CHECK(rs_set(load_fixture("ex11-g2.json")) == std::multiset<std::string>{"1/1", "1/1"});
}

TEST_CASE("normalized values are at least one and some value is one") {
    CylinderGraph g = load_fixture("fig1.json");
    for (const auto& v : g.vertices) {
        if (v.kind != VertexKind::Cylindrical) continue;
        bool has_rigid = false;
        for (int ei : g.incident[g.vertex_index.at(v.id)])
            has_rigid |= g.vertex(g.edges[ei].ne).kind == VertexKind::Rigid;
        if (!has_rigid) continue;
        auto entries = normalize_cylinder(g, v.id);
        REQUIRE(!entries.empty());
        bool some_one = false;
        for (const auto& e : entries) {
            CHECK(e.rs >= PosRational(1, 1));
            some_one |= e.rs == PosRational(1, 1);
        }
        CHECK(some_one);
    }
}

TEST_CASE("a single rigid neighbor always normalizes to one") {
    CylinderGraph g = load_fixture("fig1.json");
    auto entries = normalize_cylinder(g, "c5");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].rs == PosRational(1, 1));
}

TEST_CASE("stretch labels: missing lengths are fatal unless lenient") {
    std::string doc = R"({
        "name": "nolen",
        "vertices": [
            {"id": "r", "kind": "rigid"},
            {"id": "c", "kind": "cylindrical"}
        ],
        "edges": [
            {"id": "e", "cyl": "c", "ne": "r", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"}
        ]
    })";
    CylinderGraph g = parse_graph(doc);
    CHECK_THROWS_AS(stretch_decoration(g), InputError);
    auto labels = stretch_decoration(g, /*lenient=*/true);
    CHECK(!labels[0].has_value());
}

TEST_CASE("graphs without rigid vertices carry no stretch labels") {
    std::string doc = R"({
        "name": "hangingonly",
        "vertices": [
            {"id": "h", "kind": "hanging"},
            {"id": "c", "kind": "cylindrical"}
        ],
        "edges": [
            {"id": "e", "cyl": "c", "ne": "h", "mult_at_cyl": 1, "mult_at_ne": "inf", "sign": null, "k": "1/1"}
        ]
    })";
    CylinderGraph g = parse_graph(doc);
    auto labels = stretch_decoration(g);
    for (const auto& l : labels) CHECK(!l.has_value());
}

TEST_CASE("stretch labels are invariant under per-cylinder gauge changes") {
    std::mt19937_64 rng(corpus_seed());
    CylinderGraph base = load_fixture("fig1.json");
    auto reference = stretch_decoration(base);

    for (int trial = 0; trial < 300; ++trial) {
        CylinderGraph g = base;
        // pick a cylinder and a random positive rational factor
        std::string cyl = "c" + std::to_string(1 + rng() % 6);
        PosRational t(1 + static_cast<std::int64_t>(rng() % 9),
                      1 + static_cast<std::int64_t>(rng() % 9));
        bool rescale_k = rng() % 2 == 0;
        for (auto& e : g.edges) {
            if (e.cyl != cyl) continue;
            if (rescale_k)
                e.k = e.k * t;
            else if (e.length)
                e.length = *e.length * t;
        }
        auto labels = stretch_decoration(g);
        REQUIRE(labels.size() == reference.size());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            CHECK(labels[i].has_value() == reference[i].has_value());
            if (labels[i]) CHECK(*labels[i] == *reference[i]);
        }
    }
}
