// Command-line front end: refinement, invariants, orbit reports,
// imbalances, stretch tables, equivalence decisions, the brute-force
// cover check, and DOT export.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cylref/ball.hpp"
#include "cylref/classify.hpp"
#include "cylref/emit.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;
constexpr int kExitInternal = 70;

cylref::CylinderGraph load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cylref::InputError("IOError", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return cylref::parse_graph(ss.str());
}

void warn_if_trivial(const cylref::CylinderGraph& g) {
    if (g.edges.empty())
        std::cerr << "warning: '" << g.name
                  << "' has no edges; comparisons reduce to the vertex ornaments alone\n";
}

struct Options {
    std::string mode = "type";
    bool json = false;
    bool table = false;
    bool witness = false;
    int radius = 3;
    int max_xi = 20;
};

int run_refine(const std::string& path, const Options& opt) {
    cylref::CylinderGraph g = load(path);
    cylref::OrnamentUniverse uni;
    cylref::RefinementComplex cx = cylref::subdivide(g);
    cylref::Decoration d0 =
        cylref::initial_decoration(cx, cylref::parse_mode(opt.mode), uni);
    cylref::FixpointResult fr = cylref::neighbor_refine_fix(cx, d0, uni);
    auto classes = cylref::partition_classes(uni, fr.stable);
    if (opt.json) {
        nlohmann::json j;
        j["cells"] = cx.cell_count();
        j["strict_steps"] = fr.strict_steps;
        j["classes"] = classes.size();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "cells: " << cx.cell_count() << "\n"
                  << "strict steps: " << fr.strict_steps << "\n"
                  << "stable classes: " << classes.size() << "\n";
    }
    return 0;
}

int run_invariant(const std::string& path, const Options& opt) {
    cylref::CylinderGraph g = load(path);
    cylref::OrnamentUniverse uni;
    cylref::RefinementComplex cx = cylref::subdivide(g);
    cylref::Decoration d0 =
        cylref::initial_decoration(cx, cylref::parse_mode(opt.mode), uni);
    cylref::FixpointResult fr = cylref::neighbor_refine_fix(cx, d0, uni);
    cylref::structure_invariant(cx, uni, fr.stable);  // stability audit
    cylref::VertexClassTable t = cylref::vertex_class_table(cx, uni, fr.stable);
    if (opt.json) {
        nlohmann::ordered_json j;
        j["name"] = g.name;
        j["mode"] = opt.mode;
        j["invariant"] = cylref::invariant_json_ordered(cx, uni, fr.stable);
        j["vertex_table"] = cylref::vertex_table_json(t);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << cylref::render_vertex_table(t);
    }
    return 0;
}

int run_orbits(const std::string& path, const Options& opt) {
    cylref::CylinderGraph g = load(path);
    warn_if_trivial(g);
    cylref::Workspace ws({&g}, cylref::parse_mode(opt.mode));
    ws.full_refine();
    if (opt.json)
        std::cout << cylref::orbit_report_json(ws).dump(2) << "\n";
    else
        std::cout << cylref::render_orbits(ws);
    return 0;
}

int run_imbalance(const std::string& path, const Options& opt) {
    cylref::CylinderGraph g = load(path);
    cylref::Workspace ws({&g}, cylref::parse_mode(opt.mode));
    ws.full_refine();
    const auto& cx = ws.complex();
    const auto& uni = ws.universe();
    auto index_of = cylref::class_indices(uni, ws.decoration());
    // One canonical vector per stable cylinder class.
    std::map<cylref::OrnId, int> rep;
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c)
        if (cx.is_cylindrical_vertex(c) && !rep.count(ws.decoration()[c]))
            rep[ws.decoration()[c]] = c;
    std::vector<std::pair<cylref::OrnId, int>> ordered(rep.begin(), rep.end());
    std::sort(ordered.begin(), ordered.end(), [&uni](const auto& a, const auto& b) {
        return uni.less(a.first, b.first);
    });
    auto render = [&](const cylref::ImbalanceVector& iv) {
        if (iv.is_zero()) return std::string("0");
        std::string s;
        for (std::size_t i = 0; i < iv.entries.size(); ++i) {
            if (i) s += ", ";
            s += "#" + std::to_string(index_of.at(iv.entries[i].first)) + ": " +
                 std::to_string(iv.entries[i].second);
        }
        return s;
    };
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [orn, cell] : ordered) {
        cylref::ImbalanceVector iv =
            cylref::imbalance(cx, uni, ws.decoration(), ws.orientation(), cell);
        if (opt.json) {
            nlohmann::json row;
            row["class"] = index_of.at(orn);
            row["representative"] = cx.cell(cell).id;
            nlohmann::json entries = nlohmann::json::array();
            for (const auto& [o, v] : iv.entries)
                entries.push_back({{"class", index_of.at(o)}, {"value", v}});
            row["imbalance"] = entries;
            j.push_back(row);
        } else {
            std::cout << cx.cell(cell).id << ": " << render(iv) << "\n";
        }
    }
    if (opt.json) std::cout << j.dump(2) << "\n";
    return 0;
}

int run_stretch(const std::string& path, const Options& opt) {
    cylref::CylinderGraph g = load(path);
    auto labels = cylref::stretch_decoration(g);
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (g.vertices[v].kind != cylref::VertexKind::Cylindrical) continue;
        for (int ei : g.incident[v]) {
            if (g.edges[ei].cyl != g.vertices[v].id) continue;
            if (!labels[ei]) continue;
            if (opt.json) {
                j.push_back({{"cylinder", g.vertices[v].id},
                             {"edge", g.edges[ei].id},
                             {"rs", labels[ei]->str()}});
            } else {
                std::cout << g.vertices[v].id << "  " << g.edges[ei].id << "  "
                          << labels[ei]->str() << "\n";
            }
        }
    }
    if (opt.json) std::cout << j.dump(2) << "\n";
    return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b, const Options& opt) {
    cylref::CylinderGraph a = load(path_a);
    cylref::CylinderGraph b = load(path_b);
    warn_if_trivial(a);
    warn_if_trivial(b);
    cylref::CompareOptions copt;
    copt.max_xi_classes = opt.max_xi;
    cylref::Verdict v = cylref::compare(a, b, cylref::parse_mode(opt.mode), copt);
    if (opt.json || opt.witness) {
        std::cout << cylref::verdict_json(v).dump(2) << "\n";
    } else {
        std::cout << (v.kind == cylref::VerdictKind::Equivalent ? "Equivalent"
                      : v.kind == cylref::VerdictKind::Distinct ? "Distinct"
                                                                : "Inconclusive")
                  << ": " << v.reason << "\n";
    }
    return v.exit_code();
}

int run_oracle_check(const std::string& path, const Options& opt) {
    cylref::CylinderGraph g = load(path);
    cylref::OrnamentUniverse uni;
    cylref::RefinementComplex cx = cylref::subdivide(g);
    cylref::Decoration d0 =
        cylref::initial_decoration(cx, cylref::parse_mode(opt.mode), uni);
    cylref::FixpointResult fr = cylref::neighbor_refine_fix(cx, d0, uni);

    std::vector<std::string> vlabel, elabel;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        vlabel.push_back(uni.serialize(d0[cx.vertex_cell(0, static_cast<int>(i))]));
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        elabel.push_back(uni.serialize(d0[cx.edge_cell(0, static_cast<int>(i))]));
    cylref::CoverBallInterner interner;
    cylref::CoverBallClasses balls(g, vlabel, elabel, interner);

    int mismatches = 0;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        for (std::size_t w = v + 1; w < g.vertices.size(); ++w) {
            bool same_class = fr.stable[cx.vertex_cell(0, static_cast<int>(v))] ==
                              fr.stable[cx.vertex_cell(0, static_cast<int>(w))];
            bool same_ball = balls.class_of(static_cast<int>(v), opt.radius) ==
                             balls.class_of(static_cast<int>(w), opt.radius);
            if (same_class != same_ball) {
                ++mismatches;
                std::cout << "mismatch: " << g.vertices[v].id << " vs " << g.vertices[w].id
                          << " (refinement " << (same_class ? "agrees" : "splits")
                          << ", radius-" << opt.radius << " balls "
                          << (same_ball ? "agree" : "split") << ")\n";
            }
        }
    }
    std::cout << (mismatches == 0 ? "ok" : "FAILED") << ": " << g.vertices.size()
              << " vertices checked at radius " << opt.radius << "\n";
    return mismatches == 0 ? 0 : 1;
}

int run_export_dot(const std::string& path, const Options& opt) {
    cylref::CylinderGraph g = load(path);
    cylref::OrnamentUniverse uni;
    cylref::RefinementComplex cx = cylref::subdivide(g);
    cylref::Decoration d0 =
        cylref::initial_decoration(cx, cylref::parse_mode(opt.mode), uni);
    cylref::FixpointResult fr = cylref::neighbor_refine_fix(cx, d0, uni);
    std::cout << cylref::render_dot(cx, uni, fr.stable);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of quotient graphs of JSJ trees of cylinders"};
    app.require_subcommand(1);

    Options opt;
    std::string file_a, file_b;

    auto add_common = [&](CLI::App* cmd, bool with_mode = true) {
        if (with_mode)
            cmd->add_option("--mode", opt.mode,
                            "decoration mode: type | qi | rel-qi | boundary | qi+stretch");
        cmd->add_flag("--json", opt.json, "emit canonical JSON");
    };

    CLI::App* refine = app.add_subcommand("refine", "neighbor refinement summary");
    refine->add_option("file", file_a)->required();
    add_common(refine);

    CLI::App* invariant = app.add_subcommand("invariant", "structure invariant");
    invariant->add_option("file", file_a)->required();
    add_common(invariant);
    invariant->add_flag("--table", opt.table, "print the vertex-class block matrix");

    CLI::App* orbits = app.add_subcommand("orbits", "stable class report");
    orbits->add_option("file", file_a)->required();
    add_common(orbits);

    CLI::App* imbalance = app.add_subcommand("imbalance", "orientation imbalances");
    imbalance->add_option("file", file_a)->required();
    add_common(imbalance);

    CLI::App* stretch = app.add_subcommand("stretch", "stretch factor table");
    stretch->add_option("file", file_a)->required();
    add_common(stretch, false);

    CLI::App* cmp = app.add_subcommand("compare", "decide equivalence of two inputs");
    cmp->add_option("file_a", file_a)->required();
    cmp->add_option("file_b", file_b)->required();
    add_common(cmp);
    cmp->add_flag("--witness", opt.witness, "emit the matching and sign pattern as JSON");
    cmp->add_option("--max-xi", opt.max_xi, "bound on sign-search classes");

    CLI::App* oracle = app.add_subcommand("oracle-check", "cover-ball cross-validation");
    oracle->add_option("file", file_a)->required();
    add_common(oracle);
    oracle->add_option("--radius", opt.radius, "ball radius");

    CLI::App* dot = app.add_subcommand("export-dot", "DOT export with class coloring");
    dot->add_option("file", file_a)->required();
    add_common(dot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (refine->parsed()) return run_refine(file_a, opt);
        if (invariant->parsed()) return run_invariant(file_a, opt);
        if (orbits->parsed()) return run_orbits(file_a, opt);
        if (imbalance->parsed()) return run_imbalance(file_a, opt);
        if (stretch->parsed()) return run_stretch(file_a, opt);
        if (cmp->parsed()) return run_compare(file_a, file_b, opt);
        if (oracle->parsed()) return run_oracle_check(file_a, opt);
        if (dot->parsed()) return run_export_dot(file_a, opt);
    } catch (const cylref::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
