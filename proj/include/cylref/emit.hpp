#ifndef CYLREF_EMIT_HPP
#define CYLREF_EMIT_HPP

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cylref/classify.hpp"
#include "cylref/refine.hpp"

namespace cylref {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

/**
 * Block-matrix rendering of the stable vertex classes: one row per
 * class with its initial ornament, members, and tree-level neighbor
 * counts toward every column class.
 */
inline std::string render_vertex_table(const VertexClassTable& t) {
    std::ostringstream os;
    int n = static_cast<int>(t.members.size());
    std::vector<std::string> row_label(n);
    std::size_t label_w = 0, base_w = 0;
    for (int i = 0; i < n; ++i) {
        row_label[i] = "{" + join(t.members[i], ",") + "}";
        label_w = std::max(label_w, row_label[i].size());
        base_w = std::max(base_w, t.base[i].size());
    }
    std::vector<std::size_t> col_w(n);
    for (int j = 0; j < n; ++j) {
        col_w[j] = std::to_string(j).size() + 1;
        for (int i = 0; i < n; ++i) col_w[j] = std::max(col_w[j], t.counts[i][j].str().size());
    }
    os << std::left << std::setw(static_cast<int>(label_w)) << "class" << "  "
       << std::setw(static_cast<int>(base_w)) << "ornament" << " |";
    for (int j = 0; j < n; ++j)
        os << " " << std::right << std::setw(static_cast<int>(col_w[j])) << ("#" + std::to_string(j));
    os << "\n";
    for (int i = 0; i < n; ++i) {
        os << std::left << std::setw(static_cast<int>(label_w)) << row_label[i] << "  "
           << std::setw(static_cast<int>(base_w)) << t.base[i] << " |";
        for (int j = 0; j < n; ++j)
            os << " " << std::right << std::setw(static_cast<int>(col_w[j])) << t.counts[i][j].str();
        os << "\n";
    }
    return os.str();
}

inline nlohmann::json vertex_table_json(const VertexClassTable& t) {
    nlohmann::json classes = nlohmann::json::array();
    for (std::size_t i = 0; i < t.members.size(); ++i) {
        nlohmann::json row;
        row["index"] = i;
        row["ornament"] = t.ornaments[i];
        row["base"] = t.base[i];
        row["members"] = t.members[i];
        nlohmann::json counts = nlohmann::json::array();
        for (const auto& c : t.counts[i]) counts.push_back(c.str());
        row["counts"] = counts;
        classes.push_back(row);
    }
    return classes;
}

inline nlohmann::json invariant_json(const StructureInvariant& inv) {
    nlohmann::json entries;
    for (const auto& [key, n] : inv.entries)
        entries[key.second][key.first] = n.str();
    nlohmann::json bases;
    for (const auto& [orn, base] : inv.base_projection) bases[orn] = base;
    return nlohmann::json{{"entries", entries}, {"base_projection", bases}};
}

/**
 * Invariant as a JSON object whose keys are canonical ornament
 * serializations in ornament order (outer key: the observed class,
 * inner keys: neighbor classes with their counts).
 */
inline nlohmann::ordered_json invariant_json_ordered(const RefinementComplex& cx,
                                                     const OrnamentUniverse& uni,
                                                     const Decoration& stable) {
    auto classes = partition_classes(uni, stable);
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    nlohmann::ordered_json bases = nlohmann::ordered_json::object();
    for (const auto& members : classes) {
        OrnId k = stable[members.front()];
        bases[uni.serialize(k)] = uni.serialize(uni.base_projection(k));
        std::map<OrnId, ExtNat> counts;
        for (const auto& arc : cx.arcs(members.front())) counts[stable[arc.to]] += arc.count;
        std::vector<std::pair<OrnId, ExtNat>> sorted(counts.begin(), counts.end());
        std::sort(sorted.begin(), sorted.end(),
                  [&uni](const auto& a, const auto& b) { return uni.less(a.first, b.first); });
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (const auto& [j, n] : sorted) row[uni.serialize(j)] = n.str();
        entries[uni.serialize(k)] = row;
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["entries"] = entries;
    out["base_projection"] = bases;
    return out;
}

/// Full class report of a stable workspace, vertex and edge cells alike.
inline nlohmann::json orbit_report_json(const Workspace& ws) {
    const auto& uni = ws.universe();
    const auto& cx = ws.complex();
    auto classes = partition_classes(uni, ws.decoration());
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        nlohmann::json row;
        row["index"] = i;
        OrnId orn = ws.decoration()[classes[i].front()];
        row["ornament"] = uni.serialize(orn);
        row["base"] = uni.serialize(uni.base_projection(orn));
        row["cell_type"] = cx.is_vertex(classes[i].front()) ? "vertex" : "edge";
        std::vector<std::string> ids;
        for (int c : classes[i]) ids.push_back(cx.cell(c).id);
        std::sort(ids.begin(), ids.end());
        row["members"] = ids;
        std::map<std::string, std::string> counts;
        {
            std::map<OrnId, ExtNat> raw;
            for (const auto& arc : cx.arcs(classes[i].front()))
                raw[ws.decoration()[arc.to]] += arc.count;
            for (const auto& [o, n] : raw) counts[uni.serialize(o)] = n.str();
        }
        row["neighbor_counts"] = counts;
        out.push_back(row);
    }
    return out;
}

/// Class index of every stable ornament, in canonical order.
inline std::map<OrnId, int> class_indices(const OrnamentUniverse& uni, const Decoration& stable) {
    std::map<OrnId, int> out;
    auto classes = partition_classes(uni, stable);
    for (std::size_t i = 0; i < classes.size(); ++i)
        out[stable[classes[i].front()]] = static_cast<int>(i);
    return out;
}

// The text reports forget refinement history: classes appear as their
// index plus the initial ornament only.
inline std::string render_orbits(const Workspace& ws) {
    const auto& uni = ws.universe();
    const auto& cx = ws.complex();
    auto classes = partition_classes(uni, ws.decoration());
    auto index_of = class_indices(uni, ws.decoration());

    std::ostringstream os;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        OrnId orn = ws.decoration()[classes[i].front()];
        os << "#" << i << " " << (cx.is_vertex(classes[i].front()) ? "vertex" : "edge")
           << " base=" << uni.serialize(uni.base_projection(orn)) << " members={";
        std::vector<std::string> ids;
        for (int c : classes[i]) ids.push_back(cx.cell(c).id);
        std::sort(ids.begin(), ids.end());
        os << join(ids, ",") << "}\n    counts:";
        std::map<int, ExtNat> counts;
        for (const auto& arc : cx.arcs(classes[i].front()))
            counts[index_of.at(ws.decoration()[arc.to])] += arc.count;
        for (const auto& [idx, n] : counts) os << " #" << idx << "=" << n.str();
        os << "\n";
    }
    return os.str();
}

inline nlohmann::json verdict_json(const Verdict& v) {
    nlohmann::json j;
    j["verdict"] = v.kind == VerdictKind::Equivalent ? "equivalent"
                   : v.kind == VerdictKind::Distinct ? "distinct"
                                                     : "inconclusive";
    j["reason"] = v.reason;
    if (v.kind == VerdictKind::Equivalent) {
        j["beta"] = v.beta;
        nlohmann::json xi = nlohmann::json::object();
        for (const auto& [orn, s] : v.xi) xi[orn] = s;
        j["xi"] = xi;
    }
    return j;
}

/// DOT rendering of the refinement complex with stable-class coloring.
inline std::string render_dot(const RefinementComplex& cx, const OrnamentUniverse& uni,
                              const Decoration& stable) {
    auto classes = partition_classes(uni, stable);
    std::unordered_map<OrnId, int> class_index;
    for (std::size_t i = 0; i < classes.size(); ++i)
        class_index[stable[classes[i].front()]] = static_cast<int>(i);

    std::ostringstream os;
    os << "digraph cells {\n";
    std::vector<int> order;
    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c) order.push_back(c);
    std::sort(order.begin(), order.end(), [&cx](int a, int b) {
        if (cx.cell(a).type != cx.cell(b).type) return cx.cell(a).type < cx.cell(b).type;
        return cx.cell(a).id < cx.cell(b).id;
    });
    for (int c : order) {
        os << "  \"" << cx.cell(c).id << "\" [class=" << class_index[stable[c]] << ", shape="
           << (cx.is_vertex(c) ? "ellipse" : "box") << "];\n";
    }
    for (int c : order) {
        if (!cx.is_vertex(c)) continue;
        std::vector<std::pair<std::string, std::string>> arcs;
        for (const auto& arc : cx.arcs(c)) {
            std::string attrs = "mult=\"" + arc.count.str() + "\"";
            if (cx.is_edge(arc.to)) {
                const EdgeRecord& e = cx.edge_of(arc.to);
                if (e.sign != 0 && cx.is_cylindrical_vertex(c))
                    attrs += ", sign=\"" + std::string(e.sign > 0 ? "+1" : "-1") + "\"";
            }
            arcs.push_back({cx.cell(arc.to).id, attrs});
        }
        std::sort(arcs.begin(), arcs.end());
        for (const auto& [to, attrs] : arcs)
            os << "  \"" << cx.cell(c).id << "\" -> \"" << to << "\" [" << attrs << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace cylref

#endif
