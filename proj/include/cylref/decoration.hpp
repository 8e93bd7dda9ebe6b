#ifndef CYLREF_DECORATION_HPP
#define CYLREF_DECORATION_HPP

#include <string>
#include <vector>

#include "cylref/complex.hpp"
#include "cylref/errors.hpp"
#include "cylref/ornament.hpp"
#include "cylref/stretch.hpp"

namespace cylref {

/// A decoration assigns an ornament to every cell of a complex.
using Decoration = std::vector<OrnId>;

enum class DecorationMode { Type, Qi, RelQi, Boundary, QiStretch };

inline const char* mode_name(DecorationMode m) {
    switch (m) {
        case DecorationMode::Type: return "type";
        case DecorationMode::Qi: return "qi";
        case DecorationMode::RelQi: return "rel-qi";
        case DecorationMode::Boundary: return "boundary";
        case DecorationMode::QiStretch: return "qi+stretch";
    }
    return "?";
}

inline DecorationMode parse_mode(const std::string& s) {
    if (s == "type") return DecorationMode::Type;
    if (s == "qi") return DecorationMode::Qi;
    if (s == "rel-qi") return DecorationMode::RelQi;
    if (s == "boundary") return DecorationMode::Boundary;
    if (s == "qi+stretch") return DecorationMode::QiStretch;
    throw schema_error("unknown mode '" + s + "'");
}

/**
 * Initial decoration of a complex.
 *
 * Vertex cells carry their type; rigid vertices additionally carry the
 * type label the mode calls for. Edge cells carry a plain marker, except
 * in stretch mode where rigid-incident edges carry their normalized
 * stretch factor. With `lenient_stretch`, cylinders lacking length data
 * contribute unlabeled edges instead of failing.
 */
inline Decoration initial_decoration(const RefinementComplex& cx, DecorationMode mode,
                                     OrnamentUniverse& uni, bool lenient_stretch = false) {
    Decoration d(cx.cell_count(), kInvalidOrn);

    std::vector<std::vector<std::optional<PosRational>>> stretch_labels;
    if (mode == DecorationMode::QiStretch) {
        for (int gi = 0; gi < cx.graph_count(); ++gi)
            stretch_labels.push_back(stretch_decoration(cx.graph(gi), lenient_stretch));
    }

    for (int c = 0; c < static_cast<int>(cx.cell_count()); ++c) {
        if (cx.is_vertex(c)) {
            const VertexRecord& v = cx.vertex_of(c);
            std::vector<std::string> tag;
            switch (v.kind) {
                case VertexKind::Cylindrical: tag = {"c"}; break;
                case VertexKind::Hanging: tag = {"h"}; break;
                case VertexKind::Rigid: {
                    tag = {"r"};
                    if (mode == DecorationMode::Qi || mode == DecorationMode::QiStretch) {
                        if (!v.qi_type)
                            throw mode_data_missing("rigid vertex '" + v.id + "' has no qi_type");
                        tag.push_back(*v.qi_type);
                    } else if (mode == DecorationMode::RelQi || mode == DecorationMode::Boundary) {
                        if (!v.rel_qi_type)
                            throw mode_data_missing("rigid vertex '" + v.id + "' has no rel_qi_type");
                        tag.push_back(*v.rel_qi_type);
                    }
                    break;
                }
            }
            d[c] = uni.base(std::move(tag));
        } else {
            if (mode == DecorationMode::QiStretch) {
                const auto& label = stretch_labels[cx.cell(c).graph][cx.cell(c).index];
                d[c] = uni.base({"edge", label ? label->str() : "null"});
            } else {
                d[c] = uni.base({"edge"});
            }
        }
    }
    return d;
}

/// True when two decorations of the same complex induce the same partition.
inline bool same_partition(const Decoration& a, const Decoration& b) {
    std::unordered_map<OrnId, OrnId> fwd, bwd;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto f = fwd.emplace(a[i], b[i]);
        if (!f.second && f.first->second != b[i]) return false;
        auto g = bwd.emplace(b[i], a[i]);
        if (!g.second && g.first->second != a[i]) return false;
    }
    return true;
}

/// Cells grouped by ornament, classes and members in canonical order.
inline std::vector<std::vector<int>> partition_classes(const OrnamentUniverse& uni,
                                                       const Decoration& d) {
    std::unordered_map<OrnId, std::vector<int>> groups;
    for (std::size_t i = 0; i < d.size(); ++i) groups[d[i]].push_back(static_cast<int>(i));
    std::vector<OrnId> keys;
    keys.reserve(groups.size());
    for (const auto& [k, _] : groups) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [&uni](OrnId x, OrnId y) { return uni.less(x, y); });
    std::vector<std::vector<int>> out;
    out.reserve(keys.size());
    for (OrnId k : keys) out.push_back(std::move(groups[k]));
    return out;
}

}  // namespace cylref

#endif
