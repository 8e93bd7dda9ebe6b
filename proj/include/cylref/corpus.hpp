#ifndef CYLREF_CORPUS_HPP
#define CYLREF_CORPUS_HPP

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "cylref/complex.hpp"
#include "cylref/decoration.hpp"

namespace cylref {

/// Seed for randomized suites; JSJ_SEED overrides the default.
inline std::uint64_t corpus_seed() {
    if (const char* env = std::getenv("JSJ_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
        }
    }
    return 0x6a736a2d636f7270ull;
}

/**
 * Random connected multigraph: no loops, parallel edges allowed, vertex
 * degrees capped. A spanning tree guarantees connectivity, then extra
 * edges are sprinkled while the cap allows.
 */
inline Multigraph random_multigraph(std::mt19937_64& rng, int max_vertices = 8,
                                    int max_degree = 4) {
    Multigraph m;
    m.n = 2 + static_cast<int>(rng() % (max_vertices - 1));
    std::vector<int> deg(m.n, 0);
    for (int v = 1; v < m.n; ++v) {
        int tries = 0;
        int u;
        do {
            u = static_cast<int>(rng() % v);
        } while (deg[u] >= max_degree && ++tries < 64);
        m.edges.push_back({u, v});
        ++deg[u];
        ++deg[v];
    }
    int extra = static_cast<int>(rng() % (m.n + 1));
    for (int i = 0; i < extra; ++i) {
        int u = static_cast<int>(rng() % m.n);
        int v = static_cast<int>(rng() % m.n);
        if (u == v || deg[u] >= max_degree || deg[v] >= max_degree) continue;
        m.edges.push_back({u, v});
        ++deg[u];
        ++deg[v];
    }
    return m;
}

/// As above, but bounded by total cell count (vertices + edges).
inline Multigraph random_small_multigraph(std::mt19937_64& rng, int max_cells = 12) {
    for (;;) {
        Multigraph m = random_multigraph(rng, 6, 4);
        if (m.n + static_cast<int>(m.edges.size()) <= max_cells) return m;
    }
}

/// A random coloring with up to `colors` values, as Base ornaments.
inline Decoration random_coloring(std::mt19937_64& rng, const RefinementComplex& cx,
                                  OrnamentUniverse& uni, int colors = 3) {
    Decoration d(cx.cell_count());
    for (std::size_t c = 0; c < cx.cell_count(); ++c) {
        if (cx.is_vertex(c))
            d[c] = uni.base({"v", std::to_string(rng() % colors)});
        else
            d[c] = uni.base({"edge"});
    }
    return d;
}

}  // namespace cylref

#endif
