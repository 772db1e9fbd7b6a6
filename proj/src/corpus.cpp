#include "lpht/corpus.hpp"

#include <algorithm>
#include <numeric>

namespace lpht {

namespace {

std::string vertex_name(int level, int index) {
    return std::string(1, static_cast<char>('a' + level - 1)) + std::to_string(index + 1);
}

// Bit offset of each gap's adjacency matrix, row-major by (lower, upper) vertex.
std::vector<int> gap_offsets(const std::vector<int>& sizes) {
    std::vector<int> offsets{0};
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) offsets.push_back(offsets.back() + sizes[i] * sizes[i + 1]);
    return offsets;
}

ProperLevelGraph from_mask(const std::vector<int>& sizes, std::uint64_t mask) {
    const int k = static_cast<int>(sizes.size());
    LevelGraph::Builder b(k);
    std::vector<std::vector<Vertex>> ids(sizes.size());
    for (int i = 1; i <= k; ++i) {
        for (int j = 0; j < sizes[static_cast<std::size_t>(i - 1)]; ++j) {
            ids[static_cast<std::size_t>(i - 1)].push_back(b.add_vertex(vertex_name(i, j), i));
        }
    }
    const auto offsets = gap_offsets(sizes);
    for (std::size_t gap = 0; gap + 1 < sizes.size(); ++gap) {
        for (int x = 0; x < sizes[gap]; ++x) {
            for (int y = 0; y < sizes[gap + 1]; ++y) {
                if ((mask >> (offsets[gap] + x * sizes[gap + 1] + y)) & 1u) b.add_edge(ids[gap][x], ids[gap + 1][y]);
            }
        }
    }
    return ProperLevelGraph(std::move(b).build());
}

// Visits every combination of per-level permutations.
template <class F>
void for_each_relabeling(const std::vector<int>& sizes, F&& visit) {
    std::vector<std::vector<int>> perm;
    for (int n : sizes) {
        perm.emplace_back(static_cast<std::size_t>(n));
        std::iota(perm.back().begin(), perm.back().end(), 0);
    }
    while (true) {
        visit(perm);
        std::size_t level = 0;
        while (level < perm.size() && !std::next_permutation(perm[level].begin(), perm[level].end())) ++level;
        if (level == perm.size()) return;
    }
}

std::uint64_t relabel_mask(const std::vector<int>& sizes,
                           const std::vector<int>& offsets,
                           const std::vector<std::vector<int>>& perm,
                           std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::size_t gap = 0; gap + 1 < sizes.size(); ++gap) {
        for (int x = 0; x < sizes[gap]; ++x) {
            for (int y = 0; y < sizes[gap + 1]; ++y) {
                if (!((mask >> (offsets[gap] + x * sizes[gap + 1] + y)) & 1u)) continue;
                out |= std::uint64_t{1} << (offsets[gap] + perm[gap][x] * sizes[gap + 1] + perm[gap + 1][y]);
            }
        }
    }
    return out;
}

}  // namespace

std::vector<ProperLevelGraph> exhaustive_corpus(const CorpusOptions& options) {
    std::vector<ProperLevelGraph> out;
    for (int k = 1; k <= options.max_levels; ++k) {
        std::vector<int> sizes(static_cast<std::size_t>(k), 1);
        while (true) {
            const auto offsets = gap_offsets(sizes);
            const int bits = offsets.back();
            if (bits > 30) throw Error("exhaustive corpus shape too large");
            std::vector<bool> seen(std::size_t{1} << bits, false);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
                if (seen[mask]) continue;
                for_each_relabeling(sizes, [&](const auto& perm) { seen[relabel_mask(sizes, offsets, perm, mask)] = true; });
                out.push_back(from_mask(sizes, mask));
                if (out.size() >= options.cap) return out;
            }
            std::size_t level = 0;
            while (level < sizes.size() && sizes[level] == options.max_per_level) sizes[level++] = 1;
            if (level == sizes.size()) break;
            ++sizes[level];
        }
    }
    return out;
}

std::string canonical_form(const ProperLevelGraph& pg) {
    const LevelGraph& g = pg;
    std::vector<int> sizes;
    for (int i = 1; i <= g.level_count(); ++i) sizes.push_back(static_cast<int>(g.on_level(i).size()));
    std::string best;
    for_each_relabeling(sizes, [&](const auto& perm) {
        std::string code;
        for (std::size_t gap = 0; gap + 1 < sizes.size(); ++gap) {
            const auto lower = g.on_level(static_cast<int>(gap) + 1);
            const auto upper = g.on_level(static_cast<int>(gap) + 2);
            std::string block(static_cast<std::size_t>(sizes[gap] * sizes[gap + 1]), '0');
            for (int x = 0; x < sizes[gap]; ++x) {
                for (int y = 0; y < sizes[gap + 1]; ++y) {
                    if (g.find_edge(lower[x], upper[y])) {
                        block[static_cast<std::size_t>(perm[gap][x] * sizes[gap + 1] + perm[gap + 1][y])] = '1';
                    }
                }
            }
            code += block + '|';
        }
        if (best.empty() || code < best) best = code;
    });
    std::string head;
    for (int n : sizes) head += std::to_string(n) + ',';
    return head + ':' + best;
}

ProperLevelGraph random_proper_graph(std::mt19937_64& rng, int max_levels, int max_per_level, double density) {
    std::uniform_int_distribution<int> levels(1, std::max(1, max_levels));
    std::uniform_int_distribution<int> width(1, std::max(1, max_per_level));
    std::bernoulli_distribution edge(density);
    std::vector<int> sizes(static_cast<std::size_t>(levels(rng)));
    for (int& n : sizes) n = width(rng);
    const int bits = gap_offsets(sizes).back();
    if (bits <= 62) {
        std::uint64_t mask = 0;
        for (int b = 0; b < bits; ++b) {
            if (edge(rng)) mask |= std::uint64_t{1} << b;
        }
        return from_mask(sizes, mask);
    }
    const int k = static_cast<int>(sizes.size());
    LevelGraph::Builder b(k);
    std::vector<std::vector<Vertex>> ids(sizes.size());
    for (int i = 1; i <= k; ++i) {
        for (int j = 0; j < sizes[static_cast<std::size_t>(i - 1)]; ++j) {
            ids[static_cast<std::size_t>(i - 1)].push_back(b.add_vertex(vertex_name(i, j), i));
        }
    }
    for (std::size_t gap = 0; gap + 1 < ids.size(); ++gap) {
        for (Vertex u : ids[gap]) {
            for (Vertex w : ids[gap + 1]) {
                if (edge(rng)) b.add_edge(u, w);
            }
        }
    }
    return ProperLevelGraph(std::move(b).build());
}

ProperLevelGraph shuffled_copy(const ProperLevelGraph& pg, std::mt19937_64& rng) {
    const LevelGraph& g = pg;
    std::vector<Vertex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> names(g.vertex_count());
    std::iota(names.begin(), names.end(), std::size_t{0});
    std::shuffle(names.begin(), names.end(), rng);

    LevelGraph::Builder b(g.level_count());
    std::vector<Vertex> image(g.vertex_count());
    for (Vertex v : order) image[v] = b.add_vertex("v" + std::to_string(names[v]), g.level(v));
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const Edge& e : edges) b.add_edge(image[e.tail], image[e.head]);
    return ProperLevelGraph(std::move(b).build());
}

LevelDrawing random_level_drawing(const LevelGraph& g, std::mt19937_64& rng) {
    LevelDrawing d;
    for (int i = 1; i <= g.level_count(); ++i) {
        auto row = std::vector<Vertex>(g.on_level(i).begin(), g.on_level(i).end());
        std::ranges::shuffle(row, rng);
        d.order.push_back(std::move(row));
    }
    return d;
}

RadialDrawing random_radial_drawing(const LevelGraph& g, const ReferenceSets& refs, std::mt19937_64& rng) {
    RadialDrawing d{random_level_drawing(g, rng).order, {}};
    std::bernoulli_distribution coin;
    for (int gap = 1; gap < g.level_count(); ++gap) {
        const GapEdges edges = classify_gap(g, refs, gap);
        for (const auto* side : {&edges.plus, &edges.minus}) {
            for (EdgeIndex e : *side) d.left[g.edge(e)] = coin(rng);
        }
    }
    return d;
}

}  // namespace lpht
