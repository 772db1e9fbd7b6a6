#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lpht/drawing.hpp"
#include "lpht/graph.hpp"
#include "lpht/references.hpp"

namespace lpht {

struct CorpusOptions {
    int max_levels = 3;
    int max_per_level = 3;
    std::size_t cap = 20000;
};

/// Every proper graph with 1..max_levels nonempty levels of 1..max_per_level vertices and any
/// edge set between consecutive levels, one per class under per-level vertex permutations.
/// Vertices are named "a1", "a2", ... on level 1, "b1", ... on level 2 and so on.
std::vector<ProperLevelGraph> exhaustive_corpus(const CorpusOptions& options = {});

/// A key shared exactly by graphs that differ by a per-level permutation of their vertices.
std::string canonical_form(const ProperLevelGraph& g);

/// Random proper graph with nonempty levels; each possible edge is present with probability `density`.
ProperLevelGraph random_proper_graph(std::mt19937_64& rng, int max_levels, int max_per_level, double density = 0.5);

/// The same graph with shuffled vertex ids and insertion order.
ProperLevelGraph shuffled_copy(const ProperLevelGraph& g, std::mt19937_64& rng);

/// Uniformly random order on every level.
LevelDrawing random_level_drawing(const LevelGraph& g, std::mt19937_64& rng);
/// Uniformly random cyclic orders and flags.
RadialDrawing random_radial_drawing(const LevelGraph& g, const ReferenceSets& refs, std::mt19937_64& rng);

}  // namespace lpht
