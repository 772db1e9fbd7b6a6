#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lpht/graph.hpp"

namespace lpht {

class ReferenceError : public Error {
  public:
    using Error::Error;
};

/// Per-level anchor vertices used to linearize cyclic orders.
///
/// `plus(i)` is the tail of the reference edge leaving level i, `minus(i)` the head of the
/// reference edge entering it. The first level has plus == minus, and so does the last.
struct ReferenceSets {
    std::vector<Vertex> alpha_plus;   // indexed by level - 1
    std::vector<Vertex> alpha_minus;  // indexed by level - 1
    /// Reference edges that were absent from the input graph and had to be added.
    std::vector<Edge> inserted_edges;

    Vertex plus(int level) const { return alpha_plus[static_cast<std::size_t>(level - 1)]; }
    Vertex minus(int level) const { return alpha_minus[static_cast<std::size_t>(level - 1)]; }
    /// The reference edge between `gap` and `gap + 1`.
    Edge reference_edge(int gap) const { return {plus(gap), minus(gap + 1)}; }

    bool operator==(const ReferenceSets&) const = default;
};

/// Throws ReferenceError if `refs` is not valid for `g` (which must already contain inserted edges).
void check_reference_sets(const LevelGraph& g, const ReferenceSets& refs);

struct ReferenceChoice {
    /// The input graph plus `refs.inserted_edges`.
    ProperLevelGraph graph;
    ReferenceSets refs;
};

/// Deterministic reference selection.
///
/// Without a seed: a directed path through all levels is used when one exists (smallest ids
/// first); otherwise each gap takes the smallest existing edge, preferring one that starts at the
/// anchor already chosen for its lower level. Gaps without edges get an inserted edge. With a seed,
/// edges are drawn pseudo-randomly instead. Throws ReferenceError on an empty level.
ReferenceChoice choose_reference_sets(const ProperLevelGraph& g, std::optional<std::uint64_t> seed = std::nullopt);

/// Every valid reference choice, up to `limit` of them, in a deterministic order.
std::vector<ReferenceChoice> enumerate_reference_sets(const ProperLevelGraph& g, std::size_t limit);

/// Adds `refs.inserted_edges` to `g` (edges already present are an error).
ProperLevelGraph with_reference_edges(const ProperLevelGraph& g, const ReferenceSets& refs);

}  // namespace lpht
