#pragma once

#include <optional>
#include <vector>

#include "lpht/graph.hpp"
#include "lpht/references.hpp"

namespace lpht {

/// Star form of a proper level graph: every vertex v becomes a stretch edge (bot(v), top(v)) and
/// every edge (u, v) becomes (top(u), bot(v)).
///
/// Sublevels are numbered 1..K globally; `level_map` keeps the original level of each.
struct StarForm {
    struct EdgeSource {
        bool stretch = false;
        /// Vertex of G when `stretch`, otherwise edge of G.
        std::size_t index = 0;
    };

    LevelGraph star;
    std::vector<Vertex> bot;               // per vertex of G
    std::vector<Vertex> top;               // per vertex of G
    std::vector<EdgeIndex> stretch;        // per vertex of G: its stretch edge in `star`
    std::vector<EdgeIndex> star_edge;      // per edge of G: its image in `star`
    std::vector<int> level_map;            // per sublevel (index sublevel - 1): level of G
    std::vector<Vertex> owner;             // per vertex of `star`: the vertex of G it came from
    std::vector<EdgeSource> edge_source;   // per edge of `star`

    int original_level(int sublevel) const { return level_map[static_cast<std::size_t>(sublevel - 1)]; }
    /// Sublevels that replace level `i` of G, as [first, last]; empty range when the level is empty.
    std::pair<int, int> block(int level) const;
};

/// Star form with the reference-aware layout used for radial drawings.
struct RadialStarForm {
    StarForm form;
    /// References of the (augmented) input graph.
    ReferenceSets refs;
    /// Per level of G (index level - 1): the sublevel crossed by all of that level's stretch edges.
    std::vector<int> middle;
    /// Per sublevel: the vertex of G whose stretch edge carries the reference anchor there.
    std::vector<Vertex> beta_minus_owner;
    std::vector<Vertex> beta_plus_owner;

    int middle_of(int level) const { return middle[static_cast<std::size_t>(level - 1)]; }
};

/// Throws GraphError for non-proper input (enforced by the ProperLevelGraph type).
StarForm build_star_level(const ProperLevelGraph& g);

/// `g` must already contain the inserted reference edges. Throws ReferenceError on invalid refs.
RadialStarForm build_star_radial(const ProperLevelGraph& g, const ReferenceSets& refs);

/// Proper subdivision of a star form.
struct PlusGraph {
    /// G+ with subdivision paths indexed by edges of the star form.
    ProperizeResult sub;
    /// The mapping O: every vertex of G+ to a vertex of G.
    std::vector<Vertex> origin;
    /// Reference anchors of G+ (radial only).
    std::optional<ReferenceSets> references;

    const LevelGraph& graph() const { return sub.graph; }
    const ProperLevelGraph& proper() const { return sub.graph; }
    /// The star-form edge a vertex of G+ subdivides, or nullopt for star-form vertices.
    std::optional<EdgeIndex> carrier(Vertex v) const { return sub.vertex_origin[v]; }
};

PlusGraph build_plus(const StarForm& sf);
PlusGraph build_plus(const RadialStarForm& sf);

/// Vertices of the subdivision of star edge `e` from sublevel `from` to sublevel `to` inclusive.
/// Throws GraphError when `e` does not cross one of them.
std::vector<Vertex> path_segment(const PlusGraph& pg, EdgeIndex e, int from, int to);

}  // namespace lpht
