#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lpht/constraints.hpp"
#include "lpht/graph.hpp"
#include "lpht/references.hpp"
#include "lpht/transform.hpp"

namespace lpht {

class DrawingError : public Error {
  public:
    using Error::Error;
};

/// Raised when a drawing that must be Hanani-Tutte has an independent pair crossing oddly.
class NotHananiTutte : public DrawingError {
  public:
    NotHananiTutte(const std::string& what, EdgeIndex e, EdgeIndex f) : DrawingError(what), e(e), f(f) {}
    EdgeIndex e;
    EdgeIndex f;
};

/// Left-to-right vertex order per level (index level - 1).
struct LevelDrawing {
    std::vector<std::vector<Vertex>> order;

    bool operator==(const LevelDrawing&) const = default;
};

/// Clockwise vertex order per level, starting anywhere, plus the side on which each edge leaving
/// or entering a reference vertex passes its gap's reference edge.
struct RadialDrawing {
    std::vector<std::vector<Vertex>> order;
    std::map<Edge, bool> left;

    bool operator==(const RadialDrawing&) const = default;
};

using EdgePair = std::pair<EdgeIndex, EdgeIndex>;

struct CrossingReport {
    /// Nonzero counts only, keyed with first < second.
    std::map<EdgePair, std::size_t> per_pair;
    /// Independent pairs with an odd count.
    std::vector<EdgePair> ht_violations;

    bool planar() const { return per_pair.empty(); }
    std::size_t count(EdgeIndex e, EdgeIndex f) const;
    std::size_t total() const;
};

/// Throws DrawingError unless every level order is a permutation of that level.
void check_drawing(const LevelGraph& g, const LevelDrawing& d);
/// Also requires flags for exactly the edges at reference vertices (reference edges excluded).
void check_drawing(const LevelGraph& g, const ReferenceSets& refs, const RadialDrawing& d);

/// Two edges of a gap cross once iff their ends are inverted.
CrossingReport count_crossings_level(const LevelDrawing& d, const ProperLevelGraph& g);

/// Each gap is cut open along its reference edge; edges at a reference vertex run to the far
/// left or right of the cut according to their flag. Edges sharing an endpoint never cross.
CrossingReport count_crossings_radial(const RadialDrawing& d, const ProperLevelGraph& g, const ReferenceSets& refs);

/// Sums the crossings of subdivision segments per source edge of `sub`.
CrossingReport aggregate(const CrossingReport& fine, const ProperizeResult& sub, const LevelGraph& source);

/// Independent pairs of `g` with an odd count; empty means the drawing is Hanani-Tutte.
std::vector<EdgePair> verify_hanani_tutte(const CrossingReport& report, const LevelGraph& g);

/// Assignment read off positions: x(u,w) is true iff u is left of w.
Assignment induced_assignment(const ConstraintSystem& s, const LevelGraph& g, const LevelDrawing& d);
/// x(a,u,v) is true iff a, u, v are clockwise; flags are copied.
Assignment induced_assignment(const ConstraintSystem& s, const LevelGraph& g, const RadialDrawing& d);

/// Everything derived from one proper graph for the level pipeline.
struct LevelStructures {
    ProperLevelGraph graph;
    StarForm star;
    PlusGraph plus;
    ConstraintSystem system;       // reduced S(G)
    ConstraintSystem plus_system;  // reduced S(G+)
};

LevelStructures make_level_structures(const ProperLevelGraph& g);

/// Carries a satisfying assignment of S(G) to S(G+). Throws AssignmentError if `phi` fails S(G).
Assignment lift_assignment_level(const LevelStructures& ls, const Assignment& phi);

struct LevelSynthesis {
    LevelDrawing plus_drawing;
    /// Crossings of the star form edges when subdivisions are smoothed.
    CrossingReport star_report;
};

/// Places every vertex left or right of its level's star-form vertex. Throws AssignmentError if
/// `phi_plus` fails S(G+).
LevelSynthesis drawing_from_assignment_level(const LevelStructures& ls, const Assignment& phi_plus);

struct LevelExtraction {
    Assignment phi_plus;  // over S(G+)
    Assignment phi;       // over S(G)
};

/// Repairs the positional assignment of a drawing of G+ at subdivision pairs and projects it to G.
/// Throws NotHananiTutte when the smoothed drawing has an odd independent pair.
LevelExtraction assignment_from_drawing_level(const LevelStructures& ls, const LevelDrawing& plus_drawing);

/// Everything derived from one proper graph and its references for the radial pipeline.
struct RadialStructures {
    ProperLevelGraph graph;  // includes inserted reference edges
    ReferenceSets refs;
    RadialStarForm star;
    PlusGraph plus;                // plus.references holds the anchors of G+
    ConstraintSystem system;       // reduced S(G, refs)
    ConstraintSystem plus_system;  // reduced S(G+, plus.references)

    const ReferenceSets& plus_refs() const { return *plus.references; }
};

RadialStructures make_radial_structures(const ProperLevelGraph& g, const ReferenceSets& refs);

/// Throws AssignmentError if `phi` fails S(G, refs), DrawingError on an internal case conflict.
Assignment lift_assignment_radial(const RadialStructures& rs, const Assignment& phi);

struct RadialSynthesis {
    RadialDrawing plus_drawing;
    CrossingReport star_report;
};

/// Throws AssignmentError if `phi_plus` fails S(G+, plus.references).
RadialSynthesis drawing_from_assignment_radial(const RadialStructures& rs, const Assignment& phi_plus);

/// Positional assignment of a drawing of G+ corrected by crossing parities below each level.
/// Throws NotHananiTutte when the smoothed drawing has an odd independent pair.
Assignment assignment_from_drawing_radial(const RadialStructures& rs, const RadialDrawing& plus_drawing);

/// Critical pairs of `source` whose crossing parity in `d` (a drawing of `sub`) disagrees with
/// whether their limits keep the same order on both window ends.
std::vector<CriticalPair> limit_parity_mismatches(const LevelGraph& source,
                                                  const ProperizeResult& sub,
                                                  const LevelDrawing& d);

/// For three vertex-disjoint monotone paths of `g` (vertex sequences on consecutive levels), each
/// reaching levels lo..hi: true iff the clockwise order of their vertices is the same on lo and hi
/// exactly when their pairwise crossings between lo and hi sum to an even number. `fine` is the
/// crossing report of `d`.
bool three_curves_consistent(const LevelGraph& g,
                             const RadialDrawing& d,
                             const CrossingReport& fine,
                             const std::array<std::vector<Vertex>, 3>& paths,
                             int lo,
                             int hi);

/// Clockwise test for three distinct vertices of one cyclic order.
bool clockwise(const std::vector<Vertex>& cyclic, Vertex a, Vertex b, Vertex c);

}  // namespace lpht
