#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpht/constraints.hpp"
#include "lpht/drawing.hpp"
#include "lpht/graph.hpp"
#include "lpht/references.hpp"

namespace lpht {

class ParseError : public Error {
  public:
    using Error::Error;
};

/// {"levels": k, "vertices": [{"id": ..., "level": ...}], "edges": [[tail, head]]}.
/// Throws ParseError on malformed JSON; the description is not validated.
GraphDescription parse_graph_json(std::string_view text);
/// Parses and validates; throws ParseError or GraphError.
LevelGraph read_graph(std::string_view text);
std::string write_graph_json(const LevelGraph& g);

/// Drawing in terms of vertex ids, as stored on disk.
struct DrawingFile {
    struct References {
        std::vector<std::string> plus;   // per level
        std::vector<std::string> minus;  // per level
        std::vector<std::pair<std::string, std::string>> inserted;

        bool operator==(const References&) const = default;
    };

    std::string kind = "level";  // "level" or "radial"
    std::vector<std::vector<std::string>> orders;
    std::map<std::pair<std::string, std::string>, bool> flags;
    std::optional<References> references;

    bool operator==(const DrawingFile&) const = default;
};

/// {"kind": ..., "orders": {"1": [...], ...}, "flags": {"t->h": 0|1}, "references": {...}}.
DrawingFile parse_drawing_json(std::string_view text);
std::string write_drawing_json(const DrawingFile& d);

DrawingFile to_drawing_file(const LevelGraph& g, const LevelDrawing& d);
DrawingFile to_drawing_file(const LevelGraph& g, const ReferenceSets& refs, const RadialDrawing& d);

/// Throws ParseError when ids do not belong to `g`; structural checks are left to check_drawing.
LevelDrawing to_level_drawing(const DrawingFile& f, const LevelGraph& g);
RadialDrawing to_radial_drawing(const DrawingFile& f, const LevelGraph& g);
/// The references stored in a radial drawing file, with inserted edges.
ReferenceSets to_reference_sets(const DrawingFile& f, const LevelGraph& augmented);

/// One line per equation, variables named as in variable_name(), e.g.
///   x(a,b) + x(b,a) = 1
///   x(a,b) & x(b,c) -> x(a,c)
/// Comment lines carry the system kind, the declared variables and the rule of the lines below.
std::string write_constraints(const ConstraintSystem& s, const LevelGraph& g);
ConstraintSystem parse_constraints(std::string_view text, const LevelGraph& g);

/// Splits "tail->head"; throws ParseError.
std::pair<std::string, std::string> split_edge_key(std::string_view key);

}  // namespace lpht
