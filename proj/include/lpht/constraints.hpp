#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpht/graph.hpp"
#include "lpht/references.hpp"

namespace lpht {

/// A boolean order variable over the vertices of one graph.
///
/// - PairOrder(a, b): a lies left of b (same level).
/// - TripleOrder(a, b, c): a, b, c appear clockwise; a is a reference anchor.
/// - LeftFlag(a, b): edge a->b is embedded locally left of its gap's reference edge.
struct BoolVar {
    enum class Kind : std::uint8_t { PairOrder, TripleOrder, LeftFlag };

    Kind kind = Kind::PairOrder;
    Vertex a = 0;
    Vertex b = 0;
    Vertex c = 0;

    static BoolVar pair(Vertex u, Vertex w) { return {Kind::PairOrder, u, w, 0}; }
    static BoolVar triple(Vertex anchor, Vertex u, Vertex v) { return {Kind::TripleOrder, anchor, u, v}; }
    static BoolVar left(const Edge& e) { return {Kind::LeftFlag, e.tail, e.head, 0}; }

    bool operator==(const BoolVar&) const = default;
};

struct BoolVarHash {
    std::size_t operator()(const BoolVar& v) const noexcept {
        std::size_t h = static_cast<std::size_t>(v.kind);
        for (Vertex x : {v.a, v.b, v.c}) h = h * 1000003u ^ x;
        return h;
    }
};

/// Which constraint family produced an equation.
enum class Rule : std::uint8_t {
    PairConsistency,     // uw + wu = 1
    PairTransitivity,    // uw & wy -> uy
    PairPlanarity,       // uw + vx = 0 for independent (u,v), (w,x)
    TripleConsistency,   // auv + avu = 1
    TripleTransitivity,  // auv & avw -> !awu
    InnerPlanarity,      // a u u' + b v v' = 0
    FlagOpposition,      // l(e) + l(f) = 1
    PlusPlanarity,       // l(a,v'') + b v v'' = 0
    MinusPlanarity,      // l(u'',b) + a u u'' = 0
    CyclicMerge,         // a-uv + a+uv + a-ua+ + a-va+ = 0
    CyclicRotation,      // a-va+ + a+a-v = 0
};

const char* rule_name(Rule r);

struct XorEquation {
    std::vector<std::size_t> vars;
    bool parity = false;
    Rule rule = Rule::PairConsistency;

    bool operator==(const XorEquation&) const = default;
};

/// a & b -> c, or a & b -> !c when `negated_head`.
struct TransitivityClause {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    bool negated_head = false;
    Rule rule = Rule::PairTransitivity;

    bool operator==(const TransitivityClause&) const = default;
};

enum class SystemKind : std::uint8_t { LevelFull, LevelReduced, RadialFull, RadialReduced };

const char* system_kind_name(SystemKind k);

class ConstraintSystem {
  public:
    ConstraintSystem() = default;
    explicit ConstraintSystem(SystemKind kind) : kind_(kind) {}

    SystemKind kind() const { return kind_; }
    std::span<const BoolVar> variables() const { return vars_; }
    std::span<const XorEquation> xors() const { return xors_; }
    std::span<const TransitivityClause> transitivity() const { return transitivity_; }

    std::optional<std::size_t> find(const BoolVar& v) const;
    /// Throws Error if `v` is not declared.
    std::size_t index(const BoolVar& v) const;

    /// Returns the index of `v`, declaring it if needed.
    std::size_t declare(const BoolVar& v);
    /// Throws Error if a referenced variable is undeclared or the equation is empty.
    void add_xor(XorEquation eq);
    void add_transitivity(TransitivityClause clause);

    bool operator==(const ConstraintSystem& o) const {
        return kind_ == o.kind_ && vars_ == o.vars_ && xors_ == o.xors_ && transitivity_ == o.transitivity_;
    }

  private:
    SystemKind kind_ = SystemKind::LevelReduced;
    std::vector<BoolVar> vars_;
    std::unordered_map<BoolVar, std::size_t, BoolVarHash> index_;
    std::vector<XorEquation> xors_;
    std::vector<TransitivityClause> transitivity_;
};

/// Total truth assignment aligned with a system's variable indices.
struct Assignment {
    std::vector<std::uint8_t> value;

    bool operator==(const Assignment&) const = default;
    bool at(std::size_t i) const { return value[i] != 0; }
    bool get(const ConstraintSystem& s, const BoolVar& v) const { return at(s.index(v)); }
};

class AssignmentError : public Error {
  public:
    using Error::Error;
};

ConstraintSystem build_level_full(const ProperLevelGraph& g);
ConstraintSystem build_level_reduced(const ProperLevelGraph& g);

/// `g` must contain the inserted reference edges; throws ReferenceError on invalid refs.
ConstraintSystem build_radial_full(const ProperLevelGraph& g, const ReferenceSets& refs);
ConstraintSystem build_radial_reduced(const ProperLevelGraph& g, const ReferenceSets& refs);

struct ConstraintViolation {
    enum class Kind { Xor, Transitivity };
    Kind kind;
    /// Index into xors() or transitivity().
    std::size_t index;
};

/// Every violated constraint. Throws AssignmentError when `a` is not total over `system`.
std::vector<ConstraintViolation> evaluate(const ConstraintSystem& system, const Assignment& a);

inline bool satisfies(const ConstraintSystem& system, const Assignment& a) { return evaluate(system, a).empty(); }

/// Human-readable variable name, e.g. "x(a,b)", "x(a,b,c)", "l(a,b)".
std::string variable_name(const LevelGraph& g, const BoolVar& v);

/// Gap-local edge classes relative to the reference edge of `gap`.
struct GapEdges {
    Edge reference;
    std::vector<EdgeIndex> inner;  // neither endpoint on the reference edge
    std::vector<EdgeIndex> plus;   // leaves the lower reference vertex
    std::vector<EdgeIndex> minus;  // enters the upper reference vertex
};

GapEdges classify_gap(const LevelGraph& g, const ReferenceSets& refs, int gap);

}  // namespace lpht
