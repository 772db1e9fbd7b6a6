#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpht/io.hpp"
#include "lpht/oracle.hpp"

namespace lpht {

enum class Mode { Level, Radial };

/// "level" or "radial"; throws Error otherwise.
Mode parse_mode(std::string_view text);
const char* mode_name(Mode m);

struct CheckOptions {
    /// Decide the system with transitivity by enumerating the solutions of its XOR part.
    bool full = false;
    /// Build and verify a Hanani-Tutte drawing of G+ when planar.
    bool witness = false;
    /// Cap on enumerated solutions in full mode.
    std::uint64_t budget = default_oracle_budget;
    /// Reference selection seed for radial mode.
    std::optional<std::uint64_t> seed = std::nullopt;
};

struct Witness {
    /// The drawing of G+ built from the lifted assignment.
    DrawingFile drawing;
    LevelGraph plus_graph;
    /// Crossings of the smoothed drawing; independent pairs are all even.
    std::size_t star_crossings = 0;
};

struct CheckReport {
    Mode mode = Mode::Level;
    bool full = false;
    bool planar = false;
    /// The properized input, with inserted reference edges in radial mode.
    ProperLevelGraph graph;
    std::optional<ReferenceSets> refs;
    std::size_t variables = 0;
    std::size_t equations = 0;
    std::size_t clauses = 0;
    std::size_t rank = 0;
    /// Rows of the reduced system summing to 0 = 1 when it is unsatisfiable.
    std::vector<std::size_t> certificate;
    /// Solutions of the XOR part tried in full mode.
    std::uint64_t solutions_tried = 0;
    std::optional<Witness> witness;
};

/// Throws GraphError, ReferenceError, BudgetExceeded (full mode) and DrawingError (witness).
CheckReport check(const LevelGraph& g, Mode mode, const CheckOptions& options = {});

struct OracleReport {
    Mode mode = Mode::Level;
    bool planar = false;
    std::uint64_t states = 0;
    ProperLevelGraph graph;
    std::optional<ReferenceSets> refs;
    std::optional<DrawingFile> witness;
};

/// Properizes and runs the matching oracle. Throws BudgetExceeded.
OracleReport run_oracle(const LevelGraph& g,
                        Mode mode,
                        std::uint64_t budget = default_oracle_budget,
                        std::optional<std::uint64_t> seed = std::nullopt);

/// The reduced or full system of G, or of G+ when `plus`, as a dump.
std::string emit_constraints(const LevelGraph& g, Mode mode, bool full, bool plus);

struct CrosscheckOptions {
    std::uint64_t budget = default_oracle_budget;
    /// Reference choices tried per instance besides the default one.
    std::size_t reference_choices = 2;
    /// Also compare against a relabeled copy.
    std::optional<std::uint64_t> relabel_seed = std::nullopt;
};

struct InstanceCheck {
    bool level_planar = false;
    bool radial_planar = false;
    /// Distinct reference choices compared.
    std::size_t reference_sets = 0;
    /// Set when an oracle would exceed the budget; nothing else is checked then.
    bool skipped = false;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// Solver against oracle in both modes plus every pipeline property on one instance.
InstanceCheck crosscheck_instance(const LevelGraph& g, const CrosscheckOptions& options = {});

}  // namespace lpht
