#pragma once

#include <cstdint>
#include <optional>

#include "lpht/drawing.hpp"

namespace lpht {

inline constexpr std::uint64_t default_oracle_budget = 10'000'000;

class BudgetExceeded : public Error {
  public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget);
    std::uint64_t required;
    std::uint64_t budget;
};

template <class Drawing>
struct OracleResult {
    bool planar = false;
    std::optional<Drawing> witness;
    std::uint64_t states = 0;
};

using LevelOracleResult = OracleResult<LevelDrawing>;
using RadialOracleResult = OracleResult<RadialDrawing>;

/// Number of drawings the oracles may enumerate, saturating at UINT64_MAX.
std::uint64_t level_state_space(const LevelGraph& g);
std::uint64_t radial_state_space(const LevelGraph& g, const ReferenceSets& refs);

/// Depth-first search over per-level orders, rejecting a prefix as soon as one gap has a crossing.
/// `states` counts complete drawings tried plus rejected prefixes. Throws BudgetExceeded upfront
/// when the state space is larger than `budget`.
LevelOracleResult brute_level(const ProperLevelGraph& g, std::uint64_t budget = default_oracle_budget);

/// Like brute_level over cyclic orders (each level's minus anchor first) and flag choices.
RadialOracleResult brute_radial(const ProperLevelGraph& g,
                                const ReferenceSets& refs,
                                std::uint64_t budget = default_oracle_budget);

}  // namespace lpht
