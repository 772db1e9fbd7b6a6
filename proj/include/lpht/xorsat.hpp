#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace lpht {

class ConstraintSystem;

/// A linear system over F2: each row says the listed variables sum to `parity`.
/// Repeated indices within a row cancel.
struct XorSystem {
    struct Row {
        std::vector<std::size_t> vars;
        bool parity = false;
    };

    std::size_t n = 0;
    std::vector<Row> rows;
};

struct Sat {
    std::vector<std::uint8_t> assignment;
    /// Variables without a pivot; all of them are 0 in `assignment`.
    std::vector<std::size_t> free_vars;
};

struct Unsat {
    /// Row indices whose sum is 0 = 1, ascending.
    std::vector<std::size_t> certificate;
};

using SolveResult = std::variant<Sat, Unsat>;

/// Gaussian elimination with ascending pivot columns. Throws Error on out-of-range indices.
SolveResult solve(const XorSystem& sys);
std::size_t rank(const XorSystem& sys);

bool satisfies(const XorSystem& sys, std::span<const std::uint8_t> x);

/// The XOR part of a constraint system; transitivity clauses are dropped.
XorSystem to_xor_system(const ConstraintSystem& s);

/// Calls `visit` with every solution in a fixed order until it returns false or `limit`
/// solutions have been produced. Returns the number of solutions visited; 0 when unsatisfiable.
std::size_t for_each_solution(const XorSystem& sys,
                              std::size_t limit,
                              const std::function<bool(std::span<const std::uint8_t>)>& visit);

}  // namespace lpht
