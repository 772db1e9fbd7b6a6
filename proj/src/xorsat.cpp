#include "lpht/xorsat.hpp"

#include <algorithm>
#include <optional>
#include <bit>

#include "lpht/constraints.hpp"

namespace lpht {

namespace {

using Words = std::vector<std::uint64_t>;

bool test(const Words& w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1u; }
void flip(Words& w, std::size_t i) { w[i / 64] ^= std::uint64_t{1} << (i % 64); }

void xor_into(Words& dst, const Words& src, std::size_t from_word) {
    for (std::size_t i = from_word; i < dst.size(); ++i) dst[i] ^= src[i];
}

struct Reduced {
    std::vector<Words> rows;
    std::vector<std::uint8_t> parity;
    std::vector<Words> history;       // only filled when tracking
    std::vector<std::size_t> pivot;   // pivot column of row r, for r < rank
    std::size_t rank = 0;
    std::optional<std::size_t> contradiction;  // a zero row with parity 1
};

Reduced eliminate(const XorSystem& sys, bool track) {
    const std::size_t m = sys.rows.size();
    const std::size_t words = (sys.n + 63) / 64;
    Reduced red;
    red.rows.assign(m, Words(words, 0));
    red.parity.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t v : sys.rows[r].vars) {
            if (v >= sys.n) throw Error("xor row references variable " + std::to_string(v) + " of " + std::to_string(sys.n));
            flip(red.rows[r], v);
        }
        red.parity[r] = sys.rows[r].parity ? 1 : 0;
    }
    if (track) {
        red.history.assign(m, Words((m + 63) / 64, 0));
        for (std::size_t r = 0; r < m; ++r) flip(red.history[r], r);
    }

    std::size_t r = 0;
    for (std::size_t col = 0; col < sys.n && r < m; ++col) {
        std::size_t p = r;
        while (p < m && !test(red.rows[p], col)) ++p;
        if (p == m) continue;
        std::swap(red.rows[p], red.rows[r]);
        std::swap(red.parity[p], red.parity[r]);
        if (track) std::swap(red.history[p], red.history[r]);
        for (std::size_t q = 0; q < m; ++q) {
            if (q == r || !test(red.rows[q], col)) continue;
            xor_into(red.rows[q], red.rows[r], col / 64);
            red.parity[q] ^= red.parity[r];
            if (track) xor_into(red.history[q], red.history[r], 0);
        }
        red.pivot.push_back(col);
        ++r;
    }
    red.rank = r;
    for (std::size_t q = r; q < m; ++q) {
        if (red.parity[q]) {
            red.contradiction = q;
            break;
        }
    }
    return red;
}

}  // namespace

SolveResult solve(const XorSystem& sys) {
    Reduced red = eliminate(sys, false);
    if (red.contradiction) {
        red = eliminate(sys, true);
        Unsat u;
        const Words& h = red.history[*red.contradiction];
        for (std::size_t i = 0; i < sys.rows.size(); ++i) {
            if (test(h, i)) u.certificate.push_back(i);
        }
        return u;
    }
    Sat s;
    s.assignment.assign(sys.n, 0);
    std::vector<bool> is_pivot(sys.n, false);
    for (std::size_t i = 0; i < red.rank; ++i) {
        s.assignment[red.pivot[i]] = red.parity[i];
        is_pivot[red.pivot[i]] = true;
    }
    for (std::size_t v = 0; v < sys.n; ++v) {
        if (!is_pivot[v]) s.free_vars.push_back(v);
    }
    if (!satisfies(sys, s.assignment)) throw Error("xor elimination produced a non-solution");
    return s;
}

std::size_t rank(const XorSystem& sys) { return eliminate(sys, false).rank; }

bool satisfies(const XorSystem& sys, std::span<const std::uint8_t> x) {
    if (x.size() != sys.n) return false;
    return std::ranges::all_of(sys.rows, [&x](const XorSystem::Row& row) {
        bool sum = false;
        for (std::size_t v : row.vars) sum ^= x[v] != 0;
        return sum == row.parity;
    });
}

XorSystem to_xor_system(const ConstraintSystem& s) {
    XorSystem sys;
    sys.n = s.variables().size();
    for (const auto& eq : s.xors()) sys.rows.push_back({eq.vars, eq.parity});
    return sys;
}

std::size_t for_each_solution(const XorSystem& sys,
                              std::size_t limit,
                              const std::function<bool(std::span<const std::uint8_t>)>& visit) {
    if (limit == 0) return 0;
    auto result = solve(sys);
    auto* sat = std::get_if<Sat>(&result);
    if (!sat) return 0;

    const Reduced red = eliminate(sys, false);
    // Flipping free variable f forces every pivot whose row contains f.
    std::vector<std::vector<std::size_t>> toggles;
    for (std::size_t f : sat->free_vars) {
        std::vector<std::size_t> t{f};
        for (std::size_t i = 0; i < red.rank; ++i) {
            if (test(red.rows[i], f)) t.push_back(red.pivot[i]);
        }
        toggles.push_back(std::move(t));
    }

    std::vector<std::uint8_t> x = sat->assignment;
    std::size_t count = 0;
    for (std::uint64_t step = 0;; ++step) {
        ++count;
        if (!visit(x) || count >= limit) break;
        // Gray code: the next solution differs in one free variable.
        const auto next = step + 1;
        const auto bit = static_cast<std::size_t>(std::countr_zero(next));
        if (bit >= toggles.size()) break;
        for (std::size_t v : toggles[bit]) x[v] ^= 1;
    }
    return count;
}

}  // namespace lpht
