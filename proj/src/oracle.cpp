#include "lpht/oracle.hpp"

#include <algorithm>
#include <limits>

namespace lpht {

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : Error("oracle needs " + (required == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                       : std::to_string(required)) +
            " states, budget is " + std::to_string(budget)),
      required(required),
      budget(budget) {}

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > saturated / a) return saturated;
    return a * b;
}

std::uint64_t factorial(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f = mul(f, i);
    return f;
}

std::uint64_t power_of_two(std::size_t n) { return n >= 64 ? saturated : std::uint64_t{1} << n; }

std::size_t flag_count(const LevelGraph& g, const ReferenceSets& refs, int gap) {
    const GapEdges ge = classify_gap(g, refs, gap);
    return ge.plus.size() + ge.minus.size();
}

}  // namespace

std::uint64_t level_state_space(const LevelGraph& g) {
    std::uint64_t n = 1;
    for (int i = 1; i <= g.level_count(); ++i) n = mul(n, factorial(g.on_level(i).size()));
    return n;
}

std::uint64_t radial_state_space(const LevelGraph& g, const ReferenceSets& refs) {
    std::uint64_t n = 1;
    for (int i = 1; i <= g.level_count(); ++i) {
        const auto size = g.on_level(i).size();
        n = mul(n, factorial(size == 0 ? 0 : size - 1));
        if (i < g.level_count()) n = mul(n, power_of_two(flag_count(g, refs, i)));
    }
    return n;
}

namespace {

class LevelSearch {
  public:
    explicit LevelSearch(const LevelGraph& g) : g_(g), pos_(g.vertex_count(), 0), order_(g.level_count()) {}

    bool run() { return place(1); }
    std::uint64_t states() const { return states_; }
    LevelDrawing drawing() const { return {order_}; }

  private:
    const LevelGraph& g_;
    std::vector<std::size_t> pos_;
    std::vector<std::vector<Vertex>> order_;
    std::uint64_t states_ = 0;

    bool gap_is_planar(int gap) const {
        std::vector<Edge> edges;
        for (Vertex u : g_.on_level(gap)) {
            for (EdgeIndex e : g_.out_edges(u)) edges.push_back(g_.edge(e));
        }
        for (std::size_t p = 0; p < edges.size(); ++p) {
            for (std::size_t q = p + 1; q < edges.size(); ++q) {
                const Edge& a = edges[p];
                const Edge& b = edges[q];
                if (a.tail == b.tail || a.head == b.head) continue;
                if ((pos_[a.tail] < pos_[b.tail]) != (pos_[a.head] < pos_[b.head])) return false;
            }
        }
        return true;
    }

    bool place(int level) {
        auto& row = order_[static_cast<std::size_t>(level - 1)];
        const auto vs = g_.on_level(level);
        row.assign(vs.begin(), vs.end());
        std::ranges::sort(row);
        const bool last = level == g_.level_count();
        do {
            for (std::size_t p = 0; p < row.size(); ++p) pos_[row[p]] = p;
            const bool ok = level == 1 || gap_is_planar(level - 1);
            if (last || !ok) ++states_;
            if (ok && (last || place(level + 1))) return true;
        } while (std::next_permutation(row.begin(), row.end()));
        return false;
    }
};

class RadialSearch {
  public:
    RadialSearch(const ProperLevelGraph& g, const ReferenceSets& refs)
        : g_(g), refs_(refs), pos_(g_.vertex_count(), 0), order_(g_.level_count()) {
        for (int gap = 1; gap < g_.level_count(); ++gap) gaps_.push_back(classify_gap(g_, refs_, gap));
    }

    bool run() { return place(1); }
    std::uint64_t states() const { return states_; }
    RadialDrawing drawing() const { return {order_, left_}; }

  private:
    const LevelGraph& g_;
    const ReferenceSets& refs_;
    std::vector<std::size_t> pos_;
    std::vector<std::vector<Vertex>> order_;
    std::vector<GapEdges> gaps_;
    std::map<Edge, bool> left_;
    std::uint64_t states_ = 0;

    long long cut(Vertex anchor, Vertex v) const {
        const auto n = static_cast<long long>(g_.on_level(g_.level(v)).size());
        return (static_cast<long long>(pos_[v]) - static_cast<long long>(pos_[anchor]) - 1 + n) % n;
    }

    bool gap_is_planar(int gap) const {
        const GapEdges& ge = gaps_[static_cast<std::size_t>(gap - 1)];
        constexpr long long far = std::numeric_limits<long long>::max() / 4;
        struct Strip {
            Edge e;
            long long bottom;
            long long top;
        };
        std::vector<Strip> strips;
        auto add = [&](EdgeIndex i) {
            const Edge& e = g_.edge(i);
            Strip s{e, cut(ge.reference.tail, e.tail), cut(ge.reference.head, e.head)};
            if (e.tail == ge.reference.tail) s.bottom = left_.at(e) ? far : -far;
            if (e.head == ge.reference.head) s.top = left_.at(e) ? far : -far;
            strips.push_back(s);
        };
        for (EdgeIndex i : ge.inner) add(i);
        for (EdgeIndex i : ge.plus) add(i);
        for (EdgeIndex i : ge.minus) add(i);
        for (std::size_t p = 0; p < strips.size(); ++p) {
            for (std::size_t q = p + 1; q < strips.size(); ++q) {
                const Strip& a = strips[p];
                const Strip& b = strips[q];
                if (a.e.tail == b.e.tail || a.e.head == b.e.head) continue;
                if ((a.bottom < b.bottom) != (a.top < b.top)) return false;
            }
        }
        return true;
    }

    bool place(int level) {
        auto& row = order_[static_cast<std::size_t>(level - 1)];
        const Vertex anchor = refs_.minus(level);
        row.assign(1, anchor);
        for (Vertex v : g_.on_level(level)) {
            if (v != anchor) row.push_back(v);
        }
        std::sort(row.begin() + 1, row.end());
        const bool last = level == g_.level_count();
        std::vector<Edge> flagged;
        if (level > 1) {
            const GapEdges& ge = gaps_[static_cast<std::size_t>(level - 2)];
            for (EdgeIndex i : ge.plus) flagged.push_back(g_.edge(i));
            for (EdgeIndex i : ge.minus) flagged.push_back(g_.edge(i));
        }
        do {
            for (std::size_t p = 0; p < row.size(); ++p) pos_[row[p]] = p;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << flagged.size()); ++mask) {
                for (std::size_t f = 0; f < flagged.size(); ++f) left_[flagged[f]] = (mask >> f) & 1u;
                const bool ok = level == 1 || gap_is_planar(level - 1);
                if (last || !ok) ++states_;
                if (ok && (last || place(level + 1))) return true;
            }
        } while (std::next_permutation(row.begin() + 1, row.end()));
        for (const Edge& e : flagged) left_.erase(e);
        return false;
    }
};

}  // namespace

LevelOracleResult brute_level(const ProperLevelGraph& g, std::uint64_t budget) {
    const auto space = level_state_space(g);
    if (space > budget) throw BudgetExceeded(space, budget);
    LevelOracleResult r;
    if (g->level_count() == 0) {
        r.planar = true;
        r.witness = LevelDrawing{};
        return r;
    }
    LevelSearch search(g);
    r.planar = search.run();
    r.states = search.states();
    if (r.planar) {
        r.witness = search.drawing();
        if (!count_crossings_level(*r.witness, g).planar()) throw Error("level oracle witness has a crossing");
    }
    return r;
}

RadialOracleResult brute_radial(const ProperLevelGraph& g, const ReferenceSets& refs, std::uint64_t budget) {
    check_reference_sets(g, refs);
    const auto space = radial_state_space(g, refs);
    if (space > budget) throw BudgetExceeded(space, budget);
    RadialSearch search(g, refs);
    RadialOracleResult r;
    r.planar = search.run();
    r.states = search.states();
    if (r.planar) {
        r.witness = search.drawing();
        if (!count_crossings_radial(*r.witness, g, refs).planar()) throw Error("radial oracle witness has a crossing");
    }
    return r;
}

}  // namespace lpht
