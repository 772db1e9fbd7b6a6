#include "lpht/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lpht {

bool is_valid_vertex_id(std::string_view id) {
    if (id.empty()) return false;
    for (char c : id) {
        auto uc = static_cast<unsigned char>(c);
        if (uc <= ' ' || c == ',' || c == '(' || c == ')' || c == '>' || c == '"' || c == '\\' || uc == 0x7f) {
            return false;
        }
    }
    return true;
}

std::vector<Violation> validate(const GraphDescription& g) {
    std::vector<Violation> out;
    auto add = [&out](Violation::Kind kind, std::string msg) { out.push_back({kind, std::move(msg)}); };

    if (g.levels < 1) add(Violation::Kind::BadLevelCount, "level count must be positive");

    std::unordered_map<std::string, int> level_of;
    for (const auto& [id, level] : g.vertices) {
        if (!is_valid_vertex_id(id)) add(Violation::Kind::BadVertexId, "invalid vertex id \"" + id + "\"");
        if (level < 1 || level > g.levels) {
            add(Violation::Kind::LevelOutOfRange,
                "level out of range: " + id + " on level " + std::to_string(level));
        }
        if (!level_of.emplace(id, level).second) add(Violation::Kind::DuplicateVertex, "duplicate vertex " + id);
    }

    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [tail, head] : g.edges) {
        const std::string name = tail + "->" + head;
        auto t = level_of.find(tail);
        auto h = level_of.find(head);
        if (t == level_of.end() || h == level_of.end()) {
            add(Violation::Kind::UnknownVertex, "edge " + name + " references an unknown vertex");
            continue;
        }
        if (tail == head) {
            add(Violation::Kind::SelfLoop, "self-loop " + name);
            continue;
        }
        if (t->second >= h->second) add(Violation::Kind::EdgeNotUpward, "edge not upward: " + name);
        if (!seen.emplace(tail, head).second) add(Violation::Kind::DuplicateEdge, "duplicate edge " + name);
    }
    return out;
}

LevelGraph LevelGraph::from_description(const GraphDescription& g) {
    auto violations = validate(g);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "invalid level graph:";
        for (const auto& v : violations) msg << "\n  " << v.message;
        throw GraphError(msg.str());
    }
    Builder b(g.levels);
    std::unordered_map<std::string, Vertex> index;
    for (const auto& [id, level] : g.vertices) index.emplace(id, b.add_vertex(id, level));
    for (const auto& [tail, head] : g.edges) b.add_edge(index.at(tail), index.at(head));
    return std::move(b).build();
}

GraphDescription LevelGraph::describe() const {
    GraphDescription d;
    d.levels = levels_;
    for (Vertex v = 0; v < ids_.size(); ++v) d.vertices.emplace_back(ids_[v], level_[v]);
    for (const auto& e : edges_) d.edges.emplace_back(ids_[e.tail], ids_[e.head]);
    return d;
}

std::optional<Vertex> LevelGraph::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vertex LevelGraph::at(std::string_view id) const {
    auto v = find(id);
    if (!v) throw GraphError("unknown vertex " + std::string(id));
    return *v;
}

std::optional<EdgeIndex> LevelGraph::find_edge(Vertex tail, Vertex head) const {
    auto it = edge_index_.find(Edge{tail, head});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

bool LevelGraph::is_proper() const {
    return std::ranges::all_of(edges_, [this](const Edge& e) { return level_[e.head] == level_[e.tail] + 1; });
}

bool LevelGraph::independent(EdgeIndex a, EdgeIndex b) const {
    const Edge& e = edges_[a];
    const Edge& f = edges_[b];
    return e.tail != f.tail && e.tail != f.head && e.head != f.tail && e.head != f.head;
}

void LevelGraph::index_structure() {
    by_level_.assign(static_cast<std::size_t>(std::max(levels_, 0)), {});
    for (Vertex v = 0; v < ids_.size(); ++v) by_level_[static_cast<std::size_t>(level_[v] - 1)].push_back(v);
    rank_.assign(ids_.size(), 0);
    for (auto& level : by_level_) {
        std::ranges::sort(level, [this](Vertex a, Vertex b) { return ids_[a] < ids_[b]; });
        for (std::size_t i = 0; i < level.size(); ++i) rank_[level[i]] = i;
    }
}

LevelGraph::Builder::Builder(int levels) {
    if (levels < 0) throw GraphError("level count must be nonnegative");
    g_.levels_ = levels;
}

Vertex LevelGraph::Builder::add_vertex(std::string id, int level) {
    if (level < 1 || level > g_.levels_) {
        throw GraphError("level out of range: " + id + " on level " + std::to_string(level));
    }
    auto v = static_cast<Vertex>(g_.ids_.size());
    if (!g_.index_.emplace(id, v).second) throw GraphError("duplicate vertex " + id);
    g_.ids_.push_back(std::move(id));
    g_.level_.push_back(level);
    g_.out_.emplace_back();
    g_.in_.emplace_back();
    return v;
}

EdgeIndex LevelGraph::Builder::add_edge(Vertex tail, Vertex head) {
    if (tail >= g_.ids_.size() || head >= g_.ids_.size()) throw GraphError("edge references an unknown vertex");
    const std::string name = g_.ids_[tail] + "->" + g_.ids_[head];
    if (tail == head) throw GraphError("self-loop " + name);
    if (g_.level_[tail] >= g_.level_[head]) throw GraphError("edge not upward: " + name);
    EdgeIndex e = g_.edges_.size();
    if (!g_.edge_index_.emplace(Edge{tail, head}, e).second) throw GraphError("duplicate edge " + name);
    g_.edges_.push_back({tail, head});
    g_.out_[tail].push_back(e);
    g_.in_[head].push_back(e);
    return e;
}

LevelGraph LevelGraph::Builder::build() && {
    g_.index_structure();
    return std::move(g_);
}

ProperLevelGraph::ProperLevelGraph(LevelGraph g) : g_(std::move(g)) {
    if (!g_.is_proper()) throw GraphError("level graph is not proper");
}

Vertex ProperizeResult::path_vertex(EdgeIndex e, int level) const {
    const auto& path = paths.at(e);
    const int first = graph->level(path.front());
    const int offset = level - first;
    if (offset < 0 || static_cast<std::size_t>(offset) >= path.size()) {
        throw GraphError("edge does not reach level " + std::to_string(level));
    }
    return path[static_cast<std::size_t>(offset)];
}

ProperizeResult properize(const LevelGraph& g) {
    LevelGraph::Builder b(g.level_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) b.add_vertex(g.id(v), g.level(v));

    ProperizeResult r;
    r.vertex_origin.assign(g.vertex_count(), std::nullopt);
    r.paths.resize(g.edge_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        auto& path = r.paths[e];
        path.push_back(edge.tail);
        for (int level = g.level(edge.tail) + 1; level < g.level(edge.head); ++level) {
            path.push_back(b.add_vertex(g.id(edge.tail) + "~" + g.id(edge.head) + "~" + std::to_string(level), level));
            r.vertex_origin.emplace_back(e);
        }
        path.push_back(edge.head);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            b.add_edge(path[i], path[i + 1]);
            r.edge_origin.push_back(e);
        }
    }
    r.graph = ProperLevelGraph(std::move(b).build());
    return r;
}

bool is_critical(const LevelGraph& g, EdgeIndex e, EdgeIndex f) {
    if (e == f || !g.independent(e, f)) return false;
    const Edge& a = g.edge(e);
    const Edge& b = g.edge(f);
    return g.level(a.tail) <= g.level(b.head) && g.level(a.head) >= g.level(b.tail);
}

std::vector<CriticalPair> critical_pairs(const LevelGraph& g) {
    std::vector<CriticalPair> out;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        for (EdgeIndex f = e + 1; f < g.edge_count(); ++f) {
            if (is_critical(g, e, f)) out.push_back({e, f});
        }
    }
    return out;
}

Limits limits(const LevelGraph& source, const CriticalPair& pair, const ProperizeResult& sub) {
    if (!is_critical(source, pair.e, pair.f)) {
        throw GraphError("edges " + source.edge_name(pair.e) + " and " + source.edge_name(pair.f) +
                         " are not critical");
    }
    const Edge& a = source.edge(pair.e);
    const Edge& b = source.edge(pair.f);
    const int low = std::max(source.level(a.tail), source.level(b.tail));
    const int high = std::min(source.level(a.head), source.level(b.head));
    return Limits{
        .u_prime = sub.path_vertex(pair.e, low),
        .v_prime = sub.path_vertex(pair.e, high),
        .w_prime = sub.path_vertex(pair.f, low),
        .x_prime = sub.path_vertex(pair.f, high),
    };
}

}  // namespace lpht
