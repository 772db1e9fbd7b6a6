#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lpht {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class GraphError : public Error {
  public:
    using Error::Error;
};

using Vertex = std::uint32_t;
using EdgeIndex = std::size_t;

struct Edge {
    Vertex tail = 0;
    Vertex head = 0;

    auto operator<=>(const Edge&) const = default;
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        return (static_cast<std::size_t>(e.tail) << 32) ^ e.head;
    }
};

/// Plain, possibly invalid, description of a level graph as read from disk.
struct GraphDescription {
    int levels = 0;
    std::vector<std::pair<std::string, int>> vertices;
    std::vector<std::pair<std::string, std::string>> edges;

    bool operator==(const GraphDescription&) const = default;
};

struct Violation {
    enum class Kind {
        BadLevelCount,
        DuplicateVertex,
        BadVertexId,
        LevelOutOfRange,
        UnknownVertex,
        SelfLoop,
        EdgeNotUpward,
        DuplicateEdge,
    };
    Kind kind;
    std::string message;
};

/// Every invariant violation of `g`; empty means the description is a valid level graph.
std::vector<Violation> validate(const GraphDescription& g);

/// Characters that would make an id ambiguous in the text formats.
bool is_valid_vertex_id(std::string_view id);

/// A leveled DAG. Immutable once built; vertices are dense indices with string ids.
class LevelGraph {
  public:
    class Builder;

    LevelGraph() = default;

    /// Throws GraphError listing every violation.
    static LevelGraph from_description(const GraphDescription& g);
    GraphDescription describe() const;

    int level_count() const { return levels_; }
    std::size_t vertex_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& id(Vertex v) const { return ids_[v]; }
    int level(Vertex v) const { return level_[v]; }
    std::optional<Vertex> find(std::string_view id) const;
    Vertex at(std::string_view id) const;

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }
    std::optional<EdgeIndex> find_edge(Vertex tail, Vertex head) const;

    /// Vertices of level `i` (1-based) in ascending id order.
    std::span<const Vertex> on_level(int i) const { return by_level_[static_cast<std::size_t>(i - 1)]; }
    /// Position of `v` within `on_level(level(v))`.
    std::size_t rank(Vertex v) const { return rank_[v]; }

    std::span<const EdgeIndex> out_edges(Vertex v) const { return out_[v]; }
    std::span<const EdgeIndex> in_edges(Vertex v) const { return in_[v]; }

    bool is_proper() const;
    bool independent(EdgeIndex a, EdgeIndex b) const;

    std::string edge_name(EdgeIndex e) const { return ids_[edges_[e].tail] + "->" + ids_[edges_[e].head]; }

    bool operator==(const LevelGraph& other) const { return describe() == other.describe(); }

  private:
    int levels_ = 0;
    std::vector<std::string> ids_;
    std::vector<int> level_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, Vertex> index_;
    std::unordered_map<Edge, EdgeIndex, EdgeHash> edge_index_;
    std::vector<std::vector<Vertex>> by_level_;
    std::vector<std::size_t> rank_;
    std::vector<std::vector<EdgeIndex>> out_;
    std::vector<std::vector<EdgeIndex>> in_;

    void index_structure();
};

class LevelGraph::Builder {
  public:
    explicit Builder(int levels);

    /// Throws GraphError on duplicate ids or out-of-range levels.
    Vertex add_vertex(std::string id, int level);
    /// Throws GraphError on self-loops, non-upward or duplicate edges.
    EdgeIndex add_edge(Vertex tail, Vertex head);

    LevelGraph build() &&;

  private:
    LevelGraph g_;
};

/// A level graph whose every edge joins consecutive levels.
class ProperLevelGraph {
  public:
    ProperLevelGraph() = default;
    /// Throws GraphError if some edge spans more than one level.
    explicit ProperLevelGraph(LevelGraph g);

    const LevelGraph& graph() const { return g_; }
    operator const LevelGraph&() const { return g_; }  // NOLINT(google-explicit-constructor)
    const LevelGraph* operator->() const { return &g_; }

  private:
    LevelGraph g_;
};

/// Proper subdivision of a level graph together with its provenance.
///
/// Vertices of the source keep their indices; subdivision vertices are appended and
/// named "<tail>~<head>~<level>".
struct ProperizeResult {
    ProperLevelGraph graph;
    /// For every vertex of `graph`: the source edge it subdivides, or nullopt for source vertices.
    std::vector<std::optional<EdgeIndex>> vertex_origin;
    /// For every edge of `graph`: the source edge it is a segment of.
    std::vector<EdgeIndex> edge_origin;
    /// For every source edge: its vertex path in `graph`, tail first.
    std::vector<std::vector<Vertex>> paths;

    /// The vertex of source edge `e` on `level`; throws if `e` does not reach it.
    Vertex path_vertex(EdgeIndex e, int level) const;
};

ProperizeResult properize(const LevelGraph& g);

struct CriticalPair {
    EdgeIndex e;
    EdgeIndex f;

    auto operator<=>(const CriticalPair&) const = default;
};

bool is_critical(const LevelGraph& g, EdgeIndex e, EdgeIndex f);

/// All unordered critical pairs (e < f).
std::vector<CriticalPair> critical_pairs(const LevelGraph& g);

/// Endpoints of a critical pair clipped to their shared level window, expressed in the subdivision.
struct Limits {
    Vertex u_prime;
    Vertex v_prime;
    Vertex w_prime;
    Vertex x_prime;
};

/// `source` is the graph `sub` was properized from. Throws GraphError if the pair is not critical.
Limits limits(const LevelGraph& source, const CriticalPair& pair, const ProperizeResult& sub);

}  // namespace lpht
