#include "lpht/io.hpp"

#include <json.hpp>
#include <limits>
#include <sstream>

namespace lpht {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

const json& member(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
    return obj.at(key);
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ParseError(std::string(what) + " is out of range");
    }
    return static_cast<int>(v);
}

std::pair<std::string, std::string> as_pair(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ParseError(std::string(what) + " must be a [tail, head] pair");
    return {as_string(j[0], what), as_string(j[1], what)};
}

Vertex vertex_of(const LevelGraph& g, const std::string& id) {
    auto v = g.find(id);
    if (!v) throw ParseError("unknown vertex \"" + id + "\"");
    return *v;
}

}  // namespace

GraphDescription parse_graph_json(std::string_view text) {
    const json doc = parse_json(text);
    GraphDescription g;
    g.levels = as_int(member(doc, "levels"), "\"levels\"");
    const json& vertices = member(doc, "vertices");
    if (!vertices.is_array()) throw ParseError("\"vertices\" must be an array");
    for (const json& v : vertices) {
        g.vertices.emplace_back(as_string(member(v, "id"), "vertex id"), as_int(member(v, "level"), "vertex level"));
    }
    const json& edges = member(doc, "edges");
    if (!edges.is_array()) throw ParseError("\"edges\" must be an array");
    for (const json& e : edges) g.edges.push_back(as_pair(e, "edge"));
    return g;
}

LevelGraph read_graph(std::string_view text) { return LevelGraph::from_description(parse_graph_json(text)); }

std::string write_graph_json(const LevelGraph& g) {
    const GraphDescription d = g.describe();
    json doc;
    doc["levels"] = d.levels;
    doc["vertices"] = json::array();
    for (const auto& [id, level] : d.vertices) doc["vertices"].push_back({{"id", id}, {"level", level}});
    doc["edges"] = json::array();
    for (const auto& [t, h] : d.edges) doc["edges"].push_back({t, h});
    return doc.dump(2) + "\n";
}

std::pair<std::string, std::string> split_edge_key(std::string_view key) {
    const auto arrow = key.find("->");
    if (arrow == std::string_view::npos || arrow == 0 || arrow + 2 == key.size() || key.find('>') != arrow + 1) {
        throw ParseError("edge key \"" + std::string(key) + "\" is not of the form tail->head");
    }
    // Ids cannot contain '>', so the arrow is the last '-' before the only '>'.
    return {std::string(key.substr(0, arrow)), std::string(key.substr(arrow + 2))};
}

DrawingFile parse_drawing_json(std::string_view text) {
    const json doc = parse_json(text);
    DrawingFile d;
    d.kind = as_string(member(doc, "kind"), "\"kind\"");
    if (d.kind != "level" && d.kind != "radial") throw ParseError("\"kind\" must be \"level\" or \"radial\"");

    const json& orders = member(doc, "orders");
    if (!orders.is_object()) throw ParseError("\"orders\" must be an object keyed by level");
    std::map<int, std::vector<std::string>> by_level;
    for (const auto& [key, ids] : orders.items()) {
        int level = 0;
        try {
            std::size_t used = 0;
            level = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw ParseError("order key \"" + key + "\" is not a level number");
        }
        if (!ids.is_array()) throw ParseError("order of level " + key + " must be an array");
        auto& row = by_level[level];
        for (const json& id : ids) row.push_back(as_string(id, "vertex id"));
    }
    int expected = 1;
    for (auto& [level, row] : by_level) {
        if (level != expected++) throw ParseError("orders must cover levels 1.." + std::to_string(by_level.size()));
        d.orders.push_back(std::move(row));
    }

    if (doc.contains("flags")) {
        const json& flags = doc.at("flags");
        if (!flags.is_object()) throw ParseError("\"flags\" must be an object");
        for (const auto& [key, value] : flags.items()) {
            if (!value.is_number_integer() && !value.is_boolean()) throw ParseError("flag values must be 0 or 1");
            const int bit = value.is_boolean() ? static_cast<int>(value.get<bool>()) : value.get<int>();
            if (bit != 0 && bit != 1) throw ParseError("flag values must be 0 or 1");
            d.flags[split_edge_key(key)] = bit == 1;
        }
    }

    if (doc.contains("references")) {
        const json& r = doc.at("references");
        DrawingFile::References refs;
        for (const json& id : member(r, "plus")) refs.plus.push_back(as_string(id, "reference vertex"));
        for (const json& id : member(r, "minus")) refs.minus.push_back(as_string(id, "reference vertex"));
        if (r.contains("inserted")) {
            for (const json& e : r.at("inserted")) refs.inserted.push_back(as_pair(e, "inserted edge"));
        }
        d.references = std::move(refs);
    }
    return d;
}

std::string write_drawing_json(const DrawingFile& d) {
    json doc;
    doc["kind"] = d.kind;
    doc["orders"] = json::object();
    for (std::size_t i = 0; i < d.orders.size(); ++i) doc["orders"][std::to_string(i + 1)] = d.orders[i];
    doc["flags"] = json::object();
    for (const auto& [edge, left] : d.flags) doc["flags"][edge.first + "->" + edge.second] = left ? 1 : 0;
    if (d.references) {
        json r;
        r["plus"] = d.references->plus;
        r["minus"] = d.references->minus;
        r["inserted"] = json::array();
        for (const auto& [t, h] : d.references->inserted) r["inserted"].push_back({t, h});
        doc["references"] = std::move(r);
    }
    return doc.dump(2) + "\n";
}

DrawingFile to_drawing_file(const LevelGraph& g, const LevelDrawing& d) {
    DrawingFile f;
    for (const auto& row : d.order) {
        auto& out = f.orders.emplace_back();
        for (Vertex v : row) out.push_back(g.id(v));
    }
    return f;
}

DrawingFile to_drawing_file(const LevelGraph& g, const ReferenceSets& refs, const RadialDrawing& d) {
    DrawingFile f = to_drawing_file(g, LevelDrawing{d.order});
    f.kind = "radial";
    for (const auto& [e, left] : d.left) f.flags[{g.id(e.tail), g.id(e.head)}] = left;
    DrawingFile::References r;
    for (Vertex v : refs.alpha_plus) r.plus.push_back(g.id(v));
    for (Vertex v : refs.alpha_minus) r.minus.push_back(g.id(v));
    for (const Edge& e : refs.inserted_edges) r.inserted.emplace_back(g.id(e.tail), g.id(e.head));
    f.references = std::move(r);
    return f;
}

LevelDrawing to_level_drawing(const DrawingFile& f, const LevelGraph& g) {
    LevelDrawing d;
    for (const auto& row : f.orders) {
        auto& out = d.order.emplace_back();
        for (const auto& id : row) out.push_back(vertex_of(g, id));
    }
    return d;
}

RadialDrawing to_radial_drawing(const DrawingFile& f, const LevelGraph& g) {
    RadialDrawing d{to_level_drawing(f, g).order, {}};
    for (const auto& [edge, left] : f.flags) {
        const Vertex t = vertex_of(g, edge.first);
        const Vertex h = vertex_of(g, edge.second);
        d.left[Edge{t, h}] = left;
    }
    return d;
}

ReferenceSets to_reference_sets(const DrawingFile& f, const LevelGraph& augmented) {
    if (!f.references) throw ParseError("radial drawing has no \"references\"");
    ReferenceSets r;
    for (const auto& id : f.references->plus) r.alpha_plus.push_back(vertex_of(augmented, id));
    for (const auto& id : f.references->minus) r.alpha_minus.push_back(vertex_of(augmented, id));
    for (const auto& [t, h] : f.references->inserted) {
        r.inserted_edges.push_back({vertex_of(augmented, t), vertex_of(augmented, h)});
    }
    return r;
}

std::string write_constraints(const ConstraintSystem& s, const LevelGraph& g) {
    std::ostringstream out;
    out << "# system: " << system_kind_name(s.kind()) << "\n";
    out << "# naming: x(u,w) u left of w; x(a,u,v) a,u,v clockwise; l(t,h) edge t->h left of its reference edge\n";
    out << "# variables:";
    for (const BoolVar& v : s.variables()) out << ' ' << variable_name(g, v);
    out << "\n";
    auto name = [&](std::size_t i) { return variable_name(g, s.variables()[i]); };

    std::optional<Rule> current;
    auto section = [&](Rule r) {
        if (current != r) out << "## " << rule_name(r) << "\n";
        current = r;
    };
    for (const XorEquation& eq : s.xors()) {
        section(eq.rule);
        for (std::size_t i = 0; i < eq.vars.size(); ++i) out << (i ? " + " : "") << name(eq.vars[i]);
        out << " = " << (eq.parity ? 1 : 0) << "\n";
    }
    for (const TransitivityClause& c : s.transitivity()) {
        section(c.rule);
        out << name(c.a) << " & " << name(c.b) << " -> " << (c.negated_head ? "!" : "") << name(c.c) << "\n";
    }
    return out.str();
}

namespace {

std::optional<SystemKind> kind_named(std::string_view name) {
    for (auto k : {SystemKind::LevelFull, SystemKind::LevelReduced, SystemKind::RadialFull, SystemKind::RadialReduced}) {
        if (name == system_kind_name(k)) return k;
    }
    return std::nullopt;
}

std::optional<Rule> rule_named(std::string_view name) {
    for (int r = 0; r <= static_cast<int>(Rule::CyclicRotation); ++r) {
        if (name == rule_name(static_cast<Rule>(r))) return static_cast<Rule>(r);
    }
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

BoolVar parse_variable(std::string_view token, const LevelGraph& g) {
    token = trim(token);
    if (token.size() < 4 || token[1] != '(' || token.back() != ')') {
        throw ParseError("malformed variable \"" + std::string(token) + "\"");
    }
    std::vector<Vertex> ids;
    std::string_view inner = token.substr(2, token.size() - 3);
    while (true) {
        const auto comma = inner.find(',');
        ids.push_back(vertex_of(g, std::string(inner.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        inner.remove_prefix(comma + 1);
    }
    if (token[0] == 'x' && ids.size() == 2) return BoolVar::pair(ids[0], ids[1]);
    if (token[0] == 'x' && ids.size() == 3) return BoolVar::triple(ids[0], ids[1], ids[2]);
    if (token[0] == 'l' && ids.size() == 2) return BoolVar::left(Edge{ids[0], ids[1]});
    throw ParseError("malformed variable \"" + std::string(token) + "\"");
}

}  // namespace

ConstraintSystem parse_constraints(std::string_view text, const LevelGraph& g) {
    std::optional<ConstraintSystem> s;
    Rule rule = Rule::PairConsistency;
    std::size_t line_no = 0;
    auto system = [&]() -> ConstraintSystem& {
        if (!s) throw ParseError("constraint dump lacks a \"# system:\" header");
        return *s;
    };
    auto index_of = [&](std::string_view token) {
        const BoolVar v = parse_variable(token, g);
        auto i = system().find(v);
        if (!i) throw ParseError("line " + std::to_string(line_no) + ": undeclared variable " + std::string(trim(token)));
        return *i;
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.starts_with("## ")) {
            auto r = rule_named(trim(line.substr(3)));
            if (!r) throw ParseError("line " + std::to_string(line_no) + ": unknown rule");
            rule = *r;
            continue;
        }
        if (line.starts_with("# system:")) {
            auto k = kind_named(trim(line.substr(9)));
            if (!k) throw ParseError("line " + std::to_string(line_no) + ": unknown system kind");
            s.emplace(*k);
            continue;
        }
        if (line.starts_with("# variables:")) {
            std::string_view rest = line.substr(12);
            while (!(rest = trim(rest)).empty()) {
                const auto end = rest.find(')');
                if (end == std::string_view::npos) throw ParseError("malformed variable list");
                system().declare(parse_variable(rest.substr(0, end + 1), g));
                rest.remove_prefix(end + 1);
            }
            continue;
        }
        if (line.starts_with("#")) continue;

        // Ids contain no spaces, so the spaced operators are unambiguous.
        if (const auto arrow = line.find(" -> "); arrow != std::string_view::npos) {
            const std::string_view body = line.substr(0, arrow);
            std::string_view head = trim(line.substr(arrow + 4));
            const auto amp = body.find(" & ");
            if (amp == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected '&'");
            const bool negated = head.starts_with("!");
            if (negated) head.remove_prefix(1);
            system().add_transitivity(
                {index_of(body.substr(0, amp)), index_of(body.substr(amp + 3)), index_of(head), negated, rule});
            continue;
        }
        const auto eq = line.rfind(" = ");
        if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected '='");
        const std::string_view rhs = trim(line.substr(eq + 3));
        if (rhs != "0" && rhs != "1") throw ParseError("line " + std::to_string(line_no) + ": parity must be 0 or 1");
        XorEquation x{{}, rhs == "1", rule};
        std::string_view lhs = line.substr(0, eq);
        while (true) {
            const auto plus = lhs.find(" + ");
            x.vars.push_back(index_of(lhs.substr(0, plus)));
            if (plus == std::string_view::npos) break;
            lhs.remove_prefix(plus + 3);
        }
        system().add_xor(std::move(x));
    }
    return std::move(system());
}

}  // namespace lpht
