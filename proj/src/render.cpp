#include "lpht/render.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace lpht {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Point {
    double x;
    double y;
};

class Svg {
  public:
    Svg(double width, double height) {
        out_ << std::fixed << std::setprecision(2);
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
             << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
        out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    void line(Point a, Point b, const char* stroke, double width) {
        out_ << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
             << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
    }

    void polyline(const std::vector<Point>& pts, const char* stroke, double width) {
        out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) out_ << (i ? " " : "") << pts[i].x << ',' << pts[i].y;
        out_ << "\"/>\n";
    }

    void circle(Point c, double r, const char* fill, const char* stroke) {
        out_ << "<circle cx=\"" << c.x << "\" cy=\"" << c.y << "\" r=\"" << r << "\" fill=\"" << fill
             << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void label(Point p, const std::string& text) {
        out_ << "<text x=\"" << p.x + 6 << "\" y=\"" << p.y - 6
             << "\" font-family=\"monospace\" font-size=\"10\">" << escape(text) << "</text>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

  private:
    std::ostringstream out_;
};

void crossing_mark(Svg& svg, Point p) { svg.circle(p, 4, "none", "red"); }

}  // namespace

std::string render_level_svg(const ProperLevelGraph& pg, const LevelDrawing& d) {
    const LevelGraph& g = pg;
    const auto report = count_crossings_level(d, pg);
    const int k = g.level_count();
    std::size_t widest = 1;
    for (const auto& row : d.order) widest = std::max(widest, row.size());
    const double width = 60.0 * static_cast<double>(widest + 1);
    const double height = 60.0 * (k + 1);

    std::vector<Point> at(g.vertex_count());
    for (int i = 1; i <= k; ++i) {
        const auto& row = d.order[static_cast<std::size_t>(i - 1)];
        for (std::size_t p = 0; p < row.size(); ++p) at[row[p]] = {60.0 * static_cast<double>(p + 1), height - 60.0 * i};
    }

    Svg svg(width, height);
    for (int i = 1; i <= k; ++i) svg.line({20, height - 60.0 * i}, {width - 20, height - 60.0 * i}, "#cccccc", 1);
    for (const Edge& e : g.edges()) svg.line(at[e.tail], at[e.head], "black", 1.5);
    for (const auto& [pair, c] : report.per_pair) {
        const Edge& e = g.edge(pair.first);
        const Edge& f = g.edge(pair.second);
        const double de = at[e.head].x - at[e.tail].x;
        const double df = at[f.head].x - at[f.tail].x;
        const double s = (at[f.tail].x - at[e.tail].x) / (de - df);
        crossing_mark(svg, {at[e.tail].x + de * s, at[e.tail].y + (at[e.head].y - at[e.tail].y) * s});
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        svg.circle(at[v], 4, "black", "black");
        svg.label(at[v], g.id(v));
    }
    return svg.finish();
}

std::string render_radial_svg(const ProperLevelGraph& pg, const ReferenceSets& refs, const RadialDrawing& d) {
    const LevelGraph& g = pg;
    const auto report = count_crossings_radial(d, pg, refs);
    const int k = g.level_count();
    const double outer = 40.0 * k + 40.0;
    const Point center{outer, outer};
    constexpr double tau = 2 * std::numbers::pi;

    std::vector<std::size_t> pos(g.vertex_count());
    for (const auto& row : d.order) {
        for (std::size_t p = 0; p < row.size(); ++p) pos[row[p]] = p;
    }
    auto size_of = [&](Vertex v) { return static_cast<double>(g.on_level(g.level(v)).size()); };
    auto angle = [&](Vertex v) { return tau * static_cast<double>(pos[v]) / size_of(v); };
    auto polar = [&](double radius, double theta) {
        return Point{center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
    };
    // Fraction of a full turn from the cut after `anchor` to v; the anchor itself sits at 1.
    auto strip = [&](Vertex anchor, Vertex v) {
        const double n = size_of(v);
        const double lin = std::fmod(static_cast<double>(pos[v]) - static_cast<double>(pos[anchor]) - 1 + 2 * n, n);
        return (lin + 1) / n;
    };

    struct Curve {
        double theta_a;
        double theta_b;
        double t0;
        double t1;
        double r0;
    };
    std::vector<Curve> curves(g.edge_count());
    for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edge(i);
        const Edge ref = refs.reference_edge(g.level(e.tail));
        Curve c{angle(ref.tail), angle(ref.head), strip(ref.tail, e.tail), strip(ref.head, e.head),
                40.0 * g.level(e.tail)};
        if (e != ref) {
            if (e.tail == ref.tail) c.t0 = d.left.at(e) ? 1 : 0;
            if (e.head == ref.head) c.t1 = d.left.at(e) ? 1 : 0;
        }
        curves[i] = c;
    }
    auto point_on = [&](const Curve& c, double s) {
        const double t = c.t0 + (c.t1 - c.t0) * s;
        return polar(c.r0 + 40.0 * s, c.theta_a * (1 - s) + c.theta_b * s + tau * t);
    };

    Svg svg(2 * outer, 2 * outer);
    for (int i = 1; i <= k; ++i) svg.circle(center, 40.0 * i, "none", "#cccccc");
    for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
        std::vector<Point> pts;
        for (int step = 0; step <= 16; ++step) pts.push_back(point_on(curves[i], step / 16.0));
        svg.polyline(pts, "black", 1.5);
    }
    for (const auto& [pair, count] : report.per_pair) {
        const Curve& e = curves[pair.first];
        const Curve& f = curves[pair.second];
        const double s = (f.t0 - e.t0) / ((e.t1 - e.t0) - (f.t1 - f.t0));
        crossing_mark(svg, point_on(e, s));
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const Point p = polar(40.0 * g.level(v), angle(v));
        svg.circle(p, 4, "black", "black");
        svg.label(p, g.id(v));
    }
    return svg.finish();
}

}  // namespace lpht
