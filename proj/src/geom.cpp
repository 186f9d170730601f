#include "lebesgue/geom.hpp"

#include <algorithm>
#include <sstream>

namespace lebesgue::geom {

double ArcSegment::sweep() const {
    if (ccw) {
        double d = wrap_angle(endAngle - startAngle);
        return d == 0.0 ? two_pi : d;
    }
    double d = wrap_angle(startAngle - endAngle);
    return d == 0.0 ? -two_pi : -d;
}

bool ArcSegment::contains_angle(double angle, double slack) const {
    const double s = std::abs(sweep());
    const double delta = ccw ? wrap_angle(angle - startAngle) : wrap_angle(startAngle - angle);
    return delta <= s + slack || delta >= two_pi - slack;
}

Point2 piece_start(const Piece &p) {
    return std::visit([](const auto &q) -> Point2 {
        if constexpr (std::is_same_v<std::decay_t<decltype(q)>, Segment>) return q.a;
        else return q.start();
    }, p);
}

Point2 piece_end(const Piece &p) {
    return std::visit([](const auto &q) -> Point2 {
        if constexpr (std::is_same_v<std::decay_t<decltype(q)>, Segment>) return q.b;
        else return q.end();
    }, p);
}

void ArcPolygon::validate(double tol) const {
    if (pieces.empty()) throw std::invalid_argument("arc polygon has no pieces");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Point2 e = piece_end(pieces[i]);
        const Point2 s = piece_start(pieces[(i + 1) % pieces.size()]);
        if (dist(e, s) > tol) {
            std::ostringstream msg;
            msg << "arc polygon not closed between piece " << i << " and " << (i + 1) % pieces.size()
                << " (gap " << dist(e, s) << ")";
            throw std::invalid_argument(msg.str());
        }
    }
    if (arcpolygon_area(*this) <= 0.0) throw std::invalid_argument("arc polygon is not counterclockwise");
}

std::vector<Point2> ArcPolygon::sample(int perArc) const {
    std::vector<Point2> out;
    for (const auto &piece : pieces) {
        if (const auto *arc = std::get_if<ArcSegment>(&piece)) {
            for (int j = 0; j < perArc; ++j) out.push_back(arc->at(static_cast<double>(j) / perArc));
        } else {
            out.push_back(std::get<Segment>(piece).a);
        }
    }
    return out;
}

double sorted_hull(const std::vector<Point2> &pts, std::vector<Point2> &out) {
    const std::size_t n = pts.size();
    if (n < 3) {
        out.assign(pts.begin(), pts.end());
        return 0.0;
    }
    out.resize(2 * n + 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(out[k - 1] - out[k - 2], pts[i] - out[k - 2]) <= 0) --k;
        out[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(out[k - 1] - out[k - 2], pts[i] - out[k - 2]) <= 0) --k;
        out[k++] = pts[i];
    }
    out.resize(k > 0 ? k - 1 : 0);
    double a = 0.0;
    const std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i) a += cross(out[i], out[(i + 1) % m]);
    return 0.5 * a;
}

void merge_sorted(const std::vector<Point2> &a, const std::vector<Point2> &b, std::vector<Point2> &out) {
    out.resize(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin(), lex_less);
}

ConvexPolygon convex_hull(std::vector<Point2> points) {
    if (points.size() < 3) throw DegenerateHull("convex hull needs at least three points");
    std::sort(points.begin(), points.end(), lex_less);
    std::vector<Point2> hull;
    sorted_hull(points, hull);
    if (hull.size() < 3) throw DegenerateHull("all points are collinear");
    return {std::move(hull)};
}

double signed_area(const std::vector<Point2> &ring) {
    double a = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) a += cross(ring[i], ring[(i + 1) % n]);
    return 0.5 * a;
}

double polygon_area(const ConvexPolygon &p) { return signed_area(p.vertices); }

double circular_segment_area(double theta, double radius) {
    const double t = std::abs(theta);
    double v;
    if (t < 1e-2) {
        const double t2 = t * t;
        v = t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0)));
    } else {
        v = t - std::sin(t);
    }
    return std::copysign(0.5 * radius * radius * v, theta);
}

double arcpolygon_area(const ArcPolygon &p) {
    double a = 0.0;
    for (const auto &piece : p.pieces) {
        const Point2 s = piece_start(piece), e = piece_end(piece);
        a += 0.5 * cross(s, e);
        if (const auto *arc = std::get_if<ArcSegment>(&piece)) a += circular_segment_area(arc->sweep(), arc->radius);
    }
    return a;
}

double diameter(const std::vector<Point2> &points) {
    if (points.size() < 2) throw std::invalid_argument("diameter needs at least two points");
    std::vector<Point2> cand;
    try {
        cand = convex_hull(points).vertices;
    } catch (const DegenerateHull &) {
        cand = points;
    }
    double best = 0.0;
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i + 1; j < cand.size(); ++j) best = std::max(best, norm2(cand[i] - cand[j]));
    return std::sqrt(best);
}

namespace {

bool on_segment_param(double t) { return t >= -Tolerance::predicate && t <= 1.0 + Tolerance::predicate; }

Intersection seg_seg(const Segment &s, const Segment &u) {
    const Point2 r = s.b - s.a, q = u.b - u.a;
    const double den = cross(r, q);
    if (std::abs(den) <= Tolerance::predicate * norm(r) * norm(q)) return {};
    const double t = cross(u.a - s.a, q) / den;
    const double v = cross(u.a - s.a, r) / den;
    if (!on_segment_param(t) || !on_segment_param(v)) return {};
    return {{s.a + r * t}, false};
}

Intersection seg_arc(const Segment &s, const ArcSegment &c) {
    const Point2 d = s.b - s.a, w = s.a - c.center;
    const double a = dot(d, d), b = 2.0 * dot(w, d), cc = dot(w, w) - c.radius * c.radius;
    const double disc = b * b - 4.0 * a * cc;
    const double scale = Tolerance::predicate * std::max(1.0, b * b);
    Intersection out;
    auto keep = [&](double t) {
        if (!on_segment_param(t)) return;
        const Point2 p = s.a + d * t;
        if (c.contains_angle(angle_of(p - c.center), 1e-9)) out.points.push_back(p);
    };
    if (std::abs(disc) <= scale) {
        out.tangent = true;
        keep(-b / (2.0 * a));
        if (out.points.empty()) out.tangent = false;
        return out;
    }
    if (disc < 0) return out;
    const double sq = std::sqrt(disc);
    keep((-b - sq) / (2.0 * a));
    keep((-b + sq) / (2.0 * a));
    return out;
}

Intersection arc_arc(const ArcSegment &p, const ArcSegment &q) {
    const Point2 dc = q.center - p.center;
    const double d = norm(dc);
    Intersection out;
    if (d <= Tolerance::predicate) return out;
    const double r1 = p.radius, r2 = q.radius;
    const double tol = Tolerance::predicate * std::max(1.0, d);
    auto keep = [&](Point2 x) {
        if (p.contains_angle(angle_of(x - p.center), 1e-9) && q.contains_angle(angle_of(x - q.center), 1e-9))
            out.points.push_back(x);
    };
    if (std::abs(d - (r1 + r2)) <= tol || std::abs(d - std::abs(r1 - r2)) <= tol) {
        const Point2 dir = dc / d;
        const double sgn = (std::abs(d - (r1 + r2)) <= tol || r1 > r2) ? 1.0 : -1.0;
        keep(p.center + dir * (sgn * r1));
        out.tangent = !out.points.empty();
        return out;
    }
    if (d > r1 + r2 || d < std::abs(r1 - r2)) return out;
    const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
    const Point2 m = p.center + dc * (a / d);
    const Point2 off = perp(dc) * (h / d);
    keep(m + off);
    keep(m - off);
    return out;
}

}  // namespace

Intersection intersect(const Piece &a, const Piece &b) {
    Intersection r;
    if (const auto *sa = std::get_if<Segment>(&a)) {
        if (const auto *sb = std::get_if<Segment>(&b)) r = seg_seg(*sa, *sb);
        else r = seg_arc(*sa, std::get<ArcSegment>(b));
    } else {
        const auto &ca = std::get<ArcSegment>(a);
        if (const auto *sb = std::get_if<Segment>(&b)) r = seg_arc(*sb, ca);
        else r = arc_arc(ca, std::get<ArcSegment>(b));
    }
    std::sort(r.points.begin(), r.points.end(), lex_less);
    return r;
}

double signed_distance(const ConvexPolygon &poly, Point2 p) {
    const auto &v = poly.vertices;
    double worst = -1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 e = v[(i + 1) % v.size()] - v[i];
        const double len = norm(e);
        if (len == 0.0) continue;
        worst = std::max(worst, cross(e, p - v[i]) / -len);
    }
    return worst;
}

bool contains(const ConvexPolygon &poly, Point2 p, double slack) { return signed_distance(poly, p) <= slack; }

}  // namespace lebesgue::geom
