#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

namespace lebesgue::geom {

// Tolerances shared by every module.
struct Tolerance {
    static constexpr double predicate = 1e-12;
    static constexpr double containment = 1e-9;
};

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double deg2rad(double d) { return d * pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / pi; }

// Wraps an angle into [0, 2pi).
inline double wrap_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r -= two_pi;
    return r;
}

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2 &operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
    Point2 &operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
    Point2 &operator*=(double s) { x *= s; y *= s; return *this; }
    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
    friend Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
    friend Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }
    friend Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 a) { return dot(a, a); }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }
inline double angle_of(Point2 a) { return std::atan2(a.y, a.x); }
inline Point2 rotate(Point2 p, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}
inline bool lex_less(Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Segment {
    Point2 a;
    Point2 b;
};

// A circular arc traversed from startAngle to endAngle. When ccw is true the
// parameter increases, otherwise it decreases. The sweep is taken in (0, 2pi).
struct ArcSegment {
    Point2 center;
    double radius = 1.0;
    double startAngle = 0.0;
    double endAngle = 0.0;
    bool ccw = true;

    double sweep() const;  // signed: positive for ccw
    Point2 start() const { return center + unit(startAngle) * radius; }
    Point2 end() const { return center + unit(endAngle) * radius; }
    Point2 at(double fraction) const { return center + unit(startAngle + fraction * sweep()) * radius; }
    bool contains_angle(double angle, double slack = Tolerance::predicate) const;
};

using Piece = std::variant<Segment, ArcSegment>;

Point2 piece_start(const Piece &p);
Point2 piece_end(const Piece &p);

struct ArcPolygon {
    std::vector<Piece> pieces;

    // Throws std::invalid_argument when consecutive pieces do not join up.
    void validate(double tol = Tolerance::predicate) const;
    std::vector<Point2> sample(int perArc) const;
};

struct ConvexPolygon {
    std::vector<Point2> vertices;  // counterclockwise
};

class DegenerateHull : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Andrew's monotone chain. Collinear points on hull edges are dropped.
ConvexPolygon convex_hull(std::vector<Point2> points);

// Hull of points that are already sorted by lex_less. Writes the hull into
// out (counterclockwise, starting at the lexicographically smallest point)
// and returns its area. No allocation when out has enough capacity.
double sorted_hull(const std::vector<Point2> &sorted, std::vector<Point2> &out);

// Merges two lex-sorted point lists into out.
void merge_sorted(const std::vector<Point2> &a, const std::vector<Point2> &b, std::vector<Point2> &out);

double signed_area(const std::vector<Point2> &ring);
double polygon_area(const ConvexPolygon &p);

// r^2 (t - sin t) / 2 with a series for small |t| so tiny arcs keep their
// relative accuracy.
double circular_segment_area(double theta, double radius = 1.0);

double arcpolygon_area(const ArcPolygon &p);

double diameter(const std::vector<Point2> &points);

struct Intersection {
    std::vector<Point2> points;
    bool tangent = false;
};

Intersection intersect(const Piece &a, const Piece &b);

// Positive distance outside the polygon, negative inside.
double signed_distance(const ConvexPolygon &poly, Point2 p);
bool contains(const ConvexPolygon &poly, Point2 p, double slack = Tolerance::containment);

}  // namespace lebesgue::geom
