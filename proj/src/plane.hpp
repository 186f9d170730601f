#pragma once

// Scalar-generic plane helpers shared by the bound constructions. T is either
// double or the 50-digit software float.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "lebesgue/geom.hpp"

namespace lebesgue::plane {

template <class T>
struct V {
    T x = 0;
    T y = 0;

    friend V operator+(const V &a, const V &b) { return {a.x + b.x, a.y + b.y}; }
    friend V operator-(const V &a, const V &b) { return {a.x - b.x, a.y - b.y}; }
    friend V operator-(const V &a) { return {-a.x, -a.y}; }
    friend V operator*(const V &a, const T &s) { return {a.x * s, a.y * s}; }
    friend V operator*(const T &s, const V &a) { return {a.x * s, a.y * s}; }
    friend V operator/(const V &a, const T &s) { return {a.x / s, a.y / s}; }
};

template <class T>
T dot(const V<T> &a, const V<T> &b) { return a.x * b.x + a.y * b.y; }
template <class T>
T cross(const V<T> &a, const V<T> &b) { return a.x * b.y - a.y * b.x; }
template <class T>
T norm(const V<T> &a) {
    using std::sqrt;
    return sqrt(dot(a, a));
}
template <class T>
T dist(const V<T> &a, const V<T> &b) { return norm(a - b); }

template <class T>
T pi() { return boost::math::constants::pi<T>(); }

template <class T>
T deg(const T &d) { return d * pi<T>() / 180; }

template <class T>
V<T> unit(const T &angle) {
    using std::cos;
    using std::sin;
    return {cos(angle), sin(angle)};
}

template <class T>
V<T> unit_deg(const T &degrees) { return unit<T>(deg<T>(degrees)); }

template <class T>
geom::Point2 to_point(const V<T> &v) { return {static_cast<double>(v.x), static_cast<double>(v.y)}; }

template <class T>
V<T> from_point(geom::Point2 p) { return {T(p.x), T(p.y)}; }

// Intersection of the lines p . n1 = c1 and p . n2 = c2.
template <class T>
V<T> solve_lines(const V<T> &n1, const T &c1, const V<T> &n2, const T &c2) {
    const T det = cross(n1, n2);
    return {(c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det};
}

template <class T>
V<T> reflect(const V<T> &p, const V<T> &axisDir) {
    return axisDir * (2 * dot(p, axisDir)) - p;
}

// Point on the segment a->b at distance r from c, taking the root further
// along the segment.
template <class T>
std::optional<V<T>> on_segment_at(const V<T> &a, const V<T> &b, const V<T> &c, const T &r = T(1)) {
    using std::sqrt;
    const V<T> d = b - a, w = a - c;
    const T qa = dot(d, d), qb = 2 * dot(d, w), qc = dot(w, w) - r * r;
    const T disc = qb * qb - 4 * qa * qc;
    if (disc < 0) return std::nullopt;
    const T t = (-qb + sqrt(disc)) / (2 * qa);
    return a + d * t;
}

// Intersections of the line through a with direction d and the circle
// (c, r), as line parameters (smaller first).
template <class T>
std::optional<std::pair<T, T>> line_circle(const V<T> &a, const V<T> &d, const V<T> &c, const T &r = T(1)) {
    using std::sqrt;
    const V<T> w = a - c;
    const T qa = dot(d, d), qb = 2 * dot(d, w), qc = dot(w, w) - r * r;
    T disc = qb * qb - 4 * qa * qc;
    if (disc < 0) return std::nullopt;
    const T s = sqrt(disc);
    return std::make_pair((-qb - s) / (2 * qa), (-qb + s) / (2 * qa));
}

// Intersection of circles (c1, r1) and (c2, r2) closest to near.
template <class T>
std::optional<V<T>> circle_circle(const V<T> &c1, const T &r1, const V<T> &c2, const T &r2, const V<T> &near) {
    using std::abs;
    using std::sqrt;
    const T d = dist(c1, c2);
    if (d == 0 || d > r1 + r2 || d < abs(r1 - r2)) return std::nullopt;
    const T a = (r1 * r1 - r2 * r2 + d * d) / (2 * d);
    T h2 = r1 * r1 - a * a;
    if (h2 < 0) h2 = 0;
    const T h = sqrt(h2);
    const V<T> e = (c2 - c1) / d;
    const V<T> m = c1 + e * a;
    const V<T> off{-e.y * h, e.x * h};
    const V<T> p = m + off, q = m - off;
    return dist(p, near) <= dist(q, near) ? p : q;
}

template <class T>
std::optional<V<T>> unit_circles(const V<T> &c1, const V<T> &c2, const V<T> &near) {
    return circle_circle<T>(c1, T(1), c2, T(1), near);
}

// r^2 (t - sin t) / 2, keeping full relative accuracy for tiny |t|.
template <class T>
T segment_area(const T &t, const T &r = T(1)) {
    using std::abs;
    using std::sin;
    if (abs(t) > T(1) / 100) return r * r * (t - sin(t)) / 2;
    // t - sin t = t^3/3! - t^5/5! + ...
    const T t2 = t * t;
    T term = t * t2 / 6, sum = 0;
    for (int k = 1; k < 60; ++k) {
        sum += term;
        term = -term * t2 / T((2 * k + 2) * (2 * k + 3));
        if (abs(term) <= abs(sum) * std::numeric_limits<T>::epsilon() / 4) break;
    }
    return r * r * sum / 2;
}

// Closed boundary made of straight edges and short unit-radius arcs. Edge i
// runs from pts[i] to pts[i+1]; when centers[i] is set it is the short arc
// about that centre.
template <class T>
struct Loop {
    std::vector<V<T>> pts;
    std::vector<std::optional<V<T>>> centers;

    void line_to(const V<T> &p) {
        pts.push_back(p);
        centers.push_back(std::nullopt);
    }
    void arc_to(const V<T> &p, const V<T> &c) {
        pts.push_back(p);
        centers.push_back(c);
    }
    // Signed sweep of edge i.
    T sweep(std::size_t i) const {
        using std::atan2;
        const V<T> &c = *centers[i];
        const V<T> a = pts[i] - c, b = pts[(i + 1) % pts.size()] - c;
        return atan2(cross(a, b), dot(a, b));
    }
    // Signed area. The shoelace sum is taken relative to the first point so
    // tiny loops far from the origin keep their digits.
    T signed_area() const {
        const std::size_t n = pts.size();
        T s = 0;
        for (std::size_t i = 1; i + 1 < n; ++i) s += cross(pts[i] - pts[0], pts[i + 1] - pts[0]);
        s /= 2;
        for (std::size_t i = 0; i < n; ++i) {
            if (!centers[i]) continue;
            const T r = dist(pts[i], *centers[i]);
            s += segment_area(sweep(i), r);
        }
        return s;
    }
    T area() const {
        using std::abs;
        return abs(signed_area());
    }

    geom::ArcPolygon to_arcpolygon() const {
        using std::atan2;
        geom::ArcPolygon out;
        const std::size_t n = pts.size();
        const T a = signed_area();
        // Emit counterclockwise.
        const bool flip = a < 0;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t i = flip ? (n - k) % n : k;
            std::size_t j = flip ? (i + n - 1) % n : (i + 1) % n;
            const std::size_t edge = flip ? j : i;
            const geom::Point2 p = to_point(pts[i]), q = to_point(pts[j]);
            if (!centers[edge]) {
                out.pieces.emplace_back(geom::Segment{p, q});
            } else {
                const geom::Point2 c = to_point(*centers[edge]);
                const double sw = static_cast<double>(sweep(edge)) * (flip ? -1.0 : 1.0);
                const double r = geom::dist(p, c);
                const double a0 = std::atan2(p.y - c.y, p.x - c.x);
                out.pieces.emplace_back(geom::ArcSegment{c, r, a0, a0 + sw, sw > 0});
            }
        }
        return out;
    }
};

enum Letter { A = 0, B, C, D, E, F };

// Regular hexagon with apothem 1/2; corner X sits at 180 + 60 k degrees for
// letters A..F. c2 and c3 are the marks where the line p . u(phi - sigma) =
// 1/2 meets the sides towards the next and the previous letter.
template <class T>
struct HexFrame {
    T sigma;  // radians
    std::array<V<T>, 6> c1, c2, c3, cut;

    explicit HexFrame(const T &s) : sigma(s) {
        using std::sqrt;
        const T half = T(1) / 2;
        const T R = 1 / sqrt(T(3));
        const T thirty = deg<T>(T(30));
        for (int i = 0; i < 6; ++i) {
            const T phi = deg<T>(T(180 + 60 * i));
            c1[i] = unit<T>(phi) * R;
            cut[i] = unit<T>(phi - sigma);
            c2[i] = solve_lines<T>(cut[i], half, unit<T>(phi + thirty), half);
            c3[i] = solve_lines<T>(cut[i], half, unit<T>(phi - thirty), half);
        }
    }
};

}  // namespace lebesgue::plane
