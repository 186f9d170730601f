#include <doctest.h>

#include <random>

#include "lebesgue/geom.hpp"
#include "lebesgue/widthcurves.hpp"

using namespace lebesgue::geom;

namespace {

// Brute-force hull area: an ordered pair (i, j) is a hull edge when every
// other point lies strictly to its left. Summing cross products over those
// edges gives twice the area.
double brute_hull_area(const std::vector<Point2> &pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            bool edge = true;
            for (std::size_t k = 0; k < pts.size() && edge; ++k)
                if (k != i && k != j && cross(pts[j] - pts[i], pts[k] - pts[i]) <= 0) edge = false;
            if (edge) a += cross(pts[i], pts[j]);
        }
    return 0.5 * a;
}

double brute_diameter(const std::vector<Point2> &pts) {
    double d = 0.0;
    for (auto p : pts)
        for (auto q : pts) d = std::max(d, dist(p, q));
    return d;
}

}  // namespace

TEST_CASE("hull of a square with interior and edge points") {
    std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}, {1, 0.25}};
    auto h = convex_hull(pts);
    CHECK(h.vertices.size() == 4);
    CHECK(polygon_area(h) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(signed_area(h.vertices) > 0);
}

TEST_CASE("degenerate hulls are rejected") {
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}}), DegenerateHull);
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), DegenerateHull);
}

TEST_CASE("hull area agrees with brute force on random clouds") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Point2> pts(5 + trial);
        for (auto &p : pts) p = {g(rng), g(rng)};
        CHECK(polygon_area(convex_hull(pts)) == doctest::Approx(brute_hull_area(pts)).epsilon(1e-12));
        std::vector<Point2> sorted = pts, out;
        std::sort(sorted.begin(), sorted.end(), lex_less);
        CHECK(sorted_hull(sorted, out) == doctest::Approx(brute_hull_area(pts)).epsilon(1e-12));
        CHECK(diameter(pts) == doctest::Approx(brute_diameter(pts)).epsilon(1e-14));
    }
}

TEST_CASE("merging sorted lists keeps the order") {
    std::vector<Point2> a{{0, 0}, {1, 2}, {3, 0}}, b{{0, 1}, {2, 2}}, out;
    merge_sorted(a, b, out);
    REQUIRE(out.size() == 5);
    CHECK(std::is_sorted(out.begin(), out.end(), lex_less));
}

TEST_CASE("circular segment area: series branch matches long double") {
    for (double t : {1e-8, 1e-5, 1e-3, 9.9e-3, 1.01e-2, 0.5, 3.0, 6.0}) {
        const long double lt = t;
        const long double ref = 0.5L * (lt - std::sin(lt));
        if (t > 1e-4) {
            CHECK(circular_segment_area(t) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-10));
        } else {
            // Direct subtraction is useless here, so compare against the cubic term.
            CHECK(circular_segment_area(t) == doctest::Approx(t * t * t / 12.0).epsilon(1e-6));
        }
        CHECK(circular_segment_area(-t) == -circular_segment_area(t));
    }
    CHECK(circular_segment_area(pi / 2, 2.0) == doctest::Approx(2.0 * (lebesgue::geom::pi / 2 - 1.0)));
}

TEST_CASE("arc polygon areas of a disk and a Reuleaux triangle") {
    const auto disk = lebesgue::widthcurves::circle();
    CHECK(arcpolygon_area(disk.boundary) == doctest::Approx(pi / 4).epsilon(1e-14));
    const auto tri = lebesgue::widthcurves::regular_reuleaux(3);
    CHECK(arcpolygon_area(tri.boundary) == doctest::Approx((pi - std::sqrt(3.0)) / 2).epsilon(1e-13));
    CHECK_NOTHROW(tri.boundary.validate());
}

TEST_CASE("arc polygon validation catches gaps and orientation") {
    ArcPolygon open{{Segment{{0, 0}, {1, 0}}, Segment{{1, 0}, {0, 1}}, Segment{{0, 1}, {0, 0.1}}}};
    CHECK_THROWS_AS(open.validate(), std::invalid_argument);
    ArcPolygon cw{{Segment{{0, 0}, {0, 1}}, Segment{{0, 1}, {1, 0}}, Segment{{1, 0}, {0, 0}}}};
    CHECK_THROWS_AS(cw.validate(), std::invalid_argument);
}

TEST_CASE("arc sweep and angle membership") {
    ArcSegment a{{0, 0}, 1.0, 0.0, pi / 2, true};
    CHECK(a.sweep() == doctest::Approx(pi / 2));
    CHECK(a.contains_angle(pi / 4));
    CHECK_FALSE(a.contains_angle(pi));
    ArcSegment b{{0, 0}, 1.0, pi / 2, 0.0, false};
    CHECK(b.sweep() == doctest::Approx(-pi / 2));
    CHECK(b.contains_angle(pi / 4));
    CHECK(dist(b.at(1.0), Point2{1, 0}) < 1e-15);
}

TEST_CASE("intersections") {
    SUBCASE("crossing segments") {
        auto r = intersect(Segment{{0, 0}, {2, 2}}, Segment{{0, 2}, {2, 0}});
        REQUIRE(r.points.size() == 1);
        CHECK(dist(r.points[0], Point2{1, 1}) < 1e-15);
    }
    SUBCASE("segment through an arc") {
        ArcSegment arc{{0, 0}, 1.0, 0.0, pi, true};
        auto r = intersect(Segment{{-2, 0.5}, {2, 0.5}}, arc);
        REQUIRE(r.points.size() == 2);
        for (auto p : r.points) CHECK(norm(p) == doctest::Approx(1.0));
        CHECK(r.points[0].x == doctest::Approx(-std::sqrt(0.75)));
    }
    SUBCASE("two unit arcs") {
        ArcSegment a{{0, 0}, 1.0, -pi / 2, pi / 2, true};
        ArcSegment b{{1, 0}, 1.0, pi / 2, 3 * pi / 2, true};
        auto r = intersect(a, b);
        REQUIRE(r.points.size() == 2);
        for (auto p : r.points) {
            CHECK(dist(p, {0, 0}) == doctest::Approx(1.0));
            CHECK(dist(p, {1, 0}) == doctest::Approx(1.0));
        }
    }
    SUBCASE("disjoint") {
        CHECK(intersect(Segment{{0, 0}, {1, 0}}, Segment{{0, 1}, {1, 1}}).points.empty());
    }
}

TEST_CASE("signed distance to a convex polygon") {
    ConvexPolygon sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    CHECK(signed_distance(sq, {0.5, 0.5}) == doctest::Approx(-0.5));
    CHECK(signed_distance(sq, {1.25, 0.5}) == doctest::Approx(0.25));
    CHECK(contains(sq, {1.0 + 1e-10, 0.5}));
    CHECK_FALSE(contains(sq, {1.0 + 1e-8, 0.5}));
}

TEST_CASE("angle helpers") {
    CHECK(wrap_angle(-pi / 2) == doctest::Approx(3 * pi / 2));
    CHECK(wrap_angle(two_pi) == 0.0);
    CHECK(rad2deg(deg2rad(37.5)) == doctest::Approx(37.5));
    CHECK(dist(rotate({1, 0}, pi / 2), Point2{0, 1}) < 1e-15);
}
