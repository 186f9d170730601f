#include <doctest.h>

#include "lebesgue/bounds.hpp"

using namespace lebesgue;
using namespace lebesgue::bounds;
using geom::Point2;
using geom::pi;

namespace {

double corner_angle(char letter) { return geom::deg2rad(180.0 + 60.0 * (letter - 'A')); }

// Regular hexagon clipped by the two cut half planes, by successive
// Sutherland-Hodgman passes, then the shoelace formula.
double clipped_area(double sigma) {
    std::vector<Point2> ring;
    for (int k = 0; k < 6; ++k) ring.push_back(geom::unit(k * pi / 3) / std::sqrt(3.0));
    for (char c : {'E', 'C'}) {
        const Point2 n = geom::unit(corner_angle(c) - sigma);
        std::vector<Point2> out;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const Point2 a = ring[i], b = ring[(i + 1) % ring.size()];
            const double da = geom::dot(a, n) - 0.5, db = geom::dot(b, n) - 0.5;
            if (da <= 0) out.push_back(a);
            if ((da < 0) != (db < 0)) out.push_back(a + (b - a) * (da / (da - db)));
        }
        ring = out;
    }
    return geom::signed_area(ring);
}

// Grid count of a region's membership test over the box of its boundary.
double grid_area(const RemovableRegion &r, int n) {
    const auto pts = r.boundary.sample(200);
    Point2 lo = pts.front(), hi = pts.front();
    for (auto p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const double hx = (hi.x - lo.x) / n, hy = (hi.y - lo.y) / n;
    long hits = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hits += r.contains({lo.x + (i + 0.5) * hx, lo.y + (j + 0.5) * hy}) ? 1 : 0;
    return hits * hx * hy;
}

}  // namespace

TEST_CASE("hexagon and cut areas") {
    CHECK(std::abs(pal_hexagon_area() - 0.86602540) < 1e-8);
    CHECK(std::abs(pal_cut_area(0.0) - (2.0 - 2.0 / std::sqrt(3.0))) <= 1e-12);
    CHECK(std::abs(pal_cut_area(0.0) - 0.84529946) < 1e-8);
    for (double deg : {0.0, 0.5, 1.0, 3.0, 7.5})
        CHECK(pal_cut_area(geom::deg2rad(deg)) == doctest::Approx(clipped_area(geom::deg2rad(deg))).epsilon(1e-13));
    const Real s = Real(1) / 100;
    CHECK(abs(pal_cut_area_extended(s) - Real(pal_cut_area(0.01))) < Real(1e-15));
}

TEST_CASE("labelled frame") {
    for (double deg : {0.0, 0.52, 2.0}) {
        const double sigma = geom::deg2rad(deg);
        const auto f = labeled_frame(sigma);
        for (char c = 'A'; c <= 'F'; ++c) {
            const std::string L(1, c);
            const Point2 n = geom::unit(corner_angle(c) - sigma);
            CHECK(geom::dist(f.at(L + "1"), geom::unit(corner_angle(c)) / std::sqrt(3.0)) < 1e-15);
            for (const char *sfx : {"2", "3"}) {
                const Point2 p = f.at(L + sfx);
                CHECK(geom::dot(p, n) == doctest::Approx(0.5).epsilon(1e-14));
                double side = -1;
                for (int k = 0; k < 6; ++k) side = std::max(side, geom::dot(p, geom::unit(pi / 6 + k * pi / 3)));
                CHECK(side == doctest::Approx(0.5).epsilon(1e-14));
            }
        }
        CHECK(geom::dist(f.cutNormalE, geom::unit(pi / 3 - sigma)) < 1e-15);
        CHECK_THROWS(f.at("nope"));
    }
}

TEST_CASE("critical pentagon has constant width") {
    for (double deg : {0.0, 0.52, 1.5}) {
        const auto p = critical_pentagon(geom::deg2rad(deg));
        REQUIRE(p.vertices.size() == 5);
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(geom::dist(p.vertices[k], p.vertices[(k + 1) % 5]) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Sprague and Hansen values") {
    CHECK(std::abs(cover_area_basic(0.0) - 0.844137708435197) <= 1e-9);
    CHECK(std::abs(cover_area_basic(0.0, Precision::extended) - kSprague) <= 1e-14);
    const double a2 = static_cast<double>(hansen_area(2)), a3 = static_cast<double>(hansen_area(3));
    CHECK(a2 == doctest::Approx(1.8738e-11).epsilon(1e-3).scale(0));
    CHECK(a3 == doctest::Approx(4.2270e-21).epsilon(1e-3).scale(0));
    CHECK((kSprague - kHansen) == doctest::Approx(a2).epsilon(1e-3));
    CHECK(hansen_area_double(2) == doctest::Approx(a2).epsilon(1e-6));
    CHECK(hansen_x_sequence_double(2) == doctest::Approx(static_cast<double>(hansen_x_sequence(2))).epsilon(1e-14));
    CHECK_THROWS(hansen_area(0));
}

TEST_CASE("region areas match a grid count of their membership tests") {
    const double sigma = geom::deg2rad(2.0);
    const auto con = build_construction(sigma, true, false);
    for (const auto &r : con.regions) {
        INFO(to_string(r.name));
        REQUIRE_FALSE(r.boundary.pieces.empty());
        CHECK(geom::arcpolygon_area(r.boundary) == doctest::Approx(r.area).epsilon(1e-9));
        const double g = grid_area(r, 600);
        CHECK(g == doctest::Approx(r.area).epsilon(0.02));
    }
}

TEST_CASE("totals are the hexagon minus the regions") {
    for (double deg : {0.1, 0.52, 1.0, 2.0}) {
        const double s = geom::deg2rad(deg);
        const auto basic = build_construction(s, false, true);
        double sum = pal_hexagon_area();
        for (const auto &r : basic.regions) sum -= r.area;
        CHECK(basic.area == doctest::Approx(sum).epsilon(1e-14));
        CHECK(basic.area == doctest::Approx(cover_area_basic(s)).epsilon(1e-13));
        const auto refl = build_construction(s, true, true);
        CHECK(refl.area == doctest::Approx(cover_area_reflected(s, true)).epsilon(1e-13));
        CHECK(refl.area < basic.area);
        CHECK(cover_area_reflected(s, false) <= cover_area_reflected(s, true));
        CHECK(cover_area_reflected(s, true, Precision::extended) == doctest::Approx(refl.area).epsilon(1e-13));
    }
}

TEST_CASE("the reflected cover beats the Hansen bound for small slants") {
    CHECK(cover_area_reflected(geom::deg2rad(0.52), true) < kHansen);
    const auto m = minimize_cover(0.0, 2.0, 0.05);
    CHECK(m.area < kHansen);
    CHECK(m.area <= cover_area_reflected(geom::deg2rad(m.sigmaDegrees), true) + 1e-15);
    const auto rows = scan_cover(0.0, 1.0, 0.25);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].coverAreaReflected == rows[0].coverAreaBasic);
}

TEST_CASE("overlap detection") {
    const double s = geom::deg2rad(1.0);
    auto regions = build_construction(s, true, true).regions;
    CHECK_NOTHROW(assert_disjoint(regions));
    regions.push_back(regions[3]);
    CHECK_THROWS_AS(assert_disjoint(regions), RegionOverlap);
    CHECK_THROWS_AS(region_XYZW(geom::deg2rad(10.0), true), ConstructionError);
    CHECK_THROWS_AS(region_XYZW(0.0, true), ConstructionError);
}

TEST_CASE("audit on the classic five shapes") {
    const auto con = build_construction(geom::deg2rad(0.52), true, true);
    const auto pool = widthcurves::classic_five();
    const auto clean = monte_carlo_region_audit(con, pool, 32);
    CHECK(clean.shapesChecked == 5);
    CHECK(clean.violations.empty());
    const auto inflated = monte_carlo_region_audit(con, pool, 32, 1.5);
    CHECK_FALSE(inflated.violations.empty());
}
