#include <doctest.h>

#include <random>

#include "lebesgue/hexfit.hpp"

using namespace lebesgue;
using namespace lebesgue::hexfit;
using geom::pi;

namespace {

ParallelHexagon random_hexagon(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> a(geom::deg2rad(45.0), geom::deg2rad(75.0));
    std::uniform_real_distribution<double> o(0.0, geom::two_pi);
    ParallelHexagon h;
    h.angleA = a(rng);
    h.angleB = a(rng);
    h.orientation = o(rng);
    return h;
}

// Independent containment check: every sampled boundary point of the placed
// shape must satisfy all six slab inequalities of the hexagon.
double slab_excess(const ConstantWidthShape &s, const Placement &pl, const ParallelHexagon &hex) {
    double worst = -1.0;
    for (auto p : placed_points(s, pl, 200))
        for (auto n : hex.normals()) worst = std::max(worst, std::abs(geom::dot(p, n)) - 0.5);
    return worst;
}

}  // namespace

TEST_CASE("regular hexagon geometry") {
    const auto hex = ParallelHexagon::regular();
    const auto v = hex.vertices();
    for (int k = 0; k < 6; ++k) {
        CHECK(geom::norm(v[k]) == doctest::Approx(1.0 / std::sqrt(3.0)));
        CHECK(geom::angle_of(v[k]) == doctest::Approx(geom::angle_of(geom::unit(k * pi / 3))).epsilon(1e-12));
    }
    CHECK(geom::signed_area({v.begin(), v.end()}) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK_THROWS_AS((ParallelHexagon{2.0, 1.5, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("cut normals sit next to corners E and C") {
    const auto hex = ParallelHexagon::regular();
    const auto n = PalCut{0.0}.normals(hex);
    CHECK(geom::angle_of(n[0]) == doctest::Approx(pi / 3));
    CHECK(geom::wrap_angle(geom::angle_of(n[1])) == doctest::Approx(5 * pi / 3));
    const auto s = PalCut{geom::deg2rad(2.0)}.normals(hex);
    CHECK(geom::angle_of(s[0]) == doctest::Approx(pi / 3 - geom::deg2rad(2.0)));
    CHECK_THROWS(PalCut{-0.1}.validate());
}

TEST_CASE("t is antisymmetric and Lipschitz") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> th(0.0, geom::two_pi);
    for (int i = 0; i < 6; ++i) {
        const auto hex = random_hexagon(rng);
        const auto s = widthcurves::build_reuleaux(widthcurves::random_spec(5 + 2 * (i % 3), rng));
        for (int k = 0; k < 300; ++k) {
            const double t = th(rng);
            CHECK(std::abs(t_value(s, hex, t) + t_value(s, hex, t + pi)) <= 1e-12);
        }
        CHECK(sampled_lipschitz(s, hex) <= kLipschitz);
    }
}

TEST_CASE("circle fits everywhere, regular shapes have known root counts") {
    const auto hex = ParallelHexagon::regular();
    CHECK(find_roots(widthcurves::circle(), hex).alwaysFits);
    CHECK(find_roots(widthcurves::regular_reuleaux(3), hex).roots.size() == 6);
    CHECK(find_roots(widthcurves::regular_reuleaux(5), hex).roots.size() == 30);
}

TEST_CASE("symmetric pentagon root counts") {
    const auto hex = ParallelHexagon::regular();
    const std::pair<double, std::size_t> cases[] = {{35.0, 18}, {36.0, 30}, {37.0, 6}};
    for (auto [deg, count] : cases) {
        const double v = geom::deg2rad(deg);
        const auto s = widthcurves::build_reuleaux({5, {v, v}});
        CHECK(find_roots(s, hex).roots.size() == count);
    }
}

TEST_CASE("every root gives a contained placement") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 8; ++i) {
        const auto hex = random_hexagon(rng);
        const auto s = widthcurves::build_reuleaux(widthcurves::random_spec(5 + 2 * (i % 3), rng));
        for (bool refl : {false, true}) {
            const auto r = find_roots(s, hex, 1e-12, refl);
            CHECK(r.roots.size() >= 2);
            CHECK(r.roots.size() % 2 == 0);
            for (double th : r.roots) {
                CHECK(std::abs(t_value(s, hex, th, refl)) <= 1e-12 * kLipschitz + 1e-15);
                const auto pl = placement_from_root(s, hex, th, refl);
                CHECK(verify_containment(s, pl, hex, std::nullopt) <= 1e-9);
                CHECK(slab_excess(s, pl, hex) <= 1e-9);
            }
        }
    }
}

TEST_CASE("placement transform") {
    const auto s = widthcurves::regular_reuleaux(3);
    Placement pl{pi / 2, {1.0, 2.0}, true};
    const auto p = apply(pl, s, s.centerPoint + geom::Point2{1.0, 0.5});
    CHECK(p.x == doctest::Approx(1.5));
    CHECK(p.y == doctest::Approx(3.0));
    // Support of the placed shape equals the support of the raw shape in the
    // pulled-back direction.
    Placement q{0.7, {0.1, -0.2}, false};
    for (int k = 0; k < 12; ++k) {
        const double psi = k * pi / 6;
        const double expected = widthcurves::support(s, psi - 0.7) + geom::dot(q.translation, geom::unit(psi));
        CHECK(placed_support(s, q, psi) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("admissibility with a cut") {
    const auto hex = ParallelHexagon::regular();
    const PalCut cut{0.0};
    const auto disk = widthcurves::circle();
    const Placement centred{0.0, {0.0, 0.0}, false};
    CHECK(admissible(centred, disk, hex, cut));
    CHECK(verify_containment(disk, centred, hex, cut) <= 1e-9);
    const Placement shifted{0.0, geom::unit(pi / 3) * 0.05, false};
    CHECK_FALSE(admissible(shifted, disk, hex, cut));
    for (const auto &s : widthcurves::classic_five()) {
        const auto all = enumerate_placements(s, hex, true);
        const auto ok = admissible_placements(s, hex, cut, true);
        CHECK(ok.size() <= all.size());
        CHECK_FALSE(ok.empty());
        for (const auto &pl : ok) CHECK(verify_containment(s, pl, hex, cut) <= 1e-9);
    }
}
