#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "lebesgue/widthcurves.hpp"

using namespace lebesgue;
using namespace lebesgue::widthcurves;
using geom::pi;

namespace {

// Regular Reuleaux n-gon of width one: regular polygon whose longest
// diagonal is one, plus n circular caps of radius one and angle pi/n.
double regular_area_oracle(int n) {
    const double R = 0.5 / std::cos(pi / (2.0 * n));
    const double poly = 0.5 * n * R * R * std::sin(2 * pi / n);
    const double cap = 0.5 * (pi / n - std::sin(pi / n));
    return poly + n * cap;
}

std::vector<ConstantWidthShape> sample_shapes(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ConstantWidthShape> out;
    const int ns[] = {3, 5, 7, 9};
    for (int i = 0; i < count; ++i) {
        const int n = ns[i % 4];
        out.push_back(n == 3 ? regular_reuleaux(3) : build_reuleaux(random_spec(n, rng)));
    }
    return out;
}

}  // namespace

TEST_CASE("regular Reuleaux areas") {
    for (int n : {3, 5, 7, 9, 11})
        CHECK(geom::arcpolygon_area(regular_reuleaux(n).boundary) ==
              doctest::Approx(regular_area_oracle(n)).epsilon(1e-13));
}

TEST_CASE("star vertices are one apart") {
    for (const auto &s : sample_shapes(24, 11)) {
        const auto &v = s.vertices;
        for (std::size_t k = 0; k < v.size(); ++k)
            CHECK(geom::dist(v[k], v[(k + 1) % v.size()]) == doctest::Approx(1.0).epsilon(1e-12));
        double sum = 0.0;
        for (double a : s.angles) sum += a;
        CHECK(sum == doctest::Approx(pi).epsilon(1e-12));
    }
}

TEST_CASE("constant width and offset antisymmetry") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0.0, geom::two_pi);
    auto shapes = sample_shapes(16, 5);
    shapes.push_back(circle());
    for (const auto &s : shapes)
        for (int k = 0; k < 200; ++k) {
            const double t = th(rng);
            CHECK(std::abs(support(s, t) + support(s, t + pi) - 1.0) <= 1e-12);
            CHECK(std::abs(offset(s, t) + offset(s, t + pi)) <= 1e-12);
        }
}

TEST_CASE("support agrees with the sampled boundary") {
    for (const auto &s : sample_shapes(8, 9)) {
        const auto pts = s.boundary.sample(400);
        for (int k = 0; k < 64; ++k) {
            const double t = geom::two_pi * k / 64;
            const auto u = geom::unit(t);
            double best = -1e9;
            for (auto p : pts) best = std::max(best, geom::dot(p - s.centerPoint, u));
            CHECK(best <= support(s, t) + 1e-12);
            CHECK(best >= support(s, t) - 1e-4);
        }
    }
}

TEST_CASE("discretisation is inscribed with diameter one") {
    for (const auto &s : sample_shapes(12, 13)) {
        const auto poly = discretize(s, 32);
        CHECK(geom::diameter(poly.vertices) <= 1.0 + 1e-12);
        CHECK(geom::diameter(poly.vertices) >= 1.0 - 1e-12);  // the vertices are on the polygon
        CHECK(geom::polygon_area(poly) < geom::arcpolygon_area(s.boundary));
        CHECK(geom::polygon_area(discretize(s, 256)) > geom::polygon_area(poly));
    }
}

TEST_CASE("spec validation") {
    CHECK_FALSE(validate_spec({4, {1.0}}).empty());
    CHECK(validate_spec({4, {1.0}}).front().kind == SpecViolation::Kind::parity);
    CHECK(validate_spec({5, {0.5}}).front().kind == SpecViolation::Kind::count);
    CHECK_FALSE(validate_spec({5, {-0.1, 0.5}}).empty());
    CHECK(validate_spec({5, {pi / 5, pi / 5}}).empty());
    CHECK_THROWS_AS(build_reuleaux({6, {}}), InvalidSpec);
    CHECK_THROWS_AS(build_reuleaux({5, {2.0, 1.0}}), InvalidSpec);
}

TEST_CASE("random specs are valid and concentration matters") {
    std::mt19937_64 rng(21);
    double spreadLow = 0.0, spreadHigh = 0.0;
    for (int i = 0; i < 50; ++i) {
        for (int n : {5, 7, 9}) CHECK(validate_spec(random_spec(n, rng)).empty());
        const auto lo = build_reuleaux(random_spec(7, rng, 200000, 1.0));
        const auto hi = build_reuleaux(random_spec(7, rng, 200000, 500.0));
        for (double a : lo.angles) spreadLow += std::abs(a - pi / 7);
        for (double a : hi.angles) spreadHigh += std::abs(a - pi / 7);
    }
    CHECK(spreadHigh < 0.25 * spreadLow);
    CHECK_THROWS(random_spec(5, rng, 10, 0.0));
}

TEST_CASE("mirror image keeps area and flips symmetry flag only for asymmetric shapes") {
    std::mt19937_64 rng(2);
    const auto s = build_reuleaux(random_spec(5, rng));
    const auto m = mirrored(s);
    CHECK(geom::arcpolygon_area(m.boundary) == doctest::Approx(geom::arcpolygon_area(s.boundary)).epsilon(1e-13));
    CHECK(regular_reuleaux(5).bilaterallySymmetric);
}

TEST_CASE("classic and random pools") {
    const auto five = classic_five();
    REQUIRE(five.size() == 5);
    CHECK(five[0].kind == ConstantWidthShape::Kind::circle);
    const auto a = random_pool(12, 99), b = random_pool(12, 99), c = random_pool(12, 100);
    REQUIRE(a.size() == 12);
    bool differ = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].label == b[i].label);
        CHECK(a[i].vertices == b[i].vertices);
        differ = differ || !(a[i].vertices == c[i].vertices);
    }
    CHECK(differ);
}

TEST_CASE("pool files round trip") {
    const auto path = (std::filesystem::temp_directory_path() / "lebesgue_pool_test.json").string();
    const auto pool = random_pool(6, 4);
    save_pool(pool, path);
    const auto back = load_pool(path);
    REQUIRE(back.size() == pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        CHECK(back[i].label == pool[i].label);
        CHECK(geom::arcpolygon_area(back[i].boundary) ==
              doctest::Approx(geom::arcpolygon_area(pool[i].boundary)).epsilon(1e-12));
    }
    std::remove(path.c_str());
    CHECK_THROWS(load_pool(path));
}
