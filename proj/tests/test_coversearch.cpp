#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "lebesgue/bounds.hpp"
#include "lebesgue/coversearch.hpp"

using namespace lebesgue;
using namespace lebesgue::coversearch;

namespace {

std::vector<ConstantWidthShape> some_shapes(std::mt19937_64 &rng, int count) {
    std::vector<ConstantWidthShape> out;
    const int ns[] = {3, 5, 7};
    for (int i = 0; i < count; ++i) {
        const int n = ns[std::uniform_int_distribution<int>(0, 2)(rng)];
        out.push_back(n == 3 ? widthcurves::regular_reuleaux(3)
                             : widthcurves::build_reuleaux(widthcurves::random_spec(n, rng, 200000, 20.0)));
    }
    return out;
}

// Straight enumeration written independently of the library oracle.
double brute_min(const std::vector<PreparedShape> &ps) {
    double best = 1e9;
    std::vector<int> idx(ps.size(), 0);
    while (true) {
        std::vector<geom::Point2> all;
        for (std::size_t s = 0; s < ps.size(); ++s) {
            const auto &p = ps[s].points[static_cast<std::size_t>(idx[s])];
            all.insert(all.end(), p.begin(), p.end());
        }
        best = std::min(best, geom::polygon_area(geom::convex_hull(all)));
        std::size_t k = 0;
        while (k < ps.size() && ++idx[k] == static_cast<int>(ps[k].points.size())) idx[k++] = 0;
        if (k == ps.size()) break;
    }
    return best;
}

}  // namespace

TEST_CASE("prepared placements are admissible and distinct") {
    const auto hex = ParallelHexagon::regular();
    const PalCut cut{geom::deg2rad(1.0)};
    for (const auto &s : widthcurves::classic_five()) {
        const auto p = prepare_shape(s, hex, cut, 16);
        REQUIRE_FALSE(p.placements.empty());
        CHECK(p.points.size() == p.placements.size());
        for (std::size_t i = 0; i < p.points.size(); ++i) {
            CHECK(std::is_sorted(p.points[i].begin(), p.points[i].end(), geom::lex_less));
            CHECK(hexfit::admissible(p.placements[i], s, hex, cut));
        }
    }
    // The disk is the same set in every fitted position.
    CHECK(prepare_shape(widthcurves::circle(), hex, std::nullopt, 16).placements.size() == 1);
}

TEST_CASE("search equals the exhaustive oracle on small instances") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ang(50.0, 70.0), sl(0.0, 3.0);
    for (int trial = 0; trial < 12; ++trial) {
        SearchProblem prob;
        prob.shapes = some_shapes(rng, 1 + trial % 3);
        prob.hex.angleA = geom::deg2rad(ang(rng));
        prob.hex.angleB = geom::deg2rad(ang(rng));
        if (trial % 2 == 0) prob.cut = PalCut{geom::deg2rad(sl(rng))};
        prob.segmentsPerArc = 12;
        std::vector<PreparedShape> ps;
        try {
            ps = prepare(prob);
        } catch (const InfeasibleShape &) {
            continue;
        }
        const auto fast = min_cover_area(ps);
        const auto slow = exhaustive_oracle(ps);
        CHECK(fast.area == slow.area);
        CHECK(fast.lowerBoundCertified);
        CHECK(fast.area == doctest::Approx(brute_min(ps)).epsilon(1e-12));
        CHECK(union_area(ps, fast.choice) == fast.area);
    }
}

TEST_CASE("oracle refuses large instances") {
    std::mt19937_64 rng(1);
    SearchProblem prob;
    prob.shapes = some_shapes(rng, 4);
    CHECK_THROWS_AS(exhaustive_oracle(prob), std::invalid_argument);
}

TEST_CASE("threads do not change the optimum") {
    std::mt19937_64 rng(5);
    SearchProblem prob;
    prob.shapes = some_shapes(rng, 5);
    prob.segmentsPerArc = 12;
    const auto ps = prepare(prob);
    SearchOptions two;
    two.threads = 2;
    CHECK(min_cover_area(ps).area == min_cover_area(ps, two).area);
}

TEST_CASE("budget exhaustion and checkpoint resume") {
    std::mt19937_64 rng(8);
    SearchProblem prob;
    prob.shapes = some_shapes(rng, 6);
    prob.segmentsPerArc = 12;
    const auto ps = prepare(prob);
    const auto full = min_cover_area(ps);
    REQUIRE(full.lowerBoundCertified);
    REQUIRE(full.nodes > 20);

    const auto path = (std::filesystem::temp_directory_path() / "lebesgue_ckpt_test.json").string();
    std::remove(path.c_str());
    SearchOptions cut;
    cut.budget = full.nodes / 3;
    cut.checkpointPath = path;
    cut.checkpointEvery = 5;
    const auto partial = min_cover_area(ps, cut);
    CHECK_FALSE(partial.lowerBoundCertified);
    CHECK(std::filesystem::exists(path));

    SearchOptions resume;
    resume.checkpointPath = path;
    resume.resume = true;
    const auto done = min_cover_area(ps, resume);
    CHECK(done.lowerBoundCertified);
    CHECK(done.area == full.area);
    CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("incremental bound grows and stays below the best known cover") {
    const auto pool = widthcurves::random_pool(20, 3);
    const auto r = incremental_lower_bound(pool, ParallelHexagon::regular(), std::nullopt, 10, 1000000000ULL, 16);
    REQUIRE_FALSE(r.steps.empty());
    CHECK_FALSE(r.truncated);
    CHECK(r.poolIndices.size() == r.steps.size());
    CHECK(r.last.chosen.size() == r.steps.size());
    for (std::size_t i = 1; i < r.steps.size(); ++i) CHECK(r.steps[i].area >= r.steps[i - 1].area);
    CHECK(r.steps.back().area < bounds::kHansen);
    CHECK(r.steps.back().area > 0.83);
}

TEST_CASE("scans and their tables") {
    const auto pool = widthcurves::random_pool(8, 1);
    const auto hex = scan_hexagons({{60.0, 60.0}}, pool, 5, 1000000000ULL, 12);
    REQUIRE(hex.size() == 1);
    CHECK(hex_rows_csv(hex).rfind("angle_a_deg,angle_b_deg,lower_bound,certified\n", 0) == 0);
    const auto sl = scan_slant({0.0, 1.0}, pool, 5, 1000000000ULL, 12);
    REQUIRE(sl.size() == 2);
    CHECK(slant_rows_csv(sl).rfind("sigma_deg,lower_bound,certified\n", 0) == 0);
}

TEST_CASE("cutting corners can only make a fixed set harder to cover") {
    SearchProblem prob;
    prob.shapes = {widthcurves::regular_reuleaux(3), widthcurves::regular_reuleaux(5), widthcurves::regular_reuleaux(7)};
    prob.segmentsPerArc = 16;
    const double open = min_cover_area(prob).area;
    for (double deg : {0.0, 1.0, 2.0}) {
        prob.cut = PalCut{geom::deg2rad(deg)};
        CHECK(min_cover_area(prob).area >= open);
    }
}
