#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lebesgue/bounds.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string &name) {
    const auto p = fs::temp_directory_path() / ("lebesgue_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run(const std::string &args) {
    const std::string cmd = std::string(LEBESGUE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Minimal well-formedness: balanced element tags and a single root.
bool balanced_svg(const std::string &s) {
    if (s.find("<svg") == std::string::npos || s.rfind("</svg>") == std::string::npos) return false;
    int depth = 0;
    for (std::size_t i = 0; (i = s.find('<', i)) != std::string::npos; ++i) {
        const std::size_t end = s.find('>', i);
        if (end == std::string::npos) return false;
        const std::string tag = s.substr(i, end - i + 1);
        if (tag.rfind("<?", 0) == 0) continue;
        if (tag.rfind("</", 0) == 0) --depth;
        else if (tag[tag.size() - 2] != '/') ++depth;
        if (depth < 0) return false;
    }
    return depth == 0;
}

}  // namespace

TEST_CASE("cli: usage errors") {
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("bound --sigma") == 1);
    CHECK(run("bound --precision quad") == 1);
    CHECK(run("scan-hex --angles 100:90") == 1);
    const auto dir = scratch("usage");
    std::ofstream(dir / "empty.json") << "[]\n";
    CHECK(run("anneal --pool " + (dir / "empty.json").string()) == 1);
    CHECK(run("search --pool " + (dir / "missing.json").string()) == 1);
    CHECK(run("--help") == 0);
}

TEST_CASE("cli: bound report") {
    const auto dir = scratch("bound");
    REQUIRE(run("bound --sigma 0 --out " + dir.string()) == 0);
    const auto doc = json::parse(slurp(dir / "bound.json"));
    CHECK(std::abs(doc["totalArea"].get<double>() - lebesgue::bounds::kSprague) <= 1e-9);
    CHECK(doc["sigmaDegrees"].get<double>() == 0.0);
    CHECK(doc["regions"].size() == 5);
    CHECK(doc["regions"][0]["name"] == "cornerE");

    REQUIRE(run("bound --sigma 0.52 --out " + dir.string()) == 0);
    const auto first = slurp(dir / "bound.json");
    const auto svg = slurp(dir / "bound.svg");
    CHECK(json::parse(first)["totalArea"].get<double>() < lebesgue::bounds::kHansen);
    CHECK(json::parse(first)["convexOnly"] == true);
    CHECK(balanced_svg(svg));
    CHECK(svg.find("1 = diameter") != std::string::npos);
    REQUIRE(run("bound --sigma 0.52 --out " + dir.string()) == 0);
    CHECK(slurp(dir / "bound.json") == first);
    CHECK(slurp(dir / "bound.svg") == svg);
}

TEST_CASE("cli: invalid construction exits with 2") {
    const auto dir = scratch("invalid");
    CHECK(run("bound --sigma 12 --out " + dir.string()) == 2);
}

TEST_CASE("cli: bound scan") {
    const auto dir = scratch("scan");
    REQUIRE(run("bound --scan --from 0 --to 2 --step 0.25 --out " + dir.string()) == 0);
    const auto csv = slurp(dir / "bound_scan.csv");
    CHECK(csv.rfind("sigmaDegrees,coverAreaBasic,coverAreaReflected\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
    const auto svg = slurp(dir / "bound_scan.svg");
    CHECK(balanced_svg(svg));
    CHECK(svg.find("known upper bound") != std::string::npos);
}

TEST_CASE("cli: hansen terms") {
    const auto dir = scratch("hansen");
    REQUIRE(run("hansen --precision extended --out " + dir.string()) == 0);
    const auto doc = json::parse(slurp(dir / "hansen.json"));
    REQUIRE(doc["terms"].size() == 3);
    CHECK(std::stod(doc["terms"][1]["area"].get<std::string>()) == doctest::Approx(1.8738e-11).epsilon(1e-3).scale(0));
    REQUIRE(run("hansen --out " + dir.string()) == 0);
    CHECK(json::parse(slurp(dir / "hansen.json"))["terms"][2]["area"].get<double>() ==
          doctest::Approx(4.2270e-21).epsilon(1e-3).scale(0));
}

TEST_CASE("cli: hexagon scan with one point is deterministic") {
    const auto a = scratch("hexa"), b = scratch("hexb");
    const std::string args = "scan-hex --angles 60:60 --pool-size 8 --max-shapes 4 --segments 12 --out ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    const auto csv = slurp(a / "scan_hex.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv == slurp(b / "scan_hex.csv"));
    CHECK(slurp(a / "scan_hex.svg") == slurp(b / "scan_hex.svg"));
}

TEST_CASE("cli: slant scan") {
    const auto dir = scratch("slant");
    REQUIRE(run("scan-slant --from 0 --to 1 --step 0.5 --pool-size 8 --max-shapes 4 --segments 12 --out " +
                dir.string()) == 0);
    const auto csv = slurp(dir / "scan_slant.csv");
    CHECK(csv.rfind("sigma_deg,lower_bound,certified\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(run("scan-slant --from 1 --to 0 --out " + dir.string()) == 1);
}

TEST_CASE("cli: search budget and overlay") {
    const auto dir = scratch("search");
    CHECK(run("search --pool-size 30 --budget 5 --out " + dir.string()) == 3);
    REQUIRE(run("search --slant 1 --pool-size 30 --max-shapes 12 --segments 16 --out " + dir.string()) == 0);
    const auto search = json::parse(slurp(dir / "search.json"));
    CHECK(search["sigmaDegrees"].get<double>() == 1.0);
    CHECK(search["certified"] == true);
    CHECK(balanced_svg(slurp(dir / "search.svg")));

    const auto sj = (dir / "search.json").string();
    CHECK(run("overlay --sigma 0.5 --search " + sj + " --out " + dir.string()) == 1);
    REQUIRE(run("overlay --sigma 1 --search " + sj + " --grid 300 --out " + dir.string()) == 0);
    const auto ov = json::parse(slurp(dir / "overlay.json"));
    CHECK(ov["greenArea"].get<double>() > 0.0);
    const auto svg = slurp(dir / "overlay.svg");
    CHECK(balanced_svg(svg));
    CHECK(svg.find("#33cc33") != std::string::npos);
    REQUIRE(run("overlay --sigma 1 --search " + sj + " --grid 300 --out " + dir.string()) == 0);
    CHECK(slurp(dir / "overlay.svg") == svg);
}

TEST_CASE("cli: overlay of the construction against itself is empty") {
    const auto dir = scratch("selfdiff");
    // A hull covering the whole hexagon leaves nothing to remove.
    json doc{{"sigmaDegrees", 1.0}, {"area", 0.0}, {"hull", json::array()}};
    for (int k = 0; k < 6; ++k) {
        const double a = k * 3.14159265358979323846 / 3;
        doc["hull"].push_back({std::cos(a) / std::sqrt(3.0), std::sin(a) / std::sqrt(3.0)});
    }
    std::ofstream(dir / "search.json") << doc.dump();
    REQUIRE(run("overlay --sigma 1 --search " + (dir / "search.json").string() + " --grid 200 --out " +
                dir.string()) == 0);
    CHECK(json::parse(slurp(dir / "overlay.json"))["greenArea"].get<double>() == 0.0);
    CHECK(slurp(dir / "overlay.svg").find("#33cc33") == std::string::npos);
}

TEST_CASE("cli: fit table") {
    const auto dir = scratch("fit");
    REQUIRE(run("fit --out " + dir.string()) == 0);
    const auto csv = slurp(dir / "fit.csv");
    CHECK(csv.rfind("shape,reflected,theta_deg,rotation_deg,tx,ty,admissible,containment_error\n", 0) == 0);
    CHECK(csv.find("reuleaux-5") != std::string::npos);
    CHECK(run("fit --angle-a 100 --angle-b 90 --out " + dir.string()) == 1);
}

TEST_CASE("cli: annealing run is reproducible") {
    const auto a = scratch("anna"), b = scratch("annb");
    const std::string args = "anneal --restarts 1 --steps-per-epoch 40 --segments 12 --out ";
    REQUIRE(run(args + a.string()) == 0);
    REQUIRE(run(args + b.string()) == 0);
    CHECK(slurp(a / "anneal_log.csv") == slurp(b / "anneal_log.csv"));
    CHECK(slurp(a / "anneal_state.json") == slurp(b / "anneal_state.json"));
    CHECK(balanced_svg(slurp(a / "anneal.svg")));
}
