#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lebesgue/annealing.hpp"
#include "lebesgue/bounds.hpp"
#include "lebesgue/coversearch.hpp"
#include "lebesgue/geom.hpp"
#include "lebesgue/hexfit.hpp"
#include "lebesgue/svg.hpp"
#include "lebesgue/widthcurves.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lebesgue;
using geom::Point2;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalidated = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string pool;
    int poolSize = 80;
    std::uint64_t seed = 20240601;
    std::string out = ".";
    int jobs = 1;
    int segments = 0;  // 0: command default
    std::uint64_t budget = 1000000000ULL;
    std::string precision = "native";
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--pool", c.pool, "shape pool JSON file (default: classic five for anneal, random pool otherwise)");
    cmd->add_option("--pool-size", c.poolSize, "size of the generated random pool")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--segments", c.segments, "segments per arc when discretising")->check(CLI::NonNegativeNumber);
    cmd->add_option("--budget", c.budget, "node budget for the search");
    cmd->add_option("--precision", c.precision, "native or extended")->check(CLI::IsMember({"native", "extended"}));
}

int segments_or(const Common &c, int fallback) { return c.segments > 0 ? c.segments : fallback; }

std::vector<widthcurves::ConstantWidthShape> load_shapes(const Common &c, bool classicDefault) {
    if (!c.pool.empty()) {
        try {
            return widthcurves::load_pool(c.pool);
        } catch (const std::exception &e) {
            throw UsageError(e.what());
        }
    }
    if (classicDefault) return widthcurves::classic_five();
    return widthcurves::random_pool(c.poolSize, c.seed);
}

void write_file(const Common &c, const std::string &name, const std::string &content) {
    fs::create_directories(c.out);
    const fs::path p = fs::path(c.out) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
    std::cerr << "wrote " << p.string() << "\n";
}

std::string fixed(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<Point2> hexagon_ring(const hexfit::ParallelHexagon &hex, Point2 shift = {}) {
    std::vector<Point2> r;
    for (Point2 v : hex.vertices()) r.push_back(v + shift);
    return r;
}

// Cut triangles of the hexagon for drawing: the corner and the two points
// where the tangent line meets the adjacent sides.
std::vector<std::vector<Point2>> cut_triangles(const hexfit::ParallelHexagon &hex, const hexfit::PalCut &cut) {
    const auto v = hex.vertices();
    std::vector<std::vector<Point2>> tris;
    for (Point2 n : cut.normals(hex)) {
        for (int k = 0; k < 6; ++k) {
            if (geom::dot(v[k], n) <= 0.5) continue;
            const Point2 prev = v[(k + 5) % 6], next = v[(k + 1) % 6];
            auto on_line = [&](Point2 a, Point2 b) {
                const double t = (0.5 - geom::dot(a, n)) / geom::dot(b - a, n);
                return a + (b - a) * t;
            };
            tris.push_back({on_line(prev, v[k]), v[k], on_line(next, v[k])});
        }
    }
    return tris;
}

std::vector<Point2> placed_union_hull(const std::vector<widthcurves::ConstantWidthShape> &shapes,
                                      const std::vector<hexfit::Placement> &poses, int segs) {
    std::vector<Point2> all;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        auto p = hexfit::placed_points(shapes[i], poses[i], segs);
        all.insert(all.end(), p.begin(), p.end());
    }
    return geom::convex_hull(all).vertices;
}

json points_json(const std::vector<Point2> &pts) {
    json a = json::array();
    for (Point2 p : pts) a.push_back({p.x, p.y});
    return a;
}

json placement_json(const std::string &label, const hexfit::Placement &p) {
    return {{"shape", label},
            {"rotationDegrees", geom::rad2deg(p.rotation)},
            {"translation", {p.translation.x, p.translation.y}},
            {"reflected", p.reflected}};
}

svg::Style fill_style(const std::string &fill, const std::string &stroke = "none", double opacity = 1.0) {
    svg::Style s;
    s.fill = fill;
    s.stroke = stroke;
    s.opacity = opacity;
    return s;
}

svg::Style stroke_style(const std::string &stroke, double width = 1.0) {
    svg::Style s;
    s.stroke = stroke;
    s.strokeWidth = width;
    return s;
}

const svg::Reference kHansenLine{"known upper bound 0.8441377084", bounds::kHansen};

// ---------------------------------------------------------------- anneal

int cmd_anneal(const Common &c, int restarts, int stepsPerEpoch, double accept, bool reflections) {
    const auto shapes = load_shapes(c, true);
    annealing::AnnealParams params;
    params.restarts = restarts;
    params.stepsPerEpoch = stepsPerEpoch;
    params.acceptProbability = accept;
    params.seed = c.seed;
    params.threads = c.jobs;
    params.segmentsPerArc = segments_or(c, 64);
    try {
        params.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    const auto result = reflections ? annealing::anneal_with_reflections(shapes, params) : annealing::anneal(shapes, params);
    const auto witness = annealing::hexagon_witness(shapes, result.best, params.segmentsPerArc);

    write_file(c, "anneal_log.csv", annealing::log_csv(result.log));
    write_file(c, "anneal_state.json", annealing::state_json(shapes, result, witness));

    // Figure: shapes over the circumscribed hexagon found around them.
    const Point2 center = witness ? witness->center : Point2{};
    svg::Canvas canvas({center.x - 0.75, center.y - 0.75}, {center.x + 0.75, center.y + 0.75}, 640);
    canvas.title("annealed configuration, area " + fixed(result.best.area, 8));
    if (witness) canvas.polygon(hexagon_ring(witness->hex, witness->center), fill_style("#eeeeee", "gray"));
    const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        auto s = stroke_style(colors[i % 5], 1.2);
        canvas.polygon(hexfit::placed_points(shapes[i], result.best.poses[i], 48), s);
    }
    canvas.polygon(placed_union_hull(shapes, result.best.poses, 48), stroke_style("black", 2.0));
    write_file(c, "anneal.svg", canvas.str());

    std::cout << "best area " << fixed(result.best.area) << " (restart " << result.bestRestart << " of "
              << result.runs << ")\n";
    return kOk;
}

// ---------------------------------------------------------------- fit

hexfit::ParallelHexagon hex_from_degrees(double a, double b) {
    hexfit::ParallelHexagon hex;
    hex.angleA = geom::deg2rad(a);
    hex.angleB = geom::deg2rad(b);
    try {
        hex.validate();
    } catch (const std::exception &e) {
        throw UsageError(std::string("hexagon angles: ") + e.what());
    }
    return hex;
}

std::optional<hexfit::PalCut> cut_from_degrees(const std::optional<double> &slant) {
    if (!slant) return std::nullopt;
    hexfit::PalCut cut{geom::deg2rad(*slant)};
    try {
        cut.validate();
    } catch (const std::exception &e) {
        throw UsageError(std::string("slant: ") + e.what());
    }
    return cut;
}

int cmd_fit(const Common &c, double a, double b, const std::optional<double> &slant, bool noReflection) {
    const auto shapes = load_shapes(c, true);
    const auto hex = hex_from_degrees(a, b);
    const auto cut = cut_from_degrees(slant);
    const int segs = segments_or(c, 256);
    std::ostringstream csv;
    csv << "shape,reflected,theta_deg,rotation_deg,tx,ty,admissible,containment_error\n";
    for (const auto &s : shapes) {
        for (int refl = 0; refl < (noReflection ? 1 : 2); ++refl) {
            const auto roots = hexfit::find_roots(s, hex, 1e-12, refl == 1);
            std::vector<double> thetas = roots.roots;
            if (roots.alwaysFits) thetas = {0.0};
            for (double th : thetas) {
                const auto pl = hexfit::placement_from_root(s, hex, th, refl == 1);
                const double err = hexfit::verify_containment(s, pl, hex, std::nullopt, segs);
                csv << s.label << ',' << refl << ',' << fixed(geom::rad2deg(th), 9) << ','
                    << fixed(geom::rad2deg(pl.rotation), 9) << ',' << fixed(pl.translation.x, 12) << ','
                    << fixed(pl.translation.y, 12) << ',' << (hexfit::admissible(pl, s, hex, cut) ? 1 : 0) << ','
                    << fixed(std::max(err, 0.0), 12) << '\n';
            }
            std::cout << s.label << (refl ? " (reflected)" : "") << ": "
                      << (roots.alwaysFits ? std::string("fits in every orientation")
                                           : std::to_string(roots.roots.size()) + " roots")
                      << "\n";
            if (s.bilaterallySymmetric) break;
        }
    }
    write_file(c, "fit.csv", csv.str());
    return kOk;
}

// ---------------------------------------------------------------- search

struct SearchOutcome {
    std::vector<widthcurves::ConstantWidthShape> shapes;  // in cover order
    std::vector<hexfit::Placement> poses;
    double area = 0.0;
    bool certified = false;
    json steps = json::array();
    std::uint64_t nodes = 0;
};

SearchOutcome run_search(const Common &c, const std::vector<widthcurves::ConstantWidthShape> &pool,
                         const hexfit::ParallelHexagon &hex, const std::optional<hexfit::PalCut> &cut, bool exact,
                         int maxShapes, const std::string &checkpoint, bool resume) {
    SearchOutcome o;
    const int segs = segments_or(c, 32);
    if (exact) {
        coversearch::SearchProblem prob{pool, hex, cut, segs, true};
        coversearch::SearchOptions opt;
        opt.budget = c.budget;
        opt.threads = checkpoint.empty() ? c.jobs : 1;
        opt.checkpointPath = checkpoint;
        opt.resume = resume;
        const auto r = coversearch::min_cover_area(prob, opt);
        o.shapes = pool;
        o.poses = r.chosen;
        o.area = r.area;
        o.certified = r.lowerBoundCertified;
        o.nodes = r.nodes;
    } else {
        const int limit = maxShapes > 0 ? maxShapes : static_cast<int>(pool.size());
        const auto r = coversearch::incremental_lower_bound(pool, hex, cut, limit, c.budget, segs, c.jobs);
        for (std::size_t i : r.poolIndices) o.shapes.push_back(pool[i]);
        o.poses = r.last.chosen;
        o.area = r.steps.empty() ? 0.0 : r.steps.back().area;
        o.certified = !r.truncated;
        for (const auto &s : r.steps) {
            o.steps.push_back({{"added", s.added}, {"area", s.area}, {"certified", s.certified}, {"nodes", s.nodes}});
            o.nodes += s.nodes;
        }
    }
    return o;
}

std::string search_figure(const SearchOutcome &o, const hexfit::ParallelHexagon &hex,
                          const std::optional<hexfit::PalCut> &cut, const std::vector<Point2> &hull) {
    svg::Canvas canvas({-0.65, -0.65}, {0.65, 0.65}, 640);
    canvas.title("minimal cover of the pool, area " + fixed(o.area, 8));
    canvas.polygon(hexagon_ring(hex), fill_style("#f4f4f4", "gray"));
    if (cut)
        for (const auto &t : cut_triangles(hex, *cut)) canvas.polygon(t, fill_style("#ffa64d", "none"));
    for (std::size_t i = 0; i < o.shapes.size(); ++i)
        canvas.polygon(hexfit::placed_points(o.shapes[i], o.poses[i], 32), stroke_style("#1f77b4", 0.6));
    canvas.polygon(hull, stroke_style("black", 2.0));
    return canvas.str();
}

int cmd_search(const Common &c, double a, double b, const std::optional<double> &slant, bool exact, int maxShapes,
               const std::string &checkpoint, bool resume) {
    const auto pool = load_shapes(c, false);
    const auto hex = hex_from_degrees(a, b);
    const auto cut = cut_from_degrees(slant);
    if (!checkpoint.empty() && !exact) throw UsageError("--checkpoint needs --exact");
    if (resume && checkpoint.empty()) throw UsageError("--resume needs --checkpoint");
    const auto o = run_search(c, pool, hex, cut, exact, maxShapes, checkpoint, resume);
    const auto hull = o.poses.empty() ? std::vector<Point2>{} : placed_union_hull(o.shapes, o.poses, segments_or(c, 32));

    json doc;
    doc["angleADegrees"] = a;
    doc["angleBDegrees"] = b;
    doc["sigmaDegrees"] = slant ? json(*slant) : json(nullptr);
    doc["mode"] = exact ? "exact" : "incremental";
    doc["area"] = o.area;
    doc["certified"] = o.certified;
    doc["nodes"] = o.nodes;
    doc["steps"] = o.steps;
    json pl = json::array();
    for (std::size_t i = 0; i < o.poses.size(); ++i) pl.push_back(placement_json(o.shapes[i].label, o.poses[i]));
    doc["placements"] = pl;
    doc["hull"] = points_json(hull);
    write_file(c, "search.json", doc.dump(2) + "\n");
    write_file(c, "search.svg", search_figure(o, hex, cut, hull));

    std::cout << "lower bound " << fixed(o.area) << (o.certified ? "" : " (budget exhausted, not certified)") << "\n";
    return o.certified ? kOk : kBudget;
}

// ---------------------------------------------------------------- scans

std::vector<double> grid(double from, double to, double step) {
    if (!(step > 0.0)) throw UsageError("grid step must be positive");
    if (to < from) throw UsageError("grid end lies before its start");
    std::vector<double> g;
    const int n = static_cast<int>(std::floor((to - from) / step + 1e-9));
    for (int k = 0; k <= n; ++k) g.push_back(from + k * step);
    return g;
}

std::vector<std::pair<double, double>> parse_angle_pairs(const std::string &text) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("angle pair '" + item + "' must look like A:B");
        try {
            out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        } catch (const std::exception &) {
            throw UsageError("angle pair '" + item + "' is not numeric");
        }
    }
    if (out.empty()) throw UsageError("empty angle grid");
    return out;
}

int cmd_scan_hex(const Common &c, const std::string &angles, double from, double to, double step, int maxShapes) {
    std::vector<std::pair<double, double>> pairs;
    if (!angles.empty()) {
        pairs = parse_angle_pairs(angles);
    } else {
        for (double a : grid(from, to, step)) pairs.emplace_back(a, a);
    }
    for (const auto &[a, b] : pairs) hex_from_degrees(a, b);  // validates
    const auto pool = load_shapes(c, false);
    const int limit = maxShapes > 0 ? maxShapes : static_cast<int>(pool.size());
    const auto rows = coversearch::scan_hexagons(pairs, pool, limit, c.budget, segments_or(c, 32), c.jobs);
    write_file(c, "scan_hex.csv", coversearch::hex_rows_csv(rows));

    std::map<double, svg::Series> byB;
    for (const auto &r : rows) {
        auto &s = byB[r.angleBDegrees];
        if (s.name.empty()) s.name = "angle B = " + fixed(r.angleBDegrees, 2) + " deg";
        s.points.emplace_back(r.angleADegrees, r.lowerBound);
    }
    if (angles.empty()) {
        byB.clear();
        svg::Series s{"angle A = angle B", {}};
        for (const auto &r : rows) s.points.emplace_back(r.angleADegrees, r.lowerBound);
        byB[0] = s;
    }
    std::vector<svg::Series> series;
    for (auto &[k, s] : byB) series.push_back(s);
    write_file(c, "scan_hex.svg",
               svg::line_chart("lower bound over circumscribed hexagons", "angle A (degrees)", "lower bound", series,
                               {kHansenLine}));
    bool certified = true;
    for (const auto &r : rows) certified = certified && r.certified;
    return certified ? kOk : kBudget;
}

int cmd_scan_slant(const Common &c, double from, double to, double step, int maxShapes) {
    const auto sigmas = grid(from, to, step);
    for (double s : sigmas) cut_from_degrees(s);
    const auto pool = load_shapes(c, false);
    const int limit = maxShapes > 0 ? maxShapes : static_cast<int>(pool.size());
    const auto rows = coversearch::scan_slant(sigmas, pool, limit, c.budget, segments_or(c, 32), c.jobs);
    write_file(c, "scan_slant.csv", coversearch::slant_rows_csv(rows));
    svg::Series s{"lower bound", {}};
    for (const auto &r : rows) s.points.emplace_back(r.sigmaDegrees, r.lowerBound);
    write_file(c, "scan_slant.svg",
               svg::line_chart("lower bound with two corners cut", "slant (degrees)", "lower bound", {s},
                               {kHansenLine}));
    bool certified = true;
    for (const auto &r : rows) certified = certified && r.certified;
    return certified ? kOk : kBudget;
}

// ---------------------------------------------------------------- bound

bounds::Precision precision_of(const Common &c) {
    return c.precision == "extended" ? bounds::Precision::extended : bounds::Precision::native;
}

std::string construction_figure(const bounds::CoverConstruction &con) {
    svg::Canvas canvas({-0.65, -0.65}, {0.65, 0.65}, 720);
    canvas.title("cover construction at slant " + fixed(geom::rad2deg(con.sigma), 4) + " deg");
    const auto hex = hexfit::ParallelHexagon::regular();
    canvas.polygon(hexagon_ring(hex), fill_style("#e8f0ff", "black"));
    for (const auto &r : con.regions) {
        if (r.boundary.pieces.empty()) continue;
        canvas.arc_polygon(r.boundary, fill_style("#ffa64d", "#b35900"), 96);
    }
    canvas.circle({0.0, 0.0}, 0.5, stroke_style("gray", 0.5));
    const auto frame = bounds::labeled_frame(con.sigma);
    for (const auto &[name, p] : frame.points) {
        canvas.dot(p, 2.0, "black");
        canvas.label(p, name, 10);
    }
    return canvas.str();
}

int cmd_bound(const Common &c, double sigmaDeg, bool basic, bool nonconvex, bool scan, double from, double to,
              double step) {
    const bool convexOnly = !nonconvex;
    if (scan) {
        grid(from, to, step);  // validates the range
        const auto rows = bounds::scan_cover(from, to, step, convexOnly);
        std::ostringstream csv;
        csv << "sigmaDegrees,coverAreaBasic,coverAreaReflected\n";
        svg::Series sb{"basic construction", {}}, sr{"with reflections", {}};
        for (const auto &r : rows) {
            csv << fixed(r.sigmaDegrees, 6) << ',' << fixed(r.coverAreaBasic, 13) << ','
                << fixed(r.coverAreaReflected, 13) << '\n';
            sb.points.emplace_back(r.sigmaDegrees, r.coverAreaBasic);
            sr.points.emplace_back(r.sigmaDegrees, r.coverAreaReflected);
        }
        write_file(c, "bound_scan.csv", csv.str());
        write_file(c, "bound_scan.svg",
                   svg::line_chart("cover area against slant", "slant (degrees)", "cover area", {sb, sr},
                                   {kHansenLine}));
        const auto m = bounds::minimize_cover(from, to, step, convexOnly);
        std::cout << "minimum " << fixed(m.area, 12) << " at " << fixed(m.sigmaDegrees, 6) << " deg\n";
        return kOk;
    }

    if (!(std::abs(sigmaDeg) < 30.0)) throw UsageError("slant must lie in (-30, 30) degrees");
    const double sigma = geom::deg2rad(sigmaDeg);
    const auto p = precision_of(c);
    const auto con = bounds::build_construction(sigma, !basic, convexOnly, p);
    json doc;
    doc["sigmaDegrees"] = sigmaDeg;
    json regions = json::array();
    for (const auto &r : con.regions)
        regions.push_back({{"name", bounds::to_string(r.name)}, {"area", r.area}, {"justification", r.justification}});
    doc["regions"] = regions;
    doc["hexagonArea"] = con.hexagonArea;
    doc["totalArea"] = con.area;
    if (p == bounds::Precision::extended) doc["totalAreaExtended"] = con.areaExtended.str(30);
    doc["convexOnly"] = convexOnly;
    doc["useReflections"] = !basic;
    doc["precision"] = c.precision;
    write_file(c, "bound.json", doc.dump(2) + "\n");
    write_file(c, "bound.svg", construction_figure(con));
    std::cout << "cover area " << fixed(con.area, 12) << "\n";
    return kOk;
}

// ---------------------------------------------------------------- hansen

int cmd_hansen(const Common &c, int count) {
    if (count < 1) throw UsageError("--count must be at least 1");
    const bool ext = c.precision == "extended";
    json terms = json::array();
    for (int i = 1; i <= count; ++i) {
        json t{{"i", i}};
        if (ext) {
            t["x"] = bounds::hansen_x_sequence(i).str(30, std::ios::scientific);
            t["area"] = bounds::hansen_area(i).str(30, std::ios::scientific);
        } else {
            t["x"] = bounds::hansen_x_sequence_double(i);
            t["area"] = bounds::hansen_area_double(i);
        }
        terms.push_back(t);
    }
    json doc{{"precision", c.precision}, {"terms", terms}, {"sprague", bounds::kSprague}, {"hansen", bounds::kHansen}};
    write_file(c, "hansen.json", doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    return kOk;
}

// ---------------------------------------------------------------- overlay

// Points inside the construction cover but strictly outside the search hull,
// counted on a regular grid.
double green_area(const bounds::CoverConstruction &con, const geom::ConvexPolygon &hull, int n) {
    const auto hex = hexfit::ParallelHexagon::regular();
    const geom::ConvexPolygon hexPoly{hexagon_ring(hex)};
    const double lo = -0.6, h = 1.2 / n;
    long hits = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Point2 q{lo + (i + 0.5) * h, lo + (j + 0.5) * h};
            if (!geom::contains(hexPoly, q, 0.0)) continue;
            if (geom::signed_distance(hull, q) <= 1e-9) continue;
            bool removed = false;
            for (const auto &r : con.regions)
                if (r.contains && r.contains(q)) {
                    removed = true;
                    break;
                }
            if (!removed) ++hits;
        }
    return static_cast<double>(hits) * h * h;
}

int cmd_overlay(const Common &c, double sigmaDeg, const std::string &searchFile, int maxShapes, int gridSize) {
    if (!(std::abs(sigmaDeg) < 30.0)) throw UsageError("slant must lie in (-30, 30) degrees");
    std::vector<Point2> hull;
    double searchArea = 0.0;
    if (!searchFile.empty()) {
        std::ifstream in(searchFile);
        if (!in) throw UsageError("cannot open " + searchFile);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception &e) {
            throw UsageError(searchFile + " is not valid JSON");
        }
        if (!doc.contains("sigmaDegrees") || doc["sigmaDegrees"].is_null())
            throw UsageError("search result was computed without a cut; rerun it with --slant");
        const double s = doc["sigmaDegrees"].get<double>();
        if (std::abs(s - sigmaDeg) > 1e-9)
            throw UsageError("search result is for slant " + fixed(s, 6) + " deg, not " + fixed(sigmaDeg, 6));
        for (const auto &p : doc.at("hull")) hull.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        searchArea = doc.value("area", 0.0);
    } else {
        const auto pool = load_shapes(c, false);
        const auto hex = hexfit::ParallelHexagon::regular();
        const auto o = run_search(c, pool, hex, cut_from_degrees(sigmaDeg), false, maxShapes, "", false);
        hull = placed_union_hull(o.shapes, o.poses, segments_or(c, 32));
        searchArea = o.area;
    }
    if (hull.size() < 3) throw UsageError("search hull is degenerate");
    const geom::ConvexPolygon hullPoly = geom::convex_hull(hull);

    const auto con = bounds::build_construction(geom::deg2rad(sigmaDeg), true, true, precision_of(c));
    const double green = green_area(con, hullPoly, gridSize);

    // Layers: green hexagon, search hull painted over it, removed regions on top.
    svg::Canvas canvas({-0.65, -0.65}, {0.65, 0.65}, 720);
    canvas.title("removed regions against the search hull at slant " + fixed(sigmaDeg, 4) + " deg");
    const auto hex = hexfit::ParallelHexagon::regular();
    canvas.polygon(hexagon_ring(hex), fill_style(green > 0.0 ? "#33cc33" : "white", "black"));
    canvas.polygon(hullPoly.vertices, fill_style("white", "none"));
    for (const auto &r : con.regions)
        if (!r.boundary.pieces.empty()) canvas.arc_polygon(r.boundary, fill_style("#ffa64d", "#b35900"), 96);
    canvas.polygon(hullPoly.vertices, stroke_style("black", 1.5));
    write_file(c, "overlay.svg", canvas.str());

    json doc{{"sigmaDegrees", sigmaDeg},
             {"coverArea", con.area},
             {"searchHullArea", geom::polygon_area(hullPoly)},
             {"searchLowerBound", searchArea},
             {"greenArea", green},
             {"gridSize", gridSize}};
    write_file(c, "overlay.json", doc.dump(2) + "\n");
    std::cout << "green area " << fixed(green, 8) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Universal cover bounds: annealing, placement search and cover constructions"};
    app.require_subcommand(1);

    Common common;

    auto *anneal = app.add_subcommand("anneal", "anneal a shape pool towards a small hull");
    add_common(anneal, common);
    int restarts = 50, stepsPerEpoch = 1000;
    double accept = 0.3;
    bool reflections = false;
    anneal->add_option("--restarts", restarts, "independent restarts")->check(CLI::PositiveNumber);
    anneal->add_option("--steps-per-epoch", stepsPerEpoch, "steps before the step size shrinks")
        ->check(CLI::PositiveNumber);
    anneal->add_option("--accept", accept, "probability of keeping an uphill move")->check(CLI::Range(0.0, 1.0));
    anneal->add_flag("--reflections", reflections, "try every reflection assignment of asymmetric shapes");

    auto *fit = app.add_subcommand("fit", "fit each shape into a circumscribed hexagon");
    add_common(fit, common);
    double angleA = 60.0, angleB = 60.0;
    std::optional<double> slant;
    bool noReflection = false;
    fit->add_option("--angle-a", angleA, "hexagon angle A in degrees");
    fit->add_option("--angle-b", angleB, "hexagon angle B in degrees");
    fit->add_option("--slant", slant, "cut two corners at this slant (degrees) when judging admissibility");
    fit->add_flag("--no-reflection", noReflection, "skip mirrored shapes");

    auto *search = app.add_subcommand("search", "smallest cover of the pool inside a hexagon");
    add_common(search, common);
    bool exact = false, resume = false;
    int maxShapes = 0;
    std::string checkpoint;
    search->add_option("--angle-a", angleA, "hexagon angle A in degrees");
    search->add_option("--angle-b", angleB, "hexagon angle B in degrees");
    search->add_option("--slant", slant, "cut two corners at this slant (degrees)");
    search->add_flag("--exact", exact, "search the whole pool at once instead of adding shapes incrementally");
    search->add_option("--max-shapes", maxShapes, "incremental search stops after this many shapes (0: no limit)");
    search->add_option("--checkpoint", checkpoint, "checkpoint file for --exact");
    search->add_flag("--resume", resume, "continue from the checkpoint");

    auto *scanHex = app.add_subcommand("scan-hex", "lower bound over a grid of hexagons");
    add_common(scanHex, common);
    std::string anglePairs;
    double from = 0.0, to = 2.0, step = 0.1;
    double hexFrom = 55.0, hexTo = 65.0, hexStep = 1.0;
    scanHex->add_option("--angles", anglePairs, "comma separated A:B pairs in degrees");
    scanHex->add_option("--from", hexFrom, "first angle of the symmetric sweep");
    scanHex->add_option("--to", hexTo, "last angle of the symmetric sweep");
    scanHex->add_option("--step", hexStep, "step of the symmetric sweep");
    scanHex->add_option("--max-shapes", maxShapes, "shapes per search (0: whole pool)");

    auto *scanSlant = app.add_subcommand("scan-slant", "lower bound against the slant of the cut");
    add_common(scanSlant, common);
    scanSlant->add_option("--from", from, "first slant in degrees");
    scanSlant->add_option("--to", to, "last slant in degrees");
    scanSlant->add_option("--step", step, "slant step in degrees");
    scanSlant->add_option("--max-shapes", maxShapes, "shapes per search (0: whole pool)");

    auto *bound = app.add_subcommand("bound", "area of the cover construction");
    add_common(bound, common);
    double sigmaDeg = 0.52;
    bool basic = false, nonconvex = false, scan = false;
    double bFrom = 0.0, bTo = 2.0, bStep = 0.02;
    bound->add_option("--sigma", sigmaDeg, "slant in degrees");
    bound->add_flag("--basic", basic, "leave out the regions that need reflections");
    bound->add_flag("--nonconvex", nonconvex, "remove the full region near corner A, not only its convex part");
    bound->add_flag("--scan", scan, "tabulate the area over a slant range");
    bound->add_option("--from", bFrom, "first slant of the scan");
    bound->add_option("--to", bTo, "last slant of the scan");
    bound->add_option("--step", bStep, "slant step of the scan");

    auto *hansen = app.add_subcommand("hansen", "the small areas removed near the corners");
    add_common(hansen, common);
    int count = 3;
    hansen->add_option("--count", count, "number of terms");

    auto *overlay = app.add_subcommand("overlay", "compare removed regions with a search hull");
    add_common(overlay, common);
    double overlaySigma = 1.0;
    std::string searchFile;
    int gridSize = 600;
    overlay->add_option("--sigma", overlaySigma, "slant in degrees");
    overlay->add_option("--search", searchFile, "search.json written by the search command");
    overlay->add_option("--max-shapes", maxShapes, "shapes for the internal search (0: whole pool)");
    overlay->add_option("--grid", gridSize, "grid resolution for the green area")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*anneal) return cmd_anneal(common, restarts, stepsPerEpoch, accept, reflections);
        if (*fit) return cmd_fit(common, angleA, angleB, slant, noReflection);
        if (*search) return cmd_search(common, angleA, angleB, slant, exact, maxShapes, checkpoint, resume);
        if (*scanHex) return cmd_scan_hex(common, anglePairs, hexFrom, hexTo, hexStep, maxShapes);
        if (*scanSlant) return cmd_scan_slant(common, from, to, step, maxShapes);
        if (*bound) return cmd_bound(common, sigmaDeg, basic, nonconvex, scan, bFrom, bTo, bStep);
        if (*hansen) return cmd_hansen(common, count);
        if (*overlay) return cmd_overlay(common, overlaySigma, searchFile, maxShapes, gridSize);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const bounds::RegionOverlap &e) {
        std::cerr << "construction invalid: " << e.what() << "\n";
        return kInvalidated;
    } catch (const bounds::ConstructionError &e) {
        std::cerr << "construction invalid: " << e.what() << "\n";
        return kInvalidated;
    } catch (const coversearch::InfeasibleShape &e) {
        std::cerr << "search invalid: " << e.what() << "\n";
        return kInvalidated;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidated;
    }
    return kUsage;
}
