#include "lebesgue/widthcurves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lebesgue::widthcurves {

using geom::pi;
using geom::two_pi;
using geom::wrap_angle;

namespace {

constexpr double kAngleSlack = 1e-9;

std::vector<double> star_angles(const std::vector<Point2> &p, std::vector<double> &dirs) {
    const std::size_t n = p.size();
    dirs.resize(n);
    for (std::size_t k = 0; k < n; ++k) dirs[k] = geom::angle_of(p[(k + 1) % n] - p[k]);
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = wrap_angle(dirs[(k + n - 1) % n] + pi - dirs[k]);
    return a;
}

bool symmetric_sequence(const std::vector<double> &a) {
    const std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = std::abs(a[i] - a[(s + n - i) % n]) < 1e-9;
        if (ok) return true;
    }
    return false;
}

// Lays out the open chain p0..p_{n-2} from the free angles and closes it with
// the circle-circle intersection that gives a valid star. Returns the star
// vertices or nothing if the chain cannot close.
std::optional<std::vector<Point2>> close_star(const ReuleauxSpec &spec) {
    const int n = spec.n;
    std::vector<Point2> p(n);
    double phi = 0.0;
    p[0] = {0.0, 0.0};
    for (int k = 1; k <= n - 2; ++k) {
        p[k] = p[k - 1] + geom::unit(phi);
        if (k <= n - 3) phi += pi - spec.freeAngles[k - 1];
    }
    const Point2 a = p[n - 2], b = p[0];
    const double d = geom::dist(a, b);
    if (d > 2.0 || d <= 0.0) return std::nullopt;
    const Point2 m = (a + b) * 0.5;
    const double h = std::sqrt(std::max(0.0, 1.0 - d * d / 4.0));
    const Point2 off = geom::perp(b - a) * (h / d);
    for (const Point2 cand : {m + off, m - off}) {
        p[n - 1] = cand;
        std::vector<double> dirs;
        const auto ang = star_angles(p, dirs);
        double sum = 0.0;
        bool ok = true;
        for (double x : ang) {
            sum += x;
            ok = ok && x > 0.0 && x < pi / 3.0 + kAngleSlack;
        }
        if (ok && std::abs(sum - pi) < 1e-7) return p;
    }
    return std::nullopt;
}

}  // namespace

ConstantWidthShape circle(Point2 center) {
    ConstantWidthShape s;
    s.kind = ConstantWidthShape::Kind::circle;
    s.centerPoint = center;
    s.label = "circle";
    for (int q = 0; q < 4; ++q) {
        geom::ArcSegment arc{center, 0.5, q * pi / 2.0, (q + 1) * pi / 2.0, true};
        s.boundary.pieces.emplace_back(arc);
    }
    return s;
}

ConstantWidthShape from_star_vertices(const std::vector<Point2> &star, std::string label) {
    if (star.size() < 3 || star.size() % 2 == 0) throw InvalidSpec("star needs an odd number of vertices >= 3");
    std::vector<Point2> p = star;
    std::vector<double> dirs;
    auto ang = star_angles(p, dirs);
    double sum = 0.0;
    for (double x : ang) sum += x;
    if (std::abs(sum - pi) > 1e-7) {
        std::reverse(p.begin(), p.end());
        ang = star_angles(p, dirs);
        sum = 0.0;
        for (double x : ang) sum += x;
        if (std::abs(sum - pi) > 1e-7) throw InvalidSpec("vertices do not form a Reuleaux star");
    }
    const std::size_t n = p.size();
    ConstantWidthShape s;
    s.kind = ConstantWidthShape::Kind::reuleaux;
    s.vertices = p;
    s.angles = ang;
    s.edgeDirs = dirs;
    s.label = std::move(label);
    Point2 c;
    for (const auto &v : p) c += v;
    s.centerPoint = c / static_cast<double>(n);
    s.bilaterallySymmetric = symmetric_sequence(ang);
    ReuleauxSpec spec{static_cast<int>(n), {}};
    for (std::size_t k = 1; k + 2 < n; ++k) spec.freeAngles.push_back(ang[k]);
    s.spec = spec;

    std::vector<std::pair<double, geom::ArcSegment>> arcs;
    for (std::size_t k = 0; k < n; ++k) {
        const double start = dirs[k];
        geom::ArcSegment arc{p[k], 1.0, start, start + ang[k], true};
        arcs.emplace_back(wrap_angle(start), arc);
        s.windows.push_back({wrap_angle(start), ang[k], static_cast<int>(k), true});
        s.windows.push_back({wrap_angle(start + pi), ang[k], static_cast<int>(k), false});
    }
    std::sort(arcs.begin(), arcs.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    for (auto &[key, arc] : arcs) s.boundary.pieces.emplace_back(arc);
    std::sort(s.windows.begin(), s.windows.end(), [](const auto &x, const auto &y) { return x.start < y.start; });
    return s;
}

std::vector<SpecViolation> validate_spec(const ReuleauxSpec &spec) {
    std::vector<SpecViolation> out;
    using K = SpecViolation::Kind;
    if (spec.n < 3 || spec.n % 2 == 0) {
        out.push_back({K::parity, -1, static_cast<double>(spec.n), "n must be odd and at least 3"});
        return out;
    }
    if (static_cast<int>(spec.freeAngles.size()) != spec.n - 3) {
        out.push_back({K::count, -1, static_cast<double>(spec.freeAngles.size()), "expected n-3 free angles"});
        return out;
    }
    if (spec.n == 3) return out;
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.freeAngles.size(); ++i) {
        const double a = spec.freeAngles[i];
        sum += a;
        if (!(a > 0.0 && a < pi / 3.0)) {
            std::ostringstream msg;
            msg << "free angle " << i << " = " << geom::rad2deg(a) << " deg is outside (0, 60)";
            out.push_back({K::angleRange, static_cast<int>(i), a, msg.str()});
        }
    }
    if (sum >= pi) out.push_back({K::angleSum, -1, sum, "free angles already reach 180 deg"});
    if (!out.empty()) return out;

    const auto star = close_star(spec);
    if (!star) {
        out.push_back({K::closure, -1, 0.0, "the chain cannot be closed with all angles below 60 deg"});
        return out;
    }
    const auto &p = *star;
    std::vector<double> dirs;
    const auto ang = star_angles(p, dirs);
    for (std::size_t i = 0; i < ang.size(); ++i) {
        if (!(ang[i] > 0.0 && ang[i] < pi / 3.0)) {
            std::ostringstream msg;
            msg << "implied angle " << i << " = " << geom::rad2deg(ang[i]) << " deg is outside (0, 60)";
            out.push_back({K::angleRange, static_cast<int>(i), ang[i], msg.str()});
        }
    }
    const int n = spec.n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = geom::dist(p[i], p[j]);
            if (d > 1.0 + 1e-12) {
                std::ostringstream msg;
                msg << "diagonal " << i << "-" << j << " has length " << d;
                out.push_back({K::diagonal, i, d, msg.str()});
            }
        }
    }
    return out;
}

ConstantWidthShape build_reuleaux(const ReuleauxSpec &spec) {
    if (spec.n == 3 && spec.freeAngles.empty()) {
        std::vector<Point2> p{{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
        auto s = from_star_vertices(p, "reuleaux-3");
        s.spec = spec;
        return s;
    }
    const auto bad = validate_spec(spec);
    if (!bad.empty()) throw InvalidSpec(bad.front().message);
    auto s = from_star_vertices(*close_star(spec));
    s.spec = spec;
    return s;
}

ConstantWidthShape regular_reuleaux(int n) {
    ReuleauxSpec spec{n, std::vector<double>(static_cast<std::size_t>(std::max(0, n - 3)), pi / n)};
    auto s = build_reuleaux(spec);
    s.label = "reuleaux-" + std::to_string(n);
    return s;
}

ConstantWidthShape mirrored(const ConstantWidthShape &shape) {
    if (shape.kind == ConstantWidthShape::Kind::circle) {
        auto c = circle({shape.centerPoint.x, -shape.centerPoint.y});
        c.label = shape.label;
        return c;
    }
    std::vector<Point2> p;
    for (const auto &v : shape.vertices) p.push_back({v.x, -v.y});
    return from_star_vertices(p, shape.label.empty() ? std::string{} : shape.label + "-mirror");
}

ReuleauxSpec random_spec(int n, std::mt19937_64 &rng, int maxTries, double concentration) {
    if (n < 5 || n % 2 == 0) throw std::invalid_argument("random_spec needs odd n >= 5");
    if (!(concentration > 0.0)) throw std::invalid_argument("concentration must be positive");
    std::gamma_distribution<double> ex(concentration, 1.0);
    for (int attempt = 0; attempt < maxTries; ++attempt) {
        std::vector<double> w(n);
        double total = 0.0;
        for (auto &x : w) total += (x = ex(rng));
        bool ok = true;
        for (auto &x : w) {
            x = x / total * pi;
            ok = ok && x < pi / 3.0 && x > 1e-6;
        }
        if (!ok) continue;
        ReuleauxSpec spec{n, std::vector<double>(w.begin(), w.begin() + (n - 3))};
        if (validate_spec(spec).empty()) return spec;
    }
    throw std::runtime_error("random_spec: retry budget exhausted");
}

double support(const ConstantWidthShape &shape, double theta) {
    if (shape.kind == ConstantWidthShape::Kind::circle) return 0.5;
    const double t = wrap_angle(theta);
    const auto &w = shape.windows;
    auto it = std::upper_bound(w.begin(), w.end(), t, [](double v, const auto &win) { return v < win.start; });
    const auto &win = (it == w.begin()) ? w.back() : *(it - 1);
    const Point2 rel = shape.vertices[win.vertex] - shape.centerPoint;
    const double base = geom::dot(rel, geom::unit(theta));
    return win.arc ? base + 1.0 : base;
}

double offset(const ConstantWidthShape &shape, double theta) {
    return 0.5 * (support(shape, theta) - support(shape, theta + pi));
}

geom::ConvexPolygon discretize(const ConstantWidthShape &shape, int segmentsPerArc) {
    if (segmentsPerArc < 1) throw std::invalid_argument("segmentsPerArc must be >= 1");
    return {shape.boundary.sample(segmentsPerArc)};
}

std::vector<ConstantWidthShape> classic_five() {
    return {circle(), regular_reuleaux(3), regular_reuleaux(5), regular_reuleaux(7), regular_reuleaux(9)};
}

std::vector<ConstantWidthShape> random_pool(int count, std::uint64_t seed, bool includeRegular) {
    std::vector<ConstantWidthShape> pool;
    if (includeRegular) pool = classic_five();
    std::mt19937_64 rng(seed);
    const int ns[] = {5, 7};
    std::uniform_real_distribution<double> logc(std::log(10.0), std::log(1000.0));
    int i = 0;
    while (static_cast<int>(pool.size()) < count) {
        const int n = ns[i % 2];
        auto s = build_reuleaux(random_spec(n, rng, 200000, std::exp(logc(rng))));
        s.label = "random-" + std::to_string(n) + "-" + std::to_string(i);
        pool.push_back(std::move(s));
        ++i;
    }
    pool.resize(static_cast<std::size_t>(count));
    return pool;
}

}  // namespace lebesgue::widthcurves
