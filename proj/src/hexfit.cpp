#include "lebesgue/hexfit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lebesgue::hexfit {

using geom::pi;
using widthcurves::offset;
using widthcurves::support;

std::array<double, 3> ParallelHexagon::normal_angles() const {
    return {orientation, orientation + angleA, orientation + angleA + angleB};
}

std::array<Point2, 3> ParallelHexagon::normals() const {
    const auto a = normal_angles();
    return {geom::unit(a[0]), geom::unit(a[1]), geom::unit(a[2])};
}

namespace {

// Intersection of the lines p . u(a) = 1/2 and p . u(b) = 1/2.
Point2 corner(double a, double b) {
    const Point2 na = geom::unit(a), nb = geom::unit(b);
    const double det = geom::cross(na, nb);
    return {0.5 * (nb.y - na.y) / det, 0.5 * (na.x - nb.x) / det};
}

}  // namespace

std::array<Point2, 6> ParallelHexagon::vertices() const {
    const auto a = normal_angles();
    const double s[6] = {a[0], a[1], a[2], a[0] + pi, a[1] + pi, a[2] + pi};
    std::array<Point2, 6> v;
    v[0] = corner(s[5] - 2.0 * pi, s[0]);
    for (int i = 1; i < 6; ++i) v[i] = corner(s[i - 1], s[i]);
    return v;
}

void ParallelHexagon::validate() const {
    const double c = pi - angleA - angleB;
    if (!(angleA > 0 && angleB > 0 && c > 0)) throw std::invalid_argument("hexagon angles must be positive and sum below 180 deg");
}

std::array<Point2, 2> PalCut::normals(const ParallelHexagon &hex) const {
    const auto a = hex.normal_angles();
    const double e = 0.5 * (a[0] + a[1]) - slant;
    const double c = 0.5 * (a[1] + a[2]) + pi - slant;
    return {geom::unit(e), geom::unit(c)};
}

void PalCut::validate() const {
    if (!(slant >= 0.0 && slant < geom::deg2rad(9.0))) throw std::invalid_argument("slant must lie in [0, 9) degrees");
}

Point2 apply(const Placement &pl, const ConstantWidthShape &shape, Point2 p) {
    Point2 q = p - shape.centerPoint;
    if (pl.reflected) q.y = -q.y;
    return geom::rotate(q, pl.rotation) + pl.translation;
}

std::vector<Point2> placed_points(const ConstantWidthShape &shape, const Placement &pl, int segmentsPerArc) {
    auto pts = widthcurves::discretize(shape, segmentsPerArc).vertices;
    for (auto &p : pts) p = apply(pl, shape, p);
    return pts;
}

double placed_support(const ConstantWidthShape &shape, const Placement &pl, double psi) {
    const double local = pl.reflected ? pl.rotation - psi : psi - pl.rotation;
    return geom::dot(pl.translation, geom::unit(psi)) + support(shape, local);
}

namespace {

double oref(const ConstantWidthShape &shape, double psi, bool reflected) {
    return offset(shape, reflected ? -psi : psi);
}

}  // namespace

double t_value(const ConstantWidthShape &shape, const ParallelHexagon &hex, double theta, bool reflected) {
    const auto a = hex.normal_angles();
    const auto n = hex.normals();
    const double o1 = oref(shape, a[0] - theta, reflected);
    const double o2 = oref(shape, a[1] - theta, reflected);
    const double o3 = oref(shape, a[2] - theta, reflected);
    return o1 * geom::cross(n[1], n[2]) + o2 * geom::cross(n[2], n[0]) + o3 * geom::cross(n[0], n[1]);
}

RootResult find_roots(const ConstantWidthShape &shape, const ParallelHexagon &hex, double tolerance, bool reflected) {
    RootResult res;
    if (shape.kind == ConstantWidthShape::Kind::circle) {
        res.alwaysFits = true;
        return res;
    }
    auto t = [&](double th) { return t_value(shape, hex, th, reflected); };
    constexpr double isolation = 1e-9;
    std::vector<double> half;

    auto refine = [&](double a, double b, double ta) {
        while (b - a > tolerance) {
            const double m = 0.5 * (a + b);
            const double tm = t(m);
            if ((tm <= 0) == (ta <= 0) && tm != 0.0) {
                a = m;
                ta = tm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    std::function<void(double, double, double, double)> rec = [&](double a, double b, double ta, double tb) {
        const double m = 0.5 * (a + b);
        const double tm = t(m);
        const double h = 0.5 * (b - a);
        if (std::abs(tm) > kLipschitz * h * (1.0 + 1e-9) + 1e-15) return;
        if (b - a <= isolation) {
            if (ta == 0.0) half.push_back(a);
            if ((ta < 0 && tb > 0) || (ta > 0 && tb < 0)) half.push_back(refine(a, b, ta));
            return;
        }
        rec(a, m, ta, tm);
        rec(m, b, tm, tb);
    };

    constexpr int cells = 64;
    std::vector<double> grid(cells + 1), tg(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        grid[i] = pi * i / cells;
        tg[i] = t(grid[i]);
    }
    for (int i = 0; i < cells; ++i) rec(grid[i], grid[i + 1], tg[i], tg[i + 1]);

    std::sort(half.begin(), half.end());
    std::vector<double> merged;
    for (double r : half)
        if (merged.empty() || r - merged.back() > 1e-9) merged.push_back(r);
    if (merged.size() >= 2 && merged.front() + pi - merged.back() <= 1e-9) merged.pop_back();
    for (double r : merged) res.roots.push_back(r);
    for (double r : merged) res.roots.push_back(r + pi);
    return res;
}

double sampled_lipschitz(const ConstantWidthShape &shape, const ParallelHexagon &hex, int samples) {
    double worst = 0.0;
    const double h = 1e-7;
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * pi * (i + 0.5) / samples;
        worst = std::max(worst, std::abs(t_value(shape, hex, th + h) - t_value(shape, hex, th - h)) / (2.0 * h));
    }
    return worst;
}

Placement placement_from_root(const ConstantWidthShape &shape, const ParallelHexagon &hex, double theta,
                              bool reflected) {
    const auto a = hex.normal_angles();
    const auto n = hex.normals();
    double c[3];
    for (int i = 0; i < 3; ++i) c[i] = -oref(shape, a[i] - theta, reflected);
    int bj = 0, bk = 1;
    double best = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k)
            if (std::abs(geom::cross(n[j], n[k])) > best) {
                best = std::abs(geom::cross(n[j], n[k]));
                bj = j;
                bk = k;
            }
    if (best < 1e-9) throw std::runtime_error("degenerate hexagon: side normals are nearly parallel");
    const double det = geom::cross(n[bj], n[bk]);
    const Point2 x{(c[bj] * n[bk].y - c[bk] * n[bj].y) / det, (n[bj].x * c[bk] - n[bk].x * c[bj]) / det};
    return {theta, x, reflected};
}

std::vector<Placement> enumerate_placements(const ConstantWidthShape &shape, const ParallelHexagon &hex,
                                            bool allowReflection) {
    if (shape.kind == ConstantWidthShape::Kind::circle) return {Placement{0.0, {0.0, 0.0}, false}};
    std::vector<Placement> out;
    for (double r : find_roots(shape, hex).roots) out.push_back(placement_from_root(shape, hex, r, false));
    if (allowReflection && !shape.bilaterallySymmetric)
        for (double r : find_roots(shape, hex, 1e-12, true).roots) out.push_back(placement_from_root(shape, hex, r, true));
    return out;
}

bool admissible(const Placement &pl, const ConstantWidthShape &shape, const ParallelHexagon &hex,
                const std::optional<PalCut> &cut) {
    if (!cut) return true;
    for (const Point2 m : cut->normals(hex))
        if (placed_support(shape, pl, geom::angle_of(m)) > 0.5 + geom::Tolerance::containment) return false;
    return true;
}

double verify_containment(const ConstantWidthShape &shape, const Placement &pl, const ParallelHexagon &hex,
                          const std::optional<PalCut> &cut, int segmentsPerArc) {
    std::vector<Point2> dirs;
    for (const Point2 n : hex.normals()) {
        dirs.push_back(n);
        dirs.push_back(-n);
    }
    if (cut)
        for (const Point2 m : cut->normals(hex)) dirs.push_back(m);
    double worst = -1e300;
    for (const Point2 p : placed_points(shape, pl, segmentsPerArc))
        for (const Point2 d : dirs) worst = std::max(worst, geom::dot(p, d) - 0.5);
    return worst;
}

std::vector<Placement> admissible_placements(const ConstantWidthShape &shape, const ParallelHexagon &hex,
                                             const std::optional<PalCut> &cut, bool allowReflection) {
    std::vector<Placement> out;
    for (const auto &pl : enumerate_placements(shape, hex, allowReflection))
        if (admissible(pl, shape, hex, cut)) out.push_back(pl);
    return out;
}

}  // namespace lebesgue::hexfit
