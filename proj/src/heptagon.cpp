#include "lebesgue/heptagon.hpp"

#include <cmath>
#include <memory>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "plane.hpp"

namespace lebesgue::heptagon {

using plane::V;
using enum plane::Letter;
using Vec = V<Real>;
using Unknowns = std::array<Real, 9>;

namespace {

const Real kHalf = Real(1) / 2;

struct Pieces {
    Vec L, M, N, P, v4, v5, v6;
};

Pieces unpack(const plane::HexFrame<Real> &f, const Unknowns &z) {
    Pieces p;
    p.L = {z[0], kHalf};
    p.P = {z[0], -kHalf};
    p.M = f.c1[D] + (f.c1[E] - f.c1[D]) * z[1];
    p.N = f.c1[D] + (f.c1[C] - f.c1[D]) * z[2];
    p.v4 = {z[3], z[4]};
    p.v5 = {z[5], z[6]};
    p.v6 = {z[7], z[8]};
    return p;
}

Unknowns residual(const plane::HexFrame<Real> &f, const Unknowns &z) {
    const Pieces p = unpack(f, z);
    return {plane::dist(p.v4, p.L) - 1, plane::dist(p.v4, p.M) - 1, plane::dot(p.v4, f.cut[E]) + kHalf,
            plane::dist(p.v5, p.M) - 1, plane::dist(p.v5, p.N) - 1, plane::dot(p.v5, f.cut[D]) + kHalf,
            plane::dist(p.v6, p.N) - 1, plane::dist(p.v6, p.P) - 1, plane::dot(p.v6, f.cut[C]) + kHalf};
}

Real max_abs(const Unknowns &r) {
    Real m = 0;
    for (const auto &x : r) m = std::max(m, Real(abs(x)));
    return m;
}

// Dense Gaussian elimination with partial pivoting.
Unknowns gauss(std::array<Unknowns, 9> a, Unknowns b) {
    for (int c = 0; c < 9; ++c) {
        int piv = c;
        for (int r = c + 1; r < 9; ++r)
            if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        if (a[c][c] == 0) throw bounds::ConstructionError("singular heptagon Jacobian");
        for (int r = c + 1; r < 9; ++r) {
            const Real k = a[r][c] / a[c][c];
            for (int j = c; j < 9; ++j) a[r][j] -= k * a[c][j];
            b[r] -= k * b[c];
        }
    }
    Unknowns x{};
    for (int r = 8; r >= 0; --r) {
        Real s = b[r];
        for (int j = r + 1; j < 9; ++j) s -= a[r][j] * x[j];
        x[r] = s / a[r][r];
    }
    return x;
}

Unknowns initial_guess() {
    return {Real("0.134"), Real("0.27"), Real("0.27"), Real("-0.39"), Real("-0.38"),
            Real("-0.5"),  Real("0.0"),  Real("-0.39"), Real("0.38")};
}

CriticalHeptagon assemble(double sigma, const Unknowns &z) {
    plane::HexFrame<Real> f{Real(sigma)};
    const Pieces p = unpack(f, z);
    CriticalHeptagon h;
    h.sigma = sigma;
    h.unknowns = z;
    h.L = plane::to_point(p.L);
    h.M = plane::to_point(p.M);
    h.N = plane::to_point(p.N);
    h.P = plane::to_point(p.P);
    h.v4 = plane::to_point(p.v4);
    h.v5 = plane::to_point(p.v5);
    h.v6 = plane::to_point(p.v6);
    h.shape = widthcurves::from_star_vertices({h.L, h.P, h.v6, h.N, h.v5, h.M, h.v4}, "critical-heptagon");
    return h;
}

}  // namespace

HeptagonTracker::HeptagonTracker(double stepDegrees) : step_(stepDegrees) {}

std::array<Real, 9> HeptagonTracker::solve(const Real &sigma, std::array<Real, 9> z) const {
    plane::HexFrame<Real> f{sigma};
    const Real tol("1e-44");
    const Real h("1e-28");
    Unknowns r = residual(f, z);
    for (int it = 0; it < 100 && max_abs(r) > tol; ++it) {
        std::array<Unknowns, 9> jac{};
        for (int j = 0; j < 9; ++j) {
            Unknowns zp = z;
            zp[j] += h;
            const Unknowns rp = residual(f, zp);
            for (int i = 0; i < 9; ++i) jac[i][j] = (rp[i] - r[i]) / h;
        }
        Unknowns rhs;
        for (int i = 0; i < 9; ++i) rhs[i] = -r[i];
        const Unknowns dz = gauss(jac, rhs);
        // Plain Newton steps. The solution moves fast near sigma = 0 and a
        // residual-decrease line search stalls there.
        for (int i = 0; i < 9; ++i) z[i] += dz[i];
        r = residual(f, z);
    }
    if (max_abs(r) > Real("1e-30")) throw bounds::ConstructionError("critical heptagon did not converge");
    return z;
}

CriticalHeptagon HeptagonTracker::at(double sigma) {
    if (sigma < 0.0) throw bounds::ConstructionError("critical heptagon is tracked for non-negative slant only");
    if (grid_.empty()) grid_.push_back(solve(Real(0), initial_guess()));
    const double deg = geom::rad2deg(sigma);
    const auto k = static_cast<std::size_t>(std::floor(deg / step_));
    while (grid_.size() <= k + 1) {
        const std::size_t n = grid_.size();
        Unknowns guess = grid_[n - 1];
        if (n >= 2)
            for (int i = 0; i < 9; ++i) guess[i] = 2 * grid_[n - 1][i] - grid_[n - 2][i];
        const Real s = plane::deg<Real>(Real(step_) * Real(static_cast<double>(n)));
        grid_.push_back(solve(s, guess));
    }
    const double frac = deg / step_ - static_cast<double>(k);
    if (frac == 0.0) return assemble(sigma, grid_[k]);
    Unknowns guess;
    for (int i = 0; i < 9; ++i) guess[i] = grid_[k][i] + Real(frac) * (grid_[k + 1][i] - grid_[k][i]);
    return assemble(sigma, solve(Real(sigma), guess));
}

CriticalHeptagon critical_heptagon(double sigma) {
    HeptagonTracker t;
    return t.at(sigma);
}

namespace {

// Region inside the wedge at vertex (spanned by unit directions d1, d2) and
// outside the unit disk about c.
plane::Loop<Real> wedge_outside_disk(const Vec &vertex, const Vec &d1, const Vec &d2, const Vec &c, Real &area) {
    plane::Loop<Real> loop;
    area = 0;
    if (plane::dist(vertex, c) <= 1) return loop;
    auto first_hit = [&](const Vec &d) {
        const Vec w = vertex - c;
        const Real b = plane::dot(w, d), cc = plane::dot(w, w) - 1;
        Real disc = b * b - cc;
        if (disc < 0) disc = 0;
        const Real s = sqrt(disc);
        const Real t1 = -b - s;
        return vertex + d * (t1 >= 0 ? t1 : -b + s);
    };
    const Vec a = first_hit(d1), b = first_hit(d2);
    loop.pts = {vertex, a, b};
    loop.centers = {std::nullopt, c, std::nullopt};
    area = loop.area();
    return loop;
}

Vec unit_vec(const Vec &v) { return v / plane::norm(v); }

bounds::RemovableRegion make_region(bounds::RegionName name, const plane::Loop<Real> &loop, const Real &area,
                                    double sigma, int corner, Point2 center) {
    bounds::RemovableRegion r;
    r.name = name;
    if (!loop.pts.empty()) r.boundary = loop.to_arcpolygon();
    r.justification = "wedge beyond the unit arc of the critical heptagon";
    r.area = static_cast<double>(area);
    r.areaExtended = area;
    auto f = std::make_shared<plane::HexFrame<double>>(sigma);
    r.contains = [f, corner, center](Point2 p) {
        for (int k = 0; k < 6; ++k)
            if (geom::dot(p, geom::unit(geom::deg2rad(30.0 + 60.0 * k))) > 0.5 - 1e-12) return false;
        for (int i : {int(C), int(E)})
            if (geom::dot(p, plane::to_point(f->cut[i])) > 0.5 - 1e-12) return false;
        return geom::dist(p, plane::to_point(f->c2[corner])) < 0.01 + geom::dist(plane::to_point(f->c2[corner]),
                                                                                     plane::to_point(f->c3[corner])) &&
               geom::dist(p, center) > 1.0 + 1e-12;
    };
    return r;
}

}  // namespace

HeptagonRegions heptagon_regions(double sigma, HeptagonTracker &tracker) {
    const CriticalHeptagon h = tracker.at(sigma);
    plane::HexFrame<Real> f{Real(sigma)};
    const Pieces p = unpack(f, h.unknowns);
    Real aE, aC;
    const auto lE = wedge_outside_disk(f.c2[E], unit_vec(f.c1[F] - f.c2[E]), unit_vec(f.c3[E] - f.c2[E]), p.v4, aE);
    const auto lC = wedge_outside_disk(f.c3[C], unit_vec(f.c1[B] - f.c3[C]), unit_vec(f.c2[C] - f.c3[C]), p.v6, aC);
    return {make_region(bounds::RegionName::heptagonE2, lE, aE, sigma, E, h.v4),
            make_region(bounds::RegionName::heptagonC3, lC, aC, sigma, C, h.v6)};
}

HeptagonRegions heptagon_regions(double sigma) {
    HeptagonTracker t;
    return heptagon_regions(sigma, t);
}

namespace {

Real angle_of(const Vec &v) { return atan2(v.y, v.x); }

// Clockwise angular distance from a to b in [0, 2pi).
Real cw_delta(const Real &a, const Real &b) {
    const Real two_pi = 2 * plane::pi<Real>();
    Real d = fmod(a - b, two_pi);
    if (d < 0) d += two_pi;
    return d;
}

// Unit arc from X turning clockwise, tangent to the line p . n = 1/2 (its
// centre on the opposite line p . n = -1/2), and the first point where it
// then crosses the side a-b.
std::optional<Vec> chain_step(const Vec &X, const Vec &n, const Vec &a, const Vec &b) {
    const Vec dir{-n.y, n.x};
    const Vec base = n * (-kHalf);
    const Vec w = base - X;
    const Real bb = plane::dot(w, dir), cc = plane::dot(w, w) - 1;
    Real disc = bb * bb - cc;
    if (disc < 0) {
        if (disc > Real("-1e-40")) disc = 0;
        else return std::nullopt;
    }
    const Real s = sqrt(disc);
    const Real halfPi = plane::pi<Real>() / 2;
    std::optional<std::pair<Real, Vec>> best;
    for (const Real &t : {-bb - s, -bb + s}) {
        const Vec c = base + dir * t;
        const Vec T = c + n;
        const Real aX = angle_of(X - c);
        const Real dT = cw_delta(aX, angle_of(T - c));
        if (dT > halfPi) continue;
        const Vec d = b - a, wa = a - c;
        const Real qa = plane::dot(d, d), qb = 2 * plane::dot(wa, d), qc = plane::dot(wa, wa) - 1;
        const Real qd = qb * qb - 4 * qa * qc;
        if (qd < 0) continue;
        const Real qs = sqrt(qd);
        for (const Real &u : {(-qb - qs) / (2 * qa), (-qb + qs) / (2 * qa)}) {
            if (u < Real("-1e-30") || u > 1 + Real("1e-30")) continue;
            const Vec m = a + d * u;
            const Real dM = cw_delta(aX, angle_of(m - c));
            if (dM >= dT && dM < halfPi && (!best || dM < best->first)) best = std::make_pair(dM, m);
        }
    }
    if (!best) return std::nullopt;
    return best->second;
}

struct ChainFrame {
    plane::HexFrame<Real> f;
    explicit ChainFrame(const Real &s) : f(s) {}

    std::optional<Real> margin(const Vec &X) const {
        const Real dy = X.y + kHalf;
        Real w2 = 1 - dy * dy;
        if (w2 < 0) w2 = 0;
        const auto M = chain_step(X, f.cut[E], f.c1[D], f.c1[E]);
        if (!M) return std::nullopt;
        const auto N = chain_step(*M, f.cut[D], f.c1[C], f.c1[D]);
        if (!N) return std::nullopt;
        const auto P = chain_step(*N, f.cut[C], f.c1[B], f.c1[C]);
        if (!P) return std::nullopt;
        return X.x - sqrt(w2) - P->x;
    }
};

}  // namespace

std::optional<Real> chain_margin(const Real &x, const Real &y, const Real &sigma) {
    return ChainFrame(sigma).margin({x, y});
}

bool a_type_excluded(Point2 X, double sigma) {
    const auto m = chain_margin(Real(X.x), Real(X.y), Real(sigma));
    return m && *m > 0;
}

Real chain_exclusion_area(double sigma) {
    const ChainFrame cf{Real(sigma)};
    const Vec E2 = cf.f.c2[E];
    Real a1 = angle_of(cf.f.c1[F] - E2), a2 = angle_of(cf.f.c3[E] - E2);
    const Real two_pi = 2 * plane::pi<Real>();
    if (a1 < 0) a1 += two_pi;
    while (a2 < a1) a2 += two_pi;
    auto excluded = [&](const Vec &p) {
        const auto m = cf.margin(p);
        return m && *m > 0;
    };
    auto rho = [&](const Real &phi) -> Real {
        const Vec d{cos(phi), sin(phi)};
        Real hi("1e-4");
        if (excluded(E2 + d * hi)) return hi;
        Real lo("1e-16");
        if (!excluded(E2 + d * lo)) return 0;
        for (int k = 0; k < 80; ++k) {
            const Real m = sqrt(lo * hi);
            if (excluded(E2 + d * m)) lo = m;
            else hi = m;
        }
        return lo;
    };
    boost::math::quadrature::tanh_sinh<Real> integrator(8);
    auto g = [&](const Real &phi) {
        const Real r = rho(phi);
        return r * r / 2;
    };
    const Real mid = (a1 + a2) / 2;
    const Real tol("1e-10");
    return integrator.integrate(g, a1, mid, tol) + integrator.integrate(g, mid, a2, tol);
}

Crossover find_crossover(double maxDegrees, double gridDegrees) {
    Crossover out;
    HeptagonTracker tracker;
    auto row_at = [&](double deg) {
        const double s = geom::deg2rad(deg);
        const auto hr = heptagon_regions(s, tracker);
        CrossoverRow row{deg, hr.nearE2.areaExtended, hr.nearC3.areaExtended,
                         bounds::region_near_E2(s, bounds::Precision::extended).areaExtended,
                         bounds::region_near_C2(s, bounds::Precision::extended).areaExtended};
        return row;
    };
    auto diff = [](const CrossoverRow &r) { return r.heptagonC3 - r.nearE2; };
    const int n = static_cast<int>(std::floor(maxDegrees / gridDegrees + 1e-9));
    for (int k = 0; k <= n; ++k) {
        out.rows.push_back(row_at(k * gridDegrees));
        if (k > 0 && !out.found && diff(out.rows[k - 1]) > 0 && diff(out.rows[k]) <= 0) {
            double lo = (k - 1) * gridDegrees, hi = k * gridDegrees;
            for (int it = 0; it < 30; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (diff(row_at(mid)) > 0) lo = mid;
                else hi = mid;
            }
            out.found = true;
            out.sigmaDegrees = 0.5 * (lo + hi);
        }
    }
    return out;
}

}  // namespace lebesgue::heptagon
