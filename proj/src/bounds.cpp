#include "lebesgue/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "lebesgue/hexfit.hpp"
#include "plane.hpp"

namespace lebesgue::bounds {

using plane::V;

namespace {

using enum plane::Letter;
constexpr const char *kLetters = "ABCDEF";

template <class T>
using Frame = plane::HexFrame<T>;

template <class T>
T triangle_area(const V<T> &a, const V<T> &b, const V<T> &c) {
    using std::abs;
    return abs(plane::cross(b - a, c - a)) / 2;
}

template <class T>
T pal_cut(const T &sigma) {
    using std::sqrt;
    Frame<T> f(sigma);
    return sqrt(T(3)) / 2 - triangle_area(f.c1[E], f.c2[E], f.c3[E]) - triangle_area(f.c1[C], f.c2[C], f.c3[C]);
}

// First point along a->b (from a) at distance one from c.
template <class T>
std::optional<V<T>> enter_unit_circle(const V<T> &a, const V<T> &b, const V<T> &c) {
    auto r = plane::line_circle<T>(a, b - a, c);
    if (!r) return std::nullopt;
    return a + (b - a) * r->first;
}

template <class T>
V<T> point_G(const Frame<T> &f) {
    auto g = plane::on_segment_at<T>(f.c3[D], f.c2[C], f.c3[F]);
    if (!g) throw ConstructionError("no point on D3C2 at distance one from F3");
    return *g;
}

template <class T>
struct Built {
    plane::Loop<T> loop;
    T area = 0;
    bool empty = true;
};

template <class T>
Built<T> build_C2(const T &sigma) {
    Frame<T> f(sigma);
    Built<T> out;
    const V<T> F3 = f.c3[F], C2 = f.c2[C];
    if (plane::dist(C2, F3) <= 1) return out;
    const V<T> G = point_G(f);
    // The C cut is parallel to the F cut at distance one, so the arc about F3
    // touches it at the foot of the perpendicular.
    const V<T> K = F3 + f.cut[C];
    out.loop.line_to(G);
    out.loop.line_to(C2);
    out.loop.arc_to(K, F3);
    out.area = out.loop.area();
    out.empty = false;
    return out;
}

template <class T>
Built<T> build_A1(const T &sigma) {
    Frame<T> f(sigma);
    Built<T> out;
    const V<T> G = point_G(f), E3 = f.c3[E], A1 = f.c1[A];
    const V<T> TG = G + plane::unit_deg<T>(T(150));
    const V<T> TE = E3 + plane::unit_deg<T>(T(210));
    auto X = plane::unit_circles<T>(G, E3, A1);
    if (!X) throw ConstructionError("arcs about G and E3 do not meet");
    out.loop.line_to(TG);
    out.loop.line_to(A1);
    out.loop.arc_to(TE, E3);
    out.loop.arc_to(*X, G);
    out.area = out.loop.area();
    out.empty = false;
    return out;
}

template <class T>
struct E2Parts {
    Built<T> outsideC3, outsideB3, overlap;
    T area = 0;
};

template <class T>
E2Parts<T> build_E2(const T &sigma) {
    Frame<T> f(sigma);
    E2Parts<T> out;
    const V<T> E2 = f.c2[E], E3 = f.c3[E], F1 = f.c1[F], B3 = f.c3[B], C3 = f.c3[C];
    const V<T> up{T(0), T(1)};
    const bool hasC = plane::dist(E2, C3) > 1;
    const bool hasB = plane::dist(E2, B3) > 1;
    V<T> T1, I1, T2, I2;
    if (hasC) {
        T1 = C3 + up;
        auto i1 = enter_unit_circle<T>(E2, E3, C3);
        if (!i1) throw ConstructionError("arc about C3 misses the cut at E");
        I1 = *i1;
        auto &l = out.outsideC3.loop;
        l.line_to(T1);
        l.line_to(E2);
        l.arc_to(I1, C3);
        out.outsideC3.area = l.area();
        out.outsideC3.empty = false;
    }
    if (hasB) {
        T2 = B3 + f.cut[E];
        auto i2 = enter_unit_circle<T>(E2, F1, B3);
        if (!i2) throw ConstructionError("arc about B3 misses the top side");
        I2 = *i2;
        auto &l = out.outsideB3.loop;
        l.line_to(T2);
        l.line_to(E2);
        l.arc_to(I2, B3);
        out.outsideB3.area = l.area();
        out.outsideB3.empty = false;
    }
    if (hasB && hasC) {
        if (plane::dist(E2, I2) > plane::dist(E2, T1) || plane::dist(E2, I1) > plane::dist(E2, T2))
            throw ConstructionError("boomerang arms are not nested as expected");
        auto X = plane::unit_circles<T>(B3, C3, E2);
        if (!X) throw ConstructionError("arcs about B3 and C3 do not meet near E2");
        // E2 -> I2, arc about B3 to X, arc about C3 to I1, back to E2.
        auto &l = out.overlap.loop;
        l.pts = {E2, I2, *X, I1};
        l.centers = {std::nullopt, B3, C3, std::nullopt};
        out.overlap.area = l.area();
        out.overlap.empty = false;
    }
    out.area = out.outsideC3.area + out.outsideB3.area - out.overlap.area;
    return out;
}

template <class T>
struct XYZWParts {
    V<T> M, Q, G, N, W, X, Y, Z, Tpt;
    plane::Loop<T> region, cap;
    T area = 0, capArea = 0;
};

template <class T>
XYZWParts<T> build_XYZW(const T &sigma) {
    using std::acos;
    using std::atan2;
    Frame<T> f(sigma);
    XYZWParts<T> o;
    const V<T> axis = plane::unit_deg<T>(T(30));
    const V<T> A1 = f.c1[A];
    o.M = axis / T(2);
    o.Q = plane::reflect<T>(f.c3[F], axis);
    o.G = point_G(f);
    o.N = f.c3[E];
    auto W = plane::unit_circles<T>(o.M, o.G, A1);
    auto X = plane::unit_circles<T>(o.G, o.N, A1);
    auto Y = plane::unit_circles<T>(o.N, o.Q, A1);
    auto Z = plane::unit_circles<T>(o.Q, o.M, A1);
    if (!W || !X || !Y || !Z) throw ConstructionError("the four arcs bounding XYZW do not meet");
    o.W = *W;
    o.X = *X;
    o.Y = *Y;
    o.Z = *Z;
    o.region.pts = {o.W, o.X, o.Y, o.Z};
    o.region.centers = {o.G, o.N, o.Q, o.M};
    o.area = o.region.area();

    // Bridge from W tangent to the arc about Q between Z and Y.
    const V<T> wq = o.W - o.Q;
    const T d = plane::norm(wq);
    const T base = atan2(wq.y, wq.x);
    const T alpha = acos(1 / d);
    const V<T> z = o.Z - o.Q, y = o.Y - o.Q;
    const T span = atan2(plane::cross(z, y), plane::dot(z, y));
    std::optional<V<T>> tangent;
    for (int s : {-1, 1}) {
        const V<T> cand = o.Q + plane::unit<T>(base + alpha * T(s));
        const V<T> c = cand - o.Q;
        const T pos = atan2(plane::cross(z, c), plane::dot(z, c));
        if ((span > 0 && pos >= 0 && pos <= span) || (span < 0 && pos <= 0 && pos >= span)) tangent = cand;
    }
    o.Tpt = tangent ? *tangent : o.Y;
    o.cap.pts = {o.W, o.Z, o.Tpt};
    o.cap.centers = {o.M, o.Q, std::nullopt};
    o.capArea = o.cap.area();
    return o;
}

double dist_to_segment(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    double t = geom::dot(p - a, ab) / geom::norm2(ab);
    t = std::clamp(t, 0.0, 1.0);
    return geom::dist(p, a + ab * t);
}

double dist_to_triangle(Point2 p, Point2 a, Point2 b, Point2 c) {
    const double s1 = geom::cross(b - a, p - a), s2 = geom::cross(c - b, p - b), s3 = geom::cross(a - c, p - c);
    if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) return 0.0;
    return std::min({dist_to_segment(p, a, b), dist_to_segment(p, b, c), dist_to_segment(p, c, a)});
}

struct DFrame {
    Frame<double> f;
    explicit DFrame(double s) : f(s) {}
    Point2 p1(int i) const { return plane::to_point(f.c1[i]); }
    Point2 p2(int i) const { return plane::to_point(f.c2[i]); }
    Point2 p3(int i) const { return plane::to_point(f.c3[i]); }
    Point2 n(int i) const { return plane::to_point(f.cut[i]); }
};

// Inside the hexagon with corners E and C cut, with a strictness margin.
bool in_cut_hexagon(const DFrame &f, Point2 p, double margin = 1e-12) {
    for (int k = 0; k < 6; ++k)
        if (geom::dot(p, geom::unit(geom::deg2rad(30.0 + 60.0 * k))) > 0.5 - margin) return false;
    return geom::dot(p, f.n(E)) < 0.5 - margin && geom::dot(p, f.n(C)) < 0.5 - margin;
}

constexpr double kStrict = 1e-12;

template <class T>
RemovableRegion finish(RegionName name, const Built<T> &b, std::string why, std::function<bool(Point2)> contains) {
    RemovableRegion r;
    r.name = name;
    if (!b.empty) r.boundary = b.loop.to_arcpolygon();
    r.justification = std::move(why);
    r.area = static_cast<double>(b.area);
    r.areaExtended = Real(b.area);
    r.contains = std::move(contains);
    return r;
}

template <class T>
RemovableRegion region_C2_t(double sigma) {
    const auto b = build_C2<T>(T(sigma));
    auto f = std::make_shared<DFrame>(sigma);
    auto contains = [f](Point2 p) {
        if (!in_cut_hexagon(*f, p) || geom::dist(p, f->p2(C)) > 0.05) return false;
        return dist_to_triangle(p, f->p1(F), f->p2(F), f->p3(F)) > 1.0 + kStrict;
    };
    return finish(RegionName::nearC2, b, "points further than one from corner triangle F", contains);
}

template <class T>
RemovableRegion region_A1_t(double sigma) {
    const auto b = build_A1<T>(T(sigma));
    auto f = std::make_shared<DFrame>(sigma);
    const Point2 G = plane::to_point(point_G(f->f));
    auto contains = [f, G](Point2 p) {
        if (!in_cut_hexagon(*f, p) || geom::dist(p, f->p1(A)) > 0.3) return false;
        return dist_to_segment(p, f->p1(D), f->p3(E)) > 1.0 + kStrict ||
               dist_to_segment(p, f->p1(D), G) > 1.0 + kStrict;
    };
    return finish(RegionName::nearA1, b, "outside the unit arcs about E3 and G", contains);
}

template <class T>
RemovableRegion region_E2_t(double sigma) {
    const auto parts = build_E2<T>(T(sigma));
    auto f = std::make_shared<DFrame>(sigma);
    auto contains = [f](Point2 p) {
        if (!in_cut_hexagon(*f, p) || geom::dist(p, f->p2(E)) > 0.05) return false;
        return dist_to_segment(p, f->p2(B), f->p3(C)) > 1.0 + kStrict ||
               dist_to_triangle(p, f->p1(B), f->p2(B), f->p3(B)) > 1.0 + kStrict;
    };
    Built<T> b;
    b.area = parts.area;
    if (!parts.outsideC3.empty && !parts.outsideB3.empty) {
        const auto &c = parts.outsideC3.loop;  // T1, E2, I1
        const auto &bb = parts.outsideB3.loop;  // T2, E2, I2
        const auto &ov = parts.overlap.loop;    // E2, I2, X, I1
        // T1 -> E2 -> T2, then the arc about B3 to X and the arc about C3 home.
        b.loop.pts = {c.pts[0], c.pts[1], bb.pts[0], ov.pts[2]};
        b.loop.centers = {std::nullopt, std::nullopt, bb.centers[2], c.centers[2]};
        b.empty = false;
    } else if (!parts.outsideC3.empty) {
        b.loop = parts.outsideC3.loop;
        b.empty = false;
    } else if (!parts.outsideB3.empty) {
        b.loop = parts.outsideB3.loop;
        b.empty = false;
    }
    return finish(RegionName::nearE2, b, "further than one from segment B2C3 or from corner triangle B", contains);
}

template <class T>
RemovableRegion region_XYZW_t(double sigma, bool convexOnly) {
    const auto o = build_XYZW<T>(T(sigma));
    auto f = std::make_shared<DFrame>(sigma);
    const Point2 M = plane::to_point(o.M), Q = plane::to_point(o.Q), G = plane::to_point(o.G),
                 N = plane::to_point(o.N), W = plane::to_point(o.W), Tp = plane::to_point(o.Tpt),
                 X = plane::to_point(o.X);
    const double keepSide = geom::cross(Tp - W, X - W);
    auto contains = [=](Point2 p) {
        if (!in_cut_hexagon(*f, p) || geom::dist(p, f->p1(A)) > 0.2) return false;
        const bool inside = geom::dist(p, M) > 1.0 + kStrict && geom::dist(p, Q) > 1.0 + kStrict &&
                            geom::dist(p, G) < 1.0 - kStrict && geom::dist(p, N) < 1.0 - kStrict;
        if (!inside || !convexOnly) return inside;
        return geom::cross(Tp - W, p - W) * keepSide > kStrict;
    };
    Built<T> b;
    b.empty = false;
    if (!convexOnly) {
        b.loop = o.region;
        b.area = o.area;
    } else {
        // W -> arc G -> X -> arc N -> Y -> (arc Q back to T when T differs) -> W.
        b.loop.pts = {o.W, o.X, o.Y};
        b.loop.centers = {o.G, o.N, std::nullopt};
        if (plane::dist(o.Tpt, o.Y) > T(0)) {
            b.loop.centers[2] = o.Q;
            b.loop.pts.push_back(o.Tpt);
            b.loop.centers.push_back(std::nullopt);
        }
        b.area = o.area - o.capArea;
    }
    return finish(RegionName::XYZW, b,
                  convexOnly ? "part of XYZW whose removal keeps the cover convex"
                             : "bounded by the unit arcs about M, G, Q and N",
                  contains);
}

template <class T>
T cover_basic_t(const T &sigma) {
    return pal_cut<T>(sigma) - build_C2<T>(sigma).area - build_A1<T>(sigma).area - build_E2<T>(sigma).area;
}

template <class T>
T cover_reflected_t(const T &sigma, bool convexOnly) {
    const auto o = build_XYZW<T>(sigma);
    return cover_basic_t<T>(sigma) - (convexOnly ? o.area - o.capArea : o.area);
}

Point2 centroid_of(const RemovableRegion &r) {
    const auto pts = r.boundary.sample(16);
    Point2 c;
    for (const auto &p : pts) c += p;
    return pts.empty() ? c : c / static_cast<double>(pts.size());
}

}  // namespace

Point2 LabeledFrame::at(const std::string &label) const {
    auto it = points.find(label);
    if (it == points.end()) throw std::out_of_range("unknown label " + label);
    return it->second;
}

LabeledFrame labeled_frame(double sigma) {
    LabeledFrame lf;
    lf.sigma = sigma;
    DFrame f(sigma);
    for (int i = 0; i < 6; ++i) {
        const std::string L(1, kLetters[i]);
        lf.points[L + "1"] = f.p1(i);
        lf.points[L + "2"] = f.p2(i);
        lf.points[L + "3"] = f.p3(i);
    }
    lf.cutNormalE = f.n(E);
    lf.cutNormalC = f.n(C);
    const auto G = point_G(f.f);
    lf.points["G"] = plane::to_point(G);
    lf.points["K"] = plane::to_point(f.f.c3[F] + f.f.cut[C]);
    const auto pent = critical_pentagon(sigma);
    lf.points["H"] = pent.vertices[4];
    lf.points["J"] = pent.vertices[2];
    try {
        const auto o = build_XYZW<double>(sigma);
        lf.points["M"] = plane::to_point(o.M);
        lf.points["Q"] = plane::to_point(o.Q);
        lf.points["N"] = plane::to_point(o.N);
        lf.points["W"] = plane::to_point(o.W);
        lf.points["X"] = plane::to_point(o.X);
        lf.points["Y"] = plane::to_point(o.Y);
        lf.points["Z"] = plane::to_point(o.Z);
        lf.points["T"] = plane::to_point(o.Tpt);
    } catch (const ConstructionError &) {
    }
    return lf;
}

std::string to_string(RegionName n) {
    switch (n) {
        case RegionName::cornerE: return "cornerE";
        case RegionName::cornerC: return "cornerC";
        case RegionName::nearC2: return "nearC2";
        case RegionName::nearA1: return "nearA1";
        case RegionName::nearE2: return "nearE2";
        case RegionName::XYZW: return "XYZW";
        case RegionName::hansenA2: return "hansenA2";
        case RegionName::hansenA3: return "hansenA3";
        case RegionName::heptagonE2: return "heptagonE2";
        case RegionName::heptagonC3: return "heptagonC3";
    }
    return "unknown";
}

double pal_hexagon_area() { return std::sqrt(3.0) / 2.0; }

double pal_cut_area(double sigma) { return pal_cut<double>(sigma); }

Real pal_cut_area_extended(const Real &sigma) { return pal_cut<Real>(sigma); }

widthcurves::ConstantWidthShape critical_pentagon(double sigma) {
    Frame<Real> f{Real(sigma)};
    const V<Real> F3 = f.c3[F], E3 = f.c3[E];
    const V<Real> G = point_G(f);
    auto J = plane::unit_circles<Real>(G, E3, f.c1[A]);
    auto H = plane::unit_circles<Real>(E3, F3, f.c2[B]);
    if (!J || !H) throw ConstructionError("critical pentagon cannot be closed");
    std::vector<Point2> star{plane::to_point(F3), plane::to_point(G), plane::to_point(*J), plane::to_point(E3),
                             plane::to_point(*H)};
    return widthcurves::from_star_vertices(star, "critical-pentagon");
}

RemovableRegion corner_region(double sigma, char corner) {
    const int i = corner == 'E' ? E : C;
    Frame<Real> f{Real(sigma)};
    Built<Real> b;
    b.loop.pts = {f.c1[i], f.c2[i], f.c3[i]};
    b.loop.centers = {std::nullopt, std::nullopt, std::nullopt};
    b.area = b.loop.area();
    b.empty = false;
    auto df = std::make_shared<DFrame>(sigma);
    auto contains = [df, i](Point2 p) {
        for (int k = 0; k < 6; ++k)
            if (geom::dot(p, geom::unit(geom::deg2rad(30.0 + 60.0 * k))) > 0.5 - kStrict) return false;
        return geom::dot(p, df->n(i)) > 0.5 + kStrict;
    };
    return finish(i == E ? RegionName::cornerE : RegionName::cornerC, b, "cut by a line tangent to the inscribed circle",
                  contains);
}

RemovableRegion region_near_C2(double sigma, Precision p) {
    return p == Precision::extended ? region_C2_t<Real>(sigma) : region_C2_t<double>(sigma);
}

RemovableRegion region_near_A1(double sigma, Precision p) {
    return p == Precision::extended ? region_A1_t<Real>(sigma) : region_A1_t<double>(sigma);
}

RemovableRegion region_near_E2(double sigma, Precision p) {
    return p == Precision::extended ? region_E2_t<Real>(sigma) : region_E2_t<double>(sigma);
}

RemovableRegion region_XYZW(double sigma, bool convexOnly, Precision p) {
    if (!(sigma > 0.0 && sigma < geom::deg2rad(9.0))) throw ConstructionError("XYZW needs a slant in (0, 9) degrees");
    return p == Precision::extended ? region_XYZW_t<Real>(sigma, convexOnly) : region_XYZW_t<double>(sigma, convexOnly);
}

double cover_area_basic(double sigma, Precision p) {
    if (p == Precision::extended) return static_cast<double>(cover_basic_t<Real>(Real(sigma)));
    return cover_basic_t<double>(sigma);
}

double cover_area_reflected(double sigma, bool convexOnly, Precision p) {
    if (p == Precision::extended) return static_cast<double>(cover_reflected_t<Real>(Real(sigma), convexOnly));
    return cover_reflected_t<double>(sigma, convexOnly);
}

void assert_disjoint(const std::vector<RemovableRegion> &regions, int samplesPerPiece) {
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const auto &pieces = regions[i].boundary.pieces;
        if (pieces.empty()) continue;
        // Boundaries run counterclockwise, so the interior is on the left.
        // Corners are skipped; regions may be nonconvex and only touch there.
        std::vector<Point2> probes;
        for (const auto &pc : pieces) {
            for (int k = 1; k < samplesPerPiece; ++k) {
                const double f = static_cast<double>(k) / samplesPerPiece;
                Point2 at, tangent;
                double scale;
                if (const auto *seg = std::get_if<geom::Segment>(&pc)) {
                    at = seg->a + (seg->b - seg->a) * f;
                    tangent = seg->b - seg->a;
                    scale = geom::norm(tangent);
                } else {
                    const auto &arc = std::get<geom::ArcSegment>(pc);
                    at = arc.at(f);
                    const Point2 r = at - arc.center;
                    tangent = arc.sweep() > 0 ? Point2{-r.y, r.x} : Point2{r.y, -r.x};
                    scale = std::abs(arc.sweep()) * arc.radius;
                }
                const double len = geom::norm(tangent);
                if (len == 0.0) continue;
                // Thin slivers need a shorter step; keep only probes that the
                // region itself accepts.
                const Point2 inward = Point2{-tangent.y, tangent.x} * (1.0 / len);
                for (double eps = 1e-6 * scale; eps > 1e-15; eps *= 0.125) {
                    const Point2 q = at + inward * eps;
                    if (!regions[i].contains || regions[i].contains(q)) {
                        probes.push_back(q);
                        break;
                    }
                }
            }
        }
        for (std::size_t j = 0; j < regions.size(); ++j) {
            if (i == j || !regions[j].contains) continue;
            for (const auto &q : probes) {
                if (regions[j].contains(q)) {
                    std::ostringstream msg;
                    msg << "regions " << to_string(regions[i].name) << " and " << to_string(regions[j].name)
                        << " overlap near (" << q.x << ", " << q.y << ")";
                    throw RegionOverlap(msg.str());
                }
            }
        }
    }
}

CoverConstruction build_construction(double sigma, bool useReflections, bool convexOnly, Precision p) {
    CoverConstruction cc;
    cc.sigma = sigma;
    cc.useReflections = useReflections;
    cc.convexOnly = convexOnly;
    cc.hexagonArea = pal_hexagon_area();
    cc.regions.push_back(corner_region(sigma, 'E'));
    cc.regions.push_back(corner_region(sigma, 'C'));
    cc.regions.push_back(region_near_C2(sigma, p));
    cc.regions.push_back(region_near_A1(sigma, p));
    cc.regions.push_back(region_near_E2(sigma, p));
    if (useReflections && sigma > 0.0) cc.regions.push_back(region_XYZW(sigma, convexOnly, p));
    assert_disjoint(cc.regions);
    Real total = sqrt(Real(3)) / 2;
    for (const auto &r : cc.regions) total -= r.areaExtended;
    cc.areaExtended = total;
    cc.area = static_cast<double>(total);
    return cc;
}

namespace {

template <class T>
std::vector<T> hansen_xs(int upto) {
    using std::sqrt;
    std::vector<T> x{1 - sqrt(T(3)) / 2};
    for (int i = 0; i < upto; ++i) {
        const T xi = x.back();
        const T rad = 1 - 2 * sqrt(T(3)) * xi - xi * xi;
        if (rad <= 0) throw std::domain_error("Hansen recurrence left its domain");
        x.push_back(2 * xi * xi / (1 - sqrt(T(3)) * xi + sqrt(rad)));
    }
    return x;
}

template <class T>
T hansen_area_t(int i) {
    using std::asin;
    using std::sqrt;
    if (i < 1) throw std::domain_error("hansen_area needs i >= 1");
    const auto x = hansen_xs<T>(i + 1);
    const T a = x[i], b = x[i + 1];
    const T d = sqrt(b * b / 4 + (a + sqrt(T(3)) / 2 * b) * (a + sqrt(T(3)) / 2 * b));
    const T theta = 2 * asin(d / 2);
    // theta - sin(theta), without the customary one half.
    return a * b / 4 - 2 * plane::segment_area<T>(theta);
}

}  // namespace

Real hansen_x_sequence(int i) {
    if (i < 0) throw std::domain_error("index must be non-negative");
    return hansen_xs<Real>(i).back();
}

double hansen_x_sequence_double(int i) {
    if (i < 0) throw std::domain_error("index must be non-negative");
    return hansen_xs<double>(i).back();
}

Real hansen_area(int i) { return hansen_area_t<Real>(i); }
double hansen_area_double(int i) { return hansen_area_t<double>(i); }

std::vector<SlantRow> scan_cover(double fromDeg, double toDeg, double stepDeg, bool convexOnly) {
    std::vector<SlantRow> rows;
    const int n = static_cast<int>(std::floor((toDeg - fromDeg) / stepDeg + 1e-9));
    for (int k = 0; k <= n; ++k) {
        const double s = fromDeg + k * stepDeg;
        const double rad = geom::deg2rad(s);
        SlantRow r{s, cover_area_basic(rad), 0.0};
        r.coverAreaReflected = rad > 0.0 ? cover_area_reflected(rad, convexOnly) : r.coverAreaBasic;
        rows.push_back(r);
    }
    return rows;
}

SlantMinimum minimize_cover(double fromDeg, double toDeg, double stepDeg, bool convexOnly) {
    const auto rows = scan_cover(fromDeg, toDeg, stepDeg, convexOnly);
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].coverAreaReflected < rows[best].coverAreaReflected) best = i;
    double lo = std::max(fromDeg, rows[best].sigmaDegrees - stepDeg);
    double hi = std::min(toDeg, rows[best].sigmaDegrees + stepDeg);
    if (lo <= 0.0) lo = std::min(1e-9, hi);
    auto g = [&](double s) { return cover_area_reflected(geom::deg2rad(s), convexOnly); };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = g(a), fb = g(b);
    for (int it = 0; it < 80 && hi - lo > 1e-9; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = g(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = g(b);
        }
    }
    const double s = 0.5 * (lo + hi);
    const double v = g(s);
    if (v < rows[best].coverAreaReflected) return {s, v};
    return {rows[best].sigmaDegrees, rows[best].coverAreaReflected};
}

AuditReport monte_carlo_region_audit(const CoverConstruction &construction,
                                     const std::vector<widthcurves::ConstantWidthShape> &pool, int samplesPerArc,
                                     double inflate) {
    AuditReport rep;
    const auto hex = hexfit::ParallelHexagon::regular();
    const hexfit::PalCut cut{construction.sigma};
    std::vector<std::function<bool(Point2)>> tests;
    std::vector<RegionName> names;
    for (const auto &r : construction.regions) {
        if (!r.contains) continue;
        if (inflate == 1.0) {
            tests.push_back(r.contains);
        } else {
            const Point2 c = centroid_of(r);
            auto inner = r.contains;
            tests.push_back([c, inner, inflate](Point2 p) { return inner(c + (p - c) / inflate); });
        }
        names.push_back(r.name);
    }
    for (const auto &shape : pool) {
        ++rep.shapesChecked;
        const auto placements = hexfit::admissible_placements(shape, hex, cut, true);
        std::optional<AuditViolation> witness;
        bool clean = false;
        for (const auto &pl : placements) {
            ++rep.placementsChecked;
            std::optional<AuditViolation> hit;
            for (const Point2 p : hexfit::placed_points(shape, pl, samplesPerArc)) {
                for (std::size_t k = 0; k < tests.size() && !hit; ++k)
                    if (tests[k](p)) hit = AuditViolation{shape.label, names[k], p};
                if (hit) break;
            }
            if (!hit) {
                clean = true;
                break;
            }
            if (!witness) witness = hit;
        }
        if (!clean) {
            if (!witness) witness = AuditViolation{shape.label, RegionName::cornerE, {0.0, 0.0}};
            rep.violations.push_back(*witness);
        }
    }
    return rep;
}

}  // namespace lebesgue::bounds
