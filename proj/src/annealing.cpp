#include "lebesgue/annealing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace lebesgue::annealing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shape boundary relative to its reference point, counterclockwise, plus the
// mirrored copy (also counterclockwise).
struct LocalShape {
    std::vector<Point2> plain, mirrored;
    double diameter = 0.0;
};

LocalShape make_local(const ConstantWidthShape &shape, int segmentsPerArc) {
    LocalShape ls;
    for (Point2 p : widthcurves::discretize(shape, segmentsPerArc).vertices) ls.plain.push_back(p - shape.centerPoint);
    ls.mirrored.reserve(ls.plain.size());
    for (auto it = ls.plain.rbegin(); it != ls.plain.rend(); ++it) ls.mirrored.push_back({it->x, -it->y});
    ls.diameter = geom::diameter(ls.plain);
    return ls;
}

void place(const LocalShape &ls, const Pose &pose, std::vector<Point2> &out) {
    const auto &src = pose.reflected ? ls.mirrored : ls.plain;
    const double c = std::cos(pose.rotation), s = std::sin(pose.rotation);
    out.resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        out[i] = {c * src[i].x - s * src[i].y + pose.translation.x, s * src[i].x + c * src[i].y + pose.translation.y};
}

// Reorders a counterclockwise convex ring into lexicographic order in linear
// time by merging its lower and upper chains.
void ring_to_lex(const std::vector<Point2> &ring, std::vector<Point2> &out) {
    const std::size_t n = ring.size();
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (geom::lex_less(ring[i], ring[lo])) lo = i;
        if (geom::lex_less(ring[hi], ring[i])) hi = i;
    }
    out.clear();
    out.reserve(n);
    std::size_t a = lo, b = lo;  // a walks forward (lower chain), b backward (upper chain)
    out.push_back(ring[lo]);
    a = (a + 1) % n;
    b = (b + n - 1) % n;
    const std::size_t stopA = (hi + 1) % n;
    bool aDone = (a == stopA), bDone = (b == hi);
    while (!aDone || !bDone) {
        if (!bDone && (aDone || geom::lex_less(ring[b], ring[a]))) {
            out.push_back(ring[b]);
            b = (b + n - 1) % n;
            bDone = (b == hi);
        } else {
            out.push_back(ring[a]);
            a = (a + 1) % n;
            aDone = (a == stopA);
        }
    }
    if (!std::is_sorted(out.begin(), out.end(), geom::lex_less)) std::sort(out.begin(), out.end(), geom::lex_less);
}

class Evaluator {
public:
    Evaluator(const std::vector<ConstantWidthShape> &shapes, int segmentsPerArc) {
        for (const auto &s : shapes) locals_.push_back(make_local(s, segmentsPerArc));
        sorted_.resize(shapes.size());
    }

    void set(std::size_t i, const Pose &pose) {
        place(locals_[i], pose, ring_);
        ring_to_lex(ring_, sorted_[i]);
    }

    // Area with shape i temporarily replaced by the pose; commit() keeps it.
    double trial(std::size_t i, const Pose &pose) {
        place(locals_[i], pose, ring_);
        ring_to_lex(ring_, trial_);
        return area_with(i, trial_);
    }
    void commit(std::size_t i) { std::swap(sorted_[i], trial_); }

    double area() { return area_with(sorted_.size(), trial_); }

    bool rigid(std::size_t i, const Pose &pose) {
        place(locals_[i], pose, ring_);
        return std::abs(geom::diameter(ring_) - locals_[i].diameter) <= 1e-9;
    }

private:
    double area_with(std::size_t skip, const std::vector<Point2> &replacement) {
        auto less = [](Point2 a, Point2 b) { return geom::lex_less(a, b); };
        acc_.clear();
        for (std::size_t k = 0; k < sorted_.size(); ++k) {
            const auto &src = (k == skip) ? replacement : sorted_[k];
            tmp_.resize(acc_.size() + src.size());
            std::merge(acc_.begin(), acc_.end(), src.begin(), src.end(), tmp_.begin(), less);
            std::swap(acc_, tmp_);
        }
        return geom::sorted_hull(acc_, hull_);
    }

    std::vector<LocalShape> locals_;
    std::vector<std::vector<Point2>> sorted_;
    std::vector<Point2> ring_, trial_, acc_, tmp_, hull_;
};

struct RunOutput {
    AnnealState best;
    std::vector<LogRow> log;
};

RunOutput run_once(const std::vector<ConstantWidthShape> &shapes, const AnnealParams &params,
                   const std::vector<bool> &reflected, int restart, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    const std::size_t n = shapes.size();
    Evaluator ev(shapes, params.segmentsPerArc);

    std::vector<Pose> poses(n);
    for (std::size_t i = 0; i < n; ++i) {
        poses[i].rotation = geom::two_pi * unit01(rng);
        const double r = 0.05 * std::sqrt(unit01(rng)), a = geom::two_pi * unit01(rng);
        poses[i].translation = geom::unit(a) * r;
        poses[i].reflected = i < reflected.size() && reflected[i];
        ev.set(i, poses[i]);
    }
    double area = ev.area();
    RunOutput out;
    out.best = {poses, params.initialStep, area};

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    double step = params.initialStep;
    for (int epoch = 0; step >= params.minStep; ++epoch) {
        for (int k = 0; k < params.stepsPerEpoch; ++k) {
            const std::size_t i = pick(rng);
            Pose trial = poses[i];
            const double r = step * std::sqrt(unit01(rng)), a = geom::two_pi * unit01(rng);
            trial.translation += geom::unit(a) * r;
            trial.rotation += step * (2.0 * unit01(rng) - 1.0);
            const double next = ev.trial(i, trial);
            if (accept_move(next - area, params.acceptProbability, rng)) {
                ev.commit(i);
                poses[i] = trial;
                area = next;
                if (area < out.best.area) out.best = {poses, step, area};
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (!ev.rigid(i, poses[i])) throw std::logic_error("pose is no longer a rigid motion");
        out.log.push_back({restart, epoch, step, out.best.area});
        step *= params.stepDecay;
    }
    return out;
}

// Independent stream per (reflection assignment, restart).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(restart)};
    std::uint32_t w[2];
    seq.generate(w, w + 2);
    return (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
}

AnnealResult anneal_impl(const std::vector<ConstantWidthShape> &shapes, const AnnealParams &params,
                         const std::vector<bool> &reflected, std::uint64_t stream) {
    if (shapes.empty()) throw std::invalid_argument("annealing needs at least one shape");
    params.validate();
    std::vector<RunOutput> runs(static_cast<std::size_t>(params.restarts));
    std::atomic<int> next{0};
    auto work = [&]() {
        for (int r; (r = next.fetch_add(1)) < params.restarts;)
            runs[static_cast<std::size_t>(r)] =
                run_once(shapes, params, reflected, r, mix_seed(params.seed, stream, static_cast<std::uint64_t>(r)));
    };
    const int threads = std::clamp(params.threads, 1, params.restarts);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto &t : pool) t.join();
    }

    AnnealResult res;
    res.runs = params.restarts;
    double bestArea = kInf;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const double a = configuration_area(shapes, runs[r].best.poses, params.finalSegmentsPerArc);
        if (a < bestArea) {
            bestArea = a;
            res.best = runs[r].best;
            res.best.area = a;
            res.bestRestart = static_cast<int>(r);
        }
        res.log.insert(res.log.end(), runs[r].log.begin(), runs[r].log.end());
    }
    return res;
}

}  // namespace

void AnnealParams::validate() const {
    if (!(acceptProbability > 0.0 && acceptProbability < 1.0))
        throw std::invalid_argument("acceptProbability must lie in (0, 1)");
    if (!(stepDecay > 0.0 && stepDecay < 1.0)) throw std::invalid_argument("stepDecay must lie in (0, 1)");
    if (stepsPerEpoch < 1 || restarts < 1) throw std::invalid_argument("stepsPerEpoch and restarts must be positive");
    if (!(initialStep > 0.0) || !(minStep > 0.0)) throw std::invalid_argument("step sizes must be positive");
    if (segmentsPerArc < 1 || finalSegmentsPerArc < 1) throw std::invalid_argument("segmentsPerArc must be positive");
}

bool accept_move(double delta, double p, std::mt19937_64 &rng) {
    if (delta <= 0.0) return true;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

double configuration_area(const std::vector<ConstantWidthShape> &shapes, const std::vector<Pose> &poses,
                          int segmentsPerArc) {
    std::vector<Point2> all;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto pts = hexfit::placed_points(shapes[i], poses[i], segmentsPerArc);
        all.insert(all.end(), pts.begin(), pts.end());
    }
    std::sort(all.begin(), all.end(), geom::lex_less);
    std::vector<Point2> hull;
    return geom::sorted_hull(all, hull);
}

AnnealResult anneal(const std::vector<ConstantWidthShape> &shapes, const AnnealParams &params,
                    const std::vector<bool> &reflected) {
    return anneal_impl(shapes, params, reflected, 0);
}

AnnealResult anneal_with_reflections(const std::vector<ConstantWidthShape> &shapes, const AnnealParams &params) {
    std::vector<std::size_t> asym;
    for (std::size_t i = 0; i < shapes.size(); ++i)
        if (!shapes[i].bilaterallySymmetric) asym.push_back(i);
    if (asym.size() > 12) throw std::invalid_argument("more than twelve asymmetric shapes (2^n reflection runs)");
    AnnealResult best;
    best.best.area = kInf;
    const std::uint64_t combos = 1ULL << asym.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        std::vector<bool> refl(shapes.size(), false);
        for (std::size_t k = 0; k < asym.size(); ++k) refl[asym[k]] = (mask >> k) & 1ULL;
        AnnealResult r = anneal_impl(shapes, params, refl, mask);
        const int runs = best.runs + r.runs;
        best.log.insert(best.log.end(), r.log.begin(), r.log.end());
        if (r.best.area < best.best.area) {
            best.best = r.best;
            best.bestRestart = r.bestRestart;
        }
        best.runs = runs;
    }
    return best;
}

namespace {

struct Extent {
    double lo, hi;
};

Extent extent(const std::vector<Point2> &pts, double phi) {
    const Point2 n = geom::unit(phi);
    Extent e{kInf, -kInf};
    for (const Point2 p : pts) {
        const double v = geom::dot(p, n);
        e.lo = std::min(e.lo, v);
        e.hi = std::max(e.hi, v);
    }
    return e;
}

// Best centre for fixed side directions: minimises the largest of the six
// overshoots hi_i - c.n_i - 1/2 and c.n_i - lo_i - 1/2, a two-variable
// minimax of affine functions whose optimum sits where three of them tie.
std::pair<double, Point2> best_center(const std::vector<Point2> &pts, const std::array<double, 3> &phis) {
    std::array<Point2, 6> g;
    std::array<double, 6> b;
    for (int i = 0; i < 3; ++i) {
        const Point2 n = geom::unit(phis[static_cast<std::size_t>(i)]);
        const Extent e = extent(pts, phis[static_cast<std::size_t>(i)]);
        g[static_cast<std::size_t>(2 * i)] = -n;
        b[static_cast<std::size_t>(2 * i)] = e.hi - 0.5;
        g[static_cast<std::size_t>(2 * i + 1)] = n;
        b[static_cast<std::size_t>(2 * i + 1)] = -e.lo - 0.5;
    }
    auto value = [&](Point2 c) {
        double v = -kInf;
        for (std::size_t k = 0; k < 6; ++k) v = std::max(v, geom::dot(g[k], c) + b[k]);
        return v;
    };
    double best = kInf;
    Point2 arg;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            for (std::size_t k = j + 1; k < 6; ++k) {
                // g_i.c + b_i = g_j.c + b_j = g_k.c + b_k
                const Point2 r1 = g[i] - g[j], r2 = g[i] - g[k];
                const double det = geom::cross(r1, r2);
                if (std::abs(det) < 1e-12) continue;
                const double c1 = b[j] - b[i], c2 = b[k] - b[i];
                const Point2 c{(c1 * r2.y - c2 * r1.y) / det, (r1.x * c2 - r2.x * c1) / det};
                const double v = value(c);
                if (v < best) {
                    best = v;
                    arg = c;
                }
            }
    return {best, arg};
}

}  // namespace

std::optional<HexagonWitness> hexagon_witness(const std::vector<ConstantWidthShape> &shapes,
                                              const AnnealState &state, int segmentsPerArc) {
    if (shapes.empty() || state.poses.size() != shapes.size()) return std::nullopt;
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto p = hexfit::placed_points(shapes[i], state.poses[i], segmentsPerArc);
        pts.insert(pts.end(), p.begin(), p.end());
    }
    std::sort(pts.begin(), pts.end(), geom::lex_less);
    std::vector<Point2> hull;
    geom::sorted_hull(pts, hull);
    if (hull.size() < 3) return std::nullopt;

    // Orientation in [0, 60), angles A and B within 15 degrees of regular.
    auto eval = [&](double o, double a, double b) { return best_center(hull, {o, o + a, o + a + b}); };
    const double d = geom::deg2rad(1.0);
    double bo = 0.0, ba = geom::pi / 3, bb = geom::pi / 3, bv = kInf;
    for (int i = 0; i < 60; ++i)
        for (int j = -15; j <= 15; ++j)
            for (int k = -15; k <= 15; ++k) {
                const double o = i * d, a = geom::pi / 3 + j * d, b = geom::pi / 3 + k * d;
                const double v = eval(o, a, b).first;
                if (v < bv) {
                    bv = v;
                    bo = o;
                    ba = a;
                    bb = b;
                }
            }
    // Pattern search refinement.
    for (double h = d / 2; h > 1e-7; h /= 2) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int axis = 0; axis < 3; ++axis)
                for (int sgn = -1; sgn <= 1; sgn += 2) {
                    double o = bo, a = ba, b = bb;
                    (axis == 0 ? o : axis == 1 ? a : b) += sgn * h;
                    const double v = eval(o, a, b).first;
                    if (v < bv) {
                        bv = v;
                        bo = o;
                        ba = a;
                        bb = b;
                        moved = true;
                    }
                }
        }
    }
    HexagonWitness w;
    w.hex.orientation = bo;
    w.hex.angleA = ba;
    w.hex.angleB = bb;
    const auto [v, c] = eval(bo, ba, bb);
    w.center = c;
    w.residual = v;
    return w;
}

std::string log_csv(const std::vector<LogRow> &rows) {
    std::ostringstream o;
    o.precision(12);
    o << "restart,epoch,step_scale,best_area\n";
    for (const auto &r : rows) o << r.restart << ',' << r.epoch << ',' << r.stepScale << ',' << r.bestArea << '\n';
    return o.str();
}

std::string state_json(const std::vector<ConstantWidthShape> &shapes, const AnnealResult &result,
                       const std::optional<HexagonWitness> &witness) {
    nlohmann::json j;
    j["area"] = result.best.area;
    j["runs"] = result.runs;
    j["bestRestart"] = result.bestRestart;
    nlohmann::json poses = nlohmann::json::array();
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto &p = result.best.poses[i];
        poses.push_back({{"shape", shapes[i].label},
                         {"rotation", p.rotation},
                         {"translation", {p.translation.x, p.translation.y}},
                         {"reflected", p.reflected}});
    }
    j["poses"] = poses;
    if (witness) {
        j["hexagonWitness"] = {{"orientationDegrees", geom::rad2deg(witness->hex.orientation)},
                               {"angleADegrees", geom::rad2deg(witness->hex.angleA)},
                               {"angleBDegrees", geom::rad2deg(witness->hex.angleB)},
                               {"center", {witness->center.x, witness->center.y}},
                               {"residual", witness->residual}};
    } else {
        j["hexagonWitness"] = nullptr;
    }
    return j.dump(2) + "\n";
}

}  // namespace lebesgue::annealing
