#include "lebesgue/coversearch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace lebesgue::coversearch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Branches whose bound is within this of the incumbent are still explored, so
// rounding in the incremental hulls can never hide the exact optimum.
constexpr double kSlack = 1e-13;

bool same_set(const ConstantWidthShape &shape, const Placement &a, const Placement &b) {
    for (int k = 0; k < 64; ++k) {
        const double psi = geom::two_pi * k / 64.0;
        if (std::abs(hexfit::placed_support(shape, a, psi) - hexfit::placed_support(shape, b, psi)) > 1e-9)
            return false;
    }
    return true;
}

void sort_lex(std::vector<Point2> &pts) { std::sort(pts.begin(), pts.end(), geom::lex_less); }

}  // namespace

PreparedShape prepare_shape(const ConstantWidthShape &shape, const ParallelHexagon &hex,
                            const std::optional<PalCut> &cut, int segmentsPerArc, bool allowReflection) {
    PreparedShape out;
    out.label = shape.label;
    for (const auto &pl : hexfit::admissible_placements(shape, hex, cut, allowReflection)) {
        bool dup = false;
        for (const auto &q : out.placements) dup = dup || same_set(shape, pl, q);
        if (dup) continue;
        out.placements.push_back(pl);
        auto pts = hexfit::placed_points(shape, pl, segmentsPerArc);
        sort_lex(pts);
        out.points.push_back(std::move(pts));
    }
    if (out.placements.empty()) throw InfeasibleShape(shape.label);
    return out;
}

std::vector<PreparedShape> prepare(const SearchProblem &problem) {
    problem.hex.validate();
    if (problem.cut) problem.cut->validate();
    std::vector<PreparedShape> out;
    out.reserve(problem.shapes.size());
    for (const auto &s : problem.shapes)
        out.push_back(prepare_shape(s, problem.hex, problem.cut, problem.segmentsPerArc, problem.allowReflection));
    return out;
}

double union_area(const std::vector<PreparedShape> &shapes, const std::vector<int> &choice) {
    std::vector<Point2> all;
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        const auto &p = shapes[s].points[static_cast<std::size_t>(choice[s])];
        all.insert(all.end(), p.begin(), p.end());
    }
    sort_lex(all);
    std::vector<Point2> hull;
    return geom::sorted_hull(all, hull);
}

namespace {

struct Shared {
    const std::vector<PreparedShape> *shapes = nullptr;
    std::uint64_t budget = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exhausted{false};
    std::atomic<double> incumbent{kInf};
    std::mutex bestMutex;
    double bestArea = kInf;
    std::vector<int> bestChoice;

    void offer(double area, const std::vector<int> &choice) {
        std::lock_guard<std::mutex> lock(bestMutex);
        if (area < bestArea || (area == bestArea && choice < bestChoice)) {
            bestArea = area;
            bestChoice = choice;
        }
        double cur = incumbent.load();
        while (area < cur && !incumbent.compare_exchange_weak(cur, area)) {
        }
    }
};

struct Child {
    int placement;
    double area;
};

// Per-worker depth-first search. Scratch buffers are reused across nodes.
class Worker {
public:
    explicit Worker(Shared &shared) : sh_(shared), shapes_(*shared.shapes) {}

    std::string checkpointPath;
    std::uint64_t checkpointEvery = 0;
    std::vector<int> resumePath;

    // Evaluates a node: places every shape that already fits and returns the
    // branching shape with its children sorted by resulting area. Returns -1
    // when all shapes are placed. bound receives the node's lower bound.
    int expand(const std::vector<Point2> &hull, double area, std::vector<int> &choice, std::vector<Child> &children,
               double &bound) {
        bound = area;
        int branch = -1;
        double branchMin = -kInf;
        std::vector<Child> best;
        for (std::size_t s = 0; s < shapes_.size(); ++s) {
            if (choice[s] >= 0) continue;
            const auto &ps = shapes_[s];
            std::vector<Child> kids;
            kids.reserve(ps.points.size());
            int fits = -1;
            for (std::size_t p = 0; p < ps.points.size(); ++p) {
                const double a = merged_area(hull, ps.points[p]);
                if (a <= area) {
                    fits = static_cast<int>(p);
                    break;
                }
                kids.push_back({static_cast<int>(p), a});
            }
            if (fits >= 0) {
                // Any completion using another placement is no better.
                choice[s] = fits;
                continue;
            }
            double mn = kInf;
            for (const auto &k : kids) mn = std::min(mn, k.area);
            bound = std::max(bound, mn);
            if (mn > branchMin) {
                branchMin = mn;
                branch = static_cast<int>(s);
                best = std::move(kids);
            }
        }
        if (branch >= 0) {
            std::stable_sort(best.begin(), best.end(), [](const Child &a, const Child &b) { return a.area < b.area; });
            children = std::move(best);
        }
        return branch;
    }

    void dfs(const std::vector<Point2> &hull, double area, std::vector<int> choice, std::size_t depth,
             bool onResumePath) {
        if (sh_.exhausted.load(std::memory_order_relaxed)) return;
        const std::uint64_t n = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > sh_.budget) {
            sh_.exhausted = true;
            return;
        }
        if (checkpointEvery > 0 && n % checkpointEvery == 0) write_checkpoint(n);
        std::vector<Child> children;
        double bound = 0.0;
        const int s = expand(hull, area, choice, children, bound);
        if (s < 0) {
            sh_.offer(union_area(shapes_, choice), choice);
            return;
        }
        if (bound > sh_.incumbent.load() + kSlack) return;
        std::size_t start = 0;
        if (onResumePath && depth < resumePath.size())
            start = std::min(static_cast<std::size_t>(resumePath[depth]), children.size());
        else
            onResumePath = false;
        if (path_.size() <= depth) path_.resize(depth + 1);
        std::vector<Point2> merged, childHull;
        for (std::size_t c = start; c < children.size(); ++c) {
            if (children[c].area > sh_.incumbent.load() + kSlack) break;
            path_[depth] = static_cast<int>(c);
            path_.resize(depth + 1);
            geom::merge_sorted(hull, shapes_[static_cast<std::size_t>(s)].points[static_cast<std::size_t>(children[c].placement)],
                               merged);
            const double a = geom::sorted_hull(merged, childHull);
            sort_lex(childHull);
            choice[static_cast<std::size_t>(s)] = children[c].placement;
            dfs(childHull, a, choice, depth + 1, onResumePath && c == start);
            if (sh_.exhausted.load(std::memory_order_relaxed)) return;
        }
    }

    void write_checkpoint(std::uint64_t nodes) {
        if (checkpointPath.empty()) return;
        nlohmann::json j;
        j["version"] = 1;
        j["nodes"] = nodes;
        {
            std::lock_guard<std::mutex> lock(sh_.bestMutex);
            j["incumbent"] = std::isfinite(sh_.bestArea) ? nlohmann::json(sh_.bestArea) : nlohmann::json(nullptr);
            j["choice"] = sh_.bestChoice;
        }
        j["path"] = path_;
        const std::string tmp = checkpointPath + ".tmp";
        {
            std::ofstream f(tmp);
            f << j.dump(1) << "\n";
        }
        std::rename(tmp.c_str(), checkpointPath.c_str());
    }

    const std::vector<int> &path() const { return path_; }

private:
    double merged_area(const std::vector<Point2> &hull, const std::vector<Point2> &pts) {
        geom::merge_sorted(hull, pts, mergeBuf_);
        return geom::sorted_hull(mergeBuf_, hullBuf_);
    }

    Shared &sh_;
    const std::vector<PreparedShape> &shapes_;
    std::vector<Point2> mergeBuf_, hullBuf_;
    std::vector<int> path_;
};

CoverResult finish(const std::vector<PreparedShape> &shapes, Shared &sh) {
    CoverResult r;
    r.area = sh.bestArea;
    r.choice = sh.bestChoice;
    r.nodes = sh.nodes.load();
    r.lowerBoundCertified = !sh.exhausted.load();
    for (std::size_t s = 0; s < r.choice.size(); ++s)
        r.chosen.push_back(shapes[s].placements[static_cast<std::size_t>(r.choice[s])]);
    return r;
}

}  // namespace

CoverResult min_cover_area(const std::vector<PreparedShape> &shapes, const SearchOptions &options) {
    if (shapes.empty()) throw std::invalid_argument("search needs at least one shape");
    Shared sh;
    sh.shapes = &shapes;
    sh.budget = options.budget;
    if (options.incumbent) {
        const auto &c = options.incumbent->second;
        if (c.size() != shapes.size()) throw std::invalid_argument("incumbent choice has the wrong length");
        sh.offer(union_area(shapes, c), c);
    }
    std::vector<int> resumePath;
    if (options.resume && !options.checkpointPath.empty()) {
        std::ifstream f(options.checkpointPath);
        if (f) {
            const auto j = nlohmann::json::parse(f);
            if (j.at("version").get<int>() != 1) throw std::runtime_error("unsupported checkpoint version");
            if (!j.at("incumbent").is_null()) {
                const auto c = j.at("choice").get<std::vector<int>>();
                sh.offer(union_area(shapes, c), c);
            }
            resumePath = j.at("path").get<std::vector<int>>();
        }
    }

    const std::vector<int> empty(shapes.size(), -1);
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        Worker w(sh);
        w.checkpointPath = options.checkpointPath;
        w.checkpointEvery = options.checkpointPath.empty() ? 0 : options.checkpointEvery;
        w.resumePath = resumePath;
        w.dfs({}, 0.0, empty, 0, !resumePath.empty());
        if (!options.checkpointPath.empty()) {
            if (sh.exhausted)
                w.write_checkpoint(sh.nodes.load());
            else
                std::remove(options.checkpointPath.c_str());
        }
        return finish(shapes, sh);
    }

    // Split at the root: every worker pulls root children from a shared
    // counter and searches them against the shared incumbent.
    Worker root(sh);
    std::vector<Child> children;
    std::vector<int> choice = empty;
    double bound = 0.0;
    sh.nodes = 1;
    const int s = root.expand({}, 0.0, choice, children, bound);
    if (s < 0) {
        sh.offer(union_area(shapes, choice), choice);
        return finish(shapes, sh);
    }
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        Worker w(sh);
        std::vector<Point2> pts, hull;
        for (std::size_t c; (c = next.fetch_add(1)) < children.size();) {
            if (children[c].area > sh.incumbent.load() + kSlack) continue;
            pts = shapes[static_cast<std::size_t>(s)].points[static_cast<std::size_t>(children[c].placement)];
            const double a = geom::sorted_hull(pts, hull);
            sort_lex(hull);
            std::vector<int> ch = choice;
            ch[static_cast<std::size_t>(s)] = children[c].placement;
            w.dfs(hull, a, ch, 1, false);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto &t : pool) t.join();
    return finish(shapes, sh);
}

CoverResult min_cover_area(const SearchProblem &problem, const SearchOptions &options) {
    return min_cover_area(prepare(problem), options);
}

CoverResult exhaustive_oracle(const std::vector<PreparedShape> &shapes) {
    if (shapes.empty() || shapes.size() > 3) throw std::invalid_argument("the oracle takes one to three shapes");
    Shared sh;
    std::vector<int> choice(shapes.size(), 0);
    for (;;) {
        sh.nodes += 1;
        sh.offer(union_area(shapes, choice), choice);
        std::size_t k = 0;
        while (k < shapes.size() && ++choice[k] == static_cast<int>(shapes[k].points.size())) choice[k++] = 0;
        if (k == shapes.size()) break;
    }
    return finish(shapes, sh);
}

CoverResult exhaustive_oracle(const SearchProblem &problem) { return exhaustive_oracle(prepare(problem)); }

IncrementalResult incremental_lower_bound(const std::vector<ConstantWidthShape> &pool, const ParallelHexagon &hex,
                                          const std::optional<PalCut> &cut, int maxShapes, std::uint64_t budget,
                                          int segmentsPerArc, int threads) {
    if (pool.empty()) throw std::invalid_argument("pool is empty");
    hex.validate();
    if (cut) cut->validate();
    std::vector<PreparedShape> prepared;
    for (const auto &s : pool) prepared.push_back(prepare_shape(s, hex, cut, segmentsPerArc));

    IncrementalResult out;
    std::vector<std::size_t> used;
    std::vector<bool> taken(prepared.size(), false);
    std::vector<Point2> hull;  // lex-sorted hull of the current optimum
    double area = 0.0;
    std::vector<int> choice;
    std::vector<Point2> merged, buf;
    std::uint64_t left = budget;
    const int limit = std::min<int>(maxShapes, static_cast<int>(prepared.size()));

    while (static_cast<int>(used.size()) < limit) {
        // The shape whose best placement grows the current cover most.
        std::size_t pick = prepared.size();
        int pickPlacement = -1;
        double pickArea = -kInf;
        for (std::size_t s = 0; s < prepared.size(); ++s) {
            if (taken[s]) continue;
            double mn = kInf;
            int arg = 0;
            for (std::size_t p = 0; p < prepared[s].points.size(); ++p) {
                geom::merge_sorted(hull, prepared[s].points[p], merged);
                const double a = geom::sorted_hull(merged, buf);
                if (a < mn) {
                    mn = a;
                    arg = static_cast<int>(p);
                }
            }
            if (mn > pickArea) {
                pickArea = mn;
                pick = s;
                pickPlacement = arg;
            }
        }
        if (!used.empty() && pickArea <= area) break;  // everything left already fits

        taken[pick] = true;
        used.push_back(pick);
        std::vector<PreparedShape> subset;
        for (std::size_t u : used) subset.push_back(prepared[u]);
        SearchOptions opt;
        opt.budget = left;
        opt.threads = threads;
        std::vector<int> warm = choice;
        warm.push_back(pickPlacement);
        opt.incumbent = std::make_pair(0.0, warm);
        CoverResult r = min_cover_area(subset, opt);
        left = r.nodes >= left ? 0 : left - r.nodes;

        IncrementalStep step;
        step.added = prepared[pick].label;
        step.area = r.area;
        step.certified = r.lowerBoundCertified;
        step.nodes = r.nodes;
        // A smaller value can only come from rounding; keep the sequence
        // nondecreasing.
        if (!out.steps.empty()) step.area = std::max(step.area, out.steps.back().area);
        out.steps.push_back(step);
        out.last = r;
        out.poolIndices = used;
        if (!r.lowerBoundCertified) {
            out.truncated = true;
            break;
        }
        choice = r.choice;
        area = r.area;
        std::vector<Point2> all;
        for (std::size_t k = 0; k < used.size(); ++k) {
            const auto &p = prepared[used[k]].points[static_cast<std::size_t>(choice[k])];
            all.insert(all.end(), p.begin(), p.end());
        }
        sort_lex(all);
        geom::sorted_hull(all, hull);
        sort_lex(hull);
    }
    return out;
}

std::vector<HexRow> scan_hexagons(const std::vector<std::pair<double, double>> &angleGridDegrees,
                                  const std::vector<ConstantWidthShape> &pool, int maxShapes, std::uint64_t budget,
                                  int segmentsPerArc, int threads) {
    std::vector<HexRow> rows;
    for (const auto &[a, b] : angleGridDegrees) {
        ParallelHexagon hex;
        hex.angleA = geom::deg2rad(a);
        hex.angleB = geom::deg2rad(b);
        const auto r = incremental_lower_bound(pool, hex, std::nullopt, maxShapes, budget, segmentsPerArc, threads);
        rows.push_back({a, b, r.steps.empty() ? 0.0 : r.steps.back().area, !r.truncated});
    }
    return rows;
}

std::vector<SlantRow> scan_slant(const std::vector<double> &sigmaDegrees, const std::vector<ConstantWidthShape> &pool,
                                 int maxShapes, std::uint64_t budget, int segmentsPerArc, int threads) {
    std::vector<SlantRow> rows;
    for (double s : sigmaDegrees) {
        const auto r = incremental_lower_bound(pool, ParallelHexagon::regular(), PalCut{geom::deg2rad(s)}, maxShapes,
                                               budget, segmentsPerArc, threads);
        rows.push_back({s, r.steps.empty() ? 0.0 : r.steps.back().area, !r.truncated});
    }
    return rows;
}

std::string hex_rows_csv(const std::vector<HexRow> &rows) {
    std::ostringstream o;
    o.precision(10);
    o << "angle_a_deg,angle_b_deg,lower_bound,certified\n";
    for (const auto &r : rows) o << r.angleADegrees << ',' << r.angleBDegrees << ',' << r.lowerBound << ',' << r.certified << '\n';
    return o.str();
}

std::string slant_rows_csv(const std::vector<SlantRow> &rows) {
    std::ostringstream o;
    o.precision(10);
    o << "sigma_deg,lower_bound,certified\n";
    for (const auto &r : rows) o << r.sigmaDegrees << ',' << r.lowerBound << ',' << r.certified << '\n';
    return o.str();
}

}  // namespace lebesgue::coversearch
