#pragma once

#include <array>
#include <vector>

#include "lebesgue/bounds.hpp"
#include "lebesgue/widthcurves.hpp"

namespace lebesgue::heptagon {

using bounds::Real;
using geom::Point2;

// The limiting heptagon for A-type shapes. L lies on the top side, M on side
// D-E, N on side C-D and P directly below L on the bottom side. The other
// three vertices sit on the mark lines of corners B, A and F, opposite E, D
// and C. Star order: L, P, v6, N, v5, M, v4.
struct CriticalHeptagon {
    double sigma = 0.0;
    std::array<Real, 9> unknowns{};  // tL, sM, sN, v4, v5, v6 (x then y)
    Point2 L, M, N, P, v4, v5, v6;
    widthcurves::ConstantWidthShape shape;
};

// Follows the heptagon from sigma = 0 in small slant steps. Solutions are
// cached, so repeated queries at nearby slants are cheap.
class HeptagonTracker {
public:
    explicit HeptagonTracker(double stepDegrees = 1e-5);
    CriticalHeptagon at(double sigma);
    std::array<Real, 9> solve(const Real &sigma, std::array<Real, 9> guess) const;

private:
    double step_;
    std::vector<std::array<Real, 9>> grid_;
};

CriticalHeptagon critical_heptagon(double sigma);

struct HeptagonRegions {
    bounds::RemovableRegion nearE2;  // wedge at E2 outside the unit disk about v4
    bounds::RemovableRegion nearC3;  // wedge at C3 outside the unit disk about v6
};

HeptagonRegions heptagon_regions(double sigma, HeptagonTracker &tracker);
HeptagonRegions heptagon_regions(double sigma);

// Chain argument for A-type shapes: from X near E2, three clockwise unit arcs
// (each tangent to a cut or mark line) push the touch points on sides D-E,
// C-D and B-C. X is excluded when the resulting lower limit for L passes the
// upper limit for P. Returns the signed margin, or nothing when some arc
// cannot be drawn (no restriction).
std::optional<Real> chain_margin(const Real &x, const Real &y, const Real &sigma);
bool a_type_excluded(Point2 X, double sigma);

// Area of the excluded set next to E2, by polar integration about E2. The
// mirrored set next to C3 at slant sigma equals this one at -sigma.
Real chain_exclusion_area(double sigma);

struct CrossoverRow {
    double sigmaDegrees;
    Real heptagonE2, heptagonC3, nearE2, nearC2;
};

struct Crossover {
    bool found = false;
    double sigmaDegrees = 0.0;  // first slant where the C3 heptagon region drops below the E2 boomerang
    std::vector<CrossoverRow> rows;
};

Crossover find_crossover(double maxDegrees = 0.005, double gridDegrees = 0.00025);

}  // namespace lebesgue::heptagon
