#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lebesgue/geom.hpp"
#include "lebesgue/widthcurves.hpp"

namespace lebesgue::hexfit {

using geom::Point2;
using widthcurves::ConstantWidthShape;

// Hexagon circumscribing the unit-diameter circle about the origin, with side
// normals at orientation, orientation + angleA and orientation + angleA +
// angleB (and their opposites). The default orientation puts the regular
// hexagon's corners at 0, 60, ..., 300 degrees.
struct ParallelHexagon {
    double angleA = geom::pi / 3.0;
    double angleB = geom::pi / 3.0;
    double orientation = geom::pi / 6.0;

    static ParallelHexagon regular() { return {}; }
    std::array<double, 3> normal_angles() const;
    std::array<Point2, 3> normals() const;
    // Six corners counterclockwise, starting with the corner between the
    // sides with normals -n3 and n1.
    std::array<Point2, 6> vertices() const;
    void validate() const;
};

// Two corners cut by lines tangent to the inscribed circle. The cut normals
// are the corner bisectors turned clockwise by the slant. Corner E sits
// between n1 and n2, corner C between -n2 and -n3.
struct PalCut {
    double slant = 0.0;  // radians

    std::array<Point2, 2> normals(const ParallelHexagon &hex) const;
    void validate() const;
};

struct Placement {
    double rotation = 0.0;
    Point2 translation;  // position of the shape's reference point
    bool reflected = false;
};

// Placed point: R(rotation) * S^reflected * (p - C) + translation.
Point2 apply(const Placement &pl, const ConstantWidthShape &shape, Point2 p);
std::vector<Point2> placed_points(const ConstantWidthShape &shape, const Placement &pl, int segmentsPerArc);
// Exact support of the placed shape in direction psi.
double placed_support(const ConstantWidthShape &shape, const Placement &pl, double psi);

// Zero exactly when the three slab conditions x . n_i = -o(phi_i - theta) are
// simultaneously solvable.
double t_value(const ConstantWidthShape &shape, const ParallelHexagon &hex, double theta, bool reflected = false);

inline constexpr double kLipschitz = 3.0;

struct RootResult {
    std::vector<double> roots;  // sorted, in [0, 2pi)
    bool alwaysFits = false;    // t vanishes identically (circle)
};

RootResult find_roots(const ConstantWidthShape &shape, const ParallelHexagon &hex, double tolerance = 1e-12,
                      bool reflected = false);

// Largest |t'| seen on a grid of finite differences.
double sampled_lipschitz(const ConstantWidthShape &shape, const ParallelHexagon &hex, int samples = 4096);

Placement placement_from_root(const ConstantWidthShape &shape, const ParallelHexagon &hex, double theta,
                              bool reflected = false);

std::vector<Placement> enumerate_placements(const ConstantWidthShape &shape, const ParallelHexagon &hex,
                                            bool allowReflection);

// True when the placed shape stays out of both cut triangles (touching the
// cut line is allowed).
bool admissible(const Placement &pl, const ConstantWidthShape &shape, const ParallelHexagon &hex,
                const std::optional<PalCut> &cut);

double verify_containment(const ConstantWidthShape &shape, const Placement &pl, const ParallelHexagon &hex,
                          const std::optional<PalCut> &cut, int segmentsPerArc = 256);

std::vector<Placement> admissible_placements(const ConstantWidthShape &shape, const ParallelHexagon &hex,
                                             const std::optional<PalCut> &cut, bool allowReflection = true);

}  // namespace lebesgue::hexfit
