#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lebesgue/geom.hpp"
#include "lebesgue/widthcurves.hpp"

namespace lebesgue::bounds {

using geom::Point2;
using Real = boost::multiprecision::cpp_bin_float_50;

enum class Precision { native, extended };

// Regular hexagon with apothem 1/2 centred at the origin. Corner letters run
// counterclockwise A (180 deg), B, C, D (0 deg), E, F. For every letter X the
// dodecagon-style marks are X1 (the corner), X2 on the side towards the next
// letter and X3 on the side towards the previous one, both on the line
// p . u(phi_X - sigma) = 1/2. Only corners E and C are actually cut.
struct LabeledFrame {
    double sigma = 0.0;  // radians
    std::map<std::string, Point2> points;
    Point2 cutNormalE, cutNormalC;

    Point2 at(const std::string &label) const;
};

LabeledFrame labeled_frame(double sigma);

enum class RegionName { cornerE, cornerC, nearC2, nearA1, nearE2, XYZW, hansenA2, hansenA3, heptagonE2, heptagonC3 };
std::string to_string(RegionName n);

struct RemovableRegion {
    RegionName name;
    geom::ArcPolygon boundary;  // empty when the region vanishes
    std::string justification;
    double area = 0.0;
    Real areaExtended = 0;
    // Literal membership test used by the Monte Carlo audit and the overlap
    // check. Points on the boundary count as outside.
    std::function<bool(Point2)> contains;
};

class RegionOverlap : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CoverConstruction {
    double sigma = 0.0;
    bool useReflections = false;
    bool convexOnly = true;
    std::vector<RemovableRegion> regions;  // the two cut corners come first
    double hexagonArea = 0.0;
    double area = 0.0;
    Real areaExtended = 0;
};

// Known reference values.
inline constexpr double kSprague = 0.844137708435197570894066994;
inline constexpr double kHansen = 0.8441377084164588;
inline constexpr double kBrassSharifi = 0.832;

double pal_hexagon_area();
double pal_cut_area(double sigma);
Real pal_cut_area_extended(const Real &sigma);

// Reuleaux pentagon through F3, E3, G and the two points H (near B2) and J
// (near A1) that close it.
widthcurves::ConstantWidthShape critical_pentagon(double sigma);

RemovableRegion region_near_C2(double sigma, Precision p = Precision::native);
RemovableRegion region_near_A1(double sigma, Precision p = Precision::native);
RemovableRegion region_near_E2(double sigma, Precision p = Precision::native);
RemovableRegion region_XYZW(double sigma, bool convexOnly, Precision p = Precision::native);
RemovableRegion corner_region(double sigma, char corner);

double cover_area_basic(double sigma, Precision p = Precision::native);
double cover_area_reflected(double sigma, bool convexOnly, Precision p = Precision::native);

// Builds the full region list and checks pairwise disjointness. Throws
// RegionOverlap when two removed regions share interior points.
CoverConstruction build_construction(double sigma, bool useReflections, bool convexOnly,
                                     Precision p = Precision::native);
void assert_disjoint(const std::vector<RemovableRegion> &regions, int samplesPerPiece = 64);

Real hansen_x_sequence(int i);
Real hansen_area(int i);
double hansen_x_sequence_double(int i);
double hansen_area_double(int i);

struct SlantRow {
    double sigmaDegrees;
    double coverAreaBasic;
    double coverAreaReflected;
};

struct SlantMinimum {
    double sigmaDegrees;
    double area;
};

std::vector<SlantRow> scan_cover(double fromDeg, double toDeg, double stepDeg, bool convexOnly = true);
// Grid minimum followed by golden-section refinement of the reflected cover.
SlantMinimum minimize_cover(double fromDeg, double toDeg, double stepDeg, bool convexOnly = true);

struct AuditViolation {
    std::string shape;
    RegionName region;
    Point2 point;
};

struct AuditReport {
    int shapesChecked = 0;
    int placementsChecked = 0;
    std::vector<AuditViolation> violations;
};

// For every shape, looks for an admissible placement at the construction's
// slant whose sampled boundary avoids every removed region. Shapes with no
// such placement are reported together with a witness point. When inflate is
// above one, each region is scaled about its centroid before testing.
AuditReport monte_carlo_region_audit(const CoverConstruction &construction,
                                     const std::vector<widthcurves::ConstantWidthShape> &pool, int samplesPerArc,
                                     double inflate = 1.0);

}  // namespace lebesgue::bounds
