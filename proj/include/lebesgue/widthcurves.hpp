#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lebesgue/geom.hpp"

namespace lebesgue::widthcurves {

using geom::Point2;

// n odd, plus the first n-3 vertex angles (radians) in star order. The
// remaining three angles and the last vertex follow from closing the star.
struct ReuleauxSpec {
    int n = 3;
    std::vector<double> freeAngles;
};

struct SpecViolation {
    enum class Kind { parity, count, angleRange, angleSum, closure, diagonal };
    Kind kind;
    int index = -1;
    double value = 0.0;
    std::string message;
};

class InvalidSpec : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Star-order data of a Reuleaux polygon: vertex k is the centre of the arc
// joining vertices k+1 and k-1, and consecutive vertices are one apart.
struct ConstantWidthShape {
    enum class Kind { circle, reuleaux };
    Kind kind = Kind::circle;
    std::optional<ReuleauxSpec> spec;
    std::vector<Point2> vertices;   // star order
    std::vector<double> angles;     // vertex angles, star order
    std::vector<double> edgeDirs;   // direction of vertices[k] -> vertices[k+1]
    geom::ArcPolygon boundary;      // counterclockwise
    Point2 centerPoint;             // reference point C (vertex centroid)
    bool bilaterallySymmetric = true;
    std::string label;

    // Support windows sorted by start angle in [0, 2pi). Each window either
    // belongs to an arc (support point on the arc) or to a vertex.
    struct Window {
        double start;
        double width;
        int vertex;
        bool arc;
    };
    std::vector<Window> windows;

    int n() const { return kind == Kind::circle ? 0 : static_cast<int>(vertices.size()); }
};

ConstantWidthShape circle(Point2 center = {0.0, 0.0});
ConstantWidthShape build_reuleaux(const ReuleauxSpec &spec);
ConstantWidthShape regular_reuleaux(int n);
// Builds a shape from vertices already in star order (consecutive pairs at
// distance one, consistent turning). Used for constructed polygons.
ConstantWidthShape from_star_vertices(const std::vector<Point2> &star, std::string label = {});
ConstantWidthShape mirrored(const ConstantWidthShape &shape);

std::vector<SpecViolation> validate_spec(const ReuleauxSpec &spec);
// Vertex angles are drawn from a symmetric Dirichlet distribution; a larger
// concentration keeps them closer to the regular polygon's.
ReuleauxSpec random_spec(int n, std::mt19937_64 &rng, int maxTries = 200000, double concentration = 1.0);

double support(const ConstantWidthShape &shape, double theta);
double offset(const ConstantWidthShape &shape, double theta);

// Inscribed polygon: every vertex lies on the true boundary.
geom::ConvexPolygon discretize(const ConstantWidthShape &shape, int segmentsPerArc);

// Reference pools.
std::vector<ConstantWidthShape> classic_five();  // circle and regular 3,5,7,9-gons
// Pentagons and heptagons with log-uniform concentration in [10, 1000]. Mostly
// near-regular shapes are what pushes the search bounds up.
std::vector<ConstantWidthShape> random_pool(int count, std::uint64_t seed, bool includeRegular = true);

std::vector<ConstantWidthShape> load_pool(const std::string &path);
void save_pool(const std::vector<ConstantWidthShape> &pool, const std::string &path);

}  // namespace lebesgue::widthcurves
