#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lebesgue/hexfit.hpp"
#include "lebesgue/widthcurves.hpp"

namespace lebesgue::coversearch {

using geom::Point2;
using hexfit::PalCut;
using hexfit::ParallelHexagon;
using hexfit::Placement;
using widthcurves::ConstantWidthShape;

struct SearchProblem {
    std::vector<ConstantWidthShape> shapes;
    ParallelHexagon hex = ParallelHexagon::regular();
    std::optional<PalCut> cut;
    int segmentsPerArc = 32;
    bool allowReflection = true;
};

struct CoverResult {
    double area = 0.0;
    std::vector<Placement> chosen;  // one per shape, in problem order
    std::vector<int> choice;        // index into each shape's placement list
    bool lowerBoundCertified = false;
    std::uint64_t nodes = 0;
};

class InfeasibleShape : public std::runtime_error {
public:
    explicit InfeasibleShape(const std::string &shape)
        : std::runtime_error("shape '" + shape + "' has no admissible placement"), shapeLabel(shape) {}
    std::string shapeLabel;
};

struct SearchOptions {
    std::uint64_t budget = 1000000000ULL;  // nodes
    int threads = 1;
    std::string checkpointPath;  // single-threaded only
    std::uint64_t checkpointEvery = 100000;
    bool resume = false;
    // Known cover (area and choice) used as the starting incumbent.
    std::optional<std::pair<double, std::vector<int>>> incumbent;
};

// Distinct admissible placements of one shape with their discretised point
// sets, sorted lexicographically. Congruent duplicates (same support
// function) are dropped.
struct PreparedShape {
    std::string label;
    std::vector<Placement> placements;
    std::vector<std::vector<Point2>> points;
};

PreparedShape prepare_shape(const ConstantWidthShape &shape, const ParallelHexagon &hex,
                            const std::optional<PalCut> &cut, int segmentsPerArc, bool allowReflection = true);
std::vector<PreparedShape> prepare(const SearchProblem &problem);

// Hull area of the union of the chosen placements. Both the search and the
// oracle report this value, so equal covers give bitwise equal areas.
double union_area(const std::vector<PreparedShape> &shapes, const std::vector<int> &choice);

CoverResult min_cover_area(const SearchProblem &problem, const SearchOptions &options = {});
CoverResult min_cover_area(const std::vector<PreparedShape> &shapes, const SearchOptions &options = {});

// Full enumeration without pruning, for at most three shapes.
CoverResult exhaustive_oracle(const SearchProblem &problem);
CoverResult exhaustive_oracle(const std::vector<PreparedShape> &shapes);

struct IncrementalStep {
    std::string added;
    double area = 0.0;
    bool certified = true;
    std::uint64_t nodes = 0;
};

struct IncrementalResult {
    std::vector<IncrementalStep> steps;
    CoverResult last;
    std::vector<std::size_t> poolIndices;  // shapes of last, in its order
    bool truncated = false;  // budget ran out
};

// Starts from the shape with the largest best-placement area, then keeps
// adding the pool shape that the current optimal cover leaves least well
// covered. Stops early once every remaining shape already fits.
IncrementalResult incremental_lower_bound(const std::vector<ConstantWidthShape> &pool, const ParallelHexagon &hex,
                                          const std::optional<PalCut> &cut, int maxShapes,
                                          std::uint64_t budget = 1000000000ULL, int segmentsPerArc = 32,
                                          int threads = 1);

struct HexRow {
    double angleADegrees;
    double angleBDegrees;
    double lowerBound;
    bool certified;
};

std::vector<HexRow> scan_hexagons(const std::vector<std::pair<double, double>> &angleGridDegrees,
                                  const std::vector<ConstantWidthShape> &pool, int maxShapes,
                                  std::uint64_t budget = 1000000000ULL, int segmentsPerArc = 32, int threads = 1);

struct SlantRow {
    double sigmaDegrees;
    double lowerBound;
    bool certified;
};

std::vector<SlantRow> scan_slant(const std::vector<double> &sigmaDegrees, const std::vector<ConstantWidthShape> &pool,
                                 int maxShapes, std::uint64_t budget = 1000000000ULL, int segmentsPerArc = 32,
                                 int threads = 1);

std::string hex_rows_csv(const std::vector<HexRow> &rows);
std::string slant_rows_csv(const std::vector<SlantRow> &rows);

}  // namespace lebesgue::coversearch
