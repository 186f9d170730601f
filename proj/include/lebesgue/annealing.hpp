#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lebesgue/hexfit.hpp"
#include "lebesgue/widthcurves.hpp"

namespace lebesgue::annealing {

using geom::Point2;
using widthcurves::ConstantWidthShape;

// Same convention as a hexfit placement: R(rotation) S^reflected (p - C) + translation.
using Pose = hexfit::Placement;

struct AnnealState {
    std::vector<Pose> poses;
    double stepScale = 0.0;
    double area = 0.0;
};

struct AnnealParams {
    double acceptProbability = 0.3;
    double stepDecay = 0.95;
    int stepsPerEpoch = 1000;
    double initialStep = 0.1;
    double minStep = 1e-6;
    int restarts = 1;
    std::uint64_t seed = 20240601;
    int segmentsPerArc = 64;       // during the walk
    int finalSegmentsPerArc = 256;  // for the reported area
    int threads = 1;

    void validate() const;
};

struct LogRow {
    int restart;
    int epoch;
    double stepScale;
    double bestArea;
};

struct AnnealResult {
    AnnealState best;  // area evaluated at finalSegmentsPerArc
    int bestRestart = 0;
    std::vector<LogRow> log;
    int runs = 0;
};

// Acceptance rule of the biased walk: a decrease is always kept, an increase
// with probability p.
bool accept_move(double delta, double p, std::mt19937_64 &rng);

// Hull area of the union of the posed, discretised shapes.
double configuration_area(const std::vector<ConstantWidthShape> &shapes, const std::vector<Pose> &poses,
                          int segmentsPerArc);

// Reflection flags in the initial poses are kept fixed for the whole run.
AnnealResult anneal(const std::vector<ConstantWidthShape> &shapes, const AnnealParams &params,
                    const std::vector<bool> &reflected = {});

// Runs anneal once per reflection assignment of the asymmetric shapes and
// keeps the best. Throws std::invalid_argument beyond twelve such shapes.
AnnealResult anneal_with_reflections(const std::vector<ConstantWidthShape> &shapes, const AnnealParams &params);

struct HexagonWitness {
    hexfit::ParallelHexagon hex;
    Point2 center;
    double residual = 0.0;  // largest distance of a shape point outside the hexagon
};

// Fits a circumscribed parallel hexagon (unit distance between opposite
// sides) around the configuration, minimising how far points stick out.
std::optional<HexagonWitness> hexagon_witness(const std::vector<ConstantWidthShape> &shapes,
                                              const AnnealState &state, int segmentsPerArc = 64);

std::string log_csv(const std::vector<LogRow> &rows);
std::string state_json(const std::vector<ConstantWidthShape> &shapes, const AnnealResult &result,
                       const std::optional<HexagonWitness> &witness);

}  // namespace lebesgue::annealing
