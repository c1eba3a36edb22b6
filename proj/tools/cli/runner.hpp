#pragma once

#include "config.hpp"

#include "setprop/propagate.hpp"

#include <map>
#include <string>
#include <vector>

namespace setprop::cli {

/// A config turned into matrices, an initial set and output directions.
struct Problem {
    SecondOrderSystem system;
    /// State coordinates: (u, v) for dynamics, theta for heat.
    Index state_dim = 0;
    Zonotope x0 = Zonotope::singleton(Vector::Zero(1));
    /// One column per output, in state coordinates.
    Matrix outputs;
};

/// Throws ConfigError for inconsistent dimensions and IoError for a missing
/// system file.
Problem build_problem(const RunConfig& cfg);

struct MethodResult {
    Method method;
    double seconds = 0.0;
    /// Flowpipe methods: per output, one row per reach-set.
    std::vector<std::vector<BoundRow>> bounds;
    /// Integrators: per output, rows = time levels, columns = stored samples.
    std::vector<Matrix> samples;
    /// Integrators with more than one sample: pointwise min/max per output.
    std::vector<Matrix> envelope;
    std::vector<double> times;
};

struct RunSummary {
    std::vector<MethodResult> results;
    std::vector<std::string> files;
    double seconds = 0.0;
};

/// Trajectory CSVs are written for at most this many samples per method.
inline constexpr int kMaxTrajectoryFiles = 100;

/// Runs every configured method and writes CSVs, SVGs and manifest.yaml
/// into cfg.out_dir.
RunSummary run(const RunConfig& cfg);

/// Computes without writing anything.
MethodResult run_method(const RunConfig& cfg, const Problem& prob, Method method);

}  // namespace setprop::cli
