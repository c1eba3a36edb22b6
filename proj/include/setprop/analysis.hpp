#pragma once

// Closed-form reference solutions, period elongation / amplitude decay
// estimates, and envelope metrics.

#include "setprop/integrators.hpp"
#include "setprop/propagate.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace setprop {

// ---------------------------------------------------------------------------
// Reference solutions

struct OscillatorState {
    double u;
    double v;
};

/// u'' + omega^2 u = 0.
OscillatorState analytic_oscillator(double omega, double u0, double v0, double t);

/// Clamped-free bar under a step end load `force`, by mode superposition with
/// s_max terms.
double analytic_clamped_bar(const BarParameters& p, double force, double x, double t, int s_max = 1000);

/// Upper bound of the magnitude of the terms dropped by analytic_clamped_bar.
double clamped_bar_tail_bound(const BarParameters& p, double force, int s_max);

/// (1 + eps)(sin(pi x) e^{-pi^2 t} + sin(3 pi x) e^{-9 pi^2 t} / 2) on the unit rod.
double analytic_heat_rod(double eps, double x, double t);

// ---------------------------------------------------------------------------
// Period elongation and amplitude decay from flowpipes

struct PeriodEstimate {
    Interval s_t;
    int crossings_used = 0;
    /// Time spans of the displacement-maximum runs used, m = 1, 2, ...
    std::vector<Interval> runs;

    /// (T - T_nat) / T_nat with T = max(S_T).
    double period_elongation(double t_nat) const { return (s_t.hi - t_nat) / t_nat; }
};

/// Maximal runs of consecutive reach-sets with 0 in the v-interval and a
/// strictly positive u-interval approximate the crossings of {u > 0, v = 0}.
/// A run that starts at t = 0 is the initial maximum and is not counted.
/// Returns the intersection of T_m / m over the first m_max runs.
PeriodEstimate estimate_period(const Flowpipe& fp, Index u_index, Index v_index, int m_max);

enum class AmplitudeRule {
    /// Lower u bound of the reach-set projections.
    interval,
    /// Lower u bound of each reach-set's slice {v = 0}; needs exact 2D
    /// support queries (zonotope flowpipes or support flowpipes with
    /// transported directions).
    slice,
};

/// 1 - (A_num / amplitude)^{1/n_a}, where A_num is the smallest lower u bound
/// over the reach-sets of the n_a-th crossing run.
double estimate_amplitude_decay(const Flowpipe& fp, Index u_index, Index v_index, int n_a, double amplitude,
                                AmplitudeRule rule = AmplitudeRule::interval);

/// Lower and upper bound of u over X_k intersected with {v = 0}, or nullopt
/// when the slice is found empty. Throws UnsupportedQueryError when the
/// flowpipe cannot answer 2D support queries.
std::optional<Interval> slice_bounds(const Flowpipe& fp, std::size_t k, Index u_index, Index v_index);

// ---------------------------------------------------------------------------
// Period and amplitude of sampled trajectories

struct PeakEstimate {
    double period;     ///< t_n / n for the n-th maximum after t = 0
    double amplitude;  ///< value at the n-th maximum
    int peaks;         ///< maxima found
};

/// Locates the n-th interior maximum of evenly sampled data and refines its
/// time and value by fitting a local sinusoid through the three samples
/// around it (exact for undamped sinusoidal data).
PeakEstimate estimate_peaks(const std::vector<double>& times, const Vector& values, int n);

/// Point samples as a box flowpipe: set k is the hull of samples k and k+1.
Flowpipe flowpipe_from_samples(const std::vector<double>& times, const Matrix& states);

// ---------------------------------------------------------------------------
// Envelopes

struct EnvelopeMetrics {
    double l1 = 0.0;
    double linf = 0.0;
};

struct Envelope {
    std::vector<double> times;
    Vector upper;
    Vector lower;
    EnvelopeMetrics metrics;
};

/// Pointwise max/min of sampled values; L1 by the trapezoid rule on
/// max(|upper|, |lower|).
class EnvelopeAccumulator {
public:
    explicit EnvelopeAccumulator(std::vector<double> times);

    void add(std::size_t k, double value);
    /// Adds every entry of `values` at time index k.
    void add(std::size_t k, const Eigen::Ref<const Vector>& values);
    void add_trajectory(const Vector& values);

    /// Samples seen at the first time level.
    std::size_t count() const { return count_; }
    Envelope finish() const;

private:
    std::vector<double> times_;
    Vector upper_;
    Vector lower_;
    std::size_t count_ = 0;
};

enum class Quantity { displacement, velocity, acceleration };

Envelope envelopes_from_samples(const std::vector<Trajectory>& trajs, Index index,
                                Quantity quantity = Quantity::displacement);

/// Flowpipe envelope: max(|lo_k|, |hi_k|) held over [k delta, (k+1) delta].
EnvelopeMetrics flowpipe_envelope(const std::vector<BoundRow>& rows);

// ---------------------------------------------------------------------------
// Sampling

/// Seeded stream of box vertices: each coordinate is center +/- radius with
/// equal probability (zero-radius coordinates stay at the center).
std::vector<Vector> vertex_sampler(const Hyperrectangle& box, std::size_t count, std::uint64_t seed);

/// Seeded uniform samples inside the box.
std::vector<Vector> uniform_sampler(const Hyperrectangle& box, std::size_t count, std::uint64_t seed);

}  // namespace setprop
