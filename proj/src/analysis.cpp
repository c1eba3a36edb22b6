#include "setprop/analysis.hpp"

#include "setprop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace setprop {

using std::numbers::pi;

OscillatorState analytic_oscillator(double omega, double u0, double v0, double t) {
    if (!(omega > 0.0)) {
        throw ArgumentError("oscillator frequency must be positive");
    }
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    return {u0 * c + v0 / omega * s, -u0 * omega * s + v0 * c};
}

double analytic_clamped_bar(const BarParameters& p, double force, double x, double t, int s_max) {
    if (s_max < 1) {
        throw ArgumentError("series needs at least one term");
    }
    if (x < 0.0 || x > p.length) {
        throw ArgumentError("position outside the bar");
    }
    const double mu = std::sqrt(p.modulus / p.density);
    const double scale = 8.0 * force * p.length / (pi * pi * p.modulus * p.area);
    double sum = 0.0;
    for (int s = 1; s <= s_max; ++s) {
        const double odd = 2.0 * s - 1.0;
        const double sign = (s % 2 == 1) ? 1.0 : -1.0;
        const double arg = odd * pi / (2.0 * p.length);
        sum += sign / (odd * odd) * std::sin(arg * x) * (1.0 - std::cos(arg * mu * t));
    }
    return scale * sum;
}

double clamped_bar_tail_bound(const BarParameters& p, double force, int s_max) {
    // |sin| <= 1, |1 - cos| <= 2 and sum_{s > S} (2s-1)^-2 <= 1 / (2 (2S - 1)).
    const double scale = 8.0 * std::abs(force) * p.length / (pi * pi * p.modulus * p.area);
    return scale * 2.0 / (2.0 * (2.0 * s_max - 1.0));
}

double analytic_heat_rod(double eps, double x, double t) {
    return (1.0 + eps) *
           (std::sin(pi * x) * std::exp(-pi * pi * t) + 0.5 * std::sin(3.0 * pi * x) * std::exp(-9.0 * pi * pi * t));
}

namespace {

struct Run {
    std::size_t first;
    std::size_t last;
};

std::vector<Run> crossing_runs(const Flowpipe& fp, Index u_index, Index v_index) {
    const auto u = flowpipe_bounds(fp, u_index);
    const auto v = flowpipe_bounds(fp, v_index);
    std::vector<Run> runs;
    bool open = false;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const bool hit = v[k].lo <= 0.0 && 0.0 <= v[k].hi && u[k].lo > 0.0;
        if (hit && open) {
            runs.back().last = k;
        } else if (hit) {
            runs.push_back({k, k});
        }
        open = hit;
    }
    if (!runs.empty() && runs.front().first == 0) {
        runs.erase(runs.begin());
    }
    return runs;
}

// Minimum of a convex function of one variable. Every evaluation is an upper
// bound of the minimum, so the smallest value seen is returned.
double minimize_convex(const std::function<double(double)>& f, double scale) {
    const double f0 = f(0.0);
    double best = f0;
    auto eval = [&](double x) {
        const double y = f(x);
        best = std::min(best, y);
        return y;
    };
    const double fp = eval(scale);
    const double fm = eval(-scale);
    double a;
    double b;
    if (fp >= f0 && fm >= f0) {
        a = -scale;
        b = scale;
    } else {
        const double dir = fp < fm ? 1.0 : -1.0;
        double x = scale;
        double fx = std::min(fp, fm);
        double prev = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double fnext = eval(dir * 2.0 * x);
            if (!(fnext < fx)) {
                break;
            }
            prev = x;
            x *= 2.0;
            fx = fnext;
        }
        a = dir * prev;
        b = dir * 2.0 * x;
        if (a > b) {
            std::swap(a, b);
        }
    }
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    for (int i = 0; i < 100 && b - a > 1e-15 * (std::abs(a) + std::abs(b) + scale); ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = eval(d);
        }
    }
    return best;
}

}  // namespace

PeriodEstimate estimate_period(const Flowpipe& fp, Index u_index, Index v_index, int m_max) {
    if (m_max < 1) {
        throw ArgumentError("m_max must be at least 1");
    }
    const auto runs = crossing_runs(fp, u_index, v_index);
    if (runs.empty()) {
        throw InsufficientDataError("no displacement maximum found in the flowpipe");
    }
    PeriodEstimate out;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const std::size_t used = std::min(runs.size(), static_cast<std::size_t>(m_max));
    for (std::size_t m = 1; m <= used; ++m) {
        const auto& r = runs[m - 1];
        const Interval span(fp.sets[r.first].t_lo, fp.sets[r.last].t_hi);
        out.runs.push_back(span);
        lo = std::max(lo, span.lo / static_cast<double>(m));
        hi = std::min(hi, span.hi / static_cast<double>(m));
    }
    if (lo > hi) {
        throw InconsistencyError("period estimates of successive maxima do not overlap; the flowpipe is too coarse");
    }
    out.s_t = Interval(lo, hi);
    out.crossings_used = static_cast<int>(used);
    return out;
}

std::optional<Interval> slice_bounds(const Flowpipe& fp, std::size_t k, Index u_index, Index v_index) {
    if (u_index < 0 || v_index < 0 || u_index >= fp.dim || v_index >= fp.dim || u_index == v_index) {
        throw DimensionError("invalid slice coordinates");
    }
    const Vector eu = Vector::Unit(fp.dim, u_index);
    const Vector ev = Vector::Unit(fp.dim, v_index);
    auto rho = [&](const Vector& d) {
        const auto r = reach_set_support(fp, k, d);
        if (!r) {
            throw UnsupportedQueryError("flowpipe cannot answer support queries along combined directions");
        }
        return *r;
    };
    const double wu = rho(eu) + rho(-eu);
    const double wv = rho(ev) + rho(-ev);
    const double scale = (wu > 0.0 && wv > 0.0) ? wu / wv : 1.0;
    const double hi = minimize_convex([&](double l) { return rho(eu + l * ev); }, scale);
    const double lo = -minimize_convex([&](double l) { return rho(-eu + l * ev); }, scale);
    if (lo > hi) {
        return std::nullopt;
    }
    return Interval(lo, hi);
}

double estimate_amplitude_decay(const Flowpipe& fp, Index u_index, Index v_index, int n_a, double amplitude,
                                AmplitudeRule rule) {
    if (n_a < 1) {
        throw ArgumentError("n_a must be at least 1");
    }
    if (!(amplitude > 0.0)) {
        throw ArgumentError("reference amplitude must be positive");
    }
    const auto runs = crossing_runs(fp, u_index, v_index);
    if (runs.size() < static_cast<std::size_t>(n_a)) {
        throw InsufficientDataError("flowpipe has " + std::to_string(runs.size()) + " displacement maxima, need " +
                                    std::to_string(n_a));
    }
    const auto& run = runs[static_cast<std::size_t>(n_a) - 1];
    double a_num = std::numeric_limits<double>::infinity();
    if (rule == AmplitudeRule::interval) {
        const auto u = flowpipe_bounds(fp, u_index);
        for (std::size_t k = run.first; k <= run.last; ++k) {
            a_num = std::min(a_num, u[k].lo);
        }
    } else {
        for (std::size_t k = run.first; k <= run.last; ++k) {
            if (const auto s = slice_bounds(fp, k, u_index, v_index)) {
                a_num = std::min(a_num, s->lo);
            }
        }
        if (!std::isfinite(a_num)) {
            throw InconsistencyError("no reach-set of the crossing run meets {v = 0}");
        }
    }
    if (!(a_num > 0.0)) {
        return 1.0;
    }
    return 1.0 - std::pow(a_num / amplitude, 1.0 / n_a);
}

PeakEstimate estimate_peaks(const std::vector<double>& times, const Vector& values, int n) {
    if (static_cast<Index>(times.size()) != values.size()) {
        throw DimensionError("times and values differ in length");
    }
    if (n < 1) {
        throw ArgumentError("peak number must be at least 1");
    }
    PeakEstimate out{0.0, 0.0, 0};
    for (Index i = 1; i + 1 < values.size(); ++i) {
        const double ym = values[i - 1];
        const double y0 = values[i];
        const double yp = values[i + 1];
        if (!(y0 > ym && y0 >= yp && y0 > 0.0)) {
            continue;
        }
        ++out.peaks;
        if (out.peaks != n) {
            continue;
        }
        const double h = times[static_cast<std::size_t>(i)] - times[static_cast<std::size_t>(i - 1)];
        const double t0 = times[static_cast<std::size_t>(i)];
        const double c = (ym + yp) / (2.0 * y0);
        if (c > -1.0 && c < 1.0) {
            // y(t) = A cos(w (t - tp)) through the three samples.
            const double theta = std::acos(c);
            const double a_sin = -(yp - ym) / (2.0 * std::sin(theta));
            const double phi = std::atan2(a_sin, y0);
            out.amplitude = std::hypot(y0, a_sin);
            out.period = (t0 - phi * h / theta) / n;
        } else {
            // Parabolic vertex.
            const double denom = ym - 2.0 * y0 + yp;
            const double shift = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
            out.amplitude = y0 - 0.25 * (ym - yp) * shift;
            out.period = (t0 + shift * h) / n;
        }
    }
    if (out.peaks < n) {
        throw InsufficientDataError("found " + std::to_string(out.peaks) + " maxima, need " + std::to_string(n));
    }
    return out;
}

Flowpipe flowpipe_from_samples(const std::vector<double>& times, const Matrix& states) {
    if (times.size() < 2 || static_cast<Index>(times.size()) != states.cols()) {
        throw DimensionError("need at least two samples with one state column per time");
    }
    Flowpipe fp;
    fp.kind = FlowpipeKind::box;
    fp.dim = states.rows();
    fp.delta = times[1] - times[0];
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const auto a = states.col(static_cast<Index>(k));
        const auto b = states.col(static_cast<Index>(k + 1));
        fp.sets.push_back({times[k], times[k + 1], Hyperrectangle::from_bounds(a.cwiseMin(b), a.cwiseMax(b))});
    }
    return fp;
}

EnvelopeAccumulator::EnvelopeAccumulator(std::vector<double> times) : times_(std::move(times)) {
    const auto n = static_cast<Index>(times_.size());
    upper_ = Vector::Constant(n, -std::numeric_limits<double>::infinity());
    lower_ = Vector::Constant(n, std::numeric_limits<double>::infinity());
}

void EnvelopeAccumulator::add(std::size_t k, double value) {
    if (k >= times_.size()) {
        throw ArgumentError("time index out of range");
    }
    const auto i = static_cast<Index>(k);
    upper_[i] = std::max(upper_[i], value);
    lower_[i] = std::min(lower_[i], value);
    if (k == 0) {
        ++count_;
    }
}

void EnvelopeAccumulator::add(std::size_t k, const Eigen::Ref<const Vector>& values) {
    if (k >= times_.size()) {
        throw ArgumentError("time index out of range");
    }
    if (values.size() == 0) {
        return;
    }
    const auto i = static_cast<Index>(k);
    upper_[i] = std::max(upper_[i], values.maxCoeff());
    lower_[i] = std::min(lower_[i], values.minCoeff());
    if (k == 0) {
        count_ += static_cast<std::size_t>(values.size());
    }
}

void EnvelopeAccumulator::add_trajectory(const Vector& values) {
    if (values.size() != static_cast<Index>(times_.size())) {
        throw DimensionError("trajectory length differs from the envelope time grid");
    }
    for (std::size_t k = 0; k < times_.size(); ++k) {
        add(k, values[static_cast<Index>(k)]);
    }
}

Envelope EnvelopeAccumulator::finish() const {
    if (times_.empty() || !upper_.allFinite() || !lower_.allFinite()) {
        throw InsufficientDataError("envelope has time levels without samples");
    }
    Envelope e{times_, upper_, lower_, {}};
    const Vector env = upper_.cwiseAbs().cwiseMax(lower_.cwiseAbs());
    e.metrics.linf = env.size() > 0 ? env.maxCoeff() : 0.0;
    for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
        const auto i = static_cast<Index>(k);
        e.metrics.l1 += 0.5 * (times_[k + 1] - times_[k]) * (env[i] + env[i + 1]);
    }
    return e;
}

Envelope envelopes_from_samples(const std::vector<Trajectory>& trajs, Index index, Quantity quantity) {
    if (trajs.empty()) {
        throw InsufficientDataError("envelope of an empty trajectory list");
    }
    EnvelopeAccumulator acc(trajs.front().times);
    for (const auto& t : trajs) {
        if (t.times != trajs.front().times) {
            throw DimensionError("trajectories do not share their time grid");
        }
        const Matrix& m = quantity == Quantity::displacement ? t.displacement
                          : quantity == Quantity::velocity   ? t.velocity
                                                             : t.acceleration;
        if (index < 0 || index >= m.rows()) {
            throw DimensionError("trajectory index " + std::to_string(index) + " out of range");
        }
        acc.add_trajectory(m.row(index).transpose());
    }
    return acc.finish();
}

EnvelopeMetrics flowpipe_envelope(const std::vector<BoundRow>& rows) {
    EnvelopeMetrics m;
    for (const auto& r : rows) {
        const double env = std::max(std::abs(r.lo), std::abs(r.hi));
        m.linf = std::max(m.linf, env);
        m.l1 += (r.t_hi - r.t_lo) * env;
    }
    return m;
}

std::vector<Vector> vertex_sampler(const Hyperrectangle& box, std::size_t count, std::uint64_t seed) {
    if (count < 1) {
        throw ArgumentError("sample count must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        Vector x = box.center();
        for (Index i = 0; i < x.size(); ++i) {
            x[i] += coin(rng) ? box.radius()[i] : -box.radius()[i];
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<Vector> uniform_sampler(const Hyperrectangle& box, std::size_t count, std::uint64_t seed) {
    if (count < 1) {
        throw ArgumentError("sample count must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        Vector x = box.center();
        for (Index i = 0; i < x.size(); ++i) {
            x[i] += unit(rng) * box.radius()[i];
        }
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace setprop
