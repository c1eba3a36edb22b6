#include "oracles.hpp"

#include "setprop/analysis.hpp"
#include "setprop/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace setprop;

namespace {

constexpr double pi = std::numbers::pi;

StateMatrix oscillator(double omega, double zeta = 0.0) {
    StateMatrix a(2, 2);
    a << 0.0, 1.0, -omega * omega, -2.0 * zeta * omega;
    return a;
}

Flowpipe point_zonotope_flowpipe(const StateMatrix& a, double delta, int steps) {
    const Hyperrectangle x0(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 0.0));
    return propagate_zonotope(discretize(a, SetExpr(Zonotope::from_box(x0)), delta, steps));
}

}  // namespace

TEST_CASE("analytic oscillator") {
    const auto s = analytic_oscillator(3.0, 1.0, 2.0, 0.7);
    CHECK(s.u == doctest::Approx(std::cos(2.1) + 2.0 / 3.0 * std::sin(2.1)));
    CHECK(s.v == doctest::Approx(-3.0 * std::sin(2.1) + 2.0 * std::cos(2.1)));
    CHECK_THROWS_AS(analytic_oscillator(0.0, 1.0, 0.0, 1.0), ArgumentError);
}

TEST_CASE("analytic heat rod") {
    CHECK(analytic_heat_rod(0.0, 0.5, 0.0) == doctest::Approx(0.5));
    CHECK(analytic_heat_rod(0.1, 0.5, 0.0) == doctest::Approx(0.55));
    CHECK(std::abs(analytic_heat_rod(0.0, 0.0, 0.3)) < 1e-15);
    CHECK(std::abs(analytic_heat_rod(0.0, 1.0, 0.3)) < 1e-14);
    // u_t = u_xx by central differences.
    const double x = 0.37;
    const double t = 0.02;
    const double h = 1e-4;
    const double ut = (analytic_heat_rod(0.0, x, t + h) - analytic_heat_rod(0.0, x, t - h)) / (2.0 * h);
    const double uxx = (analytic_heat_rod(0.0, x + h, t) - 2.0 * analytic_heat_rod(0.0, x, t) +
                        analytic_heat_rod(0.0, x - h, t)) /
                       (h * h);
    CHECK(ut == doctest::Approx(uxx).epsilon(1e-5));
}

TEST_CASE("clamped bar series against the d'Alembert solution") {
    // For t < 2L/c the free end moves with constant speed F / (rho A c).
    const BarParameters p;
    const double force = 10000.0;
    const double c = std::sqrt(p.modulus / p.density);
    const double speed = force / (p.density * p.area * c);
    const int s_max = 4000;
    const double tail = clamped_bar_tail_bound(p, force, s_max);
    for (double frac : {0.3, 0.9, 1.4, 1.8}) {
        const double t = frac * p.length / c;
        const double got = analytic_clamped_bar(p, force, p.length, t, s_max);
        CHECK(std::abs(got - speed * t) <= tail);
    }
    // One round trip doubles the static end deflection.
    const double doubled = analytic_clamped_bar(p, force, p.length, 2.0 * p.length / c, 2000);
    CHECK(doubled == doctest::Approx(2.0 * force * p.length / (p.modulus * p.area)).epsilon(0.01));
    // A point at x has not moved before the wave arrives at (L - x) / c.
    const double x = 0.3 * p.length;
    CHECK(std::abs(analytic_clamped_bar(p, force, x, 0.5 * (p.length - x) / c, s_max)) <= tail);
    CHECK(analytic_clamped_bar(p, force, 0.0, 1e-3, 10) == 0.0);
    CHECK(std::abs(analytic_clamped_bar(p, force, p.length, 1e-3, 100) -
                   analytic_clamped_bar(p, force, p.length, 1e-3, s_max)) <=
          clamped_bar_tail_bound(p, force, 100));
    CHECK_THROWS_AS(analytic_clamped_bar(p, force, -1.0, 0.0), ArgumentError);
    CHECK_THROWS_AS(analytic_clamped_bar(p, force, 1.0, 0.0, 0), ArgumentError);
}

TEST_CASE("period estimate of an exact oscillator flowpipe contains the period") {
    const double omega = 4.0 * pi;
    for (double delta : {0.005, 0.0125, 0.025}) {
        const Flowpipe fp = point_zonotope_flowpipe(oscillator(omega), delta, static_cast<int>(10.3 / delta));
        const PeriodEstimate est = estimate_period(fp, 0, 1, 20);
        CHECK(est.crossings_used == 20);
        CHECK(est.s_t.lo <= 0.5);
        CHECK(est.s_t.hi >= 0.5);
        CHECK(est.s_t.hi - est.s_t.lo <= 2.0 * delta);
        CHECK(est.period_elongation(0.5) >= 0.0);
    }
}

TEST_CASE("period estimate from samples and from boxes") {
    const double omega = 2.0;
    std::vector<double> times;
    Matrix states(2, 2001);
    for (int k = 0; k <= 2000; ++k) {
        const double t = 0.01 * k;
        times.push_back(t);
        const auto s = analytic_oscillator(omega, 1.0, 0.0, t);
        states.col(k) << s.u, s.v;
    }
    const Flowpipe fp = flowpipe_from_samples(times, states);
    REQUIRE(fp.size() == 2000);
    const PeriodEstimate est = estimate_period(fp, 0, 1, 5);
    CHECK(est.s_t.lo <= pi);
    CHECK(est.s_t.hi >= pi);

    const PeakEstimate peaks = estimate_peaks(times, states.row(0).transpose(), 5);
    CHECK(std::abs(peaks.period - pi) < 1e-10);
    CHECK(std::abs(peaks.amplitude - 1.0) < 1e-10);
    CHECK(peaks.peaks == 6);
    CHECK_THROWS_AS(estimate_peaks(times, states.row(0).transpose(), 7), InsufficientDataError);
    CHECK_THROWS_AS(estimate_period(fp, 0, 1, 0), ArgumentError);
}

TEST_CASE("amplitude decay of a damped oscillator") {
    const double omega = 2.0 * pi;
    const double zeta = 0.01;
    const double wd = omega * std::sqrt(1.0 - zeta * zeta);
    const double delta = 0.002;
    const Flowpipe fp = point_zonotope_flowpipe(oscillator(omega, zeta), delta, 6000);
    // Maxima of e^{-zeta w t}(cos wd t + ...) repeat every 2 pi / wd with ratio e^{-zeta w T_d}.
    const double expected = 1.0 - std::exp(-zeta * omega * 2.0 * pi / wd);
    const double slice = estimate_amplitude_decay(fp, 0, 1, 5, 1.0, AmplitudeRule::slice);
    const double interval = estimate_amplitude_decay(fp, 0, 1, 5, 1.0, AmplitudeRule::interval);
    CHECK(slice == doctest::Approx(expected).epsilon(0.02));
    CHECK(interval >= slice - 1e-12);

    const Flowpipe undamped = point_zonotope_flowpipe(oscillator(omega), delta, 6000);
    const double ad0 = estimate_amplitude_decay(undamped, 0, 1, 5, 1.0, AmplitudeRule::slice);
    CHECK(ad0 >= -1e-9);
    CHECK(ad0 < 1e-4);

    CHECK_THROWS_AS(estimate_amplitude_decay(fp, 0, 1, 0, 1.0), ArgumentError);
    CHECK_THROWS_AS(estimate_amplitude_decay(fp, 0, 1, 1, 0.0), ArgumentError);
    CHECK_THROWS_AS(estimate_amplitude_decay(fp, 0, 1, 100, 1.0), InsufficientDataError);
}

TEST_CASE("slice bounds") {
    const double omega = 4.0 * pi;
    const Hyperrectangle x0(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.1, 0.1));
    const DiscretizedProblem prob = discretize(oscillator(omega), x0, 0.025, 40, DiscretizationMode::box);
    const Flowpipe zf = propagate_zonotope(prob);
    const Flowpipe bf = propagate_box(prob);
    CHECK_THROWS_AS(slice_bounds(propagate_support(prob, canonical_directions(2)), 0, 0, 1), UnsupportedQueryError);
    CHECK(slice_bounds(bf, 0, 0, 1).has_value());
    CHECK_THROWS_AS(slice_bounds(zf, 0, 0, 0), DimensionError);

    // The slice of the initial box at v = 0 is the whole u-range.
    const auto s0 = slice_bounds(zf, 0, 0, 1);
    REQUIRE(s0);
    CHECK(s0->lo == doctest::Approx(prob.omega0_box->low()[0]));
    CHECK(s0->hi == doctest::Approx(prob.omega0_box->high()[0]));

    // A reach-set away from v = 0 has an empty slice.
    const auto v5 = flowpipe_bounds(zf, Index{1})[5];
    REQUIRE(v5.hi < 0.0);
    CHECK(!slice_bounds(zf, 5, 0, 1));

    // Support flowpipe with transported directions gives the same slices.
    SupportOptions opt;
    opt.keep_transported = true;
    const Flowpipe sf =
        propagate_support(prob.phi, *prob.omega0_box, canonical_directions(2), prob.steps, prob.delta, opt);
    for (std::size_t k : {0u, 19u, 20u, 21u}) {
        const auto a = slice_bounds(zf, k, 0, 1);
        const auto b = slice_bounds(sf, k, 0, 1);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            CHECK(a->lo == doctest::Approx(b->lo).epsilon(1e-8));
            CHECK(a->hi == doctest::Approx(b->hi).epsilon(1e-8));
        }
    }
}

TEST_CASE("slice bounds against exact polygon clipping") {
    oracle::Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix g = rng.matrix(2, rng.integer(1, 5));
        const Vector c = rng.vector(2, -0.3, 0.3);
        Flowpipe fp;
        fp.kind = FlowpipeKind::zonotope;
        fp.dim = 2;
        fp.delta = 1.0;
        fp.sets.push_back({0.0, 1.0, Zonotope(c, g)});
        // The zonotope's u-extent on v = 0 from its generator sign vertices.
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        const Index m = g.cols();
        for (long mask = 0; mask < (1L << m); ++mask) {
            for (long other = 0; other < (1L << m); ++other) {
                Vector p = c;
                Vector q = c;
                for (Index j = 0; j < m; ++j) {
                    p += ((mask >> j) & 1 ? 1.0 : -1.0) * g.col(j);
                    q += ((other >> j) & 1 ? 1.0 : -1.0) * g.col(j);
                }
                if ((p[1] <= 0.0 && q[1] >= 0.0) && p[1] != q[1]) {
                    const double s = p[1] / (p[1] - q[1]);
                    const double u = p[0] + s * (q[0] - p[0]);
                    lo = std::min(lo, u);
                    hi = std::max(hi, u);
                }
            }
        }
        const auto got = slice_bounds(fp, 0, 0, 1);
        if (!std::isfinite(lo)) {
            CHECK(!got);
            continue;
        }
        REQUIRE(got);
        CHECK(got->lo == doctest::Approx(lo).epsilon(1e-7));
        CHECK(got->hi == doctest::Approx(hi).epsilon(1e-7));
    }
}

TEST_CASE("peak estimate on damped and coarse data") {
    std::vector<double> times;
    Vector values(400);
    for (int k = 0; k < 400; ++k) {
        times.push_back(0.05 * k);
        values[k] = std::exp(-0.01 * times.back()) * std::cos(2.0 * times.back());
    }
    const PeakEstimate est = estimate_peaks(times, values, 3);
    CHECK(est.period == doctest::Approx(pi).epsilon(1e-3));
    CHECK(est.amplitude == doctest::Approx(std::exp(-0.01 * 3.0 * pi)).epsilon(1e-3));
    CHECK_THROWS_AS(estimate_peaks(times, Vector::Zero(3), 1), DimensionError);
}

TEST_CASE("envelopes") {
    const std::vector<double> times{0.0, 0.5, 1.0, 1.5};
    EnvelopeAccumulator acc(times);
    acc.add_trajectory(Vector(Eigen::Vector4d(1.0, -2.0, 0.5, 0.0)));
    acc.add_trajectory(Vector(Eigen::Vector4d(-1.5, 1.0, 0.25, 0.0)));
    CHECK(acc.count() == 2);
    const Envelope e = acc.finish();
    CHECK(e.upper == Eigen::Vector4d(1.0, 1.0, 0.5, 0.0));
    CHECK(e.lower == Eigen::Vector4d(-1.5, -2.0, 0.25, 0.0));
    // max(|upper|, |lower|) = 1.5, 2, 0.5, 0 by the trapezoid rule.
    CHECK(e.metrics.l1 == doctest::Approx(0.5 * (1.75 + 1.25 + 0.25)));
    CHECK(e.metrics.linf == 2.0);

    EnvelopeAccumulator partial(times);
    partial.add(0, 1.0);
    CHECK_THROWS_AS(partial.finish(), InsufficientDataError);
    CHECK_THROWS_AS(partial.add(4, 1.0), ArgumentError);
    CHECK_THROWS_AS(partial.add_trajectory(Vector::Zero(3)), DimensionError);

    const std::vector<BoundRow> rows{{0.0, 0.1, -1.0, 0.5}, {0.1, 0.2, 0.2, 3.0}};
    const EnvelopeMetrics m = flowpipe_envelope(rows);
    CHECK(m.l1 == doctest::Approx(0.1 * 1.0 + 0.1 * 3.0));
    CHECK(m.linf == 3.0);
}

TEST_CASE("envelopes from integrator runs bound every run") {
    SecondOrderSystem s;
    s.kind = SystemKind::dynamics;
    s.mass = SparseMatrix(1, 1);
    s.mass->insert(0, 0) = 1.0;
    s.damping = SparseMatrix(1, 1);
    s.stiffness = SparseMatrix(1, 1);
    s.stiffness.insert(0, 0) = 4.0;
    std::vector<Trajectory> runs;
    for (double u0 : {0.5, -1.0, 2.0}) {
        runs.push_back(newmark(s, zero_forcing(1), Vector::Constant(1, u0), Vector::Zero(1), 0.01, 300));
    }
    const Envelope e = envelopes_from_samples(runs, 0, Quantity::velocity);
    for (const auto& r : runs) {
        CHECK((r.velocity.row(0).transpose().array() <= e.upper.array()).all());
        CHECK((r.velocity.row(0).transpose().array() >= e.lower.array()).all());
    }
    CHECK(e.metrics.linf == doctest::Approx(4.0).epsilon(1e-3));
    CHECK_THROWS_AS(envelopes_from_samples({}, 0), InsufficientDataError);
    CHECK_THROWS_AS(envelopes_from_samples(runs, 1), DimensionError);
}

TEST_CASE("samplers") {
    const Hyperrectangle box(Eigen::Vector3d(1.0, 0.0, -2.0), Eigen::Vector3d(0.5, 0.0, 1.0));
    const auto a = vertex_sampler(box, 200, 7);
    const auto b = vertex_sampler(box, 200, 7);
    REQUIRE(a.size() == 200);
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK((a[i][0] == 0.5 || a[i][0] == 1.5));
        CHECK(a[i][1] == 0.0);
        CHECK((a[i][2] == -3.0 || a[i][2] == -1.0));
        seen.insert({a[i][0], a[i][2]});
    }
    CHECK(seen.size() == 4);
    CHECK(vertex_sampler(box, 10, 8) != vertex_sampler(box, 10, 7));

    for (const Vector& x : uniform_sampler(box, 500, 3)) {
        CHECK(((x - box.center()).cwiseAbs().array() <= box.radius().array()).all());
    }
    CHECK_THROWS_AS(vertex_sampler(box, 0, 1), ArgumentError);
}
