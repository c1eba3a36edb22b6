#include "oracles.hpp"

#include "setprop/discretize.hpp"
#include "setprop/errors.hpp"

#include <doctest.h>

#include <numbers>

using namespace setprop;

namespace {

StateMatrix oscillator() {
    StateMatrix a(2, 2);
    const double w = 4.0 * std::numbers::pi;
    a << 0.0, 1.0, -w * w, 0.0;
    return a;
}

Vector box_point(const Hyperrectangle& box, oracle::Rng& rng) {
    Vector x = box.center();
    for (Index i = 0; i < x.size(); ++i) {
        x[i] += rng.uniform() * box.radius()[i];
    }
    return x;
}

}  // namespace

TEST_CASE("oscillator initial set box") {
    const Hyperrectangle x0(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.1, 0.1));
    const DiscretizedProblem prob = discretize(oscillator(), x0, 0.025, 10, DiscretizationMode::box);
    REQUIRE(prob.omega0_box.has_value());
    const Hyperrectangle& h = *prob.omega0_box;
    CHECK(std::abs(h.center()[0] - 0.97471) < 1e-5);
    CHECK(std::abs(h.center()[1] + 2.13332) < 1e-5);
    CHECK(std::abs(h.radius()[0] - 0.12868) < 1e-5);
    CHECK(std::abs(h.radius()[1] - 2.23332) < 1e-5);
    CHECK(prob.delta == 0.025);
    CHECK(prob.steps == 10);

    const DiscretizedProblem lazy = discretize(oscillator(), x0, 0.025, 10);
    CHECK(!lazy.omega0_box);
    const Hyperrectangle again = box_approximation(lazy.omega0);
    CHECK((again.center() - h.center()).norm() < 1e-14);
    CHECK((again.radius() - h.radius()).norm() < 1e-14);
}

TEST_CASE("zero dynamics leave the initial set unchanged") {
    oracle::Rng rng(21);
    const Hyperrectangle x0(rng.vector(3), rng.vector(3, 0.1, 1.0));
    const DiscretizedProblem prob = discretize(StateMatrix::Zero(3, 3), x0, 0.1, 5);
    CHECK(prob.phi == StateMatrix::Identity(3, 3));
    for (int i = 0; i < 50; ++i) {
        const Vector d = rng.unit(3);
        CHECK(std::abs(prob.omega0.support(d) - support(x0, d)) < 1e-14);
    }
}

TEST_CASE("analytic oscillator trajectories stay inside the initial set") {
    const Hyperrectangle x0(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.1, 0.1));
    const double delta = 0.025;
    const StateMatrix a = oscillator();
    const DiscretizedProblem prob = discretize(a, x0, delta, 1);
    oracle::Rng rng(22);
    Matrix dense(2, 64);
    for (int j = 0; j < 64; ++j) {
        const double th = 2.0 * std::numbers::pi * j / 64;
        dense.col(j) << std::cos(th), std::sin(th);
    }
    const Vector rho = prob.omega0.support(dense);
    for (int traj = 0; traj < 50; ++traj) {
        const Vector start = box_point(x0, rng);
        for (int s = 0; s <= 40; ++s) {
            const double t = delta * s / 40.0;
            const Vector x = oracle::exp(a, t) * start;
            CHECK(((dense.transpose() * x - rho).array() <= 1e-12).all());
        }
    }
}

TEST_CASE("random systems: sampled trajectories inside the initial set") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = rng.integer(1, 5);
        const StateMatrix a = rng.stable(n, rng.uniform(0.5, 5.0));
        const double delta = rng.uniform(0.01, 0.2);
        const Hyperrectangle x0(rng.vector(n), rng.vector(n, 0.0, 0.5));
        const DiscretizedProblem prob = discretize(a, x0, delta, 1);
        Matrix dirs(n, 2 * n + 10);
        dirs << canonical_directions(n), Matrix::Zero(n, 10);
        for (int j = 0; j < 10; ++j) {
            dirs.col(2 * n + j) = rng.unit(n);
        }
        const Vector rho = prob.omega0.support(dirs);
        for (int s = 0; s < 200; ++s) {
            const Vector x = oracle::exp(a, rng.uniform(0.0, delta)) * box_point(x0, rng);
            CHECK(((dirs.transpose() * x - rho).array() <= 1e-12 * (1.0 + rho.cwiseAbs().array())).all());
        }
    }
}

TEST_CASE("intersection is never looser than either enclosure") {
    oracle::Rng rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = rng.integer(2, 4);
        const StateMatrix a = rng.stable(n, 3.0);
        const double delta = rng.uniform(0.05, 0.3);
        const Hyperrectangle x0(rng.vector(n), rng.vector(n, 0.0, 0.3));
        const StateMatrix phi = expm(a, delta);
        const SetExpr fwd = detail::forward_enclosure(a, phi, x0, delta);
        const SetExpr bwd = detail::backward_enclosure(a, phi, x0, delta);
        const DiscretizedProblem prob = discretize(a, x0, delta, 1);
        for (int i = 0; i < 20; ++i) {
            const Vector d = rng.unit(n);
            const double r = prob.omega0.support(d);
            CHECK(r <= fwd.support(d) + 1e-14);
            CHECK(r <= bwd.support(d) + 1e-14);
        }
    }
}

TEST_CASE("the initial set shrinks to the hull of X0 and Phi X0 as delta decreases") {
    const StateMatrix a = oscillator();
    const Hyperrectangle x0(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.1, 0.1));
    double prev = std::numeric_limits<double>::infinity();
    for (double delta = 0.02; delta > 1e-4; delta /= 2.0) {
        const DiscretizedProblem prob = discretize(a, x0, delta, 1);
        const SetExpr hull = convex_hull(SetExpr(x0), linear_map(prob.phi, SetExpr(x0)));
        double excess = 0.0;
        for (int j = 0; j < 32; ++j) {
            const double th = 2.0 * std::numbers::pi * j / 32;
            const Vector d = Eigen::Vector2d(std::cos(th), std::sin(th));
            excess = std::max(excess, prob.omega0.support(d) - hull.support(d));
        }
        CHECK(excess >= -1e-12);
        CHECK(excess <= prev);
        prev = excess;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("discretize a homogenized system") {
    SecondOrderSystem s;
    s.kind = SystemKind::dynamics;
    s.stiffness = SparseMatrix(1, 1);
    s.stiffness.insert(0, 0) = 4.0;
    s.damping = SparseMatrix(1, 1);
    s.mass = SparseMatrix(1, 1);
    s.mass->insert(0, 0) = 1.0;
    s.inputs.push_back(InputTerm::constant(Vector::Ones(1), Interval::point(1.0)));
    const LinearSystem sys = homogenize(s, s.inputs, Hyperrectangle(Vector::Zero(2), Vector::Zero(2)));
    const DiscretizedProblem prob = discretize(sys, 0.01, 3, DiscretizationMode::box);
    CHECK(prob.phi.rows() == 3);
    REQUIRE(prob.omega0_box);
    CHECK(std::abs(prob.omega0_box->radius()[2]) < 1e-14);
    // u(t) = (1 - cos 2t) / 4 is inside the box over [0, delta].
    for (int i = 0; i <= 10; ++i) {
        const double t = 0.001 * i;
        const double u = (1.0 - std::cos(2.0 * t)) / 4.0;
        CHECK(u >= prob.omega0_box->low()[0] - 1e-15);
        CHECK(u <= prob.omega0_box->high()[0] + 1e-15);
    }
}

TEST_CASE("discretize errors") {
    const Hyperrectangle x0(Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.1, 0.1));
    CHECK_THROWS_AS(discretize(oscillator(), x0, 0.0, 1), ArgumentError);
    CHECK_THROWS_AS(discretize(oscillator(), x0, 0.1, -1), ArgumentError);
    CHECK_THROWS_AS(discretize(StateMatrix::Zero(3, 3), x0, 0.1, 1), DimensionError);
}
