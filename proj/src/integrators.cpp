#include "setprop/integrators.hpp"

#include "setprop/errors.hpp"
#include "sparse_solve.hpp"

#include <cmath>
#include <string>

namespace setprop {

namespace {

void check_run(const SecondOrderSystem& sys, SystemKind kind, double dt, int steps) {
    if (sys.kind != kind) {
        throw ArgumentError(kind == SystemKind::heat ? "Backward Euler requires a heat system"
                                                     : "this integrator requires a dynamics system");
    }
    sys.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ArgumentError("time step must be positive, got " + std::to_string(dt));
    }
    if (steps < 0) {
        throw ArgumentError("step count must be nonnegative");
    }
}

void check_batch(const Matrix& m, Index n, const char* what) {
    if (m.rows() != n) {
        throw DimensionError(std::string(what) + " has " + std::to_string(m.rows()) + " rows, expected " +
                             std::to_string(n));
    }
}

Vector force_at(const Forcing& f, double t, Index n, int k) {
    Vector v = f(t);
    if (v.size() != n) {
        throw DimensionError("forcing returned " + std::to_string(v.size()) + " entries, expected " +
                             std::to_string(n));
    }
    if (!v.allFinite()) {
        throw NumericError("non-finite forcing", static_cast<std::size_t>(k));
    }
    return v;
}

void check_finite(const Matrix& m, int k) {
    if (!m.allFinite()) {
        throw NumericError("non-finite state", static_cast<std::size_t>(k));
    }
}

// Collects the single trajectory of a batch run.
struct Recorder {
    Trajectory traj;
    bool dynamics;

    Recorder(Index n, int steps, bool dyn) : dynamics(dyn) {
        traj.times.reserve(static_cast<std::size_t>(steps) + 1);
        traj.displacement.resize(n, steps + 1);
        if (dynamics) {
            traj.velocity.resize(n, steps + 1);
            traj.acceleration.resize(n, steps + 1);
        }
    }

    void operator()(const StepState& s) {
        traj.times.push_back(s.t);
        traj.displacement.col(s.k) = s.u.col(0);
        if (dynamics) {
            traj.velocity.col(s.k) = s.v->col(0);
            traj.acceleration.col(s.k) = s.a->col(0);
        }
    }
};

Matrix initial_acceleration(const SecondOrderSystem& sys, const Forcing& f, const Matrix& u0, const Matrix& v0) {
    const Index n = sys.dofs();
    const detail::SparseFactor m(*sys.mass, "mass matrix");
    Matrix rhs = -(sys.damping * v0) - sys.stiffness * u0;
    rhs.colwise() += force_at(f, 0.0, n, 0);
    return m.solve(rhs);
}

}  // namespace

Forcing zero_forcing(Index n) {
    return [n](double) { return Vector::Zero(n); };
}

Forcing input_forcing(const std::vector<InputTerm>& inputs) {
    if (inputs.empty()) {
        throw ArgumentError("input_forcing needs at least one input term (use zero_forcing)");
    }
    return [inputs](double t) {
        Vector f = Vector::Zero(inputs.front().f0().size());
        for (const auto& in : inputs) {
            f += in.f0() * in.eta(t);
        }
        return f;
    };
}

Forcing input_forcing(const std::vector<InputTerm>& inputs, const std::vector<Vector>& xi0) {
    if (inputs.empty()) {
        throw ArgumentError("input_forcing needs at least one input term (use zero_forcing)");
    }
    if (xi0.size() != inputs.size()) {
        throw DimensionError("one initial input state per input term is required");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (xi0[i].size() != inputs[i].order()) {
            throw DimensionError("initial input state " + std::to_string(i) + " has wrong dimension");
        }
    }
    return [inputs, xi0](double t) {
        Vector f = Vector::Zero(inputs.front().f0().size());
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            f += inputs[i].f0() * inputs[i].eta(t, xi0[i]);
        }
        return f;
    };
}

void backward_euler(const SecondOrderSystem& sys, const Forcing& f, const Matrix& theta0, double dt, int steps,
                    const StepObserver& observer) {
    check_run(sys, SystemKind::heat, dt, steps);
    const Index n = sys.dofs();
    check_batch(theta0, n, "initial temperature");
    const SparseMatrix& c = sys.damping;
    const detail::SparseFactor lhs(SparseMatrix(sys.stiffness * dt + c), "Backward Euler matrix");

    Matrix theta = theta0;
    observer({0, 0.0, theta});
    for (int k = 0; k < steps; ++k) {
        const double t = (k + 1) * dt;
        Matrix rhs = c * theta;
        rhs.colwise() += force_at(f, t, n, k + 1) * dt;
        theta = lhs.solve(rhs);
        check_finite(theta, k + 1);
        observer({k + 1, t, theta});
    }
}

Trajectory backward_euler(const SecondOrderSystem& sys, const Forcing& f, const Vector& theta0, double dt,
                          int steps) {
    Recorder rec(sys.dofs(), std::max(steps, 0), false);
    backward_euler(sys, f, Matrix(theta0), dt, steps, [&](const StepState& s) { rec(s); });
    return std::move(rec.traj);
}

void newmark(const SecondOrderSystem& sys, const Forcing& f, const Matrix& u0, const Matrix& v0, double dt, int steps,
             const StepObserver& observer) {
    check_run(sys, SystemKind::dynamics, dt, steps);
    const Index n = sys.dofs();
    check_batch(u0, n, "initial displacement");
    check_batch(v0, n, "initial velocity");
    if (u0.cols() != v0.cols()) {
        throw DimensionError("initial displacement and velocity batches differ in size");
    }
    const double b0 = 4.0 / (dt * dt);
    const double b1 = 2.0 / dt;
    const double b2 = 4.0 / dt;
    const SparseMatrix& m = *sys.mass;
    const SparseMatrix& c = sys.damping;
    const SparseMatrix& k_mat = sys.stiffness;
    const detail::SparseFactor lhs(SparseMatrix(b0 * m + b1 * c + k_mat), "Newmark effective matrix");

    Matrix u = u0;
    Matrix v = v0;
    Matrix a = initial_acceleration(sys, f, u0, v0);
    check_finite(a, 0);
    observer({0, 0.0, u, &v, &a});
    for (int k = 0; k < steps; ++k) {
        const double t = (k + 1) * dt;
        Matrix rhs = m * Matrix(b0 * u + b2 * v + a) + c * Matrix(b1 * u + v);
        rhs.colwise() += force_at(f, t, n, k + 1);
        Matrix u_next = lhs.solve(rhs);
        Matrix a_next = b0 * (u_next - u) - b2 * v - a;
        v += 0.5 * dt * (a + a_next);
        u = std::move(u_next);
        a = std::move(a_next);
        check_finite(u, k + 1);
        check_finite(v, k + 1);
        observer({k + 1, t, u, &v, &a});
    }
}

Trajectory newmark(const SecondOrderSystem& sys, const Forcing& f, const Vector& u0, const Vector& v0, double dt,
                   int steps) {
    Recorder rec(sys.dofs(), std::max(steps, 0), true);
    newmark(sys, f, Matrix(u0), Matrix(v0), dt, steps, [&](const StepState& s) { rec(s); });
    return std::move(rec.traj);
}

void bathe(const SecondOrderSystem& sys, const Forcing& f, const Matrix& u0, const Matrix& v0, double dt, int steps,
           const StepObserver& observer) {
    check_run(sys, SystemKind::dynamics, dt, steps);
    const Index n = sys.dofs();
    check_batch(u0, n, "initial displacement");
    check_batch(v0, n, "initial velocity");
    if (u0.cols() != v0.cols()) {
        throw DimensionError("initial displacement and velocity batches differ in size");
    }
    const double a0 = 16.0 / (dt * dt);
    const double a1 = 4.0 / dt;
    const double a2 = 9.0 / (dt * dt);
    const double a3 = 3.0 / dt;
    const double a4 = 8.0 / dt;
    const double a5 = 12.0 / (dt * dt);
    const double a6 = -3.0 / (dt * dt);
    const double a7 = -1.0 / dt;
    const SparseMatrix& m = *sys.mass;
    const SparseMatrix& c = sys.damping;
    const SparseMatrix& k_mat = sys.stiffness;
    const detail::SparseFactor first(SparseMatrix(a0 * m + a1 * c + k_mat), "Bathe first sub-step matrix");
    const detail::SparseFactor second(SparseMatrix(a2 * m + a3 * c + k_mat), "Bathe second sub-step matrix");

    Matrix u = u0;
    Matrix v = v0;
    Matrix a = initial_acceleration(sys, f, u0, v0);
    check_finite(a, 0);
    observer({0, 0.0, u, &v, &a});
    for (int k = 0; k < steps; ++k) {
        const double t_half = (k + 0.5) * dt;
        const double t = (k + 1) * dt;

        Matrix rhs = m * Matrix(a0 * u + a4 * v + a) + c * Matrix(a1 * u + v);
        rhs.colwise() += force_at(f, t_half, n, k + 1);
        const Matrix u_half = first.solve(rhs);
        const Matrix v_half = a1 * (u_half - u) - v;

        rhs = m * Matrix(a5 * u_half + a6 * u + a1 * v_half + a7 * v) + c * Matrix(a1 * u_half + a7 * u);
        rhs.colwise() += force_at(f, t, n, k + 1);
        Matrix u_next = second.solve(rhs);
        // Three-point backward differences over t_k, t_k + dt/2, t_{k+1}.
        Matrix v_next = a3 * u_next - a1 * u_half - a7 * u;
        Matrix a_next = a3 * v_next - a1 * v_half - a7 * v;

        u = std::move(u_next);
        v = std::move(v_next);
        a = std::move(a_next);
        check_finite(u, k + 1);
        check_finite(v, k + 1);
        observer({k + 1, t, u, &v, &a});
    }
}

Trajectory bathe(const SecondOrderSystem& sys, const Forcing& f, const Vector& u0, const Vector& v0, double dt,
                 int steps) {
    Recorder rec(sys.dofs(), std::max(steps, 0), true);
    bathe(sys, f, Matrix(u0), Matrix(v0), dt, steps, [&](const StepState& s) { rec(s); });
    return std::move(rec.traj);
}

}  // namespace setprop
