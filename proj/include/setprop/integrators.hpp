#pragma once

// Classical one-step integrators: Backward Euler for heat systems, Newmark
// (average acceleration) and the Bathe composite scheme for dynamics.
//
// The core routines advance a batch of states at once (one column per
// trajectory, shared forcing) and report every step to an observer, so large
// Monte Carlo runs need not store the trajectories.

#include "setprop/model.hpp"

#include <functional>

namespace setprop {

using Forcing = std::function<Vector(double)>;

/// f(t) = 0 in R^n.
Forcing zero_forcing(Index n);

/// f(t) = sum_i f0_i eta_i(t), with every input at the center of its initial set.
Forcing input_forcing(const std::vector<InputTerm>& inputs);
/// Same with explicit initial input states xi_i(0).
Forcing input_forcing(const std::vector<InputTerm>& inputs, const std::vector<Vector>& xi0);

/// One time level of a batch. Velocity and acceleration are null for heat runs.
struct StepState {
    int k;
    double t;
    const Matrix& u;
    const Matrix* v = nullptr;
    const Matrix* a = nullptr;
};
using StepObserver = std::function<void(const StepState&)>;

/// Trajectory sampled at t_k = k dt; column k of each matrix is the state at t_k.
/// For heat runs `displacement` holds the temperatures and the other two are empty.
struct Trajectory {
    std::vector<double> times;
    Matrix displacement;
    Matrix velocity;
    Matrix acceleration;

    std::size_t size() const { return times.size(); }
};

/// (K dt + C) theta_{k+1} = f_{k+1} dt + C theta_k. The observer sees k = 0..steps.
void backward_euler(const SecondOrderSystem& sys, const Forcing& f, const Matrix& theta0, double dt, int steps,
                    const StepObserver& observer);
Trajectory backward_euler(const SecondOrderSystem& sys, const Forcing& f, const Vector& theta0, double dt, int steps);

/// Average-acceleration Newmark (gamma = 1/2, beta = 1/4).
void newmark(const SecondOrderSystem& sys, const Forcing& f, const Matrix& u0, const Matrix& v0, double dt, int steps,
             const StepObserver& observer);
Trajectory newmark(const SecondOrderSystem& sys, const Forcing& f, const Vector& u0, const Vector& v0, double dt,
                   int steps);

/// Bathe composite scheme: trapezoidal sub-step to t_k + dt/2, then a
/// three-point backward difference sub-step to t_{k+1}.
void bathe(const SecondOrderSystem& sys, const Forcing& f, const Matrix& u0, const Matrix& v0, double dt, int steps,
           const StepObserver& observer);
Trajectory bathe(const SecondOrderSystem& sys, const Forcing& f, const Vector& u0, const Vector& v0, double dt,
                 int steps);

}  // namespace setprop
