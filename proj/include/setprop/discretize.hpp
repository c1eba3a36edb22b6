#pragma once

#include "setprop/matfun.hpp"
#include "setprop/model.hpp"

#include <optional>

namespace setprop {

enum class DiscretizationMode { symbolic, box };

/// Initial set Omega0 enclosing every trajectory over [0, delta], together
/// with the one-step transition matrix Phi = e^{A delta}.
struct DiscretizedProblem {
    StateMatrix phi;
    SetExpr omega0;
    std::optional<Hyperrectangle> omega0_box;
    double delta = 0.0;
    int steps = 0;
};

/// Omega0 = CH(X0, Phi X0 + E+(A, X0, delta)) intersected with
/// CH(Phi X0, X0 + E+(A, Phi X0, delta)). Box mode also evaluates its box
/// enclosure (EmptySetError if the bounds cross).
DiscretizedProblem discretize(const LinearSystem& sys, double delta, int steps,
                              DiscretizationMode mode = DiscretizationMode::symbolic);
DiscretizedProblem discretize(const StateMatrix& a, const SetExpr& x0, double delta, int steps,
                              DiscretizationMode mode = DiscretizationMode::symbolic);

namespace detail {

/// Forward-time term CH(X0, Phi X0 + E+(A, X0, delta)).
SetExpr forward_enclosure(const StateMatrix& a, const StateMatrix& phi, const SetExpr& x0, double delta);
/// Backward-time term CH(Phi X0, X0 + E+(A, Phi X0, delta)).
SetExpr backward_enclosure(const StateMatrix& a, const StateMatrix& phi, const SetExpr& x0, double delta);

}  // namespace detail

}  // namespace setprop
