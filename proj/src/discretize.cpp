#include "setprop/discretize.hpp"

#include "setprop/errors.hpp"

#include <cmath>
#include <string>

namespace setprop {

namespace {

void check_arguments(const StateMatrix& a, const SetExpr& x0, double delta, int steps) {
    if (a.rows() != a.cols()) {
        throw DimensionError("state matrix must be square");
    }
    if (x0.dim() != a.rows()) {
        throw DimensionError("initial set has dimension " + std::to_string(x0.dim()) + ", state matrix is " +
                             std::to_string(a.rows()));
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ArgumentError("time step must be positive, got " + std::to_string(delta));
    }
    if (steps < 1) {
        throw ArgumentError("step count must be at least 1");
    }
}

}  // namespace

namespace detail {

SetExpr forward_enclosure(const StateMatrix& a, const StateMatrix& phi, const SetExpr& x0, double delta) {
    const SetExpr phi_x0 = linear_map(phi, x0);
    return convex_hull(x0, minkowski_sum(phi_x0, e_plus(a, x0, delta)));
}

SetExpr backward_enclosure(const StateMatrix& a, const StateMatrix& phi, const SetExpr& x0, double delta) {
    const SetExpr phi_x0 = linear_map(phi, x0);
    return convex_hull(phi_x0, minkowski_sum(x0, e_plus(a, phi_x0, delta)));
}

}  // namespace detail

DiscretizedProblem discretize(const StateMatrix& a, const SetExpr& x0, double delta, int steps,
                              DiscretizationMode mode) {
    check_arguments(a, x0, delta, steps);
    DiscretizedProblem out{expm(a, delta), x0, std::nullopt, delta, steps};

    // A^2 and P(|A|, delta) are shared by both bloating terms.
    const StateMatrix a2 = a * a;
    const StateMatrix p_abs = p_series(a.cwiseAbs(), delta);
    const SetExpr phi_x0 = linear_map(out.phi, x0);
    const SetExpr forward = convex_hull(x0, minkowski_sum(phi_x0, e_plus(a2, p_abs, x0)));
    const SetExpr backward = convex_hull(phi_x0, minkowski_sum(x0, e_plus(a2, p_abs, phi_x0)));
    out.omega0 = intersection(forward, backward);
    if (mode == DiscretizationMode::box) {
        out.omega0_box = box_approximation(out.omega0);
    }
    return out;
}

DiscretizedProblem discretize(const LinearSystem& sys, double delta, int steps, DiscretizationMode mode) {
    return discretize(sys.a, sys.initial, delta, steps, mode);
}

}  // namespace setprop
