#pragma once

#include "setprop/sets.hpp"

namespace setprop {

/// Dense state matrix (A, or the transition matrix Phi = e^{A delta}).
using StateMatrix = Eigen::MatrixXd;

/// e^{A delta} by diagonal balancing plus Pade scaling-and-squaring.
/// Throws ArgumentError for delta <= 0 and NumericError on non-finite results.
StateMatrix expm(const StateMatrix& a, double delta);

/// e^{A} (delta = 1, also accepts the zero matrix).
StateMatrix expm(const StateMatrix& a);

/// sum_{i>=0} A^i delta^{i+2} / (i+2)!
///
/// Truncation: at least 10 terms (i = 0..10); afterwards the sum stops once the
/// next term is decreasing and its max-norm is below 1e-16 times the max-norm
/// of the partial sum.
StateMatrix p_series(const StateMatrix& a, double delta);

/// Bloating box  box0( P(|A|, delta) * box0(A^2 X) ), box0 = symmetric interval hull.
/// The result is origin-centered.
Hyperrectangle e_plus(const StateMatrix& a, const SetExpr& x, double delta);

/// Same, reusing precomputed A^2 and P(|A|, delta).
Hyperrectangle e_plus(const StateMatrix& a_squared, const StateMatrix& p_abs, const SetExpr& x);

}  // namespace setprop
