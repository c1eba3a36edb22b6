#pragma once

#include "setprop/matfun.hpp"
#include "setprop/sets.hpp"

#include <Eigen/SparseCore>

#include <optional>
#include <vector>

namespace setprop {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class SystemKind { heat, dynamics };

/// How an input term's time function is generated.
enum class InputModel { constant, exponential, sinusoid, custom };

/// One forcing component f0 * eta(t), where eta is the first component of
/// xi' = B xi and xi(0) ranges over `initial`.
class InputTerm {
public:
    InputTerm(Vector f0, Matrix generator, SetExpr initial);

    /// eta = const, xi(0) in `value` (q = 1, B = [0]).
    static InputTerm constant(Vector f0, Interval value);
    /// eta = x0 e^{alpha t} (q = 1, B = [alpha]).
    static InputTerm exponential(Vector f0, double alpha, Interval x0);
    /// eta'' = -omega^2 eta with eta(0) in xi1, eta'(0) in xi2 (q = 2).
    static InputTerm sinusoid(Vector f0, double omega, Interval xi1, Interval xi2);

    const Vector& f0() const { return f0_; }
    const Matrix& generator() const { return generator_; }
    const SetExpr& initial() const { return initial_; }
    Index order() const { return generator_.rows(); }

    InputModel model() const { return model_; }
    /// alpha (exponential) or omega (sinusoid); 0 otherwise.
    double rate() const { return rate_; }
    /// Per-component bounds of xi(0) for the built-in models.
    const std::vector<Interval>& initial_bounds() const { return bounds_; }

    /// eta(t) for a given xi(0).
    double eta(double t, const Vector& xi0) const;
    /// eta(t) at the center of the initial bounds (built-in models) or the
    /// initial set's box center (custom).
    double eta(double t) const;

private:
    Vector f0_;
    Matrix generator_;
    SetExpr initial_;
    InputModel model_ = InputModel::custom;
    double rate_ = 0.0;
    std::vector<Interval> bounds_;
};

/// Assembled FEM matrices.
///   heat:     C_theta theta' + K_theta theta = f   (damping = C_theta, stiffness = K_theta, no mass)
///   dynamics: M u'' + C u' + K u = f
struct SecondOrderSystem {
    SystemKind kind = SystemKind::dynamics;
    std::optional<SparseMatrix> mass;
    SparseMatrix damping;
    SparseMatrix stiffness;
    std::vector<InputTerm> inputs;

    Index dofs() const { return stiffness.rows(); }
    /// Checks shapes and kind-specific slots. Throws DimensionError/ArgumentError.
    void validate() const;
};

struct InputBlock {
    Index offset;
    Index order;
};

/// Homogeneous first-order system x' = A x with x(0) in `initial`.
struct LinearSystem {
    StateMatrix a;
    Index state_dim = 0;
    std::vector<InputBlock> input_layout;
    SetExpr initial;

    Index dim() const { return a.rows(); }
};

/// -C_theta^{-1} K_theta, by factorization and solve.
StateMatrix heat_first_order(const SecondOrderSystem& sys);

/// [[0, I], [-M^{-1} K, -M^{-1} C]]
StateMatrix dynamics_first_order(const SecondOrderSystem& sys);

/// Block matrix with the input generators appended; input columns of the
/// state rows are C_theta^{-1} F0 (heat) or M^{-1} F0 in the velocity rows
/// (dynamics). Initial set is X0 x C0^(1) x ... x C0^(nf).
LinearSystem homogenize(const SecondOrderSystem& sys, const std::vector<InputTerm>& inputs, const SetExpr& x0);

/// Same for an already first-order state matrix; f0 vectors enter the state
/// rows unchanged.
LinearSystem homogenize(const StateMatrix& state, const std::vector<InputTerm>& inputs, const SetExpr& x0);

struct BarParameters {
    double modulus = 30e6;
    double area = 1.0;
    double density = 7.3e-4;
    double length = 200.0;
    int elements = 1000;
};

/// Clamped-free bar, linear elements, clamped DOF eliminated; lumped mass.
SecondOrderSystem assemble_bar_1d(const BarParameters& p);

struct HeatRodParameters {
    double conductivity = 1.0;
    double density = 1.0;
    double specific_heat = 1.0;
    double length = 1.0;
    int elements = 100;
    bool dirichlet_both_ends = true;
};

/// Linear elements, consistent capacity matrix. With Dirichlet ends only the
/// N-1 interior nodes are kept; otherwise all N+1 nodes (insulated ends).
SecondOrderSystem assemble_heat_1d(const HeatRodParameters& p);

/// Leaf box with the given center and (nonnegative) radius.
SetExpr initial_box(Vector center, Vector radius);

}  // namespace setprop
