#include "setprop/model.hpp"

#include "setprop/errors.hpp"
#include "sparse_solve.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace setprop {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ArgumentError(std::string(name) + " must be positive, got " + std::to_string(value));
    }
}

SetExpr interval_box(const std::vector<Interval>& parts) {
    Vector c(static_cast<Index>(parts.size()));
    Vector r(static_cast<Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        c[static_cast<Index>(i)] = parts[i].mid();
        r[static_cast<Index>(i)] = parts[i].radius();
    }
    return Hyperrectangle(std::move(c), std::move(r));
}

SparseMatrix tridiagonal(Index n, double off, double diag) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(3 * n));
    for (Index i = 0; i < n; ++i) {
        t.emplace_back(i, i, diag);
        if (i + 1 < n) {
            t.emplace_back(i, i + 1, off);
            t.emplace_back(i + 1, i, off);
        }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

}  // namespace

InputTerm::InputTerm(Vector f0, Matrix generator, SetExpr initial)
    : f0_(std::move(f0)), generator_(std::move(generator)), initial_(std::move(initial)) {
    if (generator_.rows() < 1 || generator_.rows() != generator_.cols()) {
        throw DimensionError("input generator must be square with order >= 1");
    }
    if (initial_.dim() != generator_.rows()) {
        throw DimensionError("input initial set has dimension " + std::to_string(initial_.dim()) +
                             ", generator order is " + std::to_string(generator_.rows()));
    }
    if (f0_.size() < 1) {
        throw DimensionError("input load vector is empty");
    }
    if (!f0_.allFinite() || !generator_.allFinite()) {
        throw ArgumentError("input term has non-finite entries");
    }
}

InputTerm InputTerm::constant(Vector f0, Interval value) {
    InputTerm term(std::move(f0), Matrix::Zero(1, 1), interval_box({value}));
    term.model_ = InputModel::constant;
    term.bounds_ = {value};
    return term;
}

InputTerm InputTerm::exponential(Vector f0, double alpha, Interval x0) {
    if (!std::isfinite(alpha)) {
        throw ArgumentError("exponential input rate must be finite");
    }
    InputTerm term(std::move(f0), Matrix::Constant(1, 1, alpha), interval_box({x0}));
    term.model_ = InputModel::exponential;
    term.rate_ = alpha;
    term.bounds_ = {x0};
    return term;
}

InputTerm InputTerm::sinusoid(Vector f0, double omega, Interval xi1, Interval xi2) {
    require_positive(omega, "sinusoid angular frequency");
    Matrix b(2, 2);
    b << 0.0, 1.0, -omega * omega, 0.0;
    InputTerm term(std::move(f0), std::move(b), interval_box({xi1, xi2}));
    term.model_ = InputModel::sinusoid;
    term.rate_ = omega;
    term.bounds_ = {xi1, xi2};
    return term;
}

double InputTerm::eta(double t, const Vector& xi0) const {
    if (xi0.size() != order()) {
        throw DimensionError("input state has wrong dimension");
    }
    switch (model_) {
        case InputModel::constant:
            return xi0[0];
        case InputModel::exponential:
            return xi0[0] * std::exp(rate_ * t);
        case InputModel::sinusoid:
            return xi0[0] * std::cos(rate_ * t) + xi0[1] / rate_ * std::sin(rate_ * t);
        case InputModel::custom:
            break;
    }
    if (t == 0.0) {
        return xi0[0];
    }
    return (expm(StateMatrix(generator_ * t)) * xi0)[0];
}

double InputTerm::eta(double t) const {
    if (!bounds_.empty()) {
        Vector xi0(static_cast<Index>(bounds_.size()));
        for (std::size_t i = 0; i < bounds_.size(); ++i) {
            xi0[static_cast<Index>(i)] = bounds_[i].mid();
        }
        return eta(t, xi0);
    }
    return eta(t, box_approximation(initial_).center());
}

void SecondOrderSystem::validate() const {
    const Index n = stiffness.rows();
    if (n < 1 || stiffness.cols() != n) {
        throw DimensionError("stiffness matrix must be square and nonempty");
    }
    if (damping.rows() != n || damping.cols() != n) {
        throw DimensionError("damping matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (kind == SystemKind::heat) {
        if (mass) {
            throw ArgumentError("heat systems have no mass matrix");
        }
    } else {
        if (!mass) {
            throw ArgumentError("dynamics systems require a mass matrix");
        }
        if (mass->rows() != n || mass->cols() != n) {
            throw DimensionError("mass matrix must be " + std::to_string(n) + "x" + std::to_string(n));
        }
    }
    for (const auto& in : inputs) {
        if (in.f0().size() != n) {
            throw DimensionError("input load vector has length " + std::to_string(in.f0().size()) + ", expected " +
                                 std::to_string(n));
        }
    }
}

StateMatrix heat_first_order(const SecondOrderSystem& sys) {
    if (sys.kind != SystemKind::heat) {
        throw ArgumentError("heat_first_order requires a heat system");
    }
    sys.validate();
    const detail::SparseFactor c(sys.damping, "capacity matrix");
    return -c.solve(Matrix(sys.stiffness));
}

StateMatrix dynamics_first_order(const SecondOrderSystem& sys) {
    if (sys.kind != SystemKind::dynamics) {
        throw ArgumentError("dynamics_first_order requires a dynamics system");
    }
    sys.validate();
    const Index n = sys.dofs();
    const detail::SparseFactor m(*sys.mass, "mass matrix");
    StateMatrix a = StateMatrix::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n).setIdentity();
    a.bottomLeftCorner(n, n) = -m.solve(Matrix(sys.stiffness));
    a.bottomRightCorner(n, n) = -m.solve(Matrix(sys.damping));
    return a;
}

namespace {

// Appends the input blocks to a state matrix whose input columns are already
// known (one column per input term, `state_dim` rows).
LinearSystem assemble_blocks(const StateMatrix& state, const Matrix& input_columns, const std::vector<InputTerm>& inputs,
                             const SetExpr& x0) {
    const Index ns = state.rows();
    if (x0.dim() != ns) {
        throw DimensionError("initial set has dimension " + std::to_string(x0.dim()) + ", state dimension is " +
                             std::to_string(ns));
    }
    Index total = ns;
    for (const auto& in : inputs) {
        total += in.order();
    }
    StateMatrix a = StateMatrix::Zero(total, total);
    a.topLeftCorner(ns, ns) = state;
    std::vector<InputBlock> layout;
    std::vector<SetExpr> parts{x0};
    Index offset = ns;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& in = inputs[i];
        // F0 = [f0 | 0]: only the first input variable drives the state.
        a.block(0, offset, ns, 1) = input_columns.col(static_cast<Index>(i));
        a.block(offset, offset, in.order(), in.order()) = in.generator();
        layout.push_back({offset, in.order()});
        parts.push_back(in.initial());
        offset += in.order();
    }
    return {std::move(a), ns, std::move(layout), cartesian_product(std::move(parts))};
}

}  // namespace

LinearSystem homogenize(const SecondOrderSystem& sys, const std::vector<InputTerm>& inputs, const SetExpr& x0) {
    sys.validate();
    const Index n = sys.dofs();
    Matrix loads(n, static_cast<Index>(inputs.size()));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].f0().size() != n) {
            throw DimensionError("input load vector has length " + std::to_string(inputs[i].f0().size()) +
                                 ", expected " + std::to_string(n));
        }
        loads.col(static_cast<Index>(i)) = inputs[i].f0();
    }
    if (sys.kind == SystemKind::heat) {
        const detail::SparseFactor c(sys.damping, "capacity matrix");
        StateMatrix state = -c.solve(Matrix(sys.stiffness));
        Matrix columns = inputs.empty() ? Matrix(n, 0) : c.solve(loads);
        return assemble_blocks(state, columns, inputs, x0);
    }
    const detail::SparseFactor m(*sys.mass, "mass matrix");
    StateMatrix state = StateMatrix::Zero(2 * n, 2 * n);
    state.topRightCorner(n, n).setIdentity();
    state.bottomLeftCorner(n, n) = -m.solve(Matrix(sys.stiffness));
    state.bottomRightCorner(n, n) = -m.solve(Matrix(sys.damping));
    Matrix columns = Matrix::Zero(2 * n, static_cast<Index>(inputs.size()));
    if (!inputs.empty()) {
        columns.bottomRows(n) = m.solve(loads);
    }
    return assemble_blocks(state, columns, inputs, x0);
}

LinearSystem homogenize(const StateMatrix& state, const std::vector<InputTerm>& inputs, const SetExpr& x0) {
    if (state.rows() != state.cols()) {
        throw DimensionError("state matrix must be square");
    }
    const Index n = state.rows();
    Matrix columns(n, static_cast<Index>(inputs.size()));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].f0().size() != n) {
            throw DimensionError("input load vector has length " + std::to_string(inputs[i].f0().size()) +
                                 ", expected " + std::to_string(n));
        }
        columns.col(static_cast<Index>(i)) = inputs[i].f0();
    }
    return assemble_blocks(state, columns, inputs, x0);
}

SecondOrderSystem assemble_bar_1d(const BarParameters& p) {
    require_positive(p.modulus, "elastic modulus");
    require_positive(p.area, "cross-section area");
    require_positive(p.density, "density");
    require_positive(p.length, "length");
    if (p.elements < 1) {
        throw ArgumentError("bar needs at least one element");
    }
    const Index n = p.elements;
    const double ell = p.length / static_cast<double>(n);
    const double k = p.modulus * p.area / ell;
    const double m = p.density * p.area * ell / 2.0;

    SparseMatrix stiffness = tridiagonal(n, -k, 2.0 * k);
    stiffness.coeffRef(n - 1, n - 1) = k;
    std::vector<Eigen::Triplet<double>> mt;
    for (Index i = 0; i < n; ++i) {
        mt.emplace_back(i, i, i + 1 < n ? 2.0 * m : m);
    }
    SparseMatrix mass(n, n);
    mass.setFromTriplets(mt.begin(), mt.end());

    SecondOrderSystem sys;
    sys.kind = SystemKind::dynamics;
    sys.mass = std::move(mass);
    sys.damping = SparseMatrix(n, n);
    sys.stiffness = std::move(stiffness);
    return sys;
}

SecondOrderSystem assemble_heat_1d(const HeatRodParameters& p) {
    require_positive(p.conductivity, "conductivity");
    require_positive(p.density, "density");
    require_positive(p.specific_heat, "specific heat");
    require_positive(p.length, "length");
    const int min_elements = p.dirichlet_both_ends ? 2 : 1;
    if (p.elements < min_elements) {
        throw ArgumentError("heat rod needs at least " + std::to_string(min_elements) + " elements");
    }
    const double ell = p.length / p.elements;
    const double k = p.conductivity / ell;
    const double c = p.density * p.specific_heat * ell / 6.0;

    SecondOrderSystem sys;
    sys.kind = SystemKind::heat;
    if (p.dirichlet_both_ends) {
        const Index n = p.elements - 1;
        sys.stiffness = tridiagonal(n, -k, 2.0 * k);
        sys.damping = tridiagonal(n, c, 4.0 * c);
    } else {
        const Index n = p.elements + 1;
        sys.stiffness = tridiagonal(n, -k, 2.0 * k);
        sys.damping = tridiagonal(n, c, 4.0 * c);
        sys.stiffness.coeffRef(0, 0) = k;
        sys.stiffness.coeffRef(n - 1, n - 1) = k;
        sys.damping.coeffRef(0, 0) = 2.0 * c;
        sys.damping.coeffRef(n - 1, n - 1) = 2.0 * c;
    }
    return sys;
}

SetExpr initial_box(Vector center, Vector radius) { return Hyperrectangle(std::move(center), std::move(radius)); }

}  // namespace setprop
