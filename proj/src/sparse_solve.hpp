#pragma once

#include "setprop/errors.hpp"
#include "setprop/sets.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <string>

namespace setprop::detail {

// Factor once, solve many. Singular or non-finite factors are reported as
// FactorizationError.
class SparseFactor {
public:
    SparseFactor(const Eigen::SparseMatrix<double>& m, const std::string& what) : what_(what) {
        if (m.rows() != m.cols()) {
            throw DimensionError(what + ": matrix must be square");
        }
        matrix_ = m;
        matrix_.makeCompressed();
        lu_.analyzePattern(matrix_);
        lu_.factorize(matrix_);
        if (lu_.info() != Eigen::Success) {
            throw FactorizationError(what + ": factorization failed (" + lu_.lastErrorMessage() + ")");
        }
        const double log_det = lu_.logAbsDeterminant();
        if (!std::isfinite(log_det)) {
            throw FactorizationError(what + ": matrix is singular");
        }
    }

    template <typename Rhs>
    Matrix solve(const Rhs& rhs) const {
        Matrix x = lu_.solve(Matrix(rhs));
        if (!x.allFinite()) {
            throw FactorizationError(what_ + ": solve produced non-finite values");
        }
        return x;
    }

    Vector solve_vector(const Vector& rhs) const {
        Vector x = lu_.solve(rhs);
        if (!x.allFinite()) {
            throw FactorizationError(what_ + ": solve produced non-finite values");
        }
        return x;
    }

private:
    std::string what_;
    Eigen::SparseMatrix<double> matrix_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

}  // namespace setprop::detail
