#include "setprop/matfun.hpp"

#include "setprop/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace setprop {

namespace {

void require_square(const StateMatrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw DimensionError(std::string(what) + ": matrix must be square, got " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
    }
}

void require_finite(const StateMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw NumericError(std::string(what) + ": non-finite entries");
    }
}

// Power-of-two diagonal similarity (LAPACK gebal without permutation).
// Scaling by powers of two is exact, so A = D B D^{-1} holds bit-for-bit.
Vector balance(StateMatrix& a) {
    const Index n = a.rows();
    Vector d = Vector::Ones(n);
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Index j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) {
                continue;
            }
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c >= g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                d[i] *= f;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
    return d;
}

struct PadeTerms {
    StateMatrix u;
    StateMatrix v;
};

PadeTerms pade(const StateMatrix& a, int m) {
    const Index n = a.rows();
    const StateMatrix id = StateMatrix::Identity(n, n);
    const StateMatrix a2 = a * a;
    PadeTerms out;
    switch (m) {
        case 3: {
            constexpr std::array<double, 4> b{120.0, 60.0, 12.0, 1.0};
            out.u = a * (b[3] * a2 + b[1] * id);
            out.v = b[2] * a2 + b[0] * id;
            break;
        }
        case 5: {
            constexpr std::array<double, 6> b{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
            const StateMatrix a4 = a2 * a2;
            out.u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
            out.v = b[4] * a4 + b[2] * a2 + b[0] * id;
            break;
        }
        case 7: {
            constexpr std::array<double, 8> b{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
            const StateMatrix a4 = a2 * a2;
            const StateMatrix a6 = a4 * a2;
            out.u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
            out.v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
            break;
        }
        case 9: {
            constexpr std::array<double, 10> b{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                               2162160.0,     110880.0,     3960.0,       90.0,        1.0};
            const StateMatrix a4 = a2 * a2;
            const StateMatrix a6 = a4 * a2;
            const StateMatrix a8 = a6 * a2;
            out.u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
            out.v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
            break;
        }
        default: {
            constexpr std::array<double, 14> b{64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                               670442572800.0,      33522128640.0,       1323241920.0,
                                               40840800.0,          960960.0,            16380.0,
                                               182.0,               1.0};
            const StateMatrix a4 = a2 * a2;
            const StateMatrix a6 = a4 * a2;
            StateMatrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
            out.u = a * (a6 * inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
            inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
            out.v = a6 * inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
            break;
        }
    }
    return out;
}

StateMatrix expm_balanced(StateMatrix a) {
    const Index n = a.rows();
    if (n == 0) {
        return a;
    }
    const Vector scale = balance(a);

    // Higham (2005) thresholds on the 1-norm for degrees 3, 5, 7, 9, 13.
    constexpr std::array<double, 5> theta{1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                          2.097847961257068e0, 5.371920351148152e0};
    constexpr std::array<int, 5> degree{3, 5, 7, 9, 13};

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int m = 13;
    int squarings = 0;
    for (std::size_t i = 0; i + 1 < degree.size(); ++i) {
        if (norm1 <= theta[i]) {
            m = degree[i];
            break;
        }
    }
    if (m == 13 && norm1 > theta[4]) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta[4]))));
        a /= std::ldexp(1.0, squarings);
    }

    const PadeTerms t = pade(a, m);
    StateMatrix result = (t.v - t.u).partialPivLu().solve(t.v + t.u);
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    // Undo the similarity: e^A = D e^B D^{-1}.
    result = scale.asDiagonal() * result * scale.cwiseInverse().asDiagonal();
    return result;
}

}  // namespace

StateMatrix expm(const StateMatrix& a) {
    require_square(a, "expm");
    require_finite(a, "expm");
    StateMatrix out = expm_balanced(a);
    require_finite(out, "expm result");
    return out;
}

StateMatrix expm(const StateMatrix& a, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ArgumentError("expm: time step must be positive and finite, got " + std::to_string(delta));
    }
    return expm(StateMatrix(a * delta));
}

StateMatrix p_series(const StateMatrix& a, double delta) {
    require_square(a, "p_series");
    require_finite(a, "p_series");
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ArgumentError("p_series: time step must be positive and finite, got " + std::to_string(delta));
    }
    constexpr int min_index = 10;
    constexpr int max_index = 100000;
    constexpr double rel_tol = 1e-16;

    const Index n = a.rows();
    const StateMatrix ad = a * delta;
    // term_i = A^i delta^{i+2} / (i+2)!
    StateMatrix term = StateMatrix::Identity(n, n) * (delta * delta / 2.0);
    StateMatrix sum = term;
    double previous_norm = term.cwiseAbs().maxCoeff();
    for (int i = 1; i <= max_index; ++i) {
        term = (ad * term) / static_cast<double>(i + 2);
        const double term_norm = term.cwiseAbs().maxCoeff();
        sum += term;
        if (!std::isfinite(term_norm)) {
            throw NumericError("p_series: non-finite term at index " + std::to_string(i));
        }
        if (i >= min_index) {
            const bool decreasing = term_norm <= previous_norm;
            if (term_norm == 0.0 || (decreasing && term_norm < rel_tol * sum.cwiseAbs().maxCoeff())) {
                require_finite(sum, "p_series result");
                return sum;
            }
        }
        previous_norm = term_norm;
    }
    throw NumericError("p_series: series did not converge within " + std::to_string(max_index) + " terms");
}

Hyperrectangle e_plus(const StateMatrix& a_squared, const StateMatrix& p_abs, const SetExpr& x) {
    require_square(a_squared, "e_plus");
    if (x.dim() != a_squared.rows() || p_abs.rows() != a_squared.rows() || p_abs.cols() != a_squared.cols()) {
        throw DimensionError("e_plus: set and matrix dimensions differ");
    }
    const Hyperrectangle inner = symmetric_interval_hull(linear_map(a_squared, x));
    // P(|A|, delta) is entrywise nonnegative, so its image of an origin-centered
    // box has radius P r and is already symmetric.
    Vector radius = p_abs.cwiseAbs() * inner.radius();
    if (!radius.allFinite()) {
        throw NumericError("e_plus: non-finite bloating radius");
    }
    return {Vector::Zero(radius.size()), std::move(radius)};
}

Hyperrectangle e_plus(const StateMatrix& a, const SetExpr& x, double delta) {
    require_square(a, "e_plus");
    return e_plus(StateMatrix(a * a), p_series(a.cwiseAbs(), delta), x);
}

}  // namespace setprop
