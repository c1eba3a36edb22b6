#pragma once

// Convex set representations and a lazy set-expression calculus.
//
// Every set is closed and convex and is queried through its support function
//   rho(d, X) = max_{x in X} d^T x.
// Zonotopes and hyperrectangles have closed forms; composite expressions are
// evaluated recursively, never materialized. Intersections are evaluated as
// the minimum of the children's supports, which is an upper bound of the true
// support of the intersection (sound overapproximation).

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace setprop {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo, double hi);
    static Interval point(double x) { return {x, x}; }

    double mid() const { return 0.5 * (lo + hi); }
    double radius() const { return 0.5 * (hi - lo); }
    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Axis-aligned box <c, r>: |x_i - c_i| <= r_i.
class Hyperrectangle {
public:
    Hyperrectangle(Vector center, Vector radius);
    static Hyperrectangle from_bounds(const Vector& low, const Vector& high);

    const Vector& center() const { return center_; }
    const Vector& radius() const { return radius_; }
    Index dim() const { return center_.size(); }
    Vector low() const { return center_ - radius_; }
    Vector high() const { return center_ + radius_; }

private:
    Vector center_;
    Vector radius_;
};

/// Zonotope <c, G>: { c + G xi : xi in [-1, 1]^p }. p = 0 encodes a singleton.
class Zonotope {
public:
    Zonotope(Vector center, Matrix generators);

    static Zonotope singleton(Vector point);
    static Zonotope from_box(const Hyperrectangle& box);

    const Vector& center() const { return center_; }
    const Matrix& generators() const { return generators_; }
    Index dim() const { return center_.size(); }
    Index order() const { return generators_.cols(); }

private:
    Vector center_;
    Matrix generators_;
};

/// d^T c + ||G^T d||_1
double support(const Zonotope& z, const Vector& d);
double support(const Hyperrectangle& h, const Vector& d);

/// <M c, M G>
Zonotope linear_map(const Matrix& m, const Zonotope& z);

namespace detail {
struct Node;
}

/// Immutable lazy set expression. Copies share the underlying tree.
class SetExpr {
public:
    enum class Kind { zonotope, hyperrectangle, linear_map, minkowski_sum, convex_hull, intersection, product };

    SetExpr(Zonotope z);          // NOLINT(google-explicit-constructor)
    SetExpr(Hyperrectangle h);    // NOLINT(google-explicit-constructor)
    static SetExpr singleton(Vector point);

    Index dim() const;
    Kind kind() const;

    /// Leaf accessors; nullptr when the node is not a leaf of that kind.
    const Zonotope* as_zonotope() const;
    const Hyperrectangle* as_hyperrectangle() const;

    /// Children of composite nodes, in construction order. Empty for leaves.
    std::vector<SetExpr> children() const;
    /// The matrix of a linear-map node; nullptr otherwise.
    const Matrix* map_matrix() const;

    double support(const Vector& d) const;
    /// Support values along each column of `directions`.
    Vector support(const Matrix& directions) const;

    friend SetExpr linear_map(Matrix m, SetExpr x);
    friend SetExpr minkowski_sum(SetExpr a, SetExpr b);
    friend SetExpr convex_hull(SetExpr a, SetExpr b);
    friend SetExpr intersection(SetExpr a, SetExpr b);
    friend SetExpr cartesian_product(std::vector<SetExpr> parts);

private:
    explicit SetExpr(std::shared_ptr<const detail::Node> node);
    std::shared_ptr<const detail::Node> node_;
};

SetExpr linear_map(Matrix m, SetExpr x);
SetExpr minkowski_sum(SetExpr a, SetExpr b);
SetExpr convex_hull(SetExpr a, SetExpr b);
SetExpr intersection(SetExpr a, SetExpr b);
SetExpr cartesian_product(std::vector<SetExpr> parts);

/// Tight per-coordinate box enclosure. Throws EmptySetError when the
/// evaluated bounds cross (an empty intersection).
Hyperrectangle box_approximation(const SetExpr& s);

/// Smallest origin-centered box containing `s`.
Hyperrectangle symmetric_interval_hull(const SetExpr& s);

/// Unit directions [e_1 .. e_n, -e_1 .. -e_n] as columns.
Matrix canonical_directions(Index n);

}  // namespace setprop
