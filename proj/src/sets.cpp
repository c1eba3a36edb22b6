#include "setprop/sets.hpp"

#include "setprop/errors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <variant>

namespace setprop {

namespace {

void require_dim(Index expected, Index got, const char* what) {
    if (expected != got) {
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " +
                             std::to_string(got));
    }
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) {
        throw ArgumentError("interval requires lo <= hi, got [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

Hyperrectangle::Hyperrectangle(Vector center, Vector radius) : center_(std::move(center)), radius_(std::move(radius)) {
    require_dim(center_.size(), radius_.size(), "hyperrectangle radius");
    for (Index i = 0; i < radius_.size(); ++i) {
        if (!(radius_[i] >= 0.0)) {
            throw ArgumentError("hyperrectangle radius must be nonnegative (component " + std::to_string(i) + " is " +
                                std::to_string(radius_[i]) + ")");
        }
    }
}

Hyperrectangle Hyperrectangle::from_bounds(const Vector& low, const Vector& high) {
    require_dim(low.size(), high.size(), "hyperrectangle bounds");
    return {0.5 * (low + high), 0.5 * (high - low)};
}

Zonotope::Zonotope(Vector center, Matrix generators)
    : center_(std::move(center)), generators_(std::move(generators)) {
    if (generators_.cols() > 0 || generators_.rows() > 0) {
        require_dim(center_.size(), generators_.rows(), "zonotope generators");
    } else {
        generators_.resize(center_.size(), 0);
    }
}

Zonotope Zonotope::singleton(Vector point) {
    const Index n = point.size();
    return {std::move(point), Matrix(n, 0)};
}

Zonotope Zonotope::from_box(const Hyperrectangle& box) {
    return {box.center(), Matrix(box.radius().asDiagonal())};
}

double support(const Zonotope& z, const Vector& d) {
    require_dim(z.dim(), d.size(), "zonotope support direction");
    return d.dot(z.center()) + (z.generators().transpose() * d).lpNorm<1>();
}

double support(const Hyperrectangle& h, const Vector& d) {
    require_dim(h.dim(), d.size(), "hyperrectangle support direction");
    return d.dot(h.center()) + d.cwiseAbs().dot(h.radius());
}

Zonotope linear_map(const Matrix& m, const Zonotope& z) {
    require_dim(z.dim(), m.cols(), "linear map of zonotope");
    return {m * z.center(), m * z.generators()};
}

// ---------------------------------------------------------------------------
// Expression tree

namespace detail {

struct MapNode {
    Matrix m;
    SetExpr arg;
};
struct SumNode {
    SetExpr a, b;
};
struct HullNode {
    SetExpr a, b;
};
struct CapNode {
    SetExpr a, b;
};
struct ProductNode {
    std::vector<SetExpr> parts;
};

struct Node {
    std::variant<Zonotope, Hyperrectangle, MapNode, SumNode, HullNode, CapNode, ProductNode> value;
    Index dim;
};

}  // namespace detail

SetExpr::SetExpr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

SetExpr::SetExpr(Zonotope z) {
    const Index n = z.dim();
    node_ = std::make_shared<const detail::Node>(detail::Node{std::move(z), n});
}

SetExpr::SetExpr(Hyperrectangle h) {
    const Index n = h.dim();
    node_ = std::make_shared<const detail::Node>(detail::Node{std::move(h), n});
}

SetExpr SetExpr::singleton(Vector point) { return SetExpr(Zonotope::singleton(std::move(point))); }

Index SetExpr::dim() const { return node_->dim; }

SetExpr::Kind SetExpr::kind() const {
    static constexpr Kind kinds[] = {Kind::zonotope,     Kind::hyperrectangle, Kind::linear_map, Kind::minkowski_sum,
                                     Kind::convex_hull, Kind::intersection,    Kind::product};
    return kinds[node_->value.index()];
}

const Zonotope* SetExpr::as_zonotope() const { return std::get_if<Zonotope>(&node_->value); }

const Hyperrectangle* SetExpr::as_hyperrectangle() const { return std::get_if<Hyperrectangle>(&node_->value); }

const Matrix* SetExpr::map_matrix() const {
    const auto* map = std::get_if<detail::MapNode>(&node_->value);
    return map ? &map->m : nullptr;
}

std::vector<SetExpr> SetExpr::children() const {
    struct Visitor {
        std::vector<SetExpr> operator()(const Zonotope&) const { return {}; }
        std::vector<SetExpr> operator()(const Hyperrectangle&) const { return {}; }
        std::vector<SetExpr> operator()(const detail::MapNode& n) const { return {n.arg}; }
        std::vector<SetExpr> operator()(const detail::SumNode& n) const { return {n.a, n.b}; }
        std::vector<SetExpr> operator()(const detail::HullNode& n) const { return {n.a, n.b}; }
        std::vector<SetExpr> operator()(const detail::CapNode& n) const { return {n.a, n.b}; }
        std::vector<SetExpr> operator()(const detail::ProductNode& n) const { return n.parts; }
    };
    return std::visit(Visitor{}, node_->value);
}

double SetExpr::support(const Vector& d) const {
    require_dim(dim(), d.size(), "support direction");
    return support(Matrix(d))[0];
}

Vector SetExpr::support(const Matrix& directions) const {
    require_dim(dim(), directions.rows(), "support directions");
    struct Visitor {
        const Matrix& d;
        Vector operator()(const Zonotope& z) const {
            Vector out = d.transpose() * z.center();
            if (z.order() > 0) {
                out += (z.generators().transpose() * d).cwiseAbs().colwise().sum().transpose();
            }
            return out;
        }
        Vector operator()(const Hyperrectangle& h) const {
            return d.transpose() * h.center() + d.cwiseAbs().transpose() * h.radius();
        }
        Vector operator()(const detail::MapNode& n) const { return n.arg.support(Matrix(n.m.transpose() * d)); }
        Vector operator()(const detail::SumNode& n) const { return n.a.support(d) + n.b.support(d); }
        Vector operator()(const detail::HullNode& n) const { return n.a.support(d).cwiseMax(n.b.support(d)); }
        Vector operator()(const detail::CapNode& n) const { return n.a.support(d).cwiseMin(n.b.support(d)); }
        Vector operator()(const detail::ProductNode& n) const {
            Vector out = Vector::Zero(d.cols());
            Index offset = 0;
            for (const auto& part : n.parts) {
                out += part.support(Matrix(d.middleRows(offset, part.dim())));
                offset += part.dim();
            }
            return out;
        }
    };
    return std::visit(Visitor{directions}, node_->value);
}

SetExpr linear_map(Matrix m, SetExpr x) {
    require_dim(x.dim(), m.cols(), "linear map");
    const Index n = m.rows();
    return SetExpr(std::make_shared<const detail::Node>(detail::Node{detail::MapNode{std::move(m), std::move(x)}, n}));
}

SetExpr minkowski_sum(SetExpr a, SetExpr b) {
    require_dim(a.dim(), b.dim(), "minkowski sum");
    const Index n = a.dim();
    return SetExpr(std::make_shared<const detail::Node>(detail::Node{detail::SumNode{std::move(a), std::move(b)}, n}));
}

SetExpr convex_hull(SetExpr a, SetExpr b) {
    require_dim(a.dim(), b.dim(), "convex hull");
    const Index n = a.dim();
    return SetExpr(std::make_shared<const detail::Node>(detail::Node{detail::HullNode{std::move(a), std::move(b)}, n}));
}

SetExpr intersection(SetExpr a, SetExpr b) {
    require_dim(a.dim(), b.dim(), "intersection");
    const Index n = a.dim();
    return SetExpr(std::make_shared<const detail::Node>(detail::Node{detail::CapNode{std::move(a), std::move(b)}, n}));
}

SetExpr cartesian_product(std::vector<SetExpr> parts) {
    if (parts.empty()) {
        throw DimensionError("cartesian product of an empty list");
    }
    if (parts.size() == 1) {
        return parts.front();
    }
    Index n = 0;
    for (const auto& p : parts) {
        if (p.dim() < 1) {
            throw DimensionError("cartesian product part with dimension 0");
        }
        n += p.dim();
    }
    return SetExpr(std::make_shared<const detail::Node>(detail::Node{detail::ProductNode{std::move(parts)}, n}));
}

Matrix canonical_directions(Index n) {
    Matrix d(n, 2 * n);
    d.leftCols(n).setIdentity();
    d.rightCols(n) = -Matrix::Identity(n, n);
    return d;
}

Hyperrectangle box_approximation(const SetExpr& s) {
    const Index n = s.dim();
    const Vector rho = s.support(canonical_directions(n));
    Vector hi = rho.head(n);
    Vector lo = -rho.tail(n);
    for (Index i = 0; i < n; ++i) {
        if (!std::isfinite(hi[i]) || !std::isfinite(lo[i])) {
            throw NumericError("non-finite bound in box approximation (coordinate " + std::to_string(i) + ")");
        }
        if (hi[i] < lo[i]) {
            // Crossed bounds within rounding of a degenerate (flat) set are collapsed.
            const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(hi[i]) + std::abs(lo[i]));
            if (lo[i] - hi[i] > slack) {
                throw EmptySetError("empty set: bounds cross in coordinate " + std::to_string(i) + " (lo " +
                                    std::to_string(lo[i]) + " > hi " + std::to_string(hi[i]) + ")");
            }
            const double mid = 0.5 * (hi[i] + lo[i]);
            hi[i] = mid;
            lo[i] = mid;
        }
    }
    return Hyperrectangle::from_bounds(lo, hi);
}

Hyperrectangle symmetric_interval_hull(const SetExpr& s) {
    const Index n = s.dim();
    const Vector rho = s.support(canonical_directions(n));
    const Vector radius = rho.head(n).cwiseAbs().cwiseMax(rho.tail(n).cwiseAbs());
    return {Vector::Zero(n), radius};
}

}  // namespace setprop
