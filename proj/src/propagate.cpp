#include "setprop/propagate.hpp"

#include "setprop/errors.hpp"

#include <cmath>
#include <string>

namespace setprop {

namespace {

void check_phi(const StateMatrix& phi, Index n, int steps) {
    if (phi.rows() != phi.cols()) {
        throw DimensionError("transition matrix must be square");
    }
    if (phi.rows() != n) {
        throw DimensionError("initial set has dimension " + std::to_string(n) + ", transition matrix is " +
                             std::to_string(phi.rows()));
    }
    if (steps < 1) {
        throw ArgumentError("step count must be at least 1");
    }
    if (!phi.allFinite()) {
        throw NumericError("transition matrix has non-finite entries");
    }
}

void check_step(bool finite, int k) {
    if (!finite) {
        throw NumericError("non-finite reach-set", static_cast<std::size_t>(k));
    }
}

double check_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ArgumentError("time step must be positive, got " + std::to_string(delta));
    }
    return delta;
}

double time_at(int k, double delta) { return static_cast<double>(k) * delta; }

// Index of the column of `dirs` that is a positive multiple of `d`, and the
// factor s with d = s * column.
std::optional<std::pair<Index, double>> match_direction(const Matrix& dirs, const Vector& d) {
    const double dn = d.norm();
    if (dn == 0.0) {
        return std::nullopt;
    }
    for (Index j = 0; j < dirs.cols(); ++j) {
        const double cn = dirs.col(j).norm();
        if (cn == 0.0) {
            continue;
        }
        const double s = d.dot(dirs.col(j)) / (cn * cn);
        if (s > 0.0 && (d - s * dirs.col(j)).norm() <= 1e-12 * dn) {
            return std::make_pair(j, s);
        }
    }
    return std::nullopt;
}

}  // namespace

void propagate_zonotope(const StateMatrix& phi, const Zonotope& z0, int steps,
                        const std::function<void(int, const Zonotope&)>& observer) {
    check_phi(phi, z0.dim(), steps);
    Vector c = z0.center();
    Matrix g = z0.generators();
    for (int k = 0; k < steps; ++k) {
        if (k > 0) {
            c = phi * c;
            g = phi * g;
        }
        check_step(c.allFinite() && g.allFinite(), k);
        observer(k, Zonotope(c, g));
    }
}

Flowpipe propagate_zonotope(const StateMatrix& phi, const Zonotope& z0, int steps, double delta,
                            std::string system_id) {
    Flowpipe fp;
    fp.kind = FlowpipeKind::zonotope;
    fp.dim = z0.dim();
    fp.delta = check_delta(delta);
    fp.system_id = std::move(system_id);
    propagate_zonotope(phi, z0, steps, [&](int k, const Zonotope& z) {
        fp.sets.push_back({time_at(k, delta), time_at(k + 1, delta), z});
    });
    return fp;
}

void propagate_box(const StateMatrix& phi, const Hyperrectangle& h0, int steps,
                   const std::function<void(int, const Hyperrectangle&)>& observer) {
    check_phi(phi, h0.dim(), steps);
    // Zero-radius coordinates contribute no generator.
    std::vector<Index> active;
    for (Index i = 0; i < h0.dim(); ++i) {
        if (h0.radius()[i] > 0.0) {
            active.push_back(i);
        }
    }
    Vector c = h0.center();
    Matrix g = Matrix::Zero(h0.dim(), static_cast<Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) {
        g(active[j], static_cast<Index>(j)) = h0.radius()[active[j]];
    }
    for (int k = 0; k < steps; ++k) {
        if (k > 0) {
            c = phi * c;
            g = phi * g;
        }
        Vector r = g.cwiseAbs().rowwise().sum();
        if (g.cols() == 0) {
            r = Vector::Zero(h0.dim());
        }
        check_step(c.allFinite() && r.allFinite(), k);
        observer(k, Hyperrectangle(c, std::move(r)));
    }
}

Flowpipe propagate_box(const StateMatrix& phi, const Hyperrectangle& h0, int steps, double delta,
                       std::string system_id) {
    Flowpipe fp;
    fp.kind = FlowpipeKind::box;
    fp.dim = h0.dim();
    fp.delta = check_delta(delta);
    fp.system_id = std::move(system_id);
    propagate_box(phi, h0, steps, [&](int k, const Hyperrectangle& h) {
        fp.sets.push_back({time_at(k, delta), time_at(k + 1, delta), h});
    });
    return fp;
}

void propagate_support(const StateMatrix& phi, const SetExpr& omega0, const Matrix& directions, int steps,
                       const std::function<void(int, const Vector&, const Vector&)>& observer) {
    check_phi(phi, omega0.dim(), steps);
    if (directions.rows() != omega0.dim()) {
        throw DimensionError("support directions have dimension " + std::to_string(directions.rows()) +
                             ", system dimension is " + std::to_string(omega0.dim()));
    }
    const Index m = directions.cols();
    const StateMatrix phi_t = phi.transpose();
    Matrix d = directions;
    Matrix both(d.rows(), 2 * m);
    for (int k = 0; k < steps; ++k) {
        if (k > 0) {
            d = phi_t * d;
        }
        check_step(d.allFinite(), k);
        both.leftCols(m) = d;
        both.rightCols(m) = -d;
        const Vector rho = omega0.support(both);
        const Vector hi = rho.head(m);
        const Vector lo = -rho.tail(m);
        check_step(hi.allFinite() && lo.allFinite(), k);
        observer(k, lo, hi);
    }
}

Flowpipe propagate_support(const StateMatrix& phi, const SetExpr& omega0, const Matrix& directions, int steps,
                           double delta, const SupportOptions& options) {
    Flowpipe fp;
    fp.kind = FlowpipeKind::support;
    fp.dim = omega0.dim();
    fp.delta = check_delta(delta);
    fp.system_id = options.system_id;
    fp.directions = directions;
    fp.omega0 = omega0;
    check_phi(phi, omega0.dim(), steps);
    if (directions.rows() != omega0.dim()) {
        throw DimensionError("support directions have dimension " + std::to_string(directions.rows()) +
                             ", system dimension is " + std::to_string(omega0.dim()));
    }
    if (options.keep_transported) {
        // The streaming form does not expose d_k, so they are rebuilt here.
        const StateMatrix phi_t = phi.transpose();
        Matrix d = directions;
        for (int k = 0; k < steps; ++k) {
            if (k > 0) {
                d = phi_t * d;
            }
            fp.transported.push_back(d);
        }
    }
    propagate_support(phi, omega0, directions, steps, [&](int k, const Vector& lo, const Vector& hi) {
        SupportBounds b;
        b.reserve(static_cast<std::size_t>(lo.size()));
        for (Index j = 0; j < lo.size(); ++j) {
            // Flat sets can round to hi < lo by a few ulps.
            b.emplace_back(std::min(lo[j], hi[j]), std::max(lo[j], hi[j]));
        }
        fp.sets.push_back({time_at(k, delta), time_at(k + 1, delta), std::move(b)});
    });
    return fp;
}

namespace {

BoundRow row_for(const Flowpipe& fp, std::size_t k, double lo, double hi) {
    const int kk = static_cast<int>(k);
    return {time_at(kk, fp.delta), time_at(kk + 1, fp.delta), lo, hi};
}

}  // namespace

std::vector<BoundRow> flowpipe_bounds(const Flowpipe& fp, const Vector& direction) {
    if (direction.size() != fp.dim) {
        throw DimensionError("query direction has dimension " + std::to_string(direction.size()) +
                             ", flowpipe dimension is " + std::to_string(fp.dim));
    }
    std::vector<BoundRow> out;
    out.reserve(fp.sets.size());
    switch (fp.kind) {
        case FlowpipeKind::zonotope:
            for (std::size_t k = 0; k < fp.sets.size(); ++k) {
                const auto& z = std::get<Zonotope>(fp.sets[k].geometry);
                const double mid = direction.dot(z.center());
                const double rad = (z.generators().transpose() * direction).lpNorm<1>();
                out.push_back(row_for(fp, k, mid - rad, mid + rad));
            }
            break;
        case FlowpipeKind::box: {
            Index axis = -1;
            for (Index i = 0; i < direction.size(); ++i) {
                if (direction[i] != 0.0) {
                    if (axis >= 0) {
                        throw UnsupportedQueryError("box flowpipes answer only canonical directions");
                    }
                    axis = i;
                }
            }
            if (axis < 0) {
                throw UnsupportedQueryError("zero query direction");
            }
            const double s = direction[axis];
            for (std::size_t k = 0; k < fp.sets.size(); ++k) {
                const auto& h = std::get<Hyperrectangle>(fp.sets[k].geometry);
                const double a = s * (h.center()[axis] - h.radius()[axis]);
                const double b = s * (h.center()[axis] + h.radius()[axis]);
                out.push_back(row_for(fp, k, std::min(a, b), std::max(a, b)));
            }
            break;
        }
        case FlowpipeKind::support: {
            const auto match = match_direction(fp.directions, direction);
            if (!match) {
                throw UnsupportedQueryError("direction is not one of the flowpipe's template directions");
            }
            const auto [j, s] = *match;
            for (std::size_t k = 0; k < fp.sets.size(); ++k) {
                const auto& b = std::get<SupportBounds>(fp.sets[k].geometry)[static_cast<std::size_t>(j)];
                out.push_back(row_for(fp, k, s * b.lo, s * b.hi));
            }
            break;
        }
    }
    return out;
}

std::vector<BoundRow> flowpipe_bounds(const Flowpipe& fp, Index index) {
    if (index < 0 || index >= fp.dim) {
        throw DimensionError("state index " + std::to_string(index) + " outside flowpipe dimension " +
                             std::to_string(fp.dim));
    }
    return flowpipe_bounds(fp, Vector(Vector::Unit(fp.dim, index)));
}

namespace {

const Hyperrectangle& eager_box(const DiscretizedProblem& prob, std::optional<Hyperrectangle>& scratch) {
    if (prob.omega0_box) {
        return *prob.omega0_box;
    }
    scratch = box_approximation(prob.omega0);
    return *scratch;
}

}  // namespace

Flowpipe propagate_zonotope(const DiscretizedProblem& prob, std::string system_id) {
    std::optional<Hyperrectangle> scratch;
    return propagate_zonotope(prob.phi, Zonotope::from_box(eager_box(prob, scratch)), prob.steps, prob.delta,
                              std::move(system_id));
}

Flowpipe propagate_box(const DiscretizedProblem& prob, std::string system_id) {
    std::optional<Hyperrectangle> scratch;
    return propagate_box(prob.phi, eager_box(prob, scratch), prob.steps, prob.delta, std::move(system_id));
}

Flowpipe propagate_support(const DiscretizedProblem& prob, const Matrix& directions, const SupportOptions& options) {
    return propagate_support(prob.phi, prob.omega0, directions, prob.steps, prob.delta, options);
}

std::optional<double> reach_set_support(const Flowpipe& fp, std::size_t k, const Vector& d) {
    if (k >= fp.sets.size()) {
        throw ArgumentError("reach-set index " + std::to_string(k) + " out of range");
    }
    if (d.size() != fp.dim) {
        throw DimensionError("support direction has wrong dimension");
    }
    const auto& geometry = fp.sets[k].geometry;
    if (const auto* z = std::get_if<Zonotope>(&geometry)) {
        return support(*z, d);
    }
    if (const auto* h = std::get_if<Hyperrectangle>(&geometry)) {
        return support(*h, d);
    }
    if (fp.transported.size() != fp.sets.size() || !fp.omega0) {
        return std::nullopt;
    }
    // d = D lambda  =>  (Phi^T)^k d = D_k lambda.
    const Vector lambda = fp.directions.colPivHouseholderQr().solve(d);
    if ((fp.directions * lambda - d).norm() > 1e-10 * std::max(1.0, d.norm())) {
        return std::nullopt;
    }
    return fp.omega0->support(Vector(fp.transported[k] * lambda));
}

}  // namespace setprop
