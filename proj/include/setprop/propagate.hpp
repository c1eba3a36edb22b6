#pragma once

// Flowpipes X_0, ..., X_{N-1}; X_k encloses every trajectory over
// [k delta, (k+1) delta]. All schemes advance one product per step on the
// running object and never form Phi^k.

#include "setprop/discretize.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace setprop {

enum class FlowpipeKind { zonotope, box, support };

/// Support geometry: bounds along the flowpipe's directions, in column order.
using SupportBounds = std::vector<Interval>;

struct ReachSet {
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::variant<Zonotope, Hyperrectangle, SupportBounds> geometry;
};

struct Flowpipe {
    FlowpipeKind kind = FlowpipeKind::box;
    Index dim = 0;
    double delta = 0.0;
    std::string system_id;
    std::vector<ReachSet> sets;

    /// Support flowpipes: the template directions (one per column).
    Matrix directions;
    /// Support flowpipes with SupportOptions::keep_transported: column j of
    /// entry k is (Phi^T)^k d_j. Together with `omega0` this allows exact
    /// support queries along any combination of the template directions.
    std::vector<Matrix> transported;
    std::optional<SetExpr> omega0;

    std::size_t size() const { return sets.size(); }
};

struct BoundRow {
    double t_lo;
    double t_hi;
    double lo;
    double hi;
};

/// Per-step bounds of state coordinate `index`.
std::vector<BoundRow> flowpipe_bounds(const Flowpipe& fp, Index index);

/// Per-step bounds of d^T x. Box flowpipes answer only scaled canonical
/// directions and support flowpipes only scaled template directions;
/// anything else raises UnsupportedQueryError.
std::vector<BoundRow> flowpipe_bounds(const Flowpipe& fp, const Vector& direction);

/// Z_{k+1} = <Phi c_k, Phi G_k>.
Flowpipe propagate_zonotope(const StateMatrix& phi, const Zonotope& z0, int steps, double delta,
                            std::string system_id = {});
void propagate_zonotope(const StateMatrix& phi, const Zonotope& z0, int steps,
                        const std::function<void(int, const Zonotope&)>& observer);

/// H_k = <Phi^k c_0, |Phi^k| r_0>, read off a diagonal-generator zonotope.
Flowpipe propagate_box(const StateMatrix& phi, const Hyperrectangle& h0, int steps, double delta,
                       std::string system_id = {});
void propagate_box(const StateMatrix& phi, const Hyperrectangle& h0, int steps,
                   const std::function<void(int, const Hyperrectangle&)>& observer);

struct SupportOptions {
    bool keep_transported = false;
    std::string system_id;
};

/// rho(d, X_k) = rho((Phi^T)^k d, Omega0) for each column d of `directions`.
Flowpipe propagate_support(const StateMatrix& phi, const SetExpr& omega0, const Matrix& directions, int steps,
                           double delta, const SupportOptions& options = {});
/// Streaming form: observer(k, lo, hi) with one entry per direction.
void propagate_support(const StateMatrix& phi, const SetExpr& omega0, const Matrix& directions, int steps,
                       const std::function<void(int, const Vector&, const Vector&)>& observer);

/// Convenience forms on a discretized problem. The zonotope and box schemes
/// start from the eager box enclosure (computed here if absent).
Flowpipe propagate_zonotope(const DiscretizedProblem& prob, std::string system_id = {});
Flowpipe propagate_box(const DiscretizedProblem& prob, std::string system_id = {});
Flowpipe propagate_support(const DiscretizedProblem& prob, const Matrix& directions,
                           const SupportOptions& options = {});

/// Exact support of reach-set k along `d` when the flowpipe can answer it:
/// zonotope geometry always; box geometry (as a box); support geometry when
/// `d` lies in the span of the transported template directions. Returns
/// nullopt otherwise.
std::optional<double> reach_set_support(const Flowpipe& fp, std::size_t k, const Vector& d);

}  // namespace setprop
