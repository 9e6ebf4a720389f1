#include "edsvc/svc.hpp"

#include <algorithm>
#include <limits>

namespace edsvc {

std::size_t SphereModel::count_role(PointRole r) const {
    return static_cast<std::size_t>(std::count(roles_.begin(), roles_.end(), r));
}

double SphereModel::sq_radius_at(std::span<const double> sq_dists_to_point) const {
    double cross = 0.0;
    for (std::size_t j : support_)
        cross += beta_[j] * gaussian_kernel(sq_dists_to_point[j], q_);
    return 1.0 - 2.0 * cross + self_kernel_term_;
}

// Roles, support set, objective and radius from a populated beta. BSVs can
// only exist for C < 1; at C >= 1 the cap is never active for N >= 2 and the
// degenerate N = 1 point sits on the (zero-radius) sphere.
void SphereModel::finish(const DistanceMatrix& dists, const SolverConfig& cfg) {
    SphereModel& model = *this;
    const std::size_t n = model.beta_.size();
    const std::vector<double>& beta = model.beta_;
    const double c_param = model.c_param_;
    const double eps = cfg.beta_boundary_epsilon;

    model.roles_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (c_param < 1.0 && beta[i] >= c_param - eps)
            model.roles_[i] = PointRole::BoundedSupportVector;
        else if (beta[i] > eps)
            model.roles_[i] = PointRole::SupportVector;
        else
            model.roles_[i] = PointRole::Interior;
    }

    model.support_.clear();
    for (std::size_t i = 0; i < n; ++i)
        if (beta[i] > 0.0) model.support_.push_back(i);

    double f = 0.0;
    for (std::size_t i : model.support_) {
        double s = 0.0;
        for (std::size_t j : model.support_)
            s += beta[j] * gaussian_kernel(dists(i, j), model.q_);
        f += beta[i] * s;
    }
    model.self_kernel_term_ = f;
    model.dual_objective_ = 1.0 - f;

    auto radius_of = [&](std::size_t i) {
        double cross = 0.0;
        for (std::size_t j : model.support_)
            cross += beta[j] * gaussian_kernel(dists(i, j), model.q_);
        return 1.0 - 2.0 * cross + f;
    };
    // R^2 as the mean radius over SV-role points; fall back to the point whose
    // beta sits deepest inside (0, C) when the epsilon rule leaves no SVs.
    double r_sum = 0.0;
    std::size_t r_count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (model.roles_[i] == PointRole::SupportVector) {
            r_sum += radius_of(i);
            ++r_count;
        }
    if (r_count > 0) {
        model.sq_radius_ = r_sum / static_cast<double>(r_count);
    } else {
        std::size_t best = 0;
        double depth = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = std::min(beta[i], c_param - beta[i]);
            if (d > depth) {
                depth = d;
                best = i;
            }
        }
        model.sq_radius_ = radius_of(best);
    }
    model.sq_radius_ = std::max(model.sq_radius_, 0.0);
}

SphereModel solve_wolfe_dual(const DistanceMatrix& dists, double q, double c_param,
                             const SolverConfig& cfg) {
    const std::size_t n = dists.size();
    if (q <= 0.0) throw SolverError("kernel width q must be positive");
    if (static_cast<double>(n) * c_param < 1.0)
        throw SolverError("infeasible: N*C = " +
                          std::to_string(static_cast<double>(n) * c_param) +
                          " < 1, the constraint set is empty");

    SphereModel model;
    model.q_ = q;
    model.c_param_ = c_param;

    std::vector<double>& beta = model.beta_;
    beta.assign(n, 1.0 / static_cast<double>(n));

    // Kernel matrix; K_ii = 1 for the Gaussian kernel.
    std::vector<double> kmat(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        kmat[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double k = gaussian_kernel(dists(i, j), q);
            kmat[i * n + j] = k;
            kmat[j * n + i] = k;
        }
    }

    // Gradient of f(beta) = beta' K beta.
    std::vector<double> grad(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = kmat.data() + i * n;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * beta[j];
        grad[i] = 2.0 * s;
    }

    const std::size_t max_iters = cfg.max_passes * std::max<std::size_t>(n, 1);
    double violation = 0.0;
    bool converged = false;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        // Working set: the most violating pair. "down" loses mass (needs
        // beta > 0), "up" gains mass (needs beta < C). At a KKT point the
        // gradient gap is nonpositive.
        std::size_t down = n, up = n;
        double g_down = -std::numeric_limits<double>::infinity();
        double g_up = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (beta[i] > 0.0 && grad[i] > g_down) {
                g_down = grad[i];
                down = i;
            }
            if (beta[i] < c_param && grad[i] < g_up) {
                g_up = grad[i];
                up = i;
            }
        }
        violation = g_down - g_up;
        if (up == n || down == n || violation <= cfg.kkt_tolerance) {
            converged = true;
            break;
        }

        const double t_max = std::min(beta[down], c_param - beta[up]);
        const double curvature = 2.0 * (2.0 - 2.0 * kmat[up * n + down]);
        double t = curvature > 1e-300 ? violation / curvature : t_max;
        t = std::min(t, t_max);

        // Exact landing on the bounds keeps non-support coefficients at 0.
        if (t == beta[down]) beta[down] = 0.0; else beta[down] -= t;
        beta[up] += t;
        if (beta[up] > c_param) beta[up] = c_param;

        const double* col_up = kmat.data() + up * n;
        const double* col_down = kmat.data() + down * n;
        for (std::size_t k = 0; k < n; ++k)
            grad[k] += 2.0 * t * (col_up[k] - col_down[k]);
    }
    model.converged_ = converged;
    model.final_violation_ = std::max(violation, 0.0);

    // Feasibility cleanup: clip and absorb floating-point drift of the sum
    // into the freest coordinate.
    for (double& b : beta) b = std::clamp(b, 0.0, c_param);
    double sum = 0.0;
    for (double b : beta) sum += b;
    if (sum != 1.0) {
        std::size_t freest = 0;
        double head = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double room = std::min(beta[i], c_param - beta[i]);
            if (room > head) {
                head = room;
                freest = i;
            }
        }
        beta[freest] = std::clamp(beta[freest] + (1.0 - sum), 0.0, c_param);
    }

    model.finish(dists, cfg);
    return model;
}

SphereModel make_model_from_beta(const DistanceMatrix& dists, double q,
                                 double c_param, std::vector<double> beta,
                                 const SolverConfig& cfg) {
    if (beta.size() != dists.size())
        throw SolverError("make_model_from_beta: beta length mismatch");
    SphereModel model;
    model.q_ = q;
    model.c_param_ = c_param;
    model.beta_ = std::move(beta);
    model.finish(dists, cfg);
    return model;
}

double kkt_residual(const SphereModel& model, const DistanceMatrix& dists) {
    const std::size_t n = model.n_points();
    const double r2 = model.sq_radius();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::span<const double> row{dists.sq_dists().data() + i * n, n};
        const double ri = model.sq_radius_at(row);
        double v = 0.0;
        switch (model.roles()[i]) {
            case PointRole::Interior:
                v = ri - r2;  // must lie inside
                break;
            case PointRole::SupportVector:
                v = std::abs(ri - r2);  // must lie on the surface
                break;
            case PointRole::BoundedSupportVector:
                v = r2 - ri;  // must lie outside
                break;
        }
        worst = std::max(worst, v);
    }
    return worst;
}

}  // namespace edsvc
