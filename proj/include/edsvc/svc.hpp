#ifndef EDSVC_SVC_HPP
#define EDSVC_SVC_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "edsvc/data.hpp"

namespace edsvc {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PointRole { Interior, SupportVector, BoundedSupportVector };

struct SolverConfig {
    double kkt_tolerance = 1e-6;
    std::size_t max_passes = 10000;       // full sweeps of pairwise updates
    double beta_boundary_epsilon = 1e-8;  // absolute, for SV/BSV classification
};

inline double gaussian_kernel(double sq_dist, double q) {
    return std::exp(-q * sq_dist);
}

// Solution of the Wolfe dual for the smallest enclosing sphere in feature
// space: maximize W = 1 - beta' K beta over the capped simplex
// {sum beta = 1, 0 <= beta_i <= C}, Gaussian kernel K_ij = exp(-q d_ij^2).
class SphereModel {
public:
    const std::vector<double>& beta() const { return beta_; }
    double q() const { return q_; }
    double c_param() const { return c_param_; }
    double sq_radius() const { return sq_radius_; }
    double dual_objective() const { return dual_objective_; }
    double self_kernel_term() const { return self_kernel_term_; }
    const std::vector<PointRole>& roles() const { return roles_; }
    std::size_t n_points() const { return beta_.size(); }
    bool converged() const { return converged_; }
    double final_violation() const { return final_violation_; }

    // Indices with beta > 0, the only terms that contribute to the radius sum.
    const std::vector<std::size_t>& support_indices() const { return support_; }

    std::size_t count_role(PointRole r) const;

    // Squared feature-space distance from Phi(x) to the sphere center, given
    // the squared input-space distances from x to every training point.
    double sq_radius_at(std::span<const double> sq_dists_to_point) const;

    friend SphereModel solve_wolfe_dual(const DistanceMatrix&, double, double,
                                        const SolverConfig&);
    friend SphereModel make_model_from_beta(const DistanceMatrix&, double, double,
                                            std::vector<double>,
                                            const SolverConfig&);

private:
    // roles, support set, objective and radius derived from beta_
    void finish(const DistanceMatrix& dists, const SolverConfig& cfg);

    std::vector<double> beta_;
    std::vector<PointRole> roles_;
    std::vector<std::size_t> support_;
    double q_ = 0.0;
    double c_param_ = 0.0;
    double sq_radius_ = 0.0;
    double dual_objective_ = 0.0;
    double self_kernel_term_ = 0.0;
    double final_violation_ = 0.0;
    bool converged_ = false;
};

// SMO-style pairwise coordinate descent with deterministic violation-ordered
// working-set selection. Throws SolverError when N*C < 1 (empty feasible set).
SphereModel solve_wolfe_dual(const DistanceMatrix& dists, double q, double c_param,
                             const SolverConfig& cfg = {});

// Maximum violation of the role-wise radius conditions: SV points must sit on
// the sphere, interior points inside, BSV points outside.
double kkt_residual(const SphereModel& model, const DistanceMatrix& dists);

// Assembles a model around a given (feasible) beta without solving: roles,
// radius, and objective are derived from beta as in the solver. Used for
// diagnostics on non-optimal points.
SphereModel make_model_from_beta(const DistanceMatrix& dists, double q,
                                 double c_param, std::vector<double> beta,
                                 const SolverConfig& cfg = {});

}  // namespace edsvc

#endif
