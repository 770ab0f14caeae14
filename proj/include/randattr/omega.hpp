#pragma once

#include <cstdint>
#include <functional>

#include "randattr/cloud.hpp"
#include "randattr/cocycle.hpp"

namespace randattr {

/// Discretization of the Omega-limit tail: union of pullback images over
/// t in {t_min, t_min+stride, ..., t_max}, thinned at prune_eps.
struct OmegaConfig {
    std::int64_t t_min = 50;
    std::int64_t t_max = 200;
    std::int64_t stride = 10;
    int sample_density = 100;
    double prune_eps = 1e-3;

    void validate() const;
};

PointCloud omega_limit(const SystemSpec& sys, const PointCloud& B, const DriverPath& omega,
                       const OmegaConfig& cfg);

/// Hausdorff drift between a deeper-tail and a shallower-tail estimate.
/// For attracting dynamics semidist(deep, shallow) stays within prune_eps
/// plus tolerance.
double omega_refinement_check(const SystemSpec& sys, const PointCloud& B, const DriverPath& omega,
                              const OmegaConfig& shallow, const OmegaConfig& deep);

struct InvarianceDefects {
    double forward = 0.0;  // semidist(phi_t A(omega), A(theta_t omega))
    double strict = 0.0;   // semidist(A(theta_t omega), phi_t A(omega))
    double resolution = 0.0;
};

/// Strict-invariance defects of a per-fiber attractor estimate. The
/// builder is re-evaluated at the shifted driver; sets at different
/// fibers are never compared against the same cloud.
InvarianceDefects invariance_check(const SystemSpec& sys, std::int64_t t, const DriverPath& omega,
                                   const std::function<PointCloud(const DriverPath&)>& builder);

/// semidist(Omega_B, Omega_B') for B subset of B'; small up to resolution.
double omega_monotonicity(const SystemSpec& sys, const PointCloud& B, const PointCloud& B_big,
                          const DriverPath& omega, const OmegaConfig& cfg);

}  // namespace randattr
