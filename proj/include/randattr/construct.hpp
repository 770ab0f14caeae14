#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "randattr/cloud.hpp"
#include "randattr/cocycle.hpp"
#include "randattr/omega.hpp"

namespace randattr {

struct schedule_infeasible_error : std::runtime_error {
    int level;
    explicit schedule_infeasible_error(int n)
        : std::runtime_error("no feasible schedule time at level " + std::to_string(n)),
          level(n) {}
};

struct weak_unstable_error : std::runtime_error {
    weak_unstable_error() : std::runtime_error("weak construction: no nesting index within window") {}
};

/// Time schedule for the weak-attractor construction: exhausting sets B_n,
/// inter-times u_n > n, cumulative times t_n, probability levels on the
/// 2^-m pattern, target compacts C_{2^-m}.
struct Schedule {
    Vec x0;                          // base point of the exhausting balls
    std::vector<double> b_radii;     // radius of B_n (ball schedules), n = 1..depth
    std::vector<std::int64_t> u;     // u_n
    std::vector<std::int64_t> t;     // t_n = sum of u_1..u_n
    std::vector<Box> c_boxes;        // C_{2^-m}, m = 1..depth (nested)
    std::vector<double> gamma;       // neighborhood radii (compact-set schedules only)
    std::vector<double> delta_seq;   // 1/n radii used in the eins conditions
    bool relaxed = false;            // factor-2 levels of the compact-set variant

    int depth() const { return static_cast<int>(u.size()); }
    void validate() const;
    /// B_n as a sampled cloud (ball around x0, or inflated compact box).
    PointCloud exhausting_set(int n, int density) const;
    /// Containment of a cloud in B_n, up to tol.
    bool contained_in_exhausting(int n, const PointCloud& cloud, double tol = 1e-9) const;
};

struct ScheduleSearchConfig {
    int depth = 6;
    std::int64_t u_min = 2;     // grid start (clamped to n+1)
    std::int64_t u_max = 64;
    std::int64_t u_stride = 1;
    int sample_density = 17;
    double z = 1.959963984540054;  // Wilson margin on every estimate
    double gamma_init = 1.0;       // compact-set variant: bisection start
    double gamma_min = 1e-4;
    double containment_tol = 1e-9;
};

struct StrongResult {
    PointCloud attractor;
    std::vector<double> increments;  // hausdorff(A_k, A_{k-1}) per level
    bool saturated = false;
};

/// Closure of the union of Omega-limit sets of balls B_k of radius k.
StrongResult build_strong_B(const SystemSpec& sys, const DriverPath& omega, int k_max,
                            const OmegaConfig& cfg, const Vec& x0,
                            double saturation_tol = 0.02);

/// Same construction over the compacts C_{1/k} from condition (ii).
StrongResult build_strong_C(const SystemSpec& sys, const DriverPath& omega,
                            const std::vector<Box>& c_sets, const OmegaConfig& cfg,
                            double saturation_tol = 0.02);

/// Per-seed pullback samples of a reference set, the tightness input to
/// fit_compact.
std::vector<PointCloud> ensemble_pullback_samples(const SystemSpec& sys,
                                                  const std::vector<std::uint64_t>& seeds,
                                                  const PointCloud& B0, std::int64_t t_sample);

/// C_{2^-m} for m = 1..depth via fit_compact at coverage 1 - 2^-m.
std::vector<Box> fit_dyadic_compacts(const std::vector<PointCloud>& samples, int depth);

/// Recursive search for the smallest grid times u_n satisfying the
/// containment-probability conditions, with Wilson margins. Ball-based
/// exhausting sets.
Schedule find_schedule(const SystemSpec& sys, const std::vector<std::uint64_t>& seeds,
                       const std::vector<Box>& c_boxes, const ScheduleSearchConfig& search,
                       const Vec& x0);

/// Compact-set variant: B_n = C_{2^-n}^{gamma_n}, gamma_n found by halving
/// until the relaxed levels 1-2^{-m+1} / 1-2^{-n+2} are met.
Schedule find_schedule_compact(const SystemSpec& sys, const std::vector<std::uint64_t>& seeds,
                               const std::vector<Box>& c_boxes,
                               const ScheduleSearchConfig& search);

struct WeakResult {
    PointCloud attractor;
    int j0 = 0;
    std::vector<double> nesting_defects;  // semidist(D_k, D_{k-1}) for k >= max(2, j0)
};

/// Nested pullback images D_k = phi(t_k, theta_{-t_k} omega) B_k; the
/// attractor is the deepest image past the empirical nesting index j0.
WeakResult build_weak(const SystemSpec& sys, const DriverPath& omega, const Schedule& sched,
                      int n_window, int density, double prune_eps = 1e-9);

}  // namespace randattr
