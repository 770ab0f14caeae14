#include "randattr/omega.hpp"

namespace randattr {

void OmegaConfig::validate() const {
    if (!(0 <= t_min && t_min < t_max)) throw config_error("OmegaConfig: need 0 <= t_min < t_max");
    if (stride < 1) throw config_error("OmegaConfig: stride must be >= 1");
    if (prune_eps < 0.0) throw config_error("OmegaConfig: prune_eps must be >= 0");
    if (sample_density < 1) throw config_error("OmegaConfig: sample_density must be >= 1");
}

PointCloud omega_limit(const SystemSpec& sys, const PointCloud& B, const DriverPath& omega,
                       const OmegaConfig& cfg) {
    cfg.validate();
    std::vector<PointCloud> tails;
    for (std::int64_t t = cfg.t_min; t <= cfg.t_max; t += cfg.stride)
        tails.push_back(pullback(sys, t, B, omega));
    double tail_res = 0.0;
    for (const PointCloud& c : tails) tail_res = std::max(tail_res, c.resolution);
    PointCloud out = prune(merge(tails), cfg.prune_eps);
    out.resolution = cfg.prune_eps + tail_res;
    out.label = B.label.empty() ? "omega" : "omega(" + B.label + ")";
    return out;
}

double omega_refinement_check(const SystemSpec& sys, const PointCloud& B, const DriverPath& omega,
                              const OmegaConfig& shallow, const OmegaConfig& deep) {
    if (!(deep.t_min > shallow.t_min && deep.t_max >= shallow.t_max))
        throw config_error("omega_refinement_check: deep config must have larger tail");
    PointCloud a = omega_limit(sys, B, omega, shallow);
    PointCloud b = omega_limit(sys, B, omega, deep);
    return hausdorff(a, b);
}

InvarianceDefects invariance_check(const SystemSpec& sys, std::int64_t t, const DriverPath& omega,
                                   const std::function<PointCloud(const DriverPath&)>& builder) {
    PointCloud here = builder(omega);
    PointCloud there = builder(shift(omega, t));
    PointCloud image = forward_image(sys, t, here, omega);
    InvarianceDefects d;
    d.forward = semidist(image, there);
    d.strict = semidist(there, image);
    d.resolution = std::max(here.resolution, there.resolution);
    return d;
}

double omega_monotonicity(const SystemSpec& sys, const PointCloud& B, const PointCloud& B_big,
                          const DriverPath& omega, const OmegaConfig& cfg) {
    PointCloud small = omega_limit(sys, B, omega, cfg);
    PointCloud big = omega_limit(sys, B_big, omega, cfg);
    return semidist(small, big);
}

}  // namespace randattr
