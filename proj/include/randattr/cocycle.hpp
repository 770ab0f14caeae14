#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "randattr/cloud.hpp"
#include "randattr/driver.hpp"

namespace randattr {

struct divergence_error : std::runtime_error {
    std::int64_t escape_time;
    explicit divergence_error(std::int64_t t)
        : std::runtime_error("trajectory diverged at step " + std::to_string(t)),
          escape_time(t) {}
};

/// One-step map of a random dynamical system together with state-space
/// metadata, including the NoiseSpec its driver must use.
struct SystemSpec {
    std::string name;
    int dimension = 1;
    std::vector<double> parameters;
    std::optional<Box> state_box;  // hard clamp domain; absent means unbounded
    NoiseSpec noise;
    std::function<Vec(const Vec&, const Vec&, const std::vector<double>&)> step;
};

/// phi(t, omega) x: iterate the one-step map consuming increments 0..t-1.
Vec evolve(const SystemSpec& sys, std::int64_t t, Vec x, const DriverPath& omega);

/// phi(t, theta_{-t} omega) applied pointwise; resolution propagated by a
/// probe-based local Lipschitz estimate.
PointCloud pullback(const SystemSpec& sys, std::int64_t t, const PointCloud& X,
                    const DriverPath& omega);

/// Forward image phi(t, omega) B, pointwise; same resolution handling.
PointCloud forward_image(const SystemSpec& sys, std::int64_t t, const PointCloud& X,
                         const DriverPath& omega);

/// Max over random (s,t,x,omega) of d(phi(s+t)x, phi(t)phi(s)x).
/// Both routes consume identical increment indices, so this is exactly 0.
double cocycle_residual(const SystemSpec& sys, int trials, std::uint64_t seed_base,
                        std::int64_t horizon);

/// For each probe radius r, the sup distance of sphere images from the
/// center image. Decays to 0 for continuous systems.
std::vector<std::pair<double, double>> continuity_probe(const SystemSpec& sys, std::int64_t t,
                                                        const Vec& x, const DriverPath& omega,
                                                        const std::vector<double>& radii);

/// Coefficient of a built-in system: either a constant or noise-driven.
using CoefSpec = std::variant<double, NoiseSpec>;

// x_{n+1} = a_n x_n + b_n, scalar
SystemSpec make_affine(const CoefSpec& a, const CoefSpec& b);
// x_{n+1} = a_n x_n (1 - x_n) on [0,1]
SystemSpec make_logistic(const NoiseSpec& a);
// Euler step of dx = (x - x^3) dt + sigma dW, clamped
SystemSpec make_double_well(double step_size, double noise_scale, double box_half = 3.0);
// x_{n+1} = lambda x_n, d-dimensional
SystemSpec make_contraction(double rate, int dim = 1);
// planar rotation by a fixed angle; norm preserving (negative control)
SystemSpec make_rotation(double angle);

std::vector<std::string> zoo_names();

}  // namespace randattr
