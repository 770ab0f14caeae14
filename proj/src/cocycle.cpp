#include "randattr/cocycle.hpp"

#include <algorithm>
#include <cmath>

namespace randattr {

namespace {

constexpr double kEscapeNorm = 1e100;

void clamp_to(const Box& box, Vec& x) {
    for (std::size_t a = 0; a < x.size(); ++a)
        x[a] = std::clamp(x[a], box.lower[a], box.upper[a]);
}

}  // namespace

Vec evolve(const SystemSpec& sys, std::int64_t t, Vec x, const DriverPath& omega) {
    if (t < 0) throw std::invalid_argument("evolve: t must be >= 0");
    if (static_cast<int>(x.size()) != sys.dimension)
        throw std::invalid_argument("evolve: state dimension mismatch");
    for (std::int64_t k = 0; k < t; ++k) {
        Vec xi = increment(omega, k);
        x = sys.step(x, xi, sys.parameters);
        if (sys.state_box) {
            clamp_to(*sys.state_box, x);
        } else {
            for (double v : x)
                if (!std::isfinite(v) || std::abs(v) > kEscapeNorm)
                    throw divergence_error(k + 1);
        }
    }
    return x;
}

namespace {

// local expansion factor estimated from companion probes on a few points
double lipschitz_estimate(const SystemSpec& sys, std::int64_t t, const PointCloud& X,
                          const DriverPath& omega) {
    if (X.resolution <= 0.0) return 0.0;
    const double r = std::min(X.resolution, 1e-4);
    const std::size_t n = X.points.size();
    const std::size_t step = std::max<std::size_t>(1, n / 8);
    double worst = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < n; i += step) {
        Vec probe = X.points[i];
        probe[0] += r;
        if (sys.state_box) clamp_to(*sys.state_box, probe);
        double r_eff = dist(probe, X.points[i]);
        if (r_eff <= 0.0) continue;
        Vec a = evolve(sys, t, X.points[i], omega);
        Vec b = evolve(sys, t, probe, omega);
        worst = std::max(worst, dist(a, b) / r_eff);
        any = true;
    }
    return any ? worst : 1.0;
}

}  // namespace

PointCloud pullback(const SystemSpec& sys, std::int64_t t, const PointCloud& X,
                    const DriverPath& omega) {
    return forward_image(sys, t, X, shift(omega, -t));
}

PointCloud forward_image(const SystemSpec& sys, std::int64_t t, const PointCloud& X,
                         const DriverPath& omega) {
    X.validate();
    PointCloud out;
    out.label = X.label;
    out.points.reserve(X.points.size());
    for (const Vec& p : X.points) out.points.push_back(evolve(sys, t, p, omega));
    out.resolution = X.resolution * lipschitz_estimate(sys, t, X, omega);
    return out;
}

double cocycle_residual(const SystemSpec& sys, int trials, std::uint64_t seed_base,
                        std::int64_t horizon) {
    if (trials < 1) throw std::invalid_argument("cocycle_residual: trials < 1");
    Box domain = sys.state_box ? *sys.state_box
                               : Box{Vec(sys.dimension, -2.0), Vec(sys.dimension, 2.0)};
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        auto draw = [&](std::uint32_t c) { return uniform01(seed_base ^ 0xC0C1C2C3ULL, i, c); };
        std::int64_t s = static_cast<std::int64_t>(draw(0) * (horizon + 1));
        std::int64_t t = static_cast<std::int64_t>(draw(1) * (horizon + 1));
        Vec x(sys.dimension);
        for (int a = 0; a < sys.dimension; ++a)
            x[a] = domain.lower[a] + draw(2 + a) * (domain.upper[a] - domain.lower[a]);
        std::uint64_t w_seed = static_cast<std::uint64_t>(draw(100) * 1e9);
        DriverPath omega = make_driver(w_seed, sys.noise);
        Vec lhs = evolve(sys, s + t, x, omega);
        Vec rhs = evolve(sys, t, evolve(sys, s, x, omega), shift(omega, s));
        worst = std::max(worst, dist(lhs, rhs));
    }
    return worst;
}

std::vector<std::pair<double, double>> continuity_probe(const SystemSpec& sys, std::int64_t t,
                                                        const Vec& x, const DriverPath& omega,
                                                        const std::vector<double>& radii) {
    Vec center = evolve(sys, t, x, omega);
    std::vector<std::pair<double, double>> out;
    for (double r : radii) {
        double worst = 0.0;
        for (int a = 0; a < sys.dimension; ++a) {
            for (double sign : {-1.0, 1.0}) {
                Vec p = x;
                p[a] += sign * r;
                worst = std::max(worst, dist(evolve(sys, t, p, omega), center));
            }
        }
        out.emplace_back(r, worst);
    }
    return out;
}

SystemSpec make_affine(const CoefSpec& a, const CoefSpec& b) {
    SystemSpec sys;
    sys.name = "affine";
    sys.dimension = 1;

    const bool a_rand = std::holds_alternative<NoiseSpec>(a);
    const bool b_rand = std::holds_alternative<NoiseSpec>(b);
    int a_idx = -1, b_idx = -1;
    if (a_rand && b_rand) {
        const auto& na = std::get<NoiseSpec>(a);
        const auto& nb = std::get<NoiseSpec>(b);
        NoiseSpec probe_a = na, probe_b = nb;
        probe_a.increments_per_step = probe_b.increments_per_step = 1;
        if (!(probe_a == probe_b))
            throw config_error("affine: random a and b must share one distribution");
        sys.noise = na;
        sys.noise.increments_per_step = 2;
        a_idx = 0;
        b_idx = 1;
    } else if (a_rand) {
        sys.noise = std::get<NoiseSpec>(a);
        sys.noise.increments_per_step = 1;
        a_idx = 0;
    } else if (b_rand) {
        sys.noise = std::get<NoiseSpec>(b);
        sys.noise.increments_per_step = 1;
        b_idx = 0;
    } else {
        sys.noise = NoiseSpec::uniform(0.0, 1.0);
    }
    const double a_val = a_rand ? 0.0 : std::get<double>(a);
    const double b_val = b_rand ? 0.0 : std::get<double>(b);
    sys.step = [a_idx, b_idx, a_val, b_val](const Vec& x, const Vec& xi,
                                            const std::vector<double>&) {
        double an = a_idx >= 0 ? xi[a_idx] : a_val;
        double bn = b_idx >= 0 ? xi[b_idx] : b_val;
        return Vec{an * x[0] + bn};
    };
    return sys;
}

SystemSpec make_logistic(const NoiseSpec& a) {
    a.validate();
    if (a.dist == Distribution::Uniform && (a.lo < 0.0 || a.hi > 4.0))
        throw config_error("logistic: a must lie in [0,4]");
    if (a.dist == Distribution::Discrete)
        for (double v : a.values)
            if (v < 0.0 || v > 4.0) throw config_error("logistic: a must lie in [0,4]");
    SystemSpec sys;
    sys.name = "logistic";
    sys.dimension = 1;
    sys.noise = a;
    sys.noise.increments_per_step = 1;
    sys.state_box = Box{{0.0}, {1.0}};
    sys.step = [](const Vec& x, const Vec& xi, const std::vector<double>&) {
        return Vec{xi[0] * x[0] * (1.0 - x[0])};
    };
    return sys;
}

SystemSpec make_double_well(double step_size, double noise_scale, double box_half) {
    if (!(step_size > 0.0) || noise_scale < 0.0 || !(box_half > 0.0))
        throw config_error("double_well: bad parameters");
    SystemSpec sys;
    sys.name = "double_well";
    sys.dimension = 1;
    sys.parameters = {step_size, noise_scale};
    sys.noise = NoiseSpec::gaussian(0.0, 1.0);
    sys.state_box = Box{{-box_half}, {box_half}};
    sys.step = [](const Vec& x, const Vec& xi, const std::vector<double>& p) {
        const double h = p[0], sigma = p[1];
        double v = x[0];
        return Vec{v + h * (v - v * v * v) + sigma * std::sqrt(h) * xi[0]};
    };
    return sys;
}

SystemSpec make_contraction(double rate, int dim) {
    if (!(rate > 0.0 && rate < 1.0)) throw config_error("contraction: rate must be in (0,1)");
    if (dim < 1) throw config_error("contraction: dim must be >= 1");
    SystemSpec sys;
    sys.name = "contraction";
    sys.dimension = dim;
    sys.parameters = {rate};
    sys.noise = NoiseSpec::uniform(0.0, 1.0);
    sys.step = [](const Vec& x, const Vec&, const std::vector<double>& p) {
        Vec out = x;
        for (double& v : out) v *= p[0];
        return out;
    };
    return sys;
}

SystemSpec make_rotation(double angle) {
    SystemSpec sys;
    sys.name = "rotation";
    sys.dimension = 2;
    sys.parameters = {std::cos(angle), std::sin(angle)};
    sys.noise = NoiseSpec::uniform(0.0, 1.0);
    sys.step = [](const Vec& x, const Vec&, const std::vector<double>& p) {
        return Vec{p[0] * x[0] - p[1] * x[1], p[1] * x[0] + p[0] * x[1]};
    };
    return sys;
}

std::vector<std::string> zoo_names() {
    return {"affine", "logistic", "double_well", "contraction", "rotation"};
}

}  // namespace randattr
