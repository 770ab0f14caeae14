#include "randattr/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "randattr/stats.hpp"

namespace randattr {

NoiseSpec NoiseSpec::uniform(double a, double b, int k) {
    NoiseSpec s;
    s.dist = Distribution::Uniform;
    s.lo = a;
    s.hi = b;
    s.increments_per_step = k;
    s.validate();
    return s;
}

NoiseSpec NoiseSpec::gaussian(double mu, double sigma, int k) {
    NoiseSpec s;
    s.dist = Distribution::Gaussian;
    s.mu = mu;
    s.sigma = sigma;
    s.increments_per_step = k;
    s.validate();
    return s;
}

NoiseSpec NoiseSpec::discrete(std::vector<double> values, std::vector<double> probs, int k) {
    NoiseSpec s;
    s.dist = Distribution::Discrete;
    s.values = std::move(values);
    s.probs = std::move(probs);
    s.increments_per_step = k;
    s.validate();
    return s;
}

void NoiseSpec::validate() const {
    if (increments_per_step < 1)
        throw config_error("NoiseSpec: increments_per_step must be >= 1");
    switch (dist) {
        case Distribution::Uniform:
            if (!(lo < hi)) throw config_error("NoiseSpec: uniform requires a < b");
            break;
        case Distribution::Gaussian:
            if (!(sigma > 0.0)) throw config_error("NoiseSpec: gaussian requires sigma > 0");
            break;
        case Distribution::Discrete: {
            if (values.empty() || values.size() != probs.size())
                throw config_error("NoiseSpec: discrete values/probabilities size mismatch");
            double sum = 0.0;
            for (double p : probs) {
                if (p < 0.0) throw config_error("NoiseSpec: negative probability");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw config_error("NoiseSpec: discrete probabilities must sum to 1");
            break;
        }
    }
}

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

double transform(const NoiseSpec& spec, double u) {
    switch (spec.dist) {
        case Distribution::Uniform:
            return spec.lo + (spec.hi - spec.lo) * u;
        case Distribution::Gaussian:
            return spec.mu + spec.sigma * inverse_normal_cdf(u);
        case Distribution::Discrete: {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < spec.values.size(); ++i) {
                acc += spec.probs[i];
                if (u < acc) return spec.values[i];
            }
            return spec.values.back();
        }
    }
    return 0.0;  // unreachable
}

}  // namespace

double uniform01(std::uint64_t seed, std::int64_t index, std::uint32_t component) {
    std::uint64_t key = mix64(seed ^ (kGolden * (static_cast<std::uint64_t>(component) + 1)));
    std::uint64_t v = mix64(key + kGolden * static_cast<std::uint64_t>(index));
    // strictly inside (0,1) so the gaussian quantile stays finite
    return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

double inverse_normal_cdf(double p) {
    // Acklam's rational approximation
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;

    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inverse_normal_cdf: p outside (0,1)");

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // one Halley step against erfc brings the error to a few ulp
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

DriverPath make_driver(std::uint64_t seed, const NoiseSpec& spec) {
    spec.validate();
    return DriverPath{seed, 0, spec};
}

DriverPath shift(const DriverPath& omega, std::int64_t t) {
    std::int64_t next;
    if (__builtin_add_overflow(omega.offset, t, &next))
        throw std::range_error("shift: offset overflow");
    DriverPath out = omega;
    out.offset = next;
    return out;
}

std::vector<double> increment(const DriverPath& omega, std::int64_t n) {
    std::int64_t index;
    if (__builtin_add_overflow(omega.offset, n, &index))
        throw std::range_error("increment: index overflow");
    std::vector<double> out(omega.spec.increments_per_step);
    for (int c = 0; c < omega.spec.increments_per_step; ++c)
        out[c] = transform(omega.spec, uniform01(omega.seed, index, static_cast<std::uint32_t>(c)));
    return out;
}

StationarityReport stationarity_check(const NoiseSpec& spec, int seed_count,
                                      std::int64_t window, std::uint64_t seed_base) {
    if (seed_count < 100) throw config_error("stationarity_check: need >= 100 seeds");
    std::vector<double> now(seed_count), later(seed_count);
    for (int i = 0; i < seed_count; ++i) {
        DriverPath omega = make_driver(seed_base + static_cast<std::uint64_t>(i), spec);
        now[i] = increment(omega, 0)[0];
        later[i] = increment(shift(omega, window), 0)[0];
    }
    StationarityReport rep;
    rep.statistic = ks_statistic(now, later);
    rep.critical = ks_critical(seed_count, seed_count, 0.01);
    rep.pass = rep.statistic < rep.critical;
    return rep;
}

}  // namespace randattr
