#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace randattr {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Distribution { Uniform, Gaussian, Discrete };

/// Law of a single noise increment. One distribution shared by all
/// components of a vector-valued increment.
struct NoiseSpec {
    Distribution dist = Distribution::Uniform;
    double lo = 0.0, hi = 1.0;       // uniform
    double mu = 0.0, sigma = 1.0;    // gaussian
    std::vector<double> values;      // discrete
    std::vector<double> probs;
    int increments_per_step = 1;

    static NoiseSpec uniform(double a, double b, int k = 1);
    static NoiseSpec gaussian(double mu, double sigma, int k = 1);
    static NoiseSpec discrete(std::vector<double> values, std::vector<double> probs, int k = 1);

    void validate() const;  // throws config_error
    bool operator==(const NoiseSpec&) const = default;
};

/// A two-sided noise realization omega together with the current shift
/// position. Immutable value; shift() returns a new path.
struct DriverPath {
    std::uint64_t seed = 0;
    std::int64_t offset = 0;
    NoiseSpec spec;
};

DriverPath make_driver(std::uint64_t seed, const NoiseSpec& spec);

/// theta_t: offset moves by t steps, t may be negative. Exact group law.
DriverPath shift(const DriverPath& omega, std::int64_t t);

/// Increment at integer time n, a pure function of (seed, offset+n, spec).
std::vector<double> increment(const DriverPath& omega, std::int64_t n);

/// Counter-based uniform in (0,1), keyed on (seed, absolute index, component).
double uniform01(std::uint64_t seed, std::int64_t index, std::uint32_t component);

/// Inverse standard normal CDF, accurate to full double precision
/// (rational approximation plus one Halley refinement).
double inverse_normal_cdf(double p);

struct StationarityReport {
    double statistic = 0.0;
    double critical = 0.0;
    bool pass = false;
};

/// Two-sample KS between increment(omega, 0) and increment(shift(omega, window), 0)
/// across seeds. Tests measure preservation of the shift at significance 0.01.
StationarityReport stationarity_check(const NoiseSpec& spec, int seed_count,
                                      std::int64_t window, std::uint64_t seed_base = 1);

}  // namespace randattr
