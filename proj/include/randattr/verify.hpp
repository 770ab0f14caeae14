#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "randattr/cloud.hpp"
#include "randattr/cocycle.hpp"
#include "randattr/omega.hpp"
#include "randattr/stats.hpp"

namespace randattr {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct CriterionReport {
    std::string criterion;  // strongB / strongC / weakB / weakC
    double eps = 0.0;
    double delta = 0.0;
    Box c_set;
    std::vector<char> outcomes;  // per seed (strong) or at the decisive time (weak)
    double estimate = 0.0;
    WilsonInterval ci;
    std::int64_t s_max = 0, t_max = 0;
    std::int64_t t0 = -1;  // weak: first grid time from which the level holds
    std::vector<std::pair<std::int64_t, double>> p_curve;  // weak: p(t)
    Verdict verdict = Verdict::Inconclusive;
};

/// Eventually-always containment: exists s <= s_max with
/// phi(t, theta_{-t} omega) B inside C^delta for every grid t in [s, t_max].
CriterionReport check_strong_criterion(const SystemSpec& sys, const PointCloud& B, const Box& C,
                                       double eps, double delta,
                                       const std::vector<std::uint64_t>& seeds,
                                       std::int64_t s_max, std::int64_t t_max,
                                       std::int64_t stride);

/// Pointwise-in-time containment of forward images, reported as a p(t) curve.
CriterionReport check_weak_criterion(const SystemSpec& sys, const PointCloud& B, const Box& C,
                                     double eps, double delta,
                                     const std::vector<std::uint64_t>& seeds,
                                     const std::vector<std::int64_t>& t_grid);

using AttractorProvider = std::function<PointCloud(const DriverPath&)>;

struct ModeReport {
    bool pullback_as = false;
    bool weak_in_prob = false;
    bool forward_as = false;
    double pullback_tail_fraction = 0.0;   // seeds with sup of tail e_t <= delta
    double forward_tail_fraction = 0.0;
    std::vector<std::pair<std::int64_t, double>> exceedance;  // per-time frac e_t > delta
    int skipped_seeds = 0;
};

struct ClassifyConfig {
    double delta = 0.05;
    double alpha = 0.05;
    double tail_fraction = 0.5;  // part of the grid treated as "late"
};

/// Distinguishes pullback-a.s., in-probability, and forward attraction by
/// tail-sup versus per-time statistics of the distances to A.
ModeReport classify_attraction(const SystemSpec& sys, const AttractorProvider& attractor,
                               const PointCloud& B, const std::vector<std::uint64_t>& seeds,
                               const std::vector<std::int64_t>& t_grid,
                               const ClassifyConfig& cfg);

struct EquivalenceReport {
    std::vector<double> fractions;  // per B: seeds with Omega_B within A
    bool strong = false;
};

/// Weak = strong iff Omega_B within A for every B from the family.
EquivalenceReport check_weak_equals_strong(const SystemSpec& sys,
                                           const AttractorProvider& attractor,
                                           const std::vector<PointCloud>& test_sets,
                                           const std::vector<std::uint64_t>& seeds,
                                           const OmegaConfig& cfg, double tol, double alpha);

}  // namespace randattr
