// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "randattr/construct.hpp"
#include "randattr/experiment.hpp"
#include "randattr/omega.hpp"
#include "randattr/verify.hpp"

using namespace randattr;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, int n) {
    std::vector<std::uint64_t> s(n);
    std::iota(s.begin(), s.end(), base);
    return s;
}

SystemSpec affine_random() {
    return make_affine(NoiseSpec::discrete({0.3, 0.6}, {0.5, 0.5}), 1.0);
}

double affine_series(const DriverPath& omega, int terms = 60) {
    double series = 0.0, prod = 1.0;
    for (int k = 1; k <= terms; ++k) {
        series += prod;
        prod *= increment(omega, -k)[0];
    }
    return series;
}

double cloud_max_error(const PointCloud& c, double target) {
    double worst = 0.0;
    for (const Vec& p : c.points) worst = std::max(worst, std::abs(p[0] - target));
    return worst;
}

// ---------------------------------------------------------------- criterion 1

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<SystemSpec> zoo = {
        affine_random(),
        make_logistic(NoiseSpec::uniform(3.6, 4.0)),
        make_double_well(0.01, 0.1),
        make_contraction(0.5, 2),
        make_rotation(1.0),
    };
    double worst = 0.0;
    for (std::size_t i = 0; i < zoo.size(); ++i)
        worst = std::max(worst, cocycle_residual(zoo[i], 1000, 1000 + i, 50));
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << "cocycle identity bit-exact over 1000 tuples x " << zoo.size()
      << " systems (max residual " << worst << ", " << dt << " s)";
    report(1, worst == 0.0 && dt < 10.0, d.str());
}

// ---------------------------------------------------------------- criterion 2

void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    const auto sys = affine_random();
    const auto seeds = seed_range(1, 500);
    const double tol = 1e-7;

    OmegaConfig ocfg;
    ocfg.t_min = 60;
    ocfg.t_max = 100;
    ocfg.stride = 20;
    ocfg.sample_density = 9;
    ocfg.prune_eps = 1e-12;

    // shared schedules for the weak constructions
    auto samples = ensemble_pullback_samples(sys, seed_range(2000, 300),
                                             PointCloud{{{0.0}}}, 60);
    auto c_boxes = fit_dyadic_compacts(samples, 6);
    ScheduleSearchConfig search;
    search.depth = 6;
    search.u_min = 8;
    auto sched_b = find_schedule(sys, seed_range(2000, 300), c_boxes, search, {0.0});
    auto sched_c = find_schedule_compact(sys, seed_range(2000, 300), c_boxes, search);

    const auto ball = sample_ball({0.0}, 2.0, 15);
    double worst = 0.0;
    int bad = 0;
    for (std::uint64_t seed : seeds) {
        DriverPath omega = make_driver(seed, sys.noise);
        const double target = affine_series(omega);
        double e = cloud_max_error(pullback(sys, 60, PointCloud{{{0.0}}}, omega), target);
        e = std::max(e, cloud_max_error(omega_limit(sys, ball, omega, ocfg), target));
        e = std::max(e, cloud_max_error(build_strong_B(sys, omega, 3, ocfg, {0.0}).attractor,
                                        target));
        e = std::max(e, cloud_max_error(build_strong_C(sys, omega, c_boxes, ocfg).attractor,
                                        target));
        try {
            e = std::max(e, cloud_max_error(
                                build_weak(sys, omega, sched_b, sched_b.depth(), 9).attractor,
                                target));
            e = std::max(e, cloud_max_error(
                                build_weak(sys, omega, sched_c, sched_c.depth(), 9).attractor,
                                target));
        } catch (const weak_unstable_error&) {
            ++bad;
        }
        worst = std::max(worst, e);
        if (e > tol) ++bad;
    }
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << "all six constructions within 1e-7 of the 60-term series over 500 seeds"
      << " (max error " << worst << ", misses " << bad << ", " << dt << " s)";
    report(2, bad == 0 && worst <= tol && dt < 120.0, d.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion_3() {
    struct Case {
        const char* name;
        SystemSpec sys;
        OmegaConfig cfg;
        int k_max;
    };
    OmegaConfig fast;
    fast.t_min = 60;
    fast.t_max = 100;
    fast.stride = 20;
    fast.sample_density = 15;
    fast.prune_eps = 1e-9;
    OmegaConfig slow;
    slow.t_min = 200;
    slow.t_max = 300;
    slow.stride = 50;
    slow.sample_density = 25;
    slow.prune_eps = 0.02;
    std::vector<Case> cases = {
        {"contraction", make_contraction(0.5, 1), fast, 2},
        {"affine", affine_random(), fast, 2},
        {"double_well", make_double_well(0.01, 0.1), slow, 2},
    };
    bool all_ok = true;
    std::ostringstream d;
    d << "strict-invariance defects <= 2*resolution + 1e-3 on >= 95% of 200 seeds:";
    for (auto& c : cases) {
        int ok = 0;
        for (std::uint64_t seed : seed_range(1, 200)) {
            DriverPath omega = make_driver(seed, c.sys.noise);
            auto builder = [&](const DriverPath& w) {
                return build_strong_B(c.sys, w, c.k_max, c.cfg, Vec(c.sys.dimension, 0.0))
                    .attractor;
            };
            auto defects = invariance_check(c.sys, 3, omega, builder);
            double bound = 2.0 * defects.resolution + 1e-3;
            if (defects.forward <= bound && defects.strict <= bound) ++ok;
        }
        double frac = ok / 200.0;
        d << " " << c.name << "=" << frac;
        all_ok = all_ok && frac >= 0.95;
    }
    report(3, all_ok, d.str());
}

// ---------------------------------------------------------------- criterion 4

void criterion_4() {
    struct Tuple {
        SystemSpec sys;
        PointCloud B;
        Box C;
        double eps, delta;
    };
    auto ball1 = [](double c, double r, int n) { return sample_ball({c}, r, n); };
    std::vector<Tuple> tuples;
    auto add = [&](SystemSpec s, PointCloud B, Box C, double eps, double delta) {
        tuples.push_back({std::move(s), std::move(B), std::move(C), eps, delta});
    };
    Box tiny1{{-0.01}, {0.01}};
    Box tiny2{{-0.01, -0.01}, {0.01, 0.01}};
    Box aff{{1.0}, {2.6}};
    add(make_contraction(0.5, 1), ball1(0.0, 1.0, 11), tiny1, 0.1, 0.05);
    add(make_contraction(0.5, 1), ball1(2.0, 2.0, 11), tiny1, 0.05, 0.1);
    add(make_contraction(0.8, 1), ball1(0.0, 3.0, 11), tiny1, 0.1, 0.1);
    add(make_contraction(0.5, 2), sample_ball({0.0, 0.0}, 1.0, 30), tiny2, 0.1, 0.05);
    add(make_affine(0.5, 1.0), ball1(0.0, 1.0, 11), Box{{1.9}, {2.1}}, 0.1, 0.05);
    add(affine_random(), ball1(0.0, 2.0, 11), aff, 0.1, 0.1);
    add(affine_random(), ball1(1.0, 1.0, 11), aff, 0.2, 0.2);
    add(affine_random(), ball1(-1.0, 2.0, 11), aff.inflated(0.3), 0.1, 0.1);
    add(make_logistic(NoiseSpec::uniform(3.6, 4.0)),
        PointCloud{{{0.2}, {0.4}, {0.6}, {0.8}}}, Box{{0.0}, {1.0}}, 0.1, 0.01);
    add(make_double_well(0.01, 0.1), ball1(0.0, 2.0, 11), Box{{-1.5}, {1.5}}, 0.1, 0.1);
    add(make_double_well(0.01, 0.1), ball1(1.0, 1.0, 11), Box{{-1.5}, {1.5}}, 0.2, 0.2);
    add(make_double_well(0.01, 0.2), ball1(0.0, 2.0, 11), Box{{-1.8}, {1.8}}, 0.1, 0.1);

    const auto seeds = seed_range(1, 200);
    std::vector<std::int64_t> grid = {30, 40, 50, 60};
    int strong_pass = 0, counterexamples = 0;
    for (auto& t : tuples) {
        auto s = check_strong_criterion(t.sys, t.B, t.C, t.eps, t.delta, seeds, 30, 60, 10);
        if (s.verdict != Verdict::Pass) continue;
        ++strong_pass;
        auto w = check_weak_criterion(t.sys, t.B, t.C, t.eps, t.delta, seeds, grid);
        if (w.verdict != Verdict::Pass) ++counterexamples;
    }
    std::ostringstream d;
    d << "strong implies weak on " << tuples.size() << " tuples (" << strong_pass
      << " strong passes, " << counterexamples << " counterexamples)";
    report(4, counterexamples == 0 && strong_pass >= 6 && tuples.size() >= 12, d.str());
}

// ---------------------------------------------------------------- criterion 5

void criterion_5() {
    const auto seeds = seed_range(1, 500);
    bool ok = true;
    std::ostringstream d;

    // negative control: norm-preserving rotation
    auto rot = make_rotation(1.0);
    PointCloud circle;
    for (int i = 0; i < 12; ++i)
        circle.points.push_back({std::cos(i * 0.5235987755982988),
                                 std::sin(i * 0.5235987755982988)});
    Box small{{-0.2, -0.2}, {0.2, 0.2}};
    auto rs = check_strong_criterion(rot, circle, small, 0.1, 0.05, seeds, 30, 60, 10);
    auto rw = check_weak_criterion(rot, circle, small, 0.1, 0.05, seeds, {20, 40, 60});
    ok = ok && rs.verdict == Verdict::Fail && rs.estimate == 0.0 && rs.ci.hi < 0.9;
    ok = ok && rw.verdict == Verdict::Fail && rw.estimate == 0.0 && rw.ci.hi < 0.9;
    d << "rotation fails both (estimates " << rs.estimate << "/" << rw.estimate << ")";

    // positive controls with fitted 99% compacts
    struct Pos {
        const char* name;
        SystemSpec sys;
        Box set;
        std::int64_t t_sample, s_max, t_max, stride;
    };
    std::vector<Pos> cases = {
        {"affine", affine_random(), Box{{-2.0}, {2.0}}, 60, 40, 80, 10},
        {"double_well", make_double_well(0.01, 0.1), Box{{-2.5}, {2.5}}, 300, 150, 300, 50},
    };
    for (auto& c : cases) {
        auto B = sample_box(c.set, 15);
        auto samples = ensemble_pullback_samples(c.sys, seeds, B, c.t_sample);
        Box C = fit_compact(samples, 0.99);
        auto rep = check_strong_criterion(c.sys, B, C, 0.1, 0.2, seeds, c.s_max, c.t_max,
                                          c.stride);
        ok = ok && rep.verdict == Verdict::Pass;
        d << "; " << c.name << " strong " << to_string(rep.verdict) << " (est "
          << rep.estimate << ")";
    }
    report(5, ok, d.str());
}

// ---------------------------------------------------------------- criterion 6

void criterion_6() {
    const auto sys = affine_random();
    auto samples = ensemble_pullback_samples(sys, seed_range(2000, 300),
                                             PointCloud{{{0.0}}}, 60);
    auto c_boxes = fit_dyadic_compacts(samples, 6);
    ScheduleSearchConfig search;
    search.depth = 6;
    search.u_min = 8;
    auto sched = find_schedule(sys, seed_range(2000, 300), c_boxes, search, {0.0});

    int unstable = 0, j0_small = 0;
    const int n_seeds = 500;
    for (std::uint64_t seed : seed_range(1, n_seeds)) {
        DriverPath omega = make_driver(seed, sys.noise);
        try {
            auto res = build_weak(sys, omega, sched, sched.depth(), 9);
            if (res.j0 <= 3) ++j0_small;
        } catch (const weak_unstable_error&) {
            ++unstable;
        }
    }
    // failure budget sum_{k=2}^{6} 2^{-k+1} plus three standard errors
    double budget = 0.0;
    for (int k = 2; k <= 6; ++k) budget += std::pow(2.0, -k + 1);
    double p = static_cast<double>(unstable) / n_seeds;
    budget += 3.0 * std::sqrt(std::max(p * (1 - p), 1.0 / n_seeds) / n_seeds);
    double j0_frac = static_cast<double>(j0_small) / (n_seeds - unstable);
    std::ostringstream d;
    d << "unstable frequency " << p << " <= budget " << budget << ", j0<=3 fraction "
      << j0_frac;
    report(6, p <= budget && j0_frac >= 0.95, d.str());
}

// ---------------------------------------------------------------- criterion 7

void criterion_7() {
    OmegaConfig fast;
    fast.t_min = 60;
    fast.t_max = 100;
    fast.stride = 20;
    fast.sample_density = 15;
    fast.prune_eps = 1e-9;

    // affine: strong attractor really attracts every test set
    auto sys = affine_random();
    auto provider = [&](const DriverPath& w) {
        return build_strong_B(sys, w, 3, fast, {0.0}).attractor;
    };
    std::vector<PointCloud> sets = {sample_ball({0.0}, 1.0, 9), sample_ball({2.0}, 2.0, 9),
                                    sample_ball({-1.0}, 3.0, 9)};
    auto good = check_weak_equals_strong(sys, provider, sets, seed_range(1, 40), fast, 1e-6,
                                         0.05);

    // negative control: the double-well attractor truncated to one well
    auto dw = make_double_well(0.01, 0.1);
    OmegaConfig slow;
    slow.t_min = 200;
    slow.t_max = 300;
    slow.stride = 50;
    slow.sample_density = 25;
    slow.prune_eps = 0.02;
    auto truncated = [&](const DriverPath& w) {
        PointCloud A = build_strong_B(dw, w, 2, slow, {0.0}).attractor;
        PointCloud cut;
        cut.resolution = A.resolution;
        for (const Vec& p : A.points)
            if (p[0] >= 0.0) cut.points.push_back(p);
        if (cut.points.empty()) cut.points.push_back(A.points.front());
        return cut;
    };
    std::vector<PointCloud> dw_sets = {sample_box(Box{{-2.5}, {2.5}}, 15),
                                       sample_box(Box{{-2.2}, {-1.8}}, 7)};
    auto bad = check_weak_equals_strong(dw, truncated, dw_sets, seed_range(1, 40), slow, 0.05,
                                        0.05);
    double bad_min = 1.0;
    for (double f : bad.fractions) bad_min = std::min(bad_min, f);
    std::ostringstream d;
    d << "affine verdict " << (good.strong ? "strong" : "not-strong")
      << "; truncated control verdict " << (bad.strong ? "strong" : "not-strong")
      << " (min fraction " << bad_min << ")";
    report(7, good.strong && !bad.strong && bad_min < 0.95, d.str());
}

// ---------------------------------------------------------------- criterion 8

void criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    auto random_cloud = [](int trial, int n, int dim) {
        PointCloud c;
        for (int i = 0; i < n; ++i) {
            Vec p(dim);
            for (int a = 0; a < dim; ++a)
                p[a] = (uniform01(4242, trial * 1000 + i, a) - 0.5) * 10.0;
            c.points.push_back(std::move(p));
        }
        return c;
    };
    bool ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        auto a = random_cloud(3 * trial, 6, 2);
        auto b = random_cloud(3 * trial + 1, 5, 2);
        auto c = random_cloud(3 * trial + 2, 7, 2);
        ok = ok && hausdorff(a, a) == 0.0;
        ok = ok && hausdorff(a, b) == hausdorff(b, a);
        ok = ok && hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12;
    }
    for (int trial = 0; trial < 1000; ++trial) {
        auto x = random_cloud(7000 + 2 * trial, 6, 2);
        auto y = random_cloud(7001 + 2 * trial, 6, 2);
        double delta = uniform01(55, trial, 0) * 10.0;
        ok = ok && cover_contains(x, delta, y) == (semidist(y, x) <= delta);
    }
    auto big = random_cloud(90000, 5000, 2);
    GridIndex idx(big.points);
    for (int q = 0; q < 1000; ++q) {
        Vec query = {(uniform01(66, q, 0) - 0.5) * 14.0, (uniform01(66, q, 1) - 0.5) * 14.0};
        double brute = std::numeric_limits<double>::infinity();
        for (const Vec& p : big.points) brute = std::min(brute, dist(query, p));
        ok = ok && idx.nearest(query).second == brute;
    }
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << "metric axioms, cover/semidist equivalence, grid==brute on 1000 cases each (" << dt
      << " s)";
    report(8, ok && dt < 30.0, d.str());
}

// ---------------------------------------------------------------- criterion 9

void criterion_9() {
    json doc = {
        {"system", {{"system", "affine"},
                    {"params",
                     {{"a", {{"distribution", "discrete"},
                             {"params", {{"values", {0.3, 0.6}}, {"probabilities", {0.5, 0.5}}}}}},
                      {"b", 1.0}}}}},
        {"ensemble", {{"seed_base", 1}, {"count", 16}}},
        {"task", "strong-b"},
        {"params",
         {{"t_min", 60}, {"t_max", 100}, {"stride", 20}, {"sample_density", 9}, {"k_max", 2}}}};
    auto cfg = parse_config(doc);
    fs::path base = fs::temp_directory_path() / "randattr_acceptance_repro";
    fs::remove_all(base);
    run_experiment(cfg, base / "w1", 1);
    run_experiment(cfg, base / "w8", 8);
    auto field = [&](const char* sub) {
        json m = json::parse(read_file(base / sub / "manifest.json"));
        return m.at("output_hash").get<std::string>();
    };
    std::string h1 = field("w1"), h8 = field("w8");
    fs::remove_all(base);
    std::ostringstream d;
    d << "identical output hashes for workers 1 and 8 (" << h1 << ")";
    report(9, h1 == h8, d.str());
}

// --------------------------------------------------------------- criterion 10

void criterion_10() {
    auto u = stationarity_check(NoiseSpec::uniform(0, 1), 1000, 1000000);
    auto g = stationarity_check(NoiseSpec::gaussian(0, 1), 1000, 1000000);
    std::ostringstream d;
    d << "KS vs offset 1e6 over 1000 seeds: uniform " << u.statistic << " (crit " << u.critical
      << "), gaussian " << g.statistic << " (crit " << g.critical << ")";
    report(10, u.pass && g.pass, d.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures > 0) {
        std::printf("%d criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
