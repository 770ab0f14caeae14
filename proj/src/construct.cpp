#include "randattr/construct.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "randattr/stats.hpp"

namespace randattr {

void Schedule::validate() const {
    const std::size_t n = u.size();
    if (t.size() != n || b_radii.size() != n || delta_seq.size() != n)
        throw config_error("Schedule: inconsistent lengths");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] <= static_cast<std::int64_t>(i) + 1)
            throw config_error("Schedule: u_n must exceed n");
        acc += u[i];
        if (t[i] != acc) throw config_error("Schedule: t_n must be cumulative");
        if (i > 0 && !(b_radii[i] > b_radii[i - 1]))
            throw config_error("Schedule: radii must increase");
    }
    if (!gamma.empty() && gamma.size() != n)
        throw config_error("Schedule: gamma length mismatch");
}

PointCloud Schedule::exhausting_set(int n, int density) const {
    const int i = n - 1;
    if (gamma.empty()) return sample_ball(x0, b_radii[i], density);
    return sample_box(c_boxes[i].inflated(gamma[i]), density);
}

bool Schedule::contained_in_exhausting(int n, const PointCloud& cloud, double tol) const {
    const int i = n - 1;
    if (gamma.empty()) {
        for (const Vec& p : cloud.points)
            if (dist(p, x0) > b_radii[i] + tol) return false;
        return true;
    }
    return cover_contains(c_boxes[i].inflated(gamma[i]), tol, cloud);
}

namespace {

double farthest_corner(const Box& box, const Vec& x0) {
    double s = 0.0;
    for (std::size_t a = 0; a < x0.size(); ++a) {
        double m = std::max(std::abs(box.lower[a] - x0[a]), std::abs(box.upper[a] - x0[a]));
        s += m * m;
    }
    return std::sqrt(s);
}

struct ExSet {
    bool is_ball = true;
    Vec x0;
    double radius = 0.0;
    Box box;  // already inflated when used

    bool contains(const Vec& p, double tol) const {
        if (is_ball) return dist(p, x0) <= radius + tol;
        return box.dist_to(p) <= tol;
    }
    bool contains_all(const std::vector<Vec>& pts, double tol) const {
        for (const Vec& p : pts)
            if (!contains(p, tol)) return false;
        return true;
    }
    PointCloud sample(int density) const {
        if (is_ball) return sample_ball(x0, radius, density);
        return sample_box(box, density);
    }
};

// Smallest grid u_n at level n satisfying both containment-probability
// conditions with Wilson margins; nullopt if the grid is exhausted.
std::optional<std::int64_t> search_level(const SystemSpec& sys,
                                         const std::vector<std::uint64_t>& seeds, int n,
                                         const ExSet& b_n, const ExSet* b_prev,
                                         const std::vector<Box>& c_boxes, std::int64_t t_prev,
                                         bool relaxed, const ScheduleSearchConfig& cfg) {
    const std::int64_t start = std::max<std::int64_t>(n + 1, cfg.u_min);
    std::vector<std::int64_t> grid;
    for (std::int64_t v = start; v <= cfg.u_max; v += cfg.u_stride) grid.push_back(v);
    if (grid.empty()) return std::nullopt;
    const std::size_t G = grid.size();

    const PointCloud base = b_n.sample(cfg.sample_density);
    const double delta = 1.0 / n;

    // per grid slot: nesting-event count; per (slot, m): target-event count
    std::vector<int> nest_ok(G, 0);
    std::vector<std::vector<int>> target_ok(G, std::vector<int>(n, 0));

    // required evaluation steps, single forward pass per seed
    const std::int64_t max_step =
        std::max(grid.back() - n, t_prev + grid.back());
    for (std::uint64_t seed : seeds) {
        DriverPath omega = make_driver(seed, sys.noise);
        std::vector<Vec> pts = base.points;
        std::size_t gi_nest = 0, gi_target = 0;
        for (std::int64_t step = 0; step <= max_step; ++step) {
            if (b_prev && gi_nest < G && step == grid[gi_nest] - n) {
                if (b_prev->contains_all(pts, cfg.containment_tol)) ++nest_ok[gi_nest];
                ++gi_nest;
            }
            if (gi_target < G && step == t_prev + grid[gi_target]) {
                for (int m = 1; m <= n; ++m) {
                    Box target = c_boxes[m - 1].inflated(delta);
                    bool ok = true;
                    for (const Vec& p : pts)
                        if (target.dist_to(p) > cfg.containment_tol) { ok = false; break; }
                    if (ok) ++target_ok[gi_target][m - 1];
                }
                ++gi_target;
            }
            if (step == max_step) break;
            Vec xi = increment(omega, step);
            for (Vec& p : pts) {
                p = sys.step(p, xi, sys.parameters);
                if (sys.state_box)
                    for (std::size_t a = 0; a < p.size(); ++a)
                        p[a] = std::clamp(p[a], sys.state_box->lower[a], sys.state_box->upper[a]);
                else
                    for (double v : p)
                        if (!std::isfinite(v) || std::abs(v) > 1e100)
                            throw divergence_error(step + 1);
            }
        }
    }

    const int N = static_cast<int>(seeds.size());
    const double relax = relaxed ? 2.0 : 1.0;

    // suffix condition on the nesting events: all grid u >= u_n must pass
    std::vector<bool> nest_suffix(G + 1, true);
    if (b_prev) {
        const double level = 1.0 - relax * std::pow(2.0, -(n - 1));
        for (std::size_t gi = G; gi-- > 0;) {
            bool here = wilson(nest_ok[gi], N, cfg.z).lo >= level;
            nest_suffix[gi] = here && nest_suffix[gi + 1];
        }
    }

    for (std::size_t gi = 0; gi < G; ++gi) {
        if (!nest_suffix[gi]) continue;
        bool ok = true;
        for (int m = 1; m <= n && ok; ++m) {
            const double level = 1.0 - relax * std::pow(2.0, -m);
            ok = wilson(target_ok[gi][m - 1], N, cfg.z).lo >= level;
        }
        if (ok) return grid[gi];
    }
    return std::nullopt;
}

}  // namespace

StrongResult build_strong_B(const SystemSpec& sys, const DriverPath& omega, int k_max,
                            const OmegaConfig& cfg, const Vec& x0, double saturation_tol) {
    if (k_max < 1) throw config_error("build_strong_B: k_max must be >= 1");
    StrongResult res;
    PointCloud acc;
    for (int k = 1; k <= k_max; ++k) {
        PointCloud bk = sample_ball(x0, static_cast<double>(k), cfg.sample_density);
        PointCloud om = omega_limit(sys, bk, omega, cfg);
        if (k == 1) {
            acc = om;
        } else {
            PointCloud next = prune(merge({acc, om}), cfg.prune_eps);
            next.resolution = std::max(acc.resolution, om.resolution);
            res.increments.push_back(hausdorff(next, acc));
            acc = next;
        }
    }
    res.saturated = res.increments.empty() || res.increments.back() <= saturation_tol;
    acc.label = "strong_B";
    res.attractor = std::move(acc);
    return res;
}

StrongResult build_strong_C(const SystemSpec& sys, const DriverPath& omega,
                            const std::vector<Box>& c_sets, const OmegaConfig& cfg,
                            double saturation_tol) {
    if (c_sets.empty()) throw config_error("build_strong_C: no compact sets");
    StrongResult res;
    PointCloud acc;
    bool first = true;
    for (const Box& c : c_sets) {
        PointCloud base = sample_box(c, cfg.sample_density);
        PointCloud om = omega_limit(sys, base, omega, cfg);
        if (first) {
            acc = om;
            first = false;
        } else {
            PointCloud next = prune(merge({acc, om}), cfg.prune_eps);
            next.resolution = std::max(acc.resolution, om.resolution);
            res.increments.push_back(hausdorff(next, acc));
            acc = next;
        }
    }
    res.saturated = res.increments.empty() || res.increments.back() <= saturation_tol;
    acc.label = "strong_C";
    res.attractor = std::move(acc);
    return res;
}

std::vector<PointCloud> ensemble_pullback_samples(const SystemSpec& sys,
                                                  const std::vector<std::uint64_t>& seeds,
                                                  const PointCloud& B0, std::int64_t t_sample) {
    std::vector<PointCloud> out;
    out.reserve(seeds.size());
    for (std::uint64_t s : seeds)
        out.push_back(pullback(sys, t_sample, B0, make_driver(s, sys.noise)));
    return out;
}

std::vector<Box> fit_dyadic_compacts(const std::vector<PointCloud>& samples, int depth) {
    std::vector<Box> boxes;
    for (int m = 1; m <= depth; ++m)
        boxes.push_back(fit_compact(samples, 1.0 - std::pow(2.0, -m)));
    return boxes;
}

Schedule find_schedule(const SystemSpec& sys, const std::vector<std::uint64_t>& seeds,
                       const std::vector<Box>& c_boxes, const ScheduleSearchConfig& search,
                       const Vec& x0) {
    if (static_cast<int>(c_boxes.size()) < search.depth)
        throw config_error("find_schedule: need a compact set per level");
    if (seeds.size() < 200) throw config_error("find_schedule: need >= 200 seeds");
    Schedule sched;
    sched.x0 = x0;
    ExSet prev;
    std::int64_t t_prev = 0;
    for (int n = 1; n <= search.depth; ++n) {
        // C_{2^-n}^1 inside B_n, radii strictly increasing
        double r_n = farthest_corner(c_boxes[n - 1].inflated(1.0), x0) + n;
        ExSet b_n{true, x0, r_n, {}};
        auto u_n = search_level(sys, seeds, n, b_n, n >= 2 ? &prev : nullptr, c_boxes, t_prev,
                                false, search);
        if (!u_n) throw schedule_infeasible_error(n);
        sched.b_radii.push_back(r_n);
        sched.u.push_back(*u_n);
        t_prev += *u_n;
        sched.t.push_back(t_prev);
        sched.delta_seq.push_back(1.0 / n);
        prev = b_n;
    }
    sched.c_boxes.assign(c_boxes.begin(), c_boxes.begin() + search.depth);
    sched.validate();
    return sched;
}

Schedule find_schedule_compact(const SystemSpec& sys, const std::vector<std::uint64_t>& seeds,
                               const std::vector<Box>& c_boxes,
                               const ScheduleSearchConfig& search) {
    if (static_cast<int>(c_boxes.size()) < search.depth)
        throw config_error("find_schedule_compact: need a compact set per level");
    if (seeds.size() < 200) throw config_error("find_schedule_compact: need >= 200 seeds");
    Schedule sched;
    sched.relaxed = true;
    sched.x0 = c_boxes.front().center();
    ExSet prev;
    std::int64_t t_prev = 0;
    for (int n = 1; n <= search.depth; ++n) {
        std::optional<std::int64_t> u_n;
        double g = search.gamma_init;
        ExSet b_n;
        while (g >= search.gamma_min) {
            b_n = ExSet{false, {}, 0.0, c_boxes[n - 1].inflated(g)};
            u_n = search_level(sys, seeds, n, b_n, n >= 2 ? &prev : nullptr, c_boxes, t_prev,
                               true, search);
            if (u_n) break;
            g *= 0.5;  // shrink the neighborhood until the image blowup fits the slack
        }
        if (!u_n) throw schedule_infeasible_error(n);
        sched.gamma.push_back(g);
        sched.b_radii.push_back(farthest_corner(b_n.box, sched.x0) + n * 1e-9);
        sched.u.push_back(*u_n);
        t_prev += *u_n;
        sched.t.push_back(t_prev);
        sched.delta_seq.push_back(1.0 / n);
        prev = b_n;
    }
    sched.c_boxes.assign(c_boxes.begin(), c_boxes.begin() + search.depth);
    return sched;
}

WeakResult build_weak(const SystemSpec& sys, const DriverPath& omega, const Schedule& sched,
                      int n_window, int density, double prune_eps) {
    if (n_window < 1 || n_window > sched.depth())
        throw config_error("build_weak: n_window outside schedule");
    std::vector<PointCloud> deep(n_window + 1);
    for (int k = 1; k <= n_window; ++k)
        deep[k] = pullback(sys, sched.t[k - 1], sched.exhausting_set(k, density), omega);

    // empirical Borel-Cantelli index: all nesting events from j0 on hold
    int last_fail = 1;
    for (int k = 2; k <= n_window; ++k) {
        PointCloud image = forward_image(sys, sched.u[k - 1], sched.exhausting_set(k, density),
                                         shift(omega, -sched.t[k - 1]));
        if (!sched.contained_in_exhausting(k - 1, image)) last_fail = k;
    }
    if (last_fail >= n_window && n_window > 1) throw weak_unstable_error();
    WeakResult res;
    res.j0 = last_fail == 1 ? 1 : last_fail + 1;
    for (int k = std::max(2, res.j0); k <= n_window; ++k)
        res.nesting_defects.push_back(semidist(deep[k], deep[k - 1]));
    double tail_res = deep[n_window].resolution;
    res.attractor = prune(deep[n_window], prune_eps);
    res.attractor.resolution = prune_eps + tail_res;
    res.attractor.label = sched.gamma.empty() ? "weak_B" : "weak_C";
    return res;
}

}  // namespace randattr
