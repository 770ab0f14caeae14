#include "randattr/verify.hpp"

#include <algorithm>
#include <cmath>

namespace randattr {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

CriterionReport check_strong_criterion(const SystemSpec& sys, const PointCloud& B, const Box& C,
                                       double eps, double delta,
                                       const std::vector<std::uint64_t>& seeds,
                                       std::int64_t s_max, std::int64_t t_max,
                                       std::int64_t stride) {
    if (!(s_max < t_max)) throw config_error("check_strong_criterion: need s_max < t_max");
    if (seeds.size() < 200) throw config_error("check_strong_criterion: need >= 200 seeds");
    std::vector<std::int64_t> grid;
    for (std::int64_t t = 0; t <= t_max; t += stride) grid.push_back(t);

    CriterionReport rep;
    rep.criterion = "strongB";
    rep.eps = eps;
    rep.delta = delta;
    rep.c_set = C;
    rep.s_max = s_max;
    rep.t_max = t_max;

    int ok_count = 0;
    for (std::uint64_t seed : seeds) {
        DriverPath omega = make_driver(seed, sys.noise);
        std::vector<char> contained(grid.size(), 0);
        bool diverged = false;
        for (std::size_t gi = 0; gi < grid.size() && !diverged; ++gi) {
            try {
                contained[gi] = cover_contains(C, delta, pullback(sys, grid[gi], B, omega));
            } catch (const divergence_error&) {
                diverged = true;  // escape means no containment from here on
            }
        }
        bool ok = false;
        if (!diverged) {
            // suffix-all over the grid, anchored at some s <= s_max
            bool all = true;
            for (std::size_t gi = grid.size(); gi-- > 0;) {
                all = all && contained[gi];
                if (grid[gi] <= s_max && all) { ok = true; break; }
            }
        }
        rep.outcomes.push_back(ok);
        if (ok) ++ok_count;
    }
    const int n = static_cast<int>(seeds.size());
    rep.estimate = static_cast<double>(ok_count) / n;
    rep.ci = wilson(ok_count, n);
    if (rep.ci.lo >= 1.0 - eps)
        rep.verdict = Verdict::Pass;
    else if (rep.ci.hi < 1.0 - eps)
        rep.verdict = Verdict::Fail;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

CriterionReport check_weak_criterion(const SystemSpec& sys, const PointCloud& B, const Box& C,
                                     double eps, double delta,
                                     const std::vector<std::uint64_t>& seeds,
                                     const std::vector<std::int64_t>& t_grid) {
    if (t_grid.empty() || !std::is_sorted(t_grid.begin(), t_grid.end()))
        throw config_error("check_weak_criterion: t_grid must be increasing");
    if (seeds.size() < 200) throw config_error("check_weak_criterion: need >= 200 seeds");

    CriterionReport rep;
    rep.criterion = "weakB";
    rep.eps = eps;
    rep.delta = delta;
    rep.c_set = C;
    rep.t_max = t_grid.back();

    const int n = static_cast<int>(seeds.size());
    std::vector<int> counts(t_grid.size(), 0);
    std::vector<char> last_outcomes(n, 0);
    for (int si = 0; si < n; ++si) {
        DriverPath omega = make_driver(seeds[si], sys.noise);
        for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
            bool ok = false;
            try {
                ok = cover_contains(C, delta, forward_image(sys, t_grid[gi], B, omega));
            } catch (const divergence_error&) {
                ok = false;
            }
            if (ok) ++counts[gi];
            if (gi + 1 == t_grid.size()) last_outcomes[si] = ok;
        }
    }
    std::vector<WilsonInterval> cis(t_grid.size());
    for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
        cis[gi] = wilson(counts[gi], n);
        rep.p_curve.emplace_back(t_grid[gi], static_cast<double>(counts[gi]) / n);
    }
    // pass: some grid t0 from which the Wilson lower bound stays at level
    bool suffix = true;
    std::int64_t t0 = -1;
    for (std::size_t gi = t_grid.size(); gi-- > 0;) {
        suffix = suffix && cis[gi].lo >= 1.0 - eps;
        if (suffix) t0 = t_grid[gi];
    }
    rep.outcomes = last_outcomes;
    rep.estimate = rep.p_curve.back().second;
    rep.ci = cis.back();
    if (t0 >= 0) {
        rep.verdict = Verdict::Pass;
        rep.t0 = t0;
    } else if (cis.back().hi < 1.0 - eps) {
        rep.verdict = Verdict::Fail;
    } else {
        rep.verdict = Verdict::Inconclusive;
    }
    return rep;
}

ModeReport classify_attraction(const SystemSpec& sys, const AttractorProvider& attractor,
                               const PointCloud& B, const std::vector<std::uint64_t>& seeds,
                               const std::vector<std::int64_t>& t_grid,
                               const ClassifyConfig& cfg) {
    if (t_grid.empty()) throw config_error("classify_attraction: empty t_grid");
    ModeReport rep;
    const std::size_t tail_start =
        static_cast<std::size_t>(static_cast<double>(t_grid.size()) * (1.0 - cfg.tail_fraction));
    int n_used = 0;
    int pullback_ok = 0, forward_ok = 0;
    std::vector<int> exceed(t_grid.size(), 0);
    for (std::uint64_t seed : seeds) {
        DriverPath omega = make_driver(seed, sys.noise);
        PointCloud A;
        try {
            A = attractor(omega);
        } catch (const std::exception&) {
            ++rep.skipped_seeds;
            continue;
        }
        ++n_used;
        double e_sup = 0.0, f_sup = 0.0;
        for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
            double e_t = semidist(pullback(sys, t_grid[gi], B, omega), A);
            if (gi >= tail_start) {
                e_sup = std::max(e_sup, e_t);
                double f_t = semidist(forward_image(sys, t_grid[gi], B, omega),
                                      attractor(shift(omega, t_grid[gi])));
                f_sup = std::max(f_sup, f_t);
            }
            if (e_t > cfg.delta) ++exceed[gi];
        }
        if (e_sup <= cfg.delta) ++pullback_ok;
        if (f_sup <= cfg.delta) ++forward_ok;
    }
    if (n_used == 0) throw config_error("classify_attraction: no usable seeds");
    rep.pullback_tail_fraction = static_cast<double>(pullback_ok) / n_used;
    rep.forward_tail_fraction = static_cast<double>(forward_ok) / n_used;
    for (std::size_t gi = 0; gi < t_grid.size(); ++gi)
        rep.exceedance.emplace_back(t_grid[gi], static_cast<double>(exceed[gi]) / n_used);
    rep.pullback_as = rep.pullback_tail_fraction >= 1.0 - cfg.alpha;
    rep.forward_as = rep.forward_tail_fraction >= 1.0 - cfg.alpha;
    bool in_prob = true;
    for (std::size_t gi = tail_start; gi < t_grid.size(); ++gi)
        in_prob = in_prob && rep.exceedance[gi].second <= cfg.alpha;
    rep.weak_in_prob = in_prob;
    // a.s. convergence implies convergence in probability
    if (rep.pullback_as) rep.weak_in_prob = true;
    return rep;
}

EquivalenceReport check_weak_equals_strong(const SystemSpec& sys,
                                           const AttractorProvider& attractor,
                                           const std::vector<PointCloud>& test_sets,
                                           const std::vector<std::uint64_t>& seeds,
                                           const OmegaConfig& cfg, double tol, double alpha) {
    if (test_sets.empty()) throw config_error("check_weak_equals_strong: no test sets");
    EquivalenceReport rep;
    rep.strong = true;
    for (const PointCloud& B : test_sets) {
        int ok = 0, used = 0;
        for (std::uint64_t seed : seeds) {
            DriverPath omega = make_driver(seed, sys.noise);
            PointCloud A, om;
            try {
                A = attractor(omega);
                om = omega_limit(sys, B, omega, cfg);
            } catch (const std::exception&) {
                continue;
            }
            ++used;
            if (semidist(om, A) <= A.resolution + om.resolution + tol) ++ok;
        }
        double frac = used > 0 ? static_cast<double>(ok) / used : 0.0;
        rep.fractions.push_back(frac);
        if (frac < 1.0 - alpha) rep.strong = false;
    }
    return rep;
}

}  // namespace randattr
