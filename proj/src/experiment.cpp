#include "randattr/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace randattr {

namespace fs = std::filesystem;

std::vector<std::uint64_t> ExperimentConfig::seeds() const {
    std::vector<std::uint64_t> s(count);
    for (int i = 0; i < count; ++i) s[i] = seed_base + static_cast<std::uint64_t>(i);
    return s;
}

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg;
    cfg.raw = doc;
    if (!doc.contains("system")) throw config_error("config: missing 'system'");
    cfg.system = system_from_json(doc.at("system"));
    const json ens = doc.value("ensemble", json::object());
    cfg.seed_base = ens.value("seed_base", 1);
    cfg.count = ens.value("count", 1);
    if (cfg.count < 1) throw config_error("config: ensemble.count must be >= 1");
    if (const char* ov = std::getenv("RA_SEED_OVERRIDE")) {
        cfg.seed_base = std::strtoull(ov, nullptr, 10);
        cfg.raw["ensemble"]["seed_base"] = cfg.seed_base;
    }
    if (!doc.contains("task")) throw config_error("config: missing 'task'");
    cfg.task = doc.at("task");
    cfg.params = doc.value("params", json::object());
    return cfg;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

OmegaConfig omega_cfg_from(const json& p) {
    OmegaConfig cfg;
    cfg.t_min = p.value("t_min", cfg.t_min);
    cfg.t_max = p.value("t_max", cfg.t_max);
    cfg.stride = p.value("stride", cfg.stride);
    cfg.sample_density = p.value("sample_density", cfg.sample_density);
    cfg.prune_eps = p.value("prune_eps", cfg.prune_eps);
    cfg.validate();
    return cfg;
}

std::vector<std::int64_t> t_grid_from(const json& p) {
    if (p.contains("t_grid")) return p.at("t_grid").get<std::vector<std::int64_t>>();
    std::vector<std::int64_t> grid;
    std::int64_t start = p.value("t_start", 0);
    std::int64_t stop = p.value("t_stop", 100);
    std::int64_t stride = p.value("t_stride", 10);
    for (std::int64_t t = start; t <= stop; t += stride) grid.push_back(t);
    return grid;
}

// C box either given literally or fitted from ensemble pullback samples
Box resolve_c_box(const SystemSpec& sys, const std::vector<std::uint64_t>& seeds, const json& p) {
    const json& cj = p.at("C");
    if (cj.contains("lower")) return box_from_json(cj);
    const json& f = cj.at("fit");
    PointCloud b0 = sample_box(box_from_json(f.at("set")), f.value("density", 64));
    auto samples = ensemble_pullback_samples(sys, seeds, b0, f.value("t_sample", 200));
    return fit_compact(samples, f.at("q").get<double>());
}

ScheduleSearchConfig search_cfg_from(const json& p) {
    ScheduleSearchConfig s;
    s.depth = p.value("depth", s.depth);
    s.u_min = p.value("u_min", s.u_min);
    s.u_max = p.value("u_max", s.u_max);
    s.u_stride = p.value("u_stride", s.u_stride);
    s.sample_density = p.value("search_density", s.sample_density);
    return s;
}

struct Outputs {
    fs::path dir;
    std::map<std::string, std::string> hashes;

    void write(const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        hashes[name] = content_hash(content);
    }
    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
};

AttractorProvider strong_b_provider(const SystemSpec& sys, const json& p) {
    OmegaConfig ocfg = omega_cfg_from(p);
    int k_max = p.value("k_max", 3);
    Vec x0 = p.contains("x0") ? p.at("x0").get<Vec>() : Vec(sys.dimension, 0.0);
    json trunc = p.value("truncate", json());
    return [=](const DriverPath& omega) {
        PointCloud A = build_strong_B(sys, omega, k_max, ocfg, x0).attractor;
        if (!trunc.is_null()) {
            int axis = trunc.value("axis", 0);
            double at = trunc.value("keep_above", 0.0);
            PointCloud cut;
            cut.resolution = A.resolution;
            for (const Vec& pt : A.points)
                if (pt[axis] >= at) cut.points.push_back(pt);
            if (cut.points.empty()) cut.points.push_back(A.points.front());
            return cut;
        }
        return A;
    };
}

int criterion_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 2;
        case Verdict::Inconclusive: return 3;
    }
    return 1;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, const fs::path& out_dir, int workers) {
    const auto t_start = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);
    Outputs out{out_dir, {}};
    out.write_json("config.json", cfg.raw);

    const SystemSpec& sys = cfg.system;
    const auto seeds = cfg.seeds();
    const json& p = cfg.params;
    const int clouds_max = p.value("clouds_max", 8);
    int exit_code = 0;

    if (cfg.task == "omega" || cfg.task == "strong-b" || cfg.task == "strong-c" ||
        cfg.task == "weak-b" || cfg.task == "weak-c") {
        OmegaConfig ocfg = omega_cfg_from(p);
        std::vector<PointCloud> clouds(seeds.size());
        std::vector<json> diags(seeds.size());
        Schedule sched;

        if (cfg.task == "omega") {
            PointCloud B = sample_box(box_from_json(p.at("set")), ocfg.sample_density);
            parallel_for(static_cast<int>(seeds.size()), workers, [&](int i) {
                DriverPath omega = make_driver(seeds[i], sys.noise);
                clouds[i] = omega_limit(sys, B, omega, ocfg);
                OmegaConfig deeper = ocfg;
                deeper.t_min = ocfg.t_min * 2;
                deeper.t_max = ocfg.t_max * 2;
                double drift = omega_refinement_check(sys, B, omega, ocfg, deeper);
                diags[i] = {{"seed", seeds[i]}, {"drift", drift}};
            });
        } else if (cfg.task == "strong-b") {
            int k_max = p.value("k_max", 3);
            Vec x0 = p.contains("x0") ? p.at("x0").get<Vec>() : Vec(sys.dimension, 0.0);
            parallel_for(static_cast<int>(seeds.size()), workers, [&](int i) {
                auto res = build_strong_B(sys, make_driver(seeds[i], sys.noise), k_max, ocfg, x0);
                clouds[i] = res.attractor;
                diags[i] = {{"seed", seeds[i]},
                            {"saturated", res.saturated},
                            {"increments", res.increments}};
            });
        } else if (cfg.task == "strong-c") {
            std::vector<int> ks = p.value("k_list", std::vector<int>{2, 3, 4});
            PointCloud b0 = sample_box(box_from_json(p.at("set")), ocfg.sample_density);
            auto samples =
                ensemble_pullback_samples(sys, seeds, b0, p.value("t_sample", ocfg.t_max));
            std::vector<Box> c_sets;
            for (int k : ks) c_sets.push_back(fit_compact(samples, 1.0 - 1.0 / k));
            parallel_for(static_cast<int>(seeds.size()), workers, [&](int i) {
                auto res = build_strong_C(sys, make_driver(seeds[i], sys.noise), c_sets, ocfg);
                clouds[i] = res.attractor;
                diags[i] = {{"seed", seeds[i]},
                            {"saturated", res.saturated},
                            {"increments", res.increments}};
            });
        } else {
            // weak-b / weak-c
            ScheduleSearchConfig scfg = search_cfg_from(p);
            PointCloud b0 = sample_box(box_from_json(p.at("set")), ocfg.sample_density);
            auto samples =
                ensemble_pullback_samples(sys, seeds, b0, p.value("t_sample", ocfg.t_max));
            auto c_boxes = fit_dyadic_compacts(samples, scfg.depth);
            if (cfg.task == "weak-b") {
                Vec x0 = p.contains("x0") ? p.at("x0").get<Vec>() : Vec(sys.dimension, 0.0);
                sched = find_schedule(sys, seeds, c_boxes, scfg, x0);
            } else {
                sched = find_schedule_compact(sys, seeds, c_boxes, scfg);
            }
            out.write_json("schedule.json", to_json(sched));
            const int n_window = p.value("n_window", sched.depth());
            const int density = p.value("build_density", 64);
            parallel_for(static_cast<int>(seeds.size()), workers, [&](int i) {
                DriverPath omega = make_driver(seeds[i], sys.noise);
                try {
                    WeakResult res = build_weak(sys, omega, sched, n_window, density);
                    clouds[i] = res.attractor;
                    double worst = 0.0;
                    for (double d : res.nesting_defects) worst = std::max(worst, d);
                    diags[i] = {{"seed", seeds[i]},
                                {"j0", res.j0},
                                {"stable", true},
                                {"max_nesting_defect", worst}};
                } catch (const weak_unstable_error&) {
                    diags[i] = {{"seed", seeds[i]}, {"stable", false}};
                }
            });
        }

        // summary table + a bounded number of cloud files
        std::ostringstream csv;
        csv << "seed,points,resolution,diagnostics\n";
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            csv << seeds[i] << "," << clouds[i].points.size() << ","
                << fmt(clouds[i].resolution) << "," << diags[i].dump() << "\n";
        }
        out.write("summary.csv", csv.str());
        for (std::size_t i = 0; i < seeds.size() && i < static_cast<std::size_t>(clouds_max);
             ++i) {
            if (clouds[i].points.empty()) continue;
            out.write("cloud_seed" + std::to_string(seeds[i]) + ".csv", cloud_to_csv(clouds[i]));
            json side = {{"system", cfg.raw.at("system")},
                         {"seed", seeds[i]},
                         {"resolution", clouds[i].resolution},
                         {"diagnostics", diags[i]}};
            out.write_json("cloud_seed" + std::to_string(seeds[i]) + ".json", side);
        }
    } else if (cfg.task == "criterion-strong" || cfg.task == "criterion-weak") {
        PointCloud B = sample_box(box_from_json(p.at("set")), p.value("set_density", 64));
        Box C = resolve_c_box(sys, seeds, p);
        double eps = p.at("eps"), delta = p.at("delta");
        CriterionReport rep;
        if (cfg.task == "criterion-strong")
            rep = check_strong_criterion(sys, B, C, eps, delta, seeds, p.value("s_max", 50),
                                         p.value("t_max", 200), p.value("stride", 10));
        else
            rep = check_weak_criterion(sys, B, C, eps, delta, seeds, t_grid_from(p));
        out.write_json("report.json", to_json(rep));
        std::ostringstream csv;
        csv << "t,p\n";
        for (auto& [t, pr] : rep.p_curve) csv << t << "," << fmt(pr) << "\n";
        out.write("p_curve.csv", csv.str());
        exit_code = criterion_exit(rep.verdict);
    } else if (cfg.task == "classify") {
        PointCloud B = sample_box(box_from_json(p.at("set")), p.value("set_density", 64));
        ClassifyConfig ccfg;
        ccfg.delta = p.value("delta", ccfg.delta);
        ccfg.alpha = p.value("alpha", ccfg.alpha);
        ccfg.tail_fraction = p.value("tail_fraction", ccfg.tail_fraction);
        ModeReport rep = classify_attraction(sys, strong_b_provider(sys, p.value("attractor", json::object())),
                                             B, seeds, t_grid_from(p), ccfg);
        out.write_json("report.json", to_json(rep));
        std::ostringstream csv;
        csv << "t,exceedance\n";
        for (auto& [t, f] : rep.exceedance) csv << t << "," << fmt(f) << "\n";
        out.write("exceedance.csv", csv.str());
    } else if (cfg.task == "equivalence") {
        OmegaConfig ocfg = omega_cfg_from(p);
        std::vector<PointCloud> sets;
        for (const json& bj : p.at("sets"))
            sets.push_back(sample_box(box_from_json(bj), ocfg.sample_density));
        EquivalenceReport rep = check_weak_equals_strong(
            sys, strong_b_provider(sys, p.value("attractor", json::object())), sets, seeds,
            ocfg, p.value("tol", 1e-3), p.value("alpha", 0.05));
        json j = {{"fractions", rep.fractions}, {"verdict", rep.strong ? "strong" : "not-strong"}};
        out.write_json("report.json", j);
        exit_code = rep.strong ? 0 : 2;
    } else {
        throw config_error("config: unknown task '" + cfg.task + "'");
    }

    // manifest: content hashes over all artifacts, stable across reruns
    std::string combined;
    for (const auto& [name, hash] : out.hashes) combined += name + ":" + hash + "\n";
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    json manifest = {{"task", cfg.task},
                     {"version", kVersion},
                     {"config_hash", content_hash(cfg.raw.dump())},
                     {"outputs", out.hashes},
                     {"output_hash", content_hash(combined)},
                     {"exit_code", exit_code},
                     {"workers", workers},
                     {"wall_time_s", wall}};
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return exit_code;
}

int report_run(const fs::path& run_dir, std::ostream& os) {
    const fs::path mpath = run_dir / "manifest.json";
    if (!fs::exists(mpath)) {
        os << "no manifest in " << run_dir.string() << "\n";
        return 1;
    }
    json manifest = json::parse(read_file(mpath));
    os << "task: " << manifest.value("task", "?") << "\n";
    os << "config hash: " << manifest.value("config_hash", "?") << "\n";
    os << "output hash: " << manifest.value("output_hash", "?") << "\n";
    os << "exit code: " << manifest.value("exit_code", -1) << "\n";

    if (fs::exists(run_dir / "report.json")) {
        json rep = json::parse(read_file(run_dir / "report.json"));
        if (rep.contains("verdict")) os << "verdict: " << rep.at("verdict").get<std::string>() << "\n";
        if (rep.contains("estimate"))
            os << "estimate: " << rep.at("estimate").dump()
               << " ci: " << rep.value("ci", json::array()).dump() << "\n";
        for (const char* flag : {"pullback_as", "weak_in_prob", "forward_as"})
            if (rep.contains(flag)) os << flag << ": " << rep.at(flag).dump() << "\n";
        if (rep.contains("fractions")) os << "fractions: " << rep.at("fractions").dump() << "\n";
    }
    if (fs::exists(run_dir / "summary.csv")) {
        std::istringstream in(read_file(run_dir / "summary.csv"));
        std::string line;
        std::getline(in, line);
        int rows = 0;
        std::map<int, int> j0_hist;
        int unstable = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            ++rows;
            auto pos = line.find("{");
            if (pos != std::string::npos) {
                json d = json::parse(line.substr(pos));
                if (d.contains("j0")) ++j0_hist[d.at("j0").get<int>()];
                if (d.contains("stable") && !d.at("stable").get<bool>()) ++unstable;
            }
        }
        os << "seeds: " << rows << "\n";
        if (!j0_hist.empty()) {
            os << "j0 histogram:";
            for (auto& [j0, c] : j0_hist) os << " " << j0 << ":" << c;
            os << "\n";
        }
        if (unstable > 0) os << "unstable seeds: " << unstable << "\n";
    }
    return 0;
}

}  // namespace randattr
