#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "randattr/experiment.hpp"

namespace fs = std::filesystem;
using namespace randattr;

int main(int argc, char** argv) {
    CLI::App app{"random attractor experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 1;
    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("config", config_path, "JSON config file")->required();
    run->add_option("--out", out_dir, "output directory (default: <config>.out)");
    run->add_option("--workers", workers, "worker threads over seeds");

    std::string report_dir;
    auto* rep = app.add_subcommand("report", "summarize a finished run");
    rep->add_option("dir", report_dir, "run directory")->required();

    auto* zoo = app.add_subcommand("zoo", "built-in systems");
    zoo->add_subcommand("list", "list system names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            json doc;
            try {
                doc = json::parse(read_file(config_path));
            } catch (const json::exception& e) {
                std::cerr << "config parse error: " << e.what() << "\n";
                return 1;
            }
            ExperimentConfig cfg = parse_config(doc);
            fs::path out = out_dir.empty() ? fs::path(config_path + ".out") : fs::path(out_dir);
            int code = run_experiment(cfg, out, workers);
            std::cout << "wrote " << out.string() << " (exit " << code << ")\n";
            return code;
        }
        if (rep->parsed()) return report_run(report_dir, std::cout);
        if (zoo->parsed()) {
            for (const auto& name : zoo_names()) std::cout << name << "\n";
            return 0;
        }
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
