// perron-lab: runs the direction-set experiments and lemma verification
// suites from a JSON config, writing report.json, metrics.csv and SVG
// figures. Exit code 0 when every verdict passes, 2 on partial failure,
// 1 on configuration errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "perron/experiments.hpp"

namespace {

int run_one(const std::string& experiment, const std::string& config_path,
            const std::string& out_override, std::optional<std::uint64_t> seed_override) {
    using perron::json;
    json raw;
    {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "error: cannot open config file: " << config_path << "\n";
            return 1;
        }
        try {
            is >> raw;
        } catch (const std::exception& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
            return 1;
        }
    }
    if (!raw.contains("experiment")) raw["experiment"] = experiment;
    if (seed_override) raw["seed"] = *seed_override;

    perron::ExperimentConfig cfg;
    try {
        cfg = perron::parse_config(raw);
    } catch (const perron::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    if (cfg.experiment != experiment) {
        std::cerr << "config error: config file is for experiment \"" << cfg.experiment
                  << "\", subcommand says \"" << experiment << "\"\n";
        return 1;
    }
    if (!out_override.empty()) cfg.out_dir = out_override;

    perron::ExperimentReport rep;
    try {
        rep = perron::run_experiment(cfg);
    } catch (const perron::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    perron::write_report(rep, cfg.out_dir);
    for (const perron::Verdict& v : rep.verdicts)
        std::cout << (v.pass ? "PASS  " : "FAIL  ") << v.id << "  " << v.anchor
                  << (v.details.empty() ? "" : "  [" + v.details + "]") << "\n";
    std::cout << "report: " << cfg.out_dir << "/report.json\n";
    if (rep.all_pass()) return 0;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"direction-set averaging experiments on the integer lattice"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;

    const std::vector<std::string> experiments{"good",     "bad",      "lattice",
                                               "trapezium", "transfer", "coboundary"};
    std::vector<CLI::App*> subs;
    for (const std::string& name : experiments) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config path")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "seed override");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < experiments.size(); ++i)
        if (subs[i]->parsed()) return run_one(experiments[i], config_path, out_dir, seed);
    return 1;
}
