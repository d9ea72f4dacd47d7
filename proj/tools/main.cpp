#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mgeo/suites.hpp"

namespace {

int cmd_run(const std::string& config_path, std::optional<long long> seed,
            std::string out_dir, bool out_dir_given) {
    mgeo::json config;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config '" << config_path << "'\n";
            return 2;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
            return 2;
        }
    }
    if (seed) config["seed"] = *seed;
    if (!out_dir_given && config.is_object() && config.contains("output_dir") &&
        config["output_dir"].is_string())
        out_dir = config["output_dir"].get<std::string>();

    mgeo::SuiteResult result;
    try {
        result = mgeo::run_suite(config);
    } catch (const mgeo::ConfigInvalid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mgeo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    mgeo::write_outputs(result, out_dir);
    std::cout << mgeo::format_report(result.report);
    std::cout << "report: " << out_dir << "/report.json\n";
    std::cout << "details: " << out_dir << "/details.csv\n";
    if (!result.all_passed) {
        for (const auto& cert : result.report["certificates"]) {
            if (!cert.value("passed", false))
                std::cerr << "certificate failed: "
                          << cert.value("name", std::string()) << "\n";
        }
        return 1;
    }
    return 0;
}

int cmd_show(const std::string& report_path) {
    std::ifstream in(report_path);
    if (!in) {
        std::cerr << "error: FileNotFound: '" << report_path << "'\n";
        return 2;
    }
    mgeo::json report;
    try {
        in >> report;
    } catch (const std::exception& e) {
        std::cerr << "error: report is not valid JSON: " << e.what() << "\n";
        return 2;
    }
    std::cout << mgeo::format_report(report);
    return 0;
}

int cmd_suites() {
    for (const std::string& name : mgeo::suite_names()) std::cout << name << "\n";
    return 0;
}

int cmd_init(const std::string& suite, const std::string& path) {
    const auto names = mgeo::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return 2;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 2;
    }
    out << mgeo::default_config(suite).dump(2) << '\n';
    std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metricgeo: certification suites for geodesic metric "
                 "geometry and nonexpansive-mapping experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", report_path, suite_name,
                             init_path = "config.json";

    CLI::App* run = app.add_subcommand("run", "run a suite from a config file");
    run->add_option("--config", config_path, "config JSON path")->required();
    long long seed_value = 0;
    CLI::Option* seed_opt =
        run->add_option("--seed", seed_value, "override the config seed");
    CLI::Option* out_opt =
        run->add_option("--out", out_dir, "output directory (default: out)");

    CLI::App* show = app.add_subcommand("show", "print a stored report");
    show->add_option("report", report_path, "report.json path")->required();

    app.add_subcommand("suites", "list the available suites");

    CLI::App* init = app.add_subcommand("init", "write a default config");
    init->add_option("suite", suite_name, "suite name")->required();
    init->add_option("--out", init_path, "config path (default: config.json)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        std::optional<long long> seed_override;
        if (*seed_opt) seed_override = seed_value;
        return cmd_run(config_path, seed_override, out_dir,
                       static_cast<bool>(*out_opt));
    }
    if (show->parsed()) return cmd_show(report_path);
    if (init->parsed()) return cmd_init(suite_name, init_path);
    return cmd_suites();
}
