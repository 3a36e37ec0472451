#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "wlab/config.hpp"
#include "wlab/experiment.hpp"
#include "wlab/presets.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-space dynamics lab: classical Liouville vs quantum "
                 "Moyal evolution of one initial state"};

    std::string config_path, preset, out_dir;
    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--preset", preset,
                   "shipped preset (quadratic-equivalence, quartic-divergence, "
                   "hydro-closure)");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    bool dump = false;
    app.add_flag("--dump-preset", dump, "print the preset text and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? wlab::kExitOk : wlab::kExitConfigError;
    }

    try {
        if (dump) {
            if (preset.empty()) throw std::runtime_error("--dump-preset needs --preset");
            std::cout << wlab::preset_text(preset);
            return wlab::kExitOk;
        }
        if (config_path.empty() == preset.empty()) {
            std::cerr << "exactly one of --config or --preset is required\n";
            return wlab::kExitConfigError;
        }
        const std::string text =
            config_path.empty() ? wlab::preset_text(preset) : read_file(config_path);
        wlab::ExperimentConfig config = wlab::parse_config(text);
        if (!preset.empty()) config.preset = preset;
        if (!out_dir.empty()) config.directory = out_dir;
        return wlab::run_experiment(config, std::cout);
    } catch (const wlab::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return wlab::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return wlab::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wlab::kExitRuntimeAbort;
    }
}
