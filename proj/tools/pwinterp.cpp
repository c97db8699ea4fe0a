// pwinterp: batch driver for certification, reconstruction and sweeps.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pwinterp/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Paley-Wiener reconstruction from samples with parametrized interpolators"};
    app.require_subcommand(1);

    std::string config_path;
    pwinterp::RunOptions options;
    std::string out_dir;

    for (const char* name : {"certify", "reconstruct", "sweep"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config)");
        sub->add_option("--threads", options.threads, "worker threads for ladder rungs")->check(CLI::Range(1, 256));
        sub->add_flag("--verbose", options.verbose, "print per-rung diagnostics");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pwinterp::kExitConfig;
    }
    if (!out_dir.empty()) options.out_dir = out_dir;
    return pwinterp::run_command(app.get_subcommands().front()->get_name(), config_path, options);
}
