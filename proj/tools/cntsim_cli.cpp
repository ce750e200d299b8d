#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cntsim.h"

namespace {

int run_subcommand(const std::string& job, const std::string& config_path,
                   const std::vector<std::string>& overrides) {
    cntsim_config* cfg = nullptr;
    if (cntsim_config_load(config_path.c_str(), &cfg) != CNTSIM_OK) {
        std::fprintf(stderr, "config error: %s\n", cntsim_last_error());
        return 1;
    }
    const std::string job_override = "run.jobs=" + job;
    if (cntsim_config_override(cfg, job_override.c_str()) != CNTSIM_OK) {
        std::fprintf(stderr, "config error: %s\n", cntsim_last_error());
        cntsim_config_free(cfg);
        return 1;
    }
    for (const auto& ov : overrides) {
        if (cntsim_config_override(cfg, ov.c_str()) != CNTSIM_OK) {
            std::fprintf(stderr, "override error (%s): %s\n", ov.c_str(), cntsim_last_error());
            cntsim_config_free(cfg);
            return 1;
        }
    }

    cntsim_result* res = nullptr;
    const cntsim_status st = cntsim_run(cfg, &res);
    cntsim_config_free(cfg);
    if (st != CNTSIM_OK) {
        std::fprintf(stderr, "run error: %s\n", cntsim_last_error());
        return st == CNTSIM_ERR_VALIDATION ? 1 : 2;
    }
    std::printf("%s\n", cntsim_result_manifest_json(res));
    const int code = cntsim_result_exit_code(res);
    cntsim_result_free(res);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D nanotube electron simulator: spectra and optical conductivity"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* job;
        const char* desc;
    };
    const Sub subs[] = {
        {"spectrum", "spectrum", "diagonalize and write spectrum.csv"},
        {"sweep", "sweep", "conductivity over the omega grid (sigma.csv)"},
        {"lines", "lines", "delta-peak line spectrum (lines.csv)"},
        {"oracle", "oracle_compare", "frequency- vs time-domain comparison (compare.csv)"},
        {"converge", "convergence_study", "truncation refinement study (convergence.csv)"},
    };

    std::string config_path;
    std::vector<std::string> overrides;
    std::string picked;
    for (const auto& s : subs) {
        auto* cmd = app.add_subcommand(s.name, s.desc);
        cmd->add_option("--config", config_path, "config file path")->required();
        cmd->add_option("--override", overrides, "section.key=value override (repeatable)");
        cmd->callback([&picked, job = s.job] { picked = job; });
    }

    CLI11_PARSE(app, argc, argv);
    return run_subcommand(picked, config_path, overrides);
}
