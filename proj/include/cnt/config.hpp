#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cnt/kubo.hpp"
#include "cnt/many_body.hpp"

namespace cnt {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class JobKind { Spectrum, Sweep, Lines, OracleCompare, ConvergenceStudy };

std::string job_name(JobKind k);

struct OmegaGrid {
    double min = 0.1;
    double max = 10.0;
    int count = 200;
    bool log_spacing = false;

    std::vector<double> points() const;
    void validate() const {
        if (!(min > 0.0)) throw ValidationError("omega grid min > 0 required");
        if (!(max >= min)) throw ValidationError("omega grid max >= min required");
        if (count < 1) throw ValidationError("omega grid count >= 1 required");
    }
};

struct OracleConfig {
    double E_step = 1e-4;
    double dt = 0.0;  // 0 = auto from the spectral spread
    Scheme scheme = Scheme::ExpMidpoint;
    double start_tol = 1e-8;
    std::vector<double> omega_values;  // empty = auto around the first line
};

struct RunConfig {
    ModelParams model;
    int kernel_m_max = 0;  // 0 = auto (2 * M_modes)
    double eta = 0.05;
    std::optional<double> beta;
    OmegaGrid grid;
    std::vector<JobKind> jobs;
    std::string output_dir = "out";
    int n_states = 0;  // 0 = all converged states
    OracleConfig oracle;

    void validate() const;
};

/// Parses the INI-style config format documented in the README.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Applies a dotted-key override, e.g. "model.lambda=0.5" or "run.jobs=sweep".
void apply_override(RunConfig& cfg, const std::string& key_value);

/// Stable content hash of the model section (FNV-1a over a canonical dump).
std::string model_hash(const RunConfig& cfg);

}  // namespace cnt
