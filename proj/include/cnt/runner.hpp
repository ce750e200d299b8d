#pragma once

#include <memory>
#include <string>

#include "cnt/config.hpp"

namespace cnt {

/// Everything downstream jobs need from one diagonalization.
struct SpectrumData {
    SlaterBasis basis;
    SpectralResult spectral;
    DipoleWeights weights;
    Eigen::VectorXd P_diag;      // momentum over the Slater basis
    Eigen::MatrixXd P_eigbasis;  // momentum rotated into the eigenbasis
    ResponseParams response;
    double kernel_l2 = 0.0;
};

/// Diagonalizes (or serves from the in-process cache, keyed by model hash and
/// state count). Thread-safe.
std::shared_ptr<const SpectrumData> compute_spectrum(const RunConfig& cfg,
                                                     bool* cache_hit = nullptr);
void clear_spectrum_cache();

struct RunOutcome {
    bool ok = false;
    int exit_code = 2;  // 0 ok, 1 validation, 2 numerical
    std::string output_dir;
    std::string manifest_path;
    std::string manifest_json;
};

/// Executes cfg.jobs in dependency order, writes CSV artifacts plus
/// manifest.json into the output directory. CNTSIM_OUTPUT_DIR overrides
/// cfg.output_dir. Per-job failures are recorded; the outcome is non-ok if any
/// job failed.
RunOutcome run_jobs(const RunConfig& cfg);

}  // namespace cnt
