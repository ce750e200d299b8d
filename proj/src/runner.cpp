#include "cnt/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <unordered_map>

#include <json.hpp>

namespace cnt {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::string& header) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path.string());
        out_ << header << "\n";
    }
    void row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) out_ << ",";
            out_ << c;
            first = false;
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

std::mutex g_cache_mutex;
std::unordered_map<std::string, std::shared_ptr<const SpectrumData>> g_cache;

int kernel_order(const RunConfig& cfg) {
    return cfg.kernel_m_max > 0 ? cfg.kernel_m_max : 2 * cfg.model.M_modes;
}

std::shared_ptr<const SpectrumData> build_spectrum(const RunConfig& cfg) {
    auto data = std::make_shared<SpectrumData>();
    const PairKernelTable kernel(cfg.model.geometry, kernel_order(cfg));
    data->kernel_l2 = kernel.l2_norm();
    data->basis = SlaterBasis::build(cfg.model);
    const auto H = assemble_hamiltonian(cfg.model, data->basis, kernel);
    const int dim = static_cast<int>(data->basis.size());
    int k = cfg.n_states > 0 ? std::min(cfg.n_states, dim) : dim;
    if (dim > 2000 && cfg.n_states == 0) k = std::min(dim, 200);
    data->spectral = eigensolve(H, k);
    data->P_diag = momentum_operator(data->basis, cfg.model.geometry);
    data->weights = dipole_weights(data->spectral, data->P_diag);
    const int n = data->spectral.n_converged;
    data->P_eigbasis = data->spectral.eigenvectors.leftCols(n).transpose() *
                       data->P_diag.asDiagonal() *
                       data->spectral.eigenvectors.leftCols(n);
    data->response = ResponseParams::from_geometry(cfg.model.geometry, cfg.model.N);
    return data;
}

struct JobRecord {
    std::string name;
    std::string status = "ok";
    std::string error;
    std::vector<std::string> artifacts;
    bool cache_hit = false;
};

// Gap from the ground multiplet to the first level above it.
double multiplet_gap(const SpectralResult& res) {
    for (int k = 1; k < res.n_converged; ++k)
        if (res.eigenvalues[k] - res.eigenvalues[0] > 1e-8)
            return res.eigenvalues[k] - res.eigenvalues[0];
    return 0.0;
}

double effective_beta(const RunConfig& cfg, const SpectrumData& s) {
    if (cfg.beta) return *cfg.beta;
    return 20.0 / std::max(multiplet_gap(s.spectral), 1e-10);
}

std::vector<double> oracle_omegas(const RunConfig& cfg, const SpectrumData& s) {
    if (!cfg.oracle.omega_values.empty()) return cfg.oracle.omega_values;
    const auto lines = line_spectrum(s.weights, s.spectral.eigenvalues, s.response);
    double w1 = lines.empty() ? 0.5 * (cfg.grid.min + cfg.grid.max) : lines.front().omega;
    return {0.5 * w1, 0.9 * w1, w1, 1.1 * w1, 1.5 * w1};
}

double sigma_time_at(const RunConfig& cfg, const SpectrumData& s, double beta, double omega,
                     double dt_scale = 1.0) {
    PropagateOptions opts;
    opts.scheme = cfg.oracle.scheme;
    opts.dt = (cfg.oracle.dt > 0.0 ? cfg.oracle.dt
                                   : default_timestep(s.spectral.eigenvalues, omega)) *
              dt_scale;
    return finite_difference_conductivity(s.spectral.eigenvalues, s.P_eigbasis, beta, omega,
                                          cfg.eta, cfg.oracle.E_step, s.response, opts,
                                          cfg.oracle.start_tol);
}

void job_spectrum(const RunConfig&, const SpectrumData& s, const fs::path& dir, JobRecord& rec) {
    CsvWriter csv(dir / "spectrum.csv", "k,mu_k,w_k,residual");
    for (int k = 0; k < s.spectral.n_converged; ++k)
        csv.row({std::to_string(k), fmt(s.spectral.eigenvalues[k]), fmt(s.weights.w[k]),
                 fmt(s.spectral.residuals[k])});
    rec.artifacts.push_back("spectrum.csv");
}

void job_sweep(const RunConfig& cfg, const SpectrumData& s, const fs::path& dir, JobRecord& rec) {
    CsvWriter csv(dir / "sigma.csv", "omega,sigma");
    for (double w : cfg.grid.points()) {
        const double sigma =
            cfg.beta ? sigma_finite_beta(s.weights, s.spectral.eigenvalues, *cfg.beta, w,
                                         cfg.eta, s.response)
                     : sigma_leading(s.weights, s.spectral.eigenvalues, w, cfg.eta, s.response);
        csv.row({fmt(w), fmt(sigma)});
    }
    rec.artifacts.push_back("sigma.csv");
}

void job_lines(const RunConfig&, const SpectrumData& s, const fs::path& dir, JobRecord& rec) {
    CsvWriter csv(dir / "lines.csv", "omega_k,amplitude,k_index,weight");
    for (const auto& l : line_spectrum(s.weights, s.spectral.eigenvalues, s.response))
        csv.row({fmt(l.omega), fmt(l.amplitude), std::to_string(l.k_index), fmt(l.weight)});
    rec.artifacts.push_back("lines.csv");
}

void job_oracle(const RunConfig& cfg, const SpectrumData& s, const fs::path& dir,
                JobRecord& rec) {
    const double beta = effective_beta(cfg, s);
    CsvWriter csv(dir / "compare.csv", "omega,sigma_freq,sigma_time,rel_diff");
    for (double w : oracle_omegas(cfg, s)) {
        const double freq =
            sigma_finite_beta(s.weights, s.spectral.eigenvalues, beta, w, cfg.eta, s.response);
        const double time = sigma_time_at(cfg, s, beta, w);
        const double denom = std::max(std::abs(freq), 1e-300);
        csv.row({fmt(w), fmt(freq), fmt(time), fmt(std::abs(freq - time) / denom)});
    }
    rec.artifacts.push_back("compare.csv");
}

void job_convergence(const RunConfig& cfg, const SpectrumData& s, const fs::path& dir,
                     JobRecord& rec) {
    RunConfig refined = cfg;
    refined.model.M_modes = 2 * cfg.model.M_modes;
    refined.kernel_m_max = 2 * kernel_order(cfg);
    const auto r = compute_spectrum(refined);

    const double mu0_a = s.spectral.eigenvalues[0];
    const double mu0_b = r->spectral.eigenvalues[0];
    const double gap_a = multiplet_gap(s.spectral);
    const double gap_b = multiplet_gap(r->spectral);

    CsvWriter csv(dir / "convergence.csv", "quantity,base,refined,drift");
    csv.row({"mu_0", fmt(mu0_a), fmt(mu0_b), fmt(std::abs(mu0_b - mu0_a))});
    csv.row({"gap", fmt(gap_a), fmt(gap_b), fmt(std::abs(gap_b - gap_a))});

    const auto omegas = oracle_omegas(cfg, s);
    for (double w : {omegas[0], omegas[2], omegas[4]}) {
        const double sa = sigma_leading(s.weights, s.spectral.eigenvalues, w, cfg.eta, s.response);
        const double sb =
            sigma_leading(r->weights, r->spectral.eigenvalues, w, cfg.eta, r->response);
        csv.row({"sigma(omega=" + fmt(w) + ")", fmt(sa), fmt(sb), fmt(std::abs(sb - sa))});
    }

    const double beta = effective_beta(cfg, s);
    const double w_mid = omegas[2];
    const double t1 = sigma_time_at(cfg, s, beta, w_mid, 1.0);
    const double t2 = sigma_time_at(cfg, s, beta, w_mid, 0.5);
    csv.row({"sigma_time(dt_halved)", fmt(t1), fmt(t2), fmt(std::abs(t2 - t1))});
    rec.artifacts.push_back("convergence.csv");
}

}  // namespace

std::shared_ptr<const SpectrumData> compute_spectrum(const RunConfig& cfg, bool* cache_hit) {
    cfg.validate();
    const std::string key = model_hash(cfg) + ":" + std::to_string(cfg.n_states);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) {
            if (cache_hit) *cache_hit = true;
            return it->second;
        }
    }
    if (cache_hit) *cache_hit = false;
    auto data = build_spectrum(cfg);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.emplace(key, data);
    return data;
}

void clear_spectrum_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.clear();
}

RunOutcome run_jobs(const RunConfig& cfg_in) {
    RunConfig cfg = cfg_in;
    if (const char* env = std::getenv("CNTSIM_OUTPUT_DIR"); env && *env) cfg.output_dir = env;
    cfg.validate();

    RunOutcome out;
    out.output_dir = cfg.output_dir;
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    std::vector<JobRecord> records;
    std::shared_ptr<const SpectrumData> spectrum;
    bool any_failed = false;
    bool validation_failed = false;

    for (JobKind kind : cfg.jobs) {
        JobRecord rec;
        rec.name = job_name(kind);
        try {
            if (!spectrum) {
                spectrum = compute_spectrum(cfg, &rec.cache_hit);
            } else {
                rec.cache_hit = true;
            }
            switch (kind) {
                case JobKind::Spectrum: job_spectrum(cfg, *spectrum, dir, rec); break;
                case JobKind::Sweep: job_sweep(cfg, *spectrum, dir, rec); break;
                case JobKind::Lines: job_lines(cfg, *spectrum, dir, rec); break;
                case JobKind::OracleCompare: job_oracle(cfg, *spectrum, dir, rec); break;
                case JobKind::ConvergenceStudy: job_convergence(cfg, *spectrum, dir, rec); break;
            }
        } catch (const ValidationError& e) {
            rec.status = "error";
            rec.error = e.what();
            any_failed = validation_failed = true;
        } catch (const std::exception& e) {
            rec.status = "error";
            rec.error = e.what();
            any_failed = true;
        }
        records.push_back(std::move(rec));
    }

    json manifest;
    manifest["model_hash"] = model_hash(cfg);
    manifest["output_dir"] = cfg.output_dir;
    json jjobs = json::array();
    json artifacts = json::array();
    for (const auto& rec : records) {
        json jr;
        jr["name"] = rec.name;
        jr["status"] = rec.status;
        jr["cache_hit"] = rec.cache_hit;
        if (!rec.error.empty()) jr["error"] = rec.error;
        jr["artifacts"] = rec.artifacts;
        jjobs.push_back(jr);
        for (const auto& a : rec.artifacts) artifacts.push_back({{"file", a}, {"role", rec.name}});
    }
    artifacts.push_back({{"file", "manifest.json"}, {"role", "manifest"}});
    manifest["jobs"] = jjobs;
    manifest["artifacts"] = artifacts;

    if (spectrum) {
        json diag;
        diag["dim"] = spectrum->basis.size();
        diag["n_converged"] = spectrum->spectral.n_converged;
        diag["max_residual"] = spectrum->spectral.residuals.size()
                                   ? spectrum->spectral.residuals.maxCoeff()
                                   : 0.0;
        diag["ground_degeneracy"] = spectrum->weights.ground_degeneracy;
        if (spectrum->spectral.n_converged > 1)
            diag["gap"] = multiplet_gap(spectrum->spectral);
        diag["weight_cutoff"] = spectral_weight_cutoff(spectrum->weights.w);
        diag["kernel_l2"] = spectrum->kernel_l2;
        manifest["diagnostics"] = diag;
    }

    out.manifest_path = (dir / "manifest.json").string();
    out.manifest_json = manifest.dump(2);
    std::ofstream mf(out.manifest_path);
    mf << out.manifest_json << "\n";

    out.ok = !any_failed;
    out.exit_code = out.ok ? 0 : (validation_failed ? 1 : 2);
    return out;
}

}  // namespace cnt
