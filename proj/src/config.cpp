#include "cnt/config.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cnt {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ParseError(where + ": not a number: '" + v + "'");
    }
}

int parse_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        throw ParseError(where + ": not an integer: '" + v + "'");
    }
}

JobKind parse_job(const std::string& v, const std::string& where) {
    if (v == "spectrum") return JobKind::Spectrum;
    if (v == "sweep") return JobKind::Sweep;
    if (v == "lines") return JobKind::Lines;
    if (v == "oracle_compare" || v == "oracle") return JobKind::OracleCompare;
    if (v == "convergence_study" || v == "converge") return JobKind::ConvergenceStudy;
    throw ParseError(where + ": unknown job '" + v + "'");
}

void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value, const std::string& where) {
    if (section == "model") {
        if (key == "r") cfg.model.geometry.r = parse_double(value, where);
        else if (key == "a") cfg.model.geometry.a = parse_double(value, where);
        else if (key == "L") cfg.model.geometry.L = parse_int(value, where);
        else if (key == "eps") cfg.model.geometry.eps = parse_double(value, where);
        else if (key == "charge") cfg.model.geometry.charge = parse_double(value, where);
        else if (key == "N") cfg.model.N = parse_int(value, where);
        else if (key == "lambda") cfg.model.lambda = parse_double(value, where);
        else if (key == "M_modes") cfg.model.M_modes = parse_int(value, where);
        else if (key == "kernel_m_max") cfg.kernel_m_max = parse_int(value, where);
        else if (key == "v_per") {
            cfg.model.v_per.fourier_coeffs.clear();
            if (trim(value) != "0" && !trim(value).empty()) {
                for (const auto& term : split(value, ',')) {
                    if (term.empty()) continue;
                    const auto colon = term.find(':');
                    if (colon == std::string::npos)
                        throw ParseError(where + ": v_per wants 'harmonic:coeff' pairs");
                    const int j = parse_int(trim(term.substr(0, colon)), where);
                    cfg.model.v_per.fourier_coeffs[j] =
                        parse_double(trim(term.substr(colon + 1)), where);
                }
            }
        } else
            throw ParseError(where + ": unknown key 'model." + key + "'");
    } else if (section == "response") {
        if (key == "eta") cfg.eta = parse_double(value, where);
        else if (key == "beta") cfg.beta = parse_double(value, where);
        else
            throw ParseError(where + ": unknown key 'response." + key + "'");
    } else if (section == "grid") {
        if (key == "omega_min") cfg.grid.min = parse_double(value, where);
        else if (key == "omega_max") cfg.grid.max = parse_double(value, where);
        else if (key == "count") cfg.grid.count = parse_int(value, where);
        else if (key == "spacing") {
            if (value == "linear") cfg.grid.log_spacing = false;
            else if (value == "log") cfg.grid.log_spacing = true;
            else
                throw ParseError(where + ": spacing must be linear or log");
        } else
            throw ParseError(where + ": unknown key 'grid." + key + "'");
    } else if (section == "run") {
        if (key == "jobs") {
            cfg.jobs.clear();
            for (const auto& j : split(value, ','))
                if (!j.empty()) cfg.jobs.push_back(parse_job(j, where));
        } else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "n_states") cfg.n_states = parse_int(value, where);
        else
            throw ParseError(where + ": unknown key 'run." + key + "'");
    } else if (section == "oracle") {
        if (key == "E_step") cfg.oracle.E_step = parse_double(value, where);
        else if (key == "dt") cfg.oracle.dt = parse_double(value, where);
        else if (key == "start_tol") cfg.oracle.start_tol = parse_double(value, where);
        else if (key == "scheme") {
            if (value == "midpoint") cfg.oracle.scheme = Scheme::ExpMidpoint;
            else if (value == "rk4") cfg.oracle.scheme = Scheme::RK4;
            else
                throw ParseError(where + ": scheme must be midpoint or rk4");
        } else if (key == "omega_values") {
            cfg.oracle.omega_values.clear();
            for (const auto& w : split(value, ','))
                if (!w.empty()) cfg.oracle.omega_values.push_back(parse_double(w, where));
        } else
            throw ParseError(where + ": unknown key 'oracle." + key + "'");
    } else {
        throw ParseError(where + ": unknown section '" + section + "'");
    }
}

}  // namespace

std::string job_name(JobKind k) {
    switch (k) {
        case JobKind::Spectrum: return "spectrum";
        case JobKind::Sweep: return "sweep";
        case JobKind::Lines: return "lines";
        case JobKind::OracleCompare: return "oracle_compare";
        case JobKind::ConvergenceStudy: return "convergence_study";
    }
    return "?";
}

std::vector<double> OmegaGrid::points() const {
    validate();
    std::vector<double> pts(count);
    if (count == 1) {
        pts[0] = min;
        return pts;
    }
    if (log_spacing) {
        const double lmin = std::log(min), lmax = std::log(max);
        for (int i = 0; i < count; ++i)
            pts[i] = std::exp(lmin + (lmax - lmin) * i / double(count - 1));
    } else {
        for (int i = 0; i < count; ++i) pts[i] = min + (max - min) * i / double(count - 1);
    }
    return pts;
}

void RunConfig::validate() const {
    model.validate();
    grid.validate();
    if (!(eta > 0.0)) throw ValidationError("eta > 0 required");
    if (beta && !(*beta > 0.0)) throw ValidationError("beta > 0 required");
    if (kernel_m_max != 0 && kernel_m_max < 2 * model.M_modes)
        throw ValidationError("kernel_m_max must be 0 (auto) or >= 2*M_modes");
    if (n_states < 0) throw ValidationError("n_states >= 0 required");
    if (!(oracle.E_step > 0.0) || oracle.E_step > 1.0)
        throw ValidationError("oracle E_step in (0, 1] required");
    if (oracle.dt < 0.0) throw ValidationError("oracle dt >= 0 required");
    for (double w : oracle.omega_values)
        if (!(w > 0.0)) throw ValidationError("oracle omega values must be > 0");
    if (output_dir.empty()) throw ValidationError("output_dir required");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ParseError(where + ": key outside any [section]");
        set_key(cfg, section, key, value, where);
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

void apply_override(RunConfig& cfg, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos) throw ParseError("override wants section.key=value");
    const std::string dotted = trim(key_value.substr(0, eq));
    const std::string value = trim(key_value.substr(eq + 1));
    const auto dot = dotted.find('.');
    if (dot == std::string::npos) throw ParseError("override wants section.key=value");
    RunConfig trial = cfg;  // reject bad overrides without mutating cfg
    set_key(trial, dotted.substr(0, dot), dotted.substr(dot + 1), value,
            "--override " + dotted);
    trial.validate();
    cfg = std::move(trial);
}

std::string model_hash(const RunConfig& cfg) {
    char buf[160];
    std::string canon;
    auto add = [&](const char* name, double v) {
        std::snprintf(buf, sizeof(buf), "%s=%.17g;", name, v);
        canon += buf;
    };
    add("r", cfg.model.geometry.r);
    add("a", cfg.model.geometry.a);
    add("L", cfg.model.geometry.L);
    add("eps", cfg.model.geometry.eps);
    add("charge", cfg.model.geometry.charge);
    add("N", cfg.model.N);
    add("lambda", cfg.model.lambda);
    add("M_modes", cfg.model.M_modes);
    add("kernel_m_max", cfg.kernel_m_max);
    for (const auto& [j, c] : cfg.model.v_per.fourier_coeffs) {
        add("vper_j", j);
        add("vper_c", c);
    }
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

}  // namespace cnt
