#include "cnt/conductivity.hpp"

#include <cmath>

namespace cnt {
namespace {

void check_freq(double omega, double eta) {
    if (!(omega > 0.0)) throw ValidationError("omega > 0 required");
    if (!(eta > 0.0)) throw ValidationError("eta > 0 required");
}

}  // namespace

double lorentzian_kernel(double delta, double omega, double eta) {
    check_freq(omega, eta);
    const double dm = (delta - omega) * (delta - omega) + eta * eta;
    const double dp = (delta + omega) * (delta + omega) + eta * eta;
    return 2.0 * eta / (omega * omega + eta * eta) * delta *
           (delta * delta + eta * eta - 3.0 * omega * omega) / (dm * dp);
}

double absorptive_sum(const DipoleWeights& weights, const Eigen::VectorXd& eigs, double omega,
                      double eta, const ResponseParams& params) {
    check_freq(omega, eta);
    params.validate();
    const double mu0 = eigs[0];
    double s = 0.0;
    for (Eigen::Index k = 0; k < weights.w.size(); ++k) {
        const double d = eigs[k] - mu0;
        if (d <= 1e-10) continue;  // ground multiplet cancels against the Drude bracket
        const double dm = (d - omega) * (d - omega) + eta * eta;
        const double dp = (d + omega) * (d + omega) + eta * eta;
        s += weights.w[k] / (dm * dp);
    }
    const double e = params.charge;
    return 4.0 * e * e / (params.mass * params.mass * params.surface) * omega * eta * s;
}

double sigma_leading(const DipoleWeights& weights, const Eigen::VectorXd& eigs, double omega,
                     double eta, const ResponseParams& params) {
    check_freq(omega, eta);
    params.validate();
    const double mu0 = eigs[0];
    const double e = params.charge;
    const double m = params.mass;
    const double S = params.surface;

    double abs_sum = 0.0;
    double drude_sum = 0.0;
    for (Eigen::Index k = 0; k < weights.w.size(); ++k) {
        const double d = eigs[k] - mu0;
        const double dm = (d - omega) * (d - omega) + eta * eta;
        const double dp = (d + omega) * (d + omega) + eta * eta;
        abs_sum += weights.w[k] / (dm * dp);
        drude_sum += (d + 2.0 * omega) / dp * weights.w[k];
    }
    return 4.0 * e * e / (m * m * S) * omega * eta * abs_sum +
           e * e / (m * S) * eta / (omega * omega + eta * eta) *
               (params.N - 2.0 / m * drude_sum);
}

double sigma_leading_kernel_form(const DipoleWeights& weights, const Eigen::VectorXd& eigs,
                                 double omega, double eta, const ResponseParams& params) {
    check_freq(omega, eta);
    params.validate();
    const double mu0 = eigs[0];
    const double e = params.charge;
    const double m = params.mass;
    const double S = params.surface;
    double s = 0.0;
    for (Eigen::Index k = 0; k < weights.w.size(); ++k)
        s += lorentzian_kernel(eigs[k] - mu0, omega, eta) * weights.w[k];
    return e * e / (m * S) * params.N * eta / (omega * omega + eta * eta) -
           e * e / (m * m * S) * s;
}

double sigma_finite_beta(const DipoleWeights& weights, const Eigen::VectorXd& eigs, double beta,
                         double omega, double eta, const ResponseParams& params) {
    check_freq(omega, eta);
    params.validate();
    if (!(beta > 0.0)) throw ValidationError("beta > 0 required");
    const Eigen::Index n = weights.w_matrix.rows();
    if (eigs.size() < n) throw ValidationError("eigenvalues shorter than weight matrix");
    const double mu0 = eigs[0];
    const double e = params.charge;
    const double m = params.mass;
    const double S = params.surface;

    double z = 0.0;
    double trace = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double boltz = std::exp(-beta * (eigs[k] - mu0));
        z += boltz;
        if (boltz == 0.0) continue;
        double inner = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            inner += lorentzian_kernel(eigs[j] - eigs[k], omega, eta) * weights.w_matrix(j, k);
        trace += boltz * inner;
    }
    return e * e / (m * S) * params.N * eta / (omega * omega + eta * eta) -
           e * e / (m * m * S) * trace / z;
}

std::vector<SpectralLine> line_spectrum(const DipoleWeights& weights, const Eigen::VectorXd& eigs,
                                        const ResponseParams& params, double w_threshold) {
    params.validate();
    const double mu0 = eigs[0];
    const double e = params.charge;
    std::vector<SpectralLine> lines;
    for (Eigen::Index k = 0; k < weights.w.size(); ++k) {
        const double d = eigs[k] - mu0;
        if (d <= 1e-10 || weights.w[k] <= w_threshold) continue;
        lines.push_back({d,
                         M_PI * e * e / (params.mass * params.mass * params.surface) *
                             weights.w[k] / d,
                         static_cast<int>(k), weights.w[k]});
    }
    return lines;
}

}  // namespace cnt
