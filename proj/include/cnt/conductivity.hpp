#pragma once

#include <vector>

#include "cnt/potential.hpp"
#include "cnt/spectral.hpp"

namespace cnt {

/// Physical prefactors of the response formulas: charge e, electron mass m_e
/// and the tube surface area S_L = 2 pi r L a.
struct ResponseParams {
    double charge = 1.0;
    double mass = 1.0;
    double surface = 1.0;
    int N = 1;

    static ResponseParams from_geometry(const CylinderGeometry& geom, int N) {
        return {geom.charge, 1.0, 2.0 * M_PI * geom.r * geom.torus_length(), N};
    }
    void validate() const {
        if (!(surface > 0.0) || !(mass > 0.0)) throw ValidationError("surface, mass > 0 required");
        if (N < 1) throw ValidationError("N >= 1 required");
    }
};

/// Closed-form frequency kernel
/// F(Delta; omega, eta) = (2 eta / (omega^2 + eta^2)) *
///     Delta (Delta^2 + eta^2 - 3 omega^2) /
///     ([(Delta-omega)^2 + eta^2] [(Delta+omega)^2 + eta^2]).
/// Odd in Delta, F(0) = 0.
double lorentzian_kernel(double delta, double omega, double eta);

/// Beta-independent leading conductivity: double-Lorentzian absorptive sum
/// plus the Drude-like bracket, evaluated term-for-term.
double sigma_leading(const DipoleWeights& weights, const Eigen::VectorXd& eigs, double omega,
                     double eta, const ResponseParams& params);

/// Same quantity through the F-kernel:
/// (e^2/(m S)) N eta/(omega^2+eta^2) - (e^2/(m^2 S)) sum_k F(mu_k - mu_0) w_k.
/// Algebraically identical to sigma_leading; kept separate as a cross-check.
double sigma_leading_kernel_form(const DipoleWeights& weights, const Eigen::VectorXd& eigs,
                                 double omega, double eta, const ResponseParams& params);

/// Absorptive part alone: the double-Lorentzian sum of the leading formula
/// restricted to transitions out of the ground multiplet, manifestly >= 0.
/// (The multiplet's own Delta = 0 terms cancel exactly against the Drude
/// bracket, so they carry no absorption.)
double absorptive_sum(const DipoleWeights& weights, const Eigen::VectorXd& eigs, double omega,
                      double eta, const ResponseParams& params);

/// Finite-temperature conductivity via the thermal F-kernel trace:
/// sigma = (e^2/(m S)) N eta/(omega^2+eta^2)
///       - (e^2/(m^2 S)) (1/Z) sum_k e^{-beta(mu_k-mu_0)} sum_j F(mu_j-mu_k) w_{jk}.
double sigma_finite_beta(const DipoleWeights& weights, const Eigen::VectorXd& eigs, double beta,
                         double omega, double eta, const ResponseParams& params);

/// Delta-peak limit eta -> 0: one line per transition with weight above
/// threshold, at omega_k = mu_k - mu_0, amplitude pi e^2/(m^2 S) w_k / omega_k.
struct SpectralLine {
    double omega;
    double amplitude;
    int k_index;
    double weight;
};

std::vector<SpectralLine> line_spectrum(const DipoleWeights& weights, const Eigen::VectorXd& eigs,
                                        const ResponseParams& params, double w_threshold = 1e-12);

}  // namespace cnt
