#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "cnt/conductivity.hpp"

namespace cnt {

/// Adiabatically switched drive E a(t) with a(t) = Re(e^{(i omega + eta) t} / (i omega + eta)).
struct DriveSpec {
    double E = 0.0;
    double omega = 1.0;
    double eta = 0.05;
    double t_start = -1.0;

    /// t_start chosen so the adiabatic tail e^{eta t_start} equals start_tol.
    static DriveSpec make(double E, double omega, double eta, double start_tol = 1e-8);
    void validate() const;
};

double vector_potential(double t, double omega, double eta);
double vector_potential_deriv(double t, double omega, double eta);

/// H(t) = H0 - (e/m) E a(t) P + (e^2 / 2m) N E^2 a(t)^2 I, dense form.
Eigen::MatrixXd driven_hamiltonian(const Eigen::MatrixXd& H0, const Eigen::MatrixXd& P, int N,
                                   const DriveSpec& drive, double t,
                                   const ResponseParams& params);

enum class Scheme { ExpMidpoint, RK4 };

struct DensityMatrix {
    Eigen::MatrixXcd rho;  // over the H0 eigenbasis
    double beta = 0.0;
    double t = 0.0;
    double trace_drift = 0.0;
};

struct PropagateOptions {
    double dt = 1e-2;
    Scheme scheme = Scheme::ExpMidpoint;
    double prune_tol = 1e-14;  // thermal columns below this stay frozen
    int observe_stride = 0;    // 0 disables the observer
    std::function<void(double t, double tr_rho_p, double current)> observer;
};

/// rho(0) from i rho' = [H(t), rho], rho(t_start) = e^{-beta H0}/Z, stepped in
/// the H0 eigenbasis (mu diagonal, P_tilde = P rotated into that basis).
DensityMatrix propagate_density(const Eigen::VectorXd& mu, const Eigen::MatrixXd& P_tilde,
                                double beta, const DriveSpec& drive,
                                const ResponseParams& params, const PropagateOptions& opts);

/// J(t) = -(e/(m S_L)) [Tr(rho P) - N e E a(t) Tr rho].
double current_density(const Eigen::MatrixXcd& rho, const Eigen::MatrixXd& P_tilde, int N,
                       const DriveSpec& drive, double t, const ResponseParams& params);

/// Central difference [J(0; +E) - J(0; -E)] / 2E of the propagated current.
double finite_difference_conductivity(const Eigen::VectorXd& mu, const Eigen::MatrixXd& P_tilde,
                                      double beta, double omega, double eta, double E_step,
                                      const ResponseParams& params, const PropagateOptions& opts,
                                      double start_tol = 1e-8);

/// dt with dt * max(spectral spread, omega) = 0.1.
double default_timestep(const Eigen::VectorXd& mu, double omega);

}  // namespace cnt
