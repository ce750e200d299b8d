#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <stdexcept>

namespace cnt {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lowest eigenpairs of a real symmetric Hamiltonian, ascending.
struct SpectralResult {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // column k is psi_k over the basis
    int n_converged = 0;
    Eigen::VectorXd residuals;     // ||H psi_k - mu_k psi_k||
};

/// Lowest k_lowest eigenpairs. Dense solve for dim <= dense_threshold,
/// Lanczos with full reorthogonalization above. Throws ConvergenceError when
/// fewer than k_lowest pairs reach tol (no partial results are silently kept).
SpectralResult eigensolve(const Eigen::SparseMatrix<double>& H, int k_lowest, double tol = 1e-10,
                          int dense_threshold = 2000);

/// Transition weights against the ground multiplet plus the full |<j|P|k>|^2
/// matrix for thermal sums. Degenerate ground states (gap < deg_tol) are
/// averaged with equal weights.
struct DipoleWeights {
    Eigen::VectorXd w;         // w_k against the ground multiplet
    Eigen::MatrixXd w_matrix;  // w_{jk}
    int ground_degeneracy = 1;
};

DipoleWeights dipole_weights(const SpectralResult& res, const Eigen::VectorXd& P_diag,
                             double deg_tol = 1e-10);

/// Z-tilde = sum_k exp(-beta (mu_k - mu_0)). Sets *tail_ok to false when the
/// last retained Boltzmann factor exceeds tail_tol.
double reduced_partition(const SpectralResult& res, double beta, double tail_tol = 1e-12,
                         bool* tail_ok = nullptr);

/// Least-squares fit of log mu_k vs log k over [k_lo, k_hi]; mu_k ~ C0 k^p.
struct WeylFit {
    double exponent = 0.0;
    double C0 = 0.0;
    int k_lo = 0;
    int k_hi = 0;
};

/// Fits the growth law of the level sequence. Defaults: k_hi = n_converged/2
/// (upper levels are truncation-polluted), fit window = upper half [k_hi/2, k_hi].
WeylFit weyl_fit(const SpectralResult& res, int N, int k_lo = -1, int k_hi = -1);

/// Smallest K with sum_{k >= K} w_k < rel_tol * sum_k w_k.
Eigen::Index spectral_weight_cutoff(const Eigen::VectorXd& w, double rel_tol = 1e-8);

}  // namespace cnt
