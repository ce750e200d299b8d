#include "cnt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cnt {
namespace {

Eigen::VectorXd residual_norms(const Eigen::SparseMatrix<double>& H,
                               const Eigen::VectorXd& vals, const Eigen::MatrixXd& vecs) {
    Eigen::VectorXd res(vals.size());
    for (Eigen::Index k = 0; k < vals.size(); ++k)
        res[k] = (H * vecs.col(k) - vals[k] * vecs.col(k)).norm();
    return res;
}

SpectralResult eigensolve_dense(const Eigen::SparseMatrix<double>& H, int k_lowest, double tol) {
    const Eigen::MatrixXd Hd(H);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hd);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("dense eigensolver failed to converge");
    SpectralResult r;
    r.eigenvalues = es.eigenvalues().head(k_lowest);
    r.eigenvectors = es.eigenvectors().leftCols(k_lowest);
    r.n_converged = k_lowest;
    r.residuals = residual_norms(H, r.eigenvalues, r.eigenvectors);
    const double scale =
        H.nonZeros() ? std::max(1.0, Eigen::Map<const Eigen::ArrayXd>(H.valuePtr(), H.nonZeros())
                                         .abs()
                                         .maxCoeff())
                     : 1.0;
    for (Eigen::Index k = 0; k < r.residuals.size(); ++k)
        if (r.residuals[k] > std::max(tol, 1e-12) * scale * 100.0)
            throw ConvergenceError("dense eigenpair residual above tolerance");
    return r;
}

SpectralResult eigensolve_lanczos(const Eigen::SparseMatrix<double>& H, int k_lowest,
                                  double tol) {
    const Eigen::Index dim = H.rows();
    const int m_max = static_cast<int>(std::min<Eigen::Index>(dim, std::max(4 * k_lowest + 80, 160)));

    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd V(dim, m_max);
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
    v.normalize();
    V.col(0) = v;

    Eigen::VectorXd alpha(m_max), beta(m_max);
    int m = 0;
    for (; m < m_max; ++m) {
        Eigen::VectorXd w = H * V.col(m);
        alpha[m] = V.col(m).dot(w);
        w -= alpha[m] * V.col(m);
        if (m > 0) w -= beta[m - 1] * V.col(m - 1);
        // full reorthogonalization, twice for stability
        for (int pass = 0; pass < 2; ++pass)
            w -= V.leftCols(m + 1) * (V.leftCols(m + 1).transpose() * w);
        beta[m] = w.norm();
        if (m + 1 == m_max) break;
        if (beta[m] < 1e-14) {
            ++m;
            break;  // invariant subspace found
        }
        V.col(m + 1) = w / beta[m];
    }
    const int krylov = std::min(m + 1, m_max);
    if (krylov < k_lowest)
        throw ConvergenceError("Lanczos Krylov space smaller than requested pair count");

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(krylov, krylov);
    for (int i = 0; i < krylov; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < krylov) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) throw ConvergenceError("tridiagonal solve failed");

    SpectralResult r;
    r.eigenvalues = es.eigenvalues().head(k_lowest);
    r.eigenvectors = V.leftCols(krylov) * es.eigenvectors().leftCols(k_lowest);
    for (int k = 0; k < k_lowest; ++k) r.eigenvectors.col(k).normalize();
    r.n_converged = k_lowest;
    r.residuals = residual_norms(H, r.eigenvalues, r.eigenvectors);
    const double scale = std::max(1.0, r.eigenvalues.cwiseAbs().maxCoeff());
    for (int k = 0; k < k_lowest; ++k)
        if (r.residuals[k] > tol * scale)
            throw ConvergenceError("Lanczos residual " + std::to_string(r.residuals[k]) +
                                   " above tolerance for pair " + std::to_string(k));
    return r;
}

}  // namespace

SpectralResult eigensolve(const Eigen::SparseMatrix<double>& H, int k_lowest, double tol,
                          int dense_threshold) {
    if (H.rows() != H.cols()) throw std::invalid_argument("eigensolve: square matrix required");
    if (k_lowest < 1 || k_lowest > H.rows())
        throw std::invalid_argument("eigensolve: need 1 <= k_lowest <= dim");
    if (H.rows() <= dense_threshold) return eigensolve_dense(H, k_lowest, tol);
    return eigensolve_lanczos(H, k_lowest, tol);
}

DipoleWeights dipole_weights(const SpectralResult& res, const Eigen::VectorXd& P_diag,
                             double deg_tol) {
    if (res.n_converged < 1) throw std::invalid_argument("dipole_weights: empty spectrum");
    if (P_diag.size() != res.eigenvectors.rows())
        throw std::invalid_argument("dipole_weights: dimension mismatch");
    const int n = res.n_converged;

    // <psi_j, P psi_k> with P diagonal over the basis
    Eigen::MatrixXd PV = P_diag.asDiagonal() * res.eigenvectors.leftCols(n);
    Eigen::MatrixXd amp = res.eigenvectors.leftCols(n).transpose() * PV;

    DipoleWeights out;
    out.w_matrix = amp.cwiseProduct(amp);

    int g = 1;
    while (g < n && res.eigenvalues[g] - res.eigenvalues[0] < deg_tol) ++g;
    out.ground_degeneracy = g;
    out.w = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < g; ++j) s += out.w_matrix(k, j);
        out.w[k] = s / g;
    }
    return out;
}

double reduced_partition(const SpectralResult& res, double beta, double tail_tol, bool* tail_ok) {
    if (!(beta > 0.0)) throw std::invalid_argument("reduced_partition: beta > 0 required");
    if (res.n_converged < 1) throw std::invalid_argument("reduced_partition: empty spectrum");
    const double mu0 = res.eigenvalues[0];
    double z = 0.0;
    for (int k = res.n_converged - 1; k >= 0; --k) z += std::exp(-beta * (res.eigenvalues[k] - mu0));
    if (tail_ok)
        *tail_ok = std::exp(-beta * (res.eigenvalues[res.n_converged - 1] - mu0)) < tail_tol;
    return z;
}

WeylFit weyl_fit(const SpectralResult& res, int N, int k_lo, int k_hi) {
    if (N < 1) throw std::invalid_argument("weyl_fit: N >= 1 required");
    if (k_hi < 0) k_hi = res.n_converged / 2;
    if (k_lo < 0) k_lo = std::max(1, k_hi / 2);
    if (k_hi >= res.n_converged) k_hi = res.n_converged - 1;
    if (res.n_converged < 50 || k_hi - k_lo + 1 < 10)
        throw std::invalid_argument("weyl_fit: need >= 50 converged levels and a 10-point window");

    const double mu0_shift = res.eigenvalues[0] < 0.0 ? -res.eigenvalues[0] : 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double mu = res.eigenvalues[k] + mu0_shift;
        if (!(mu > 0.0)) continue;
        const double x = std::log(double(k));
        const double y = std::log(mu);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++npts;
    }
    if (npts < 10) throw std::invalid_argument("weyl_fit: too few positive levels in window");
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / npts;
    return {slope, std::exp(intercept), k_lo, k_hi};
}

Eigen::Index spectral_weight_cutoff(const Eigen::VectorXd& w, double rel_tol) {
    const double total = w.sum();
    if (total <= 0.0) return w.size();
    double tail = 0.0;
    for (Eigen::Index k = w.size() - 1; k >= 0; --k) {
        tail += w[k];
        if (tail >= rel_tol * total) return k + 1;
    }
    return 0;
}

}  // namespace cnt
