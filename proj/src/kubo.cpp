#include "cnt/kubo.hpp"

#include <cmath>

namespace cnt {
namespace {

using complexd = std::complex<double>;
const complexd kI(0.0, 1.0);

Eigen::VectorXd thermal_weights(const Eigen::VectorXd& mu, double beta) {
    const double mu0 = mu.minCoeff();
    Eigen::VectorXd p = (-beta * (mu.array() - mu0)).exp();
    return p / p.sum();
}

}  // namespace

DriveSpec DriveSpec::make(double E, double omega, double eta, double start_tol) {
    if (!(start_tol > 0.0) || start_tol >= 1.0)
        throw ValidationError("start_tol in (0, 1) required");
    DriveSpec d;
    d.E = E;
    d.omega = omega;
    d.eta = eta;
    d.t_start = std::log(start_tol) / eta;
    d.validate();
    return d;
}

void DriveSpec::validate() const {
    if (!(omega > 0.0)) throw ValidationError("drive omega > 0 required");
    if (!(eta > 0.0)) throw ValidationError("drive eta > 0 required");
    if (std::abs(E) > 1.0) throw ValidationError("drive amplitude |E| <= 1 required");
    if (!(t_start < 0.0)) throw ValidationError("drive t_start < 0 required");
    if (std::exp(eta * t_start) > 1e-6)
        throw ValidationError("adiabatic tail e^{eta t_start} too large");
}

double vector_potential(double t, double omega, double eta) {
    return std::exp(eta * t) * (eta * std::cos(omega * t) + omega * std::sin(omega * t)) /
           (omega * omega + eta * eta);
}

double vector_potential_deriv(double t, double omega, double eta) {
    return std::exp(eta * t) * std::cos(omega * t);
}

Eigen::MatrixXd driven_hamiltonian(const Eigen::MatrixXd& H0, const Eigen::MatrixXd& P, int N,
                                   const DriveSpec& drive, double t,
                                   const ResponseParams& params) {
    if (H0.rows() != P.rows() || H0.cols() != P.cols() || H0.rows() != H0.cols())
        throw ValidationError("driven_hamiltonian: dimension mismatch");
    const double a = vector_potential(t, drive.omega, drive.eta);
    const double e = params.charge;
    const double m = params.mass;
    Eigen::MatrixXd H = H0 - (e / m) * drive.E * a * P;
    H.diagonal().array() += e * e / (2.0 * m) * N * drive.E * drive.E * a * a;
    return H;
}

double current_density(const Eigen::MatrixXcd& rho, const Eigen::MatrixXd& P_tilde, int N,
                       const DriveSpec& drive, double t, const ResponseParams& params) {
    const double e = params.charge;
    const double a = vector_potential(t, drive.omega, drive.eta);
    const double tr_rho_p = (rho * P_tilde).trace().real();
    const double tr_rho = rho.trace().real();
    return -(e / (params.mass * params.surface)) * (tr_rho_p - N * e * drive.E * a * tr_rho);
}

namespace {

DensityMatrix propagate_exp_midpoint(const Eigen::VectorXd& mu, const Eigen::MatrixXd& P_tilde,
                                     double beta, const DriveSpec& drive,
                                     const ResponseParams& params,
                                     const PropagateOptions& opts) {
    const Eigen::Index d = mu.size();
    const Eigen::VectorXd p = thermal_weights(mu, beta);

    std::vector<Eigen::Index> active;
    for (Eigen::Index k = 0; k < d; ++k)
        if (p[k] > opts.prune_tol) active.push_back(k);
    const Eigen::Index K = static_cast<Eigen::Index>(active.size());

    // P_tilde = W diag(pv) W^T lets the drive rotation act exactly.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P_tilde);
    if (es.info() != Eigen::Success) throw ConvergenceError("momentum eigendecomposition failed");
    const Eigen::MatrixXd& W = es.eigenvectors();
    const Eigen::VectorXd& pv = es.eigenvalues();

    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(d, K);
    for (Eigen::Index c = 0; c < K; ++c) Y(active[c], c) = 1.0;

    const long nsteps = std::lround(std::ceil(-drive.t_start / opts.dt));
    const double dt = -drive.t_start / double(nsteps);
    const double e = params.charge;
    const double m = params.mass;

    const Eigen::ArrayXcd half_phase = (-kI * (dt / 2.0) * mu.array()).exp();
    Eigen::MatrixXcd tmp(d, K);
    double t = drive.t_start;
    for (long step = 0; step < nsteps; ++step) {
        const double mid = t + dt / 2.0;
        const double a = vector_potential(mid, drive.omega, drive.eta);
        const double theta = dt * (e / m) * drive.E * a;
        const complexd scalar =
            std::exp(-kI * dt * (e * e / (2.0 * m)) * double(params.N) * drive.E * drive.E * a * a);

        Y = half_phase.matrix().asDiagonal() * Y;
        if (theta != 0.0) {
            tmp.noalias() = W.transpose() * Y;
            tmp = (kI * theta * pv.array()).exp().matrix().asDiagonal() * tmp;
            Y.noalias() = W * tmp;
        }
        Y = half_phase.matrix().asDiagonal() * Y;
        Y *= scalar;
        t = drive.t_start + (step + 1) * dt;

        if (opts.observe_stride > 0 && opts.observer &&
            (step % opts.observe_stride == 0 || step + 1 == nsteps)) {
            double tr_rho_p = 0.0;
            for (Eigen::Index c = 0; c < K; ++c)
                tr_rho_p += p[active[c]] * (Y.col(c).adjoint() * (P_tilde * Y.col(c)))(0).real();
            const double tr_rho = p.sum();
            const double a_t = vector_potential(t, drive.omega, drive.eta);
            const double J = -(e / (m * params.surface)) *
                             (tr_rho_p - params.N * e * drive.E * a_t * tr_rho);
            opts.observer(t, tr_rho_p, J);
        }
    }

    DensityMatrix out;
    out.beta = beta;
    out.t = 0.0;
    Eigen::VectorXd p_active(K);
    for (Eigen::Index c = 0; c < K; ++c) p_active[c] = p[active[c]];
    out.rho = Y * p_active.asDiagonal() * Y.adjoint();
    for (Eigen::Index k = 0; k < d; ++k)
        if (p[k] <= opts.prune_tol) out.rho(k, k) += p[k];  // frozen tail states
    out.trace_drift = std::abs(out.rho.trace().real() - 1.0);
    if (out.trace_drift > 1e-8)
        throw ConvergenceError("propagation trace drift " + std::to_string(out.trace_drift));
    return out;
}

DensityMatrix propagate_rk4(const Eigen::VectorXd& mu, const Eigen::MatrixXd& P_tilde,
                            double beta, const DriveSpec& drive, const ResponseParams& params,
                            const PropagateOptions& opts) {
    const Eigen::Index d = mu.size();
    const Eigen::VectorXd p = thermal_weights(mu, beta);
    Eigen::MatrixXcd rho = Eigen::MatrixXd(p.asDiagonal()).cast<complexd>();
    const Eigen::MatrixXd H0 = Eigen::MatrixXd(mu.asDiagonal());

    auto deriv = [&](const Eigen::MatrixXcd& r, double t) -> Eigen::MatrixXcd {
        const Eigen::MatrixXd H = driven_hamiltonian(H0, P_tilde, params.N, drive, t, params);
        return -kI * (H * r - r * H);
    };

    const long nsteps = std::lround(std::ceil(-drive.t_start / opts.dt));
    const double dt = -drive.t_start / double(nsteps);
    double t = drive.t_start;
    for (long step = 0; step < nsteps; ++step) {
        const Eigen::MatrixXcd k1 = deriv(rho, t);
        const Eigen::MatrixXcd k2 = deriv(rho + 0.5 * dt * k1, t + 0.5 * dt);
        const Eigen::MatrixXcd k3 = deriv(rho + 0.5 * dt * k2, t + 0.5 * dt);
        const Eigen::MatrixXcd k4 = deriv(rho + dt * k3, t + dt);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = drive.t_start + (step + 1) * dt;
        if (opts.observe_stride > 0 && opts.observer &&
            (step % opts.observe_stride == 0 || step + 1 == nsteps)) {
            const double tr_rho_p = (rho * P_tilde).trace().real();
            opts.observer(t, tr_rho_p, current_density(rho, P_tilde, params.N, drive, t, params));
        }
    }

    DensityMatrix out;
    out.rho = std::move(rho);
    out.beta = beta;
    out.t = 0.0;
    out.trace_drift = std::abs(out.rho.trace().real() - 1.0);
    if (out.trace_drift > 1e-8)
        throw ConvergenceError("propagation trace drift " + std::to_string(out.trace_drift));
    return out;
}

}  // namespace

DensityMatrix propagate_density(const Eigen::VectorXd& mu, const Eigen::MatrixXd& P_tilde,
                                double beta, const DriveSpec& drive,
                                const ResponseParams& params, const PropagateOptions& opts) {
    drive.validate();
    params.validate();
    if (!(beta > 0.0)) throw ValidationError("beta > 0 required");
    if (mu.size() != P_tilde.rows() || P_tilde.rows() != P_tilde.cols())
        throw ValidationError("propagate_density: dimension mismatch");
    if (!(opts.dt > 0.0)) throw ValidationError("dt > 0 required");
    if (opts.scheme == Scheme::RK4) return propagate_rk4(mu, P_tilde, beta, drive, params, opts);
    return propagate_exp_midpoint(mu, P_tilde, beta, drive, params, opts);
}

double finite_difference_conductivity(const Eigen::VectorXd& mu, const Eigen::MatrixXd& P_tilde,
                                      double beta, double omega, double eta, double E_step,
                                      const ResponseParams& params, const PropagateOptions& opts,
                                      double start_tol) {
    if (!(E_step > 0.0) || E_step > 1.0)
        throw ValidationError("E_step in (0, 1] required");
    double J[2];
    for (int s = 0; s < 2; ++s) {
        const double E = (s == 0 ? +E_step : -E_step);
        const DriveSpec drive = DriveSpec::make(E, omega, eta, start_tol);
        const DensityMatrix rho = propagate_density(mu, P_tilde, beta, drive, params, opts);
        J[s] = current_density(rho.rho, P_tilde, params.N, drive, 0.0, params);
    }
    return (J[0] - J[1]) / (2.0 * E_step);
}

double default_timestep(const Eigen::VectorXd& mu, double omega) {
    const double spread = mu.maxCoeff() - mu.minCoeff();
    return 0.1 / std::max({spread, omega, 1.0});
}

}  // namespace cnt
