#include <doctest.h>

#include <cmath>

#include "cnt/kubo.hpp"
#include "cnt/many_body.hpp"
#include "cnt/spectral.hpp"

using namespace cnt;

namespace {

ModelParams params_ref(int N, int M, double lambda, double v0 = 0.0) {
    ModelParams p;
    p.geometry.r = 0.2;
    p.geometry.a = 1.0;
    p.geometry.L = 4;
    p.N = N;
    p.M_modes = M;
    p.lambda = lambda;
    if (v0 != 0.0) p.v_per.fourier_coeffs[1] = v0;
    return p;
}

struct Solved {
    Eigen::VectorXd mu;
    Eigen::MatrixXd P_tilde;
    DipoleWeights weights;
    ResponseParams response;
};

Solved solve(const ModelParams& p) {
    const PairKernelTable kernel(p.geometry, 2 * p.M_modes);
    const auto basis = SlaterBasis::build(p);
    const auto H = assemble_hamiltonian(p, basis, kernel);
    const auto res = eigensolve(H, static_cast<int>(basis.size()));
    const Eigen::VectorXd P = momentum_operator(basis, p.geometry);
    Solved s;
    s.mu = res.eigenvalues;
    s.P_tilde = res.eigenvectors.transpose() * P.asDiagonal() * res.eigenvectors;
    s.weights = dipole_weights(res, P);
    s.response = ResponseParams::from_geometry(p.geometry, p.N);
    return s;
}

// mu = (0, delta), coupling p off-diagonal; the smallest model with a
// transition, cheap enough for fine-dt propagation.
Solved two_level(double delta, double p) {
    Solved s;
    s.mu = Eigen::Vector2d(0.0, delta);
    s.P_tilde = Eigen::Matrix2d::Zero();
    s.P_tilde(0, 1) = s.P_tilde(1, 0) = p;
    s.weights.w = Eigen::Vector2d(0.0, p * p);
    s.weights.w_matrix = Eigen::Matrix2d::Zero();
    s.weights.w_matrix(0, 1) = s.weights.w_matrix(1, 0) = p * p;
    s.response = ResponseParams{1.0, 1.0, 1.0, 1};
    return s;
}

}  // namespace

TEST_CASE("drive profile") {
    const double omega = 1.3, eta = 0.05;
    CHECK(vector_potential(0.0, omega, eta) ==
          doctest::Approx(eta / (omega * omega + eta * eta)).epsilon(1e-15));
    CHECK(vector_potential_deriv(0.0, omega, eta) == 1.0);

    const double h = 1e-6;
    const double fd =
        (vector_potential(-1.0 + h, omega, eta) - vector_potential(-1.0 - h, omega, eta)) /
        (2.0 * h);
    CHECK(fd == doctest::Approx(vector_potential_deriv(-1.0, omega, eta)).epsilon(1e-8));

    const auto d = DriveSpec::make(1e-4, omega, eta);
    CHECK(std::exp(eta * d.t_start) == doctest::Approx(1e-8).epsilon(1e-12));
    CHECK_THROWS_AS(DriveSpec::make(2.0, omega, eta), ValidationError);
    CHECK_THROWS_AS(DriveSpec::make(1e-4, -1.0, eta), ValidationError);
    CHECK_THROWS_AS(DriveSpec::make(1e-4, omega, eta, 0.5), ValidationError);
}

TEST_CASE("driven Hamiltonian") {
    const auto s = solve(params_ref(2, 2, 1.0, 0.5));
    const Eigen::MatrixXd H0 = Eigen::MatrixXd(s.mu.asDiagonal());
    auto drive = DriveSpec::make(0.0, 1.0, 0.1);
    CHECK((driven_hamiltonian(H0, s.P_tilde, 2, drive, -3.0, s.response) - H0)
              .cwiseAbs()
              .maxCoeff() == 0.0);

    drive = DriveSpec::make(0.5, 1.0, 0.1);
    const Eigen::MatrixXd H = driven_hamiltonian(H0, s.P_tilde, 2, drive, -3.0, s.response);
    CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    const double a = vector_potential(-3.0, 1.0, 0.1);
    const Eigen::MatrixXd expect =
        H0 - drive.E * a * s.P_tilde +
        0.5 * 2 * drive.E * drive.E * a * a * Eigen::MatrixXd::Identity(H0.rows(), H0.cols());
    CHECK((H - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("zero drive leaves the thermal state untouched") {
    const auto s = solve(params_ref(2, 3, 1.0, 0.5));
    const double beta = 2.0;
    PropagateOptions opts;
    opts.dt = 0.05;
    const auto rho = propagate_density(s.mu, s.P_tilde, beta, DriveSpec::make(0.0, 1.0, 0.5),
                                       s.response, opts);
    Eigen::VectorXd p = (-beta * (s.mu.array() - s.mu.minCoeff())).exp();
    p /= p.sum();
    CHECK((rho.rho - Eigen::MatrixXcd(p.cast<std::complex<double>>().asDiagonal()))
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    CHECK(current_density(rho.rho, s.P_tilde, s.response.N, DriveSpec::make(0.0, 1.0, 0.5), 0.0,
                          s.response) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unitarity of the propagated state") {
    const auto s = solve(params_ref(2, 3, 1.0, 0.5));
    const double beta = 3.0;
    PropagateOptions opts;
    opts.dt = 0.01;
    int observed = 0;
    double last_t = -1e9;
    opts.observe_stride = 200;
    opts.observer = [&](double t, double, double) {
        ++observed;
        last_t = t;
    };
    const auto rho = propagate_density(s.mu, s.P_tilde, beta, DriveSpec::make(0.5, 1.0, 0.5),
                                       s.response, opts);
    CHECK(observed > 0);
    CHECK(last_t == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rho.trace_drift < 1e-10);
    CHECK((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);

    Eigen::VectorXd p = (-beta * (s.mu.array() - s.mu.minCoeff())).exp();
    p /= p.sum();
    std::sort(p.data(), p.data() + p.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.rho);
    CHECK((es.eigenvalues() - p).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("timestep refinement converges at second order") {
    const auto s = two_level(1.1, 0.65);
    const double beta = 2.7, omega = 0.8, eta = 0.3;
    auto sigma_at = [&](double dt) {
        PropagateOptions opts;
        opts.dt = dt;
        return finite_difference_conductivity(s.mu, s.P_tilde, beta, omega, eta, 1e-4, s.response,
                                              opts);
    };
    const double c1 = sigma_at(4e-2);
    const double c2 = sigma_at(2e-2);
    const double c3 = sigma_at(1e-2);
    const double ratio = std::abs(c1 - c2) / std::abs(c2 - c3);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("finite-difference conductivity matches the thermal formula") {
    const auto s = two_level(1.1, 0.65);
    const double beta = 2.7, omega = 0.8, eta = 0.3;
    PropagateOptions opts;
    opts.dt = 5e-4;
    const double time_domain =
        finite_difference_conductivity(s.mu, s.P_tilde, beta, omega, eta, 1e-4, s.response, opts);
    const double freq_domain = sigma_finite_beta(s.weights, s.mu, beta, omega, eta, s.response);
    CHECK(time_domain == doctest::Approx(freq_domain).epsilon(1e-6));
}

TEST_CASE("free fermions relax to the Drude profile") {
    const auto s = solve(params_ref(2, 3, 1.0));
    const double gap = s.mu[2] - s.mu[0];  // first non-degenerate excitation
    const double beta = 20.0 / gap;
    const double omega = 1.0, eta = 0.5;
    PropagateOptions opts;
    opts.dt = default_timestep(s.mu, omega);
    const double time_domain =
        finite_difference_conductivity(s.mu, s.P_tilde, beta, omega, eta, 1e-4, s.response, opts);
    const double drude = s.response.charge * s.response.charge /
                         (s.response.mass * s.response.surface) * s.response.N * eta /
                         (omega * omega + eta * eta);
    CHECK(time_domain == doctest::Approx(drude).epsilon(1e-4));
}

TEST_CASE("linearity in the drive amplitude") {
    const auto s = two_level(1.1, 0.65);
    PropagateOptions opts;
    opts.dt = 1e-3;
    std::vector<double> sigma;
    for (double E : {1e-3, 1e-4, 1e-5})
        sigma.push_back(
            finite_difference_conductivity(s.mu, s.P_tilde, 2.7, 0.8, 0.3, E, s.response, opts));
    CHECK(sigma[0] == doctest::Approx(sigma[1]).epsilon(1e-5));
    CHECK(sigma[1] == doctest::Approx(sigma[2]).epsilon(1e-5));
}

TEST_CASE("switch-on time long enough to be forgotten") {
    const auto s = two_level(1.1, 0.65);
    PropagateOptions opts;
    opts.dt = 1e-3;
    const double a = finite_difference_conductivity(s.mu, s.P_tilde, 2.7, 0.8, 0.3, 1e-4,
                                                    s.response, opts, 1e-8);
    const double b = finite_difference_conductivity(s.mu, s.P_tilde, 2.7, 0.8, 0.3, 1e-4,
                                                    s.response, opts, 1e-10);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("both integrators agree") {
    const auto s = two_level(1.1, 0.65);
    const auto drive = DriveSpec::make(0.5, 0.8, 0.3);
    PropagateOptions opts;
    opts.dt = 1e-3;
    const auto mid = propagate_density(s.mu, s.P_tilde, 2.7, drive, s.response, opts);
    opts.scheme = Scheme::RK4;
    const auto rk = propagate_density(s.mu, s.P_tilde, 2.7, drive, s.response, opts);
    CHECK((mid.rho - rk.rho).cwiseAbs().maxCoeff() < 1e-7);
    CHECK(current_density(mid.rho, s.P_tilde, 1, drive, 0.0, s.response) ==
          doctest::Approx(current_density(rk.rho, s.P_tilde, 1, drive, 0.0, s.response))
              .epsilon(1e-7));
}

TEST_CASE("propagation validation") {
    const auto s = two_level(1.0, 0.5);
    PropagateOptions opts;
    opts.dt = -1.0;
    CHECK_THROWS_AS(
        propagate_density(s.mu, s.P_tilde, 1.0, DriveSpec::make(0.1, 1.0, 0.5), s.response, opts),
        ValidationError);
    opts.dt = 1e-2;
    CHECK_THROWS_AS(
        propagate_density(s.mu, s.P_tilde, -1.0, DriveSpec::make(0.1, 1.0, 0.5), s.response, opts),
        ValidationError);
    CHECK_THROWS_AS(finite_difference_conductivity(s.mu, s.P_tilde, 1.0, 1.0, 0.5, 0.0,
                                                   s.response, opts),
                    ValidationError);
}
