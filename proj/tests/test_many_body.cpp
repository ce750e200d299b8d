#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cnt/many_body.hpp"

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

// First-quantized two-particle oracle on a uniform grid. The pair kernel is
// band-limited, so the trapezoid sums are exact up to roundoff.
Eigen::MatrixXcd grid_hamiltonian(const ModelParams& params, const SlaterBasis& basis,
                                  const PairKernelTable& kernel, int G) {
    using cd = std::complex<double>;
    const double La = params.geometry.torus_length();
    const double dx = La / G;
    const double k1 = 2.0 * M_PI / La;

    std::vector<double> vdiff(G);
    for (int g = 0; g < G; ++g) vdiff[g] = kernel.eval(g * dx);

    auto phi = [&](int n, int g) -> cd {
        return std::exp(cd(0.0, k1 * n * g * dx)) / std::sqrt(La);
    };
    auto psi = [&](const SlaterConfig& c, int g1, int g2) -> cd {
        return (phi(c[0], g1) * phi(c[1], g2) - phi(c[1], g1) * phi(c[0], g2)) / std::sqrt(2.0);
    };

    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& ci = basis.config(i);
        H(i, i) += 0.5 * (k1 * ci[0]) * (k1 * ci[0]) + 0.5 * (k1 * ci[1]) * (k1 * ci[1]);
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto& cj = basis.config(j);
            cd acc = 0.0;
            for (int g1 = 0; g1 < G; ++g1)
                for (int g2 = 0; g2 < G; ++g2)
                    acc += std::conj(psi(ci, g1, g2)) * vdiff[(g1 - g2 + G) % G] *
                           psi(cj, g1, g2);
            H(i, j) += params.lambda * acc * dx * dx;
        }
    }
    return H;
}

}  // namespace

TEST_CASE("basis enumeration") {
    CHECK(SlaterBasis::build(params_ref(1, 2, 0.0)).size() == 5);
    CHECK(SlaterBasis::build(params_ref(2, 2, 0.0)).size() == 10);

    const auto sector0 = SlaterBasis::build(params_ref(2, 2, 1.0), 0);
    REQUIRE(sector0.size() == 2);
    CHECK(sector0.config(0) == SlaterConfig{-2, 2});
    CHECK(sector0.config(1) == SlaterConfig{-1, 1});
    CHECK(sector0.sector_is_exact());

    // with a lattice potential, the sector is crystal momentum mod L
    const auto exact3 = SlaterBasis::build(params_ref(2, 2, 1.0), 3);
    CHECK(exact3.size() == 1);
    const auto mod_sector = SlaterBasis::build(params_ref(2, 2, 1.0, 0.5), 3);
    CHECK(!mod_sector.sector_is_exact());
    CHECK(mod_sector.size() == 3);
    for (const auto& c : mod_sector.configs()) {
        int s = 0;
        for (int n : c) s += n;
        CHECK(((s % 4) + 4) % 4 == 3);
    }

    CHECK_THROWS_AS(SlaterBasis::build(params_ref(2, 6, 0.0), std::nullopt, 10), CapacityError);
    CHECK(SlaterBasis::build(params_ref(2, 3, 0.0)).index_of({-3, 3}) >= 0);
    CHECK(SlaterBasis::build(params_ref(2, 3, 0.0)).index_of({-4, 4}) == -1);
}

TEST_CASE("electron count from the ion lattice") {
    CylinderGeometry g;
    g.r = 0.25;
    g.a = 1.0;
    g.L = 4;
    const double b = 2.0 * M_PI * g.r / 5.0;
    bool integral = false;
    CHECK(electron_count_from_lattice(g, b, 1, &integral) == 4 * 5);
    CHECK(integral);
    electron_count_from_lattice(g, 0.37, 1, &integral);
    CHECK(!integral);
    CHECK_THROWS_AS(electron_count_from_lattice(g, -1.0, 1, nullptr), ValidationError);
}

TEST_CASE("free Hamiltonian is the diagonal of kinetic sums") {
    const auto params = params_ref(2, 3, 0.0);
    const PairKernelTable kernel(params.geometry, 2 * params.M_modes);
    const auto basis = SlaterBasis::build(params);
    const auto H = assemble_hamiltonian(params, basis, kernel);
    const double k1 = 2.0 * M_PI / params.geometry.torus_length();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& c = basis.config(i);
        const double expect = 0.5 * k1 * k1 * (c[0] * c[0] + c[1] * c[1]);
        CHECK(H.coeff(i, i) == doctest::Approx(expect).epsilon(1e-14));
    }
    CHECK(Eigen::MatrixXd(H).diagonal().cwiseAbs().sum() ==
          doctest::Approx(Eigen::MatrixXd(H).cwiseAbs().sum()).epsilon(1e-14));
}

TEST_CASE("single particle never sees the pair term") {
    auto p5 = params_ref(1, 3, 5.0, 0.4);
    auto p0 = params_ref(1, 3, 0.0, 0.4);
    const PairKernelTable kernel(p5.geometry, 2 * p5.M_modes);
    const auto basis = SlaterBasis::build(p5);
    const Eigen::MatrixXd H5 = Eigen::MatrixXd(assemble_hamiltonian(p5, basis, kernel));
    const Eigen::MatrixXd H0 = Eigen::MatrixXd(assemble_hamiltonian(p0, basis, kernel));
    CHECK((H5 - H0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interacting Hamiltonian matches the real-space grid oracle") {
    const auto params = params_ref(2, 2, 1.0);
    const PairKernelTable kernel(params.geometry, 8);
    const auto basis = SlaterBasis::build(params);
    const Eigen::MatrixXd H = Eigen::MatrixXd(assemble_hamiltonian(params, basis, kernel));
    const Eigen::MatrixXcd Hg = grid_hamiltonian(params, basis, kernel, 64);
    CHECK(Hg.imag().cwiseAbs().maxCoeff() < 1e-10);
    CHECK((H - Hg.real()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("Hermiticity with interaction and lattice potential") {
    const auto params = params_ref(2, 4, 1.3, 0.5);
    const PairKernelTable kernel(params.geometry, 2 * params.M_modes);
    const auto basis = SlaterBasis::build(params);
    const Eigen::MatrixXd H = Eigen::MatrixXd(assemble_hamiltonian(params, basis, kernel));
    CHECK((H - H.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("translation invariance without lattice potential") {
    const auto params = params_ref(2, 4, 1.0);
    const PairKernelTable kernel(params.geometry, 2 * params.M_modes);
    const auto basis = SlaterBasis::build(params);
    const Eigen::MatrixXd H = Eigen::MatrixXd(assemble_hamiltonian(params, basis, kernel));
    const Eigen::VectorXd P = momentum_operator(basis, params.geometry);
    const Eigen::MatrixXd comm =
        H * Eigen::MatrixXd(P.asDiagonal()) - Eigen::MatrixXd(P.asDiagonal()) * H;
    CHECK(comm.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lattice harmonics couple only matching sectors") {
    const auto params = params_ref(2, 6, 0.7, 0.5);  // single harmonic j = 1, L = 4
    const PairKernelTable kernel(params.geometry, 2 * params.M_modes);
    const auto basis = SlaterBasis::build(params);
    const auto H = assemble_hamiltonian(params, basis, kernel);
    for (int col = 0; col < H.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(H, col); it; ++it) {
            if (it.value() == 0.0) continue;
            int si = 0, sj = 0;
            for (int n : basis.config(it.row())) si += n;
            for (int n : basis.config(it.col())) sj += n;
            CHECK((si - sj) % params.geometry.L == 0);
        }
    }
}

TEST_CASE("mean-term shift moves diagonals, not gaps") {
    const auto params = params_ref(2, 3, 1.0, 0.5);
    const PairKernelTable kernel(params.geometry, 2 * params.M_modes);
    const double delta = 0.37;
    const PairKernelTable shifted = kernel.with_mean_term(kernel.mean_term() + delta);
    const auto basis = SlaterBasis::build(params);
    const Eigen::MatrixXd H1 = Eigen::MatrixXd(assemble_hamiltonian(params, basis, kernel));
    const Eigen::MatrixXd H2 = Eigen::MatrixXd(assemble_hamiltonian(params, basis, shifted));
    const double shift = params.lambda * params.N * (params.N - 1) / 2.0 * delta;
    Eigen::MatrixXd expect = H1;
    expect.diagonal().array() += shift;
    CHECK((H2 - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("momentum operator") {
    const auto params = params_ref(2, 3, 0.0);
    const auto basis = SlaterBasis::build(params);
    const Eigen::VectorXd P = momentum_operator(basis, params.geometry);
    const auto i = basis.index_of({-1, 1});
    REQUIRE(i >= 0);
    CHECK(P[i] == 0.0);
    CHECK(P.sum() == doctest::Approx(0.0).epsilon(1e-14));

    const auto one = SlaterBasis::build(params_ref(1, 3, 0.0));
    const Eigen::VectorXd P1 = momentum_operator(one, params.geometry);
    CHECK(P1[one.index_of({0})] == 0.0);
}

TEST_CASE("model validation") {
    auto p = params_ref(2, 3, 1.0);
    p.geometry.r = 0.5;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = params_ref(8, 3, 1.0);
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = params_ref(2, 3, -1.0);
    CHECK_THROWS_AS(p.validate(), ValidationError);
}
