#include "cnt/many_body.hpp"

#include <algorithm>
#include <cmath>

namespace cnt {
namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
    return r;
}

int mode_sum(const SlaterConfig& c) {
    int s = 0;
    for (int n : c) s += n;
    return s;
}

int mod_positive(int x, int L) {
    const int m = x % L;
    return m < 0 ? m + L : m;
}

// Fermionic ladder operators on a sorted occupation list. Return the
// permutation sign, or 0 when the action vanishes; mutate the list in place.
int annihilate(SlaterConfig& c, int mode) {
    auto it = std::lower_bound(c.begin(), c.end(), mode);
    if (it == c.end() || *it != mode) return 0;
    const auto pos = it - c.begin();
    c.erase(it);
    return (pos % 2 == 0) ? 1 : -1;
}

int create(SlaterConfig& c, int mode) {
    auto it = std::lower_bound(c.begin(), c.end(), mode);
    if (it != c.end() && *it == mode) return 0;
    const auto pos = it - c.begin();
    c.insert(it, mode);
    return (pos % 2 == 0) ? 1 : -1;
}

}  // namespace

int electron_count_from_lattice(const CylinderGeometry& geom, double b, int n0,
                                bool* was_integral) {
    if (!(b > 0.0)) throw ValidationError("lattice spacing b > 0 required");
    if (n0 < 1) throw ValidationError("ions per cell n0 >= 1 required");
    const double x = geom.L * (2.0 * M_PI * geom.r / b) * n0;
    const double rounded = std::round(x);
    if (was_integral) *was_integral = std::abs(x - rounded) <= 1e-9 * std::max(1.0, std::abs(x));
    if (rounded < 1.0) throw ValidationError("lattice data yields no electrons");
    return static_cast<int>(rounded);
}

SlaterBasis SlaterBasis::build(const ModelParams& params, std::optional<int> sector,
                               std::size_t max_dim) {
    params.validate();
    const int M = params.M_modes;
    const int N = params.N;
    const int n_modes = params.n_modes();
    const double total = binomial(n_modes, N);
    if (total > 5e8)
        throw CapacityError("basis enumeration would visit " + std::to_string(total) +
                            " configurations");
    if (!sector && total > double(max_dim))
        throw CapacityError("basis dimension " + std::to_string(total) + " exceeds limit " +
                            std::to_string(max_dim));

    SlaterBasis basis;
    basis.sector_ = sector;
    basis.sector_exact_ = params.v_per.empty();
    basis.n_particles_ = N;
    basis.m_modes_ = M;

    std::vector<int> idx(N);
    for (int i = 0; i < N; ++i) idx[i] = i;
    SlaterConfig c(N);
    while (true) {
        for (int i = 0; i < N; ++i) c[i] = idx[i] - M;
        bool keep = true;
        if (sector) {
            const int s = mode_sum(c);
            keep = basis.sector_exact_ ? (s == *sector)
                                       : (mod_positive(s, params.geometry.L) ==
                                          mod_positive(*sector, params.geometry.L));
        }
        if (keep) {
            if (basis.configs_.size() >= max_dim)
                throw CapacityError("basis dimension exceeds limit " + std::to_string(max_dim));
            basis.configs_.push_back(c);
        }
        // next lexicographic combination
        int i = N - 1;
        while (i >= 0 && idx[i] == n_modes - N + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int k = i + 1; k < N; ++k) idx[k] = idx[k - 1] + 1;
    }
    return basis;
}

std::ptrdiff_t SlaterBasis::index_of(const SlaterConfig& c) const {
    auto it = std::lower_bound(configs_.begin(), configs_.end(), c);
    if (it == configs_.end() || *it != c) return -1;
    return it - configs_.begin();
}

Eigen::SparseMatrix<double> assemble_hamiltonian(const ModelParams& params,
                                                 const SlaterBasis& basis,
                                                 const PairKernelTable& kernel) {
    params.validate();
    const int M = params.M_modes;
    if (kernel.m_max() < 2 * M)
        throw ValidationError("pair kernel table needs m_max >= 2*M_modes = " +
                              std::to_string(2 * M));
    const double La = params.geometry.torus_length();
    const double k1 = 2.0 * M_PI / La;
    const int L = params.geometry.L;

    const double vper_c0 = [&] {
        auto it = params.v_per.fourier_coeffs.find(0);
        return it == params.v_per.fourier_coeffs.end() ? 0.0 : it->second;
    }();

    const std::size_t dim = basis.size();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(dim * (params.N * params.N * (2 * M + 1) / 2 + 4));

    for (std::size_t i = 0; i < dim; ++i) {
        const SlaterConfig& c = basis.config(i);
        const int N = static_cast<int>(c.size());

        double diag = N * vper_c0;
        for (int n : c) diag += 0.5 * (k1 * n) * (k1 * n);
        trips.emplace_back(i, i, diag);

        // One-body lattice potential: harmonic j couples n -> n +/- jL with
        // amplitude c_j / 2.
        for (const auto& [j, cj] : params.v_per.fourier_coeffs) {
            if (j == 0 || cj == 0.0) continue;
            for (int n : c) {
                for (int dir : {+1, -1}) {
                    const int np = n + dir * j * L;
                    if (np < -M || np > M) continue;
                    SlaterConfig d = c;
                    int sgn = annihilate(d, n);
                    if (sgn == 0) continue;
                    sgn *= create(d, np);
                    if (sgn == 0) continue;
                    const auto col = basis.index_of(d);
                    if (col < 0) continue;
                    trips.emplace_back(col, i, sgn * cj / 2.0);
                }
            }
        }

        // Two-body term: annihilate modes p < q, create r < s with
        // r + s = p + q; antisymmetrized element c_{r-p} - c_{s-p}.
        if (params.lambda != 0.0) {
            for (int ip = 0; ip < N; ++ip) {
                for (int jp = ip + 1; jp < N; ++jp) {
                    const int p = c[ip];
                    const int q = c[jp];
                    for (int r = std::max(-M, p + q - M); 2 * r < p + q; ++r) {
                        const int s = p + q - r;
                        if (s > M) continue;
                        const double amp = params.lambda *
                                           (kernel.coeff(r - p) - kernel.coeff(s - p));
                        if (amp == 0.0) continue;
                        SlaterConfig d = c;
                        int sgn = annihilate(d, p);
                        sgn *= annihilate(d, q);
                        if (sgn == 0) continue;
                        sgn *= create(d, s);
                        if (sgn == 0) continue;
                        sgn *= create(d, r);
                        if (sgn == 0) continue;
                        const auto col = basis.index_of(d);
                        if (col < 0) continue;
                        trips.emplace_back(col, i, sgn * amp);
                    }
                }
            }
        }
    }

    Eigen::SparseMatrix<double> H(dim, dim);
    H.setFromTriplets(trips.begin(), trips.end());
    return H;
}

Eigen::VectorXd momentum_operator(const SlaterBasis& basis, const CylinderGeometry& geom) {
    const double k1 = 2.0 * M_PI / geom.torus_length();
    Eigen::VectorXd P(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) P[i] = k1 * mode_sum(basis.config(i));
    return P;
}

}  // namespace cnt
