#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <optional>
#include <vector>

#include "cnt/potential.hpp"

namespace cnt {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full model definition: geometry, particle number, coupling, lattice
/// potential and the single-particle momentum cutoff.
struct ModelParams {
    CylinderGeometry geometry;
    int N = 2;              // electron count
    double lambda = 1.0;    // pair-interaction coupling
    PeriodicPotentialSpec v_per;
    int M_modes = 6;        // plane-wave modes n in [-M_modes, M_modes]

    int n_modes() const { return 2 * M_modes + 1; }
    void validate() const {
        geometry.validate();
        v_per.validate();
        if (N < 1) throw ValidationError("N >= 1 required");
        if (M_modes < 1) throw ValidationError("M_modes >= 1 required");
        if (N > n_modes()) throw ValidationError("N fermions do not fit in 2*M_modes+1 modes");
        if (lambda < 0.0) throw ValidationError("lambda >= 0 required");
    }
};

/// Number of conduction electrons from the ion-lattice data of the model:
/// N = L * (2 pi r / b) * n0, rounded to the nearest integer.
/// Sets *was_integral to false when the product is not integral to 1e-9.
int electron_count_from_lattice(const CylinderGeometry& geom, double b, int n0,
                                bool* was_integral = nullptr);

/// One Slater determinant: sorted occupied mode indices (canonical order fixes
/// the fermionic sign convention).
using SlaterConfig = std::vector<int>;

class SlaterBasis {
public:
    /// Enumerates all N-subsets of modes [-M, M] in lexicographic order,
    /// optionally restricted to a crystal-momentum sector: the exact total
    /// mode sum when v_per vanishes, the sum mod L otherwise.
    static SlaterBasis build(const ModelParams& params, std::optional<int> sector = std::nullopt,
                             std::size_t max_dim = 2'000'000);

    std::size_t size() const { return configs_.size(); }
    const SlaterConfig& config(std::size_t i) const { return configs_[i]; }
    const std::vector<SlaterConfig>& configs() const { return configs_; }
    std::optional<int> sector() const { return sector_; }
    bool sector_is_exact() const { return sector_exact_; }
    int n_particles() const { return n_particles_; }
    int m_modes() const { return m_modes_; }

    /// Index of a sorted configuration, or -1 if absent from this basis.
    std::ptrdiff_t index_of(const SlaterConfig& c) const;

private:
    std::vector<SlaterConfig> configs_;
    std::optional<int> sector_;
    bool sector_exact_ = true;
    int n_particles_ = 0;
    int m_modes_ = 0;
};

/// Real symmetric Hamiltonian of the effective model in the Slater basis:
/// kinetic diagonal + v_per one-body couplings + momentum-conserving
/// two-body scattering from the pair kernel table.
Eigen::SparseMatrix<double> assemble_hamiltonian(const ModelParams& params,
                                                 const SlaterBasis& basis,
                                                 const PairKernelTable& kernel);

/// Total momentum operator, diagonal with entries sum_n 2 pi n / (La).
Eigen::VectorXd momentum_operator(const SlaterBasis& basis, const CylinderGeometry& geom);

}  // namespace cnt
