#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnt/quadrature.hpp"

namespace cnt {

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cylinder-on-a-torus geometry. Units are hbar = m_e = 1; charge and eps
/// default to 1 as well but are carried so the e^2/eps prefactors stay visible.
struct CylinderGeometry {
    double r = 0.2;    // tube radius
    double a = 1.0;    // longitudinal lattice period
    int L = 4;         // number of periods on the torus; torus length = L*a
    double eps = 1.0;  // relative permittivity
    double charge = 1.0;

    double torus_length() const { return L * a; }
    double coupling_prefactor() const { return charge * charge / eps; }

    void validate() const {
        if (!(r > 0.0) || !(2.0 * std::sqrt(2.0) * r < a))
            throw ValidationError("geometry requires 0 < 2*sqrt(2)*r < a");
        if (L < 1) throw ValidationError("geometry requires L >= 1");
        if (!(eps > 0.0)) throw ValidationError("geometry requires eps > 0");
    }
};

/// Finite cosine series of period a: v_per(x) = sum_j c_j cos(2 pi j x / a).
struct PeriodicPotentialSpec {
    std::map<int, double> fourier_coeffs;  // harmonic j >= 0 -> coefficient c_j

    bool empty() const {
        for (const auto& [j, c] : fourier_coeffs)
            if (c != 0.0) return false;
        return true;
    }
    void validate() const {
        for (const auto& [j, c] : fourier_coeffs) {
            (void)c;
            if (j < 0) throw ValidationError("v_per harmonics must be non-negative");
        }
    }
};

/// Fourier coefficients of the circle-projected periodized Coulomb kernel on
/// the torus: v_{L,r}(x) = sum_{|m| <= M} coeff(m) e^{i 2 pi m x / (La)}.
/// coeff(0) is the mean term (1/La) \int v_r; coefficients are even in m.
class PairKernelTable {
public:
    PairKernelTable(const CylinderGeometry& geom, int m_max, const QuadSpec& spec = {});

    const CylinderGeometry& geometry() const { return geom_; }
    int m_max() const { return static_cast<int>(coeffs_.size()) - 1; }
    double coeff(int m) const {
        const int k = std::abs(m);
        if (k > m_max())
            throw std::out_of_range("PairKernelTable: harmonic " + std::to_string(m) + " beyond table");
        return coeffs_[k];
    }
    double mean_term() const { return coeffs_[0]; }

    /// Copy with the mean term replaced (gauge choice; shifts only diagonals
    /// downstream).
    PairKernelTable with_mean_term(double c0) const {
        PairKernelTable t(*this);
        t.coeffs_[0] = c0;
        return t;
    }

    /// Truncated Fourier synthesis of v_{L,r}(x).
    double eval(double x) const;

    /// L2 norm over the torus via Parseval.
    double l2_norm() const;

private:
    CylinderGeometry geom_;
    std::vector<double> coeffs_;  // index |m|
};

/// V_r(x, y): 3D Coulomb potential restricted to the cylinder surface.
double coulomb_on_cylinder(double x, double y, const CylinderGeometry& geom);

/// Longitudinal Fourier transform of V_r at fixed y != 0:
/// sqrt(2/pi) (e^2/eps) K_0(2 r |p sin(y/2r)|).
double coulomb_ft(double p, double y, const CylinderGeometry& geom);

/// La-periodization of V_r, truncated Fourier synthesis over |m| <= m_fourier
/// plus the mean term. Throws ToleranceError if the K_0 tail bound at
/// m_fourier exceeds tail_tol.
double periodized_coulomb(double x, double y, const CylinderGeometry& geom, int m_fourier,
                          double tail_tol = 1e-10);

/// Same truncated synthesis without the tail certificate; useful when two
/// quantities at matched truncation order are compared so the tail cancels.
double periodized_coulomb_truncated(double x, double y, const CylinderGeometry& geom,
                                    int m_fourier);

/// Smallest truncation order whose K_0 tail bound is below tail_tol, for the
/// 2D periodized kernel at transverse separation y.
int periodized_coulomb_order(double y, const CylinderGeometry& geom, double tail_tol = 1e-10);

/// v_per evaluated from its cosine harmonics; a-periodic.
double v_per_eval(double x, const PeriodicPotentialSpec& spec, double a);

/// Circle projection of V_r in closed form (elliptic integral).
double v_r_eval(double x, const CylinderGeometry& geom);

/// Single Fourier coefficient of v_{L,r}: for m != 0,
/// (sqrt(2 pi)/La) \hat v_r(2 pi m / La); for m = 0 the torus mean of v_r.
double pair_fourier_coeff(int m, const CylinderGeometry& geom, const QuadSpec& spec = {});

}  // namespace cnt
