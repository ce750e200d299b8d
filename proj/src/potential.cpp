#include "cnt/potential.hpp"

#include <cmath>

#include "cnt/special_functions.hpp"

namespace cnt {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Argument of K_0 in the 2D kernel's m-th Fourier mode at separation y.
double k0_argument(int m, double y, const CylinderGeometry& geom) {
    const double p = kTwoPi * m / geom.torus_length();
    return 2.0 * geom.r * std::abs(p * std::sin(y / (2.0 * geom.r)));
}

}  // namespace

double coulomb_on_cylinder(double x, double y, const CylinderGeometry& geom) {
    const double chord = 2.0 * geom.r * std::sin(y / (2.0 * geom.r));
    const double d2 = x * x + chord * chord;
    if (d2 == 0.0)
        throw std::domain_error("coulomb_on_cylinder: singular at coincident points");
    return geom.coupling_prefactor() / std::sqrt(d2);
}

double coulomb_ft(double p, double y, const CylinderGeometry& geom) {
    const double arg = 2.0 * geom.r * std::abs(p * std::sin(y / (2.0 * geom.r)));
    if (arg == 0.0)
        throw std::domain_error("coulomb_ft: requires p != 0 and y != 0 mod 2*pi*r");
    return std::sqrt(2.0 / M_PI) * geom.coupling_prefactor() * bessel_k0(arg);
}

int periodized_coulomb_order(double y, const CylinderGeometry& geom, double tail_tol) {
    // Tail of 2 sum_{m>M} (2/La) K0(alpha m) with alpha the per-mode argument
    // growth; K0(z) < sqrt(pi/(2z)) e^{-z} so a geometric bound applies.
    const double alpha = k0_argument(1, y, geom);
    if (alpha == 0.0)
        throw std::domain_error("periodized_coulomb_order: y = 0 mod 2*pi*r");
    const double pref = 4.0 / geom.torus_length() * geom.coupling_prefactor();
    int m = 1;
    while (true) {
        const double z = alpha * (m + 1);
        const double bound = pref * std::sqrt(M_PI / (2.0 * z)) * std::exp(-z) /
                             (1.0 - std::exp(-alpha));
        if (bound < tail_tol) return m;
        if (z > 750.0) return m;  // underflow floor
        ++m;
    }
}

double periodized_coulomb(double x, double y, const CylinderGeometry& geom, int m_fourier,
                          double tail_tol) {
    if (m_fourier < 1) throw ValidationError("periodized_coulomb: m_fourier >= 1 required");
    const int needed = periodized_coulomb_order(y, geom, tail_tol);
    if (m_fourier < needed)
        throw ToleranceError("periodized_coulomb: K0 tail bound exceeds tolerance at m_fourier=" +
                             std::to_string(m_fourier) + " (need " + std::to_string(needed) + ")");
    return periodized_coulomb_truncated(x, y, geom, m_fourier);
}

double periodized_coulomb_truncated(double x, double y, const CylinderGeometry& geom,
                                    int m_fourier) {
    if (m_fourier < 1) throw ValidationError("periodized_coulomb: m_fourier >= 1 required");
    const double La = geom.torus_length();
    double sum = 0.0;
    for (int m = m_fourier; m >= 1; --m) {
        const double arg = k0_argument(m, y, geom);
        if (arg > 745.0) continue;  // K0 underflows
        sum += bessel_k0(arg) * std::cos(kTwoPi * m * x / La);
    }
    sum *= 4.0 / La * geom.coupling_prefactor();
    // Mean term (1/La) \int_{-La/2}^{La/2} V_r(x', y) dx'
    //   = (e^2/eps) (2/La) asinh(La / (2|chord(y)|)).
    const double chord = std::abs(2.0 * geom.r * std::sin(y / (2.0 * geom.r)));
    if (chord == 0.0)
        throw std::domain_error("periodized_coulomb: y = 0 mod 2*pi*r");
    const double mean = geom.coupling_prefactor() * 2.0 * std::asinh(La / (2.0 * chord)) / La;
    return sum + mean;
}

double v_per_eval(double x, const PeriodicPotentialSpec& spec, double a) {
    double v = 0.0;
    for (const auto& [j, c] : spec.fourier_coeffs) v += c * std::cos(kTwoPi * j * x / a);
    return v;
}

double v_r_eval(double x, const CylinderGeometry& geom) {
    if (x == 0.0) throw std::domain_error("v_r_eval: logarithmic divergence at x = 0");
    const double denom2 = x * x + 4.0 * geom.r * geom.r;
    // complementary parameter avoids m = 4r^2/(x^2+4r^2) rounding to 1 at tiny x
    const double mc = x * x / denom2;
    return 2.0 / M_PI * geom.coupling_prefactor() * elliptic_k_from_complement(mc) /
           std::sqrt(denom2);
}

double pair_fourier_coeff(int m, const CylinderGeometry& geom, const QuadSpec& spec) {
    const double La = geom.torus_length();
    if (m == 0) {
        // Torus mean of v_r; v_r is even with a log singularity at 0.
        const double integral = 2.0 * quad_log_singular(
                                          [&](double x) { return v_r_eval(x, geom); }, 0.0,
                                          La / 2.0, 0.0, spec);
        return integral / La;
    }
    const double p = kTwoPi * std::abs(m) / La;
    // \hat v_r(p) = (1/2pi) \int_{-pi}^{pi} sqrt(2/pi) (e^2/eps)
    //               K0(2 r p |sin(y/2)|) dy; log singularity at y = 0.
    const double vhat =
        std::sqrt(2.0 / M_PI) * geom.coupling_prefactor() / M_PI *
        quad_log_singular(
            [&](double y) { return bessel_k0(2.0 * geom.r * p * std::sin(y / 2.0)); }, 0.0, M_PI,
            0.0, spec);
    return std::sqrt(kTwoPi) / La * vhat;
}

PairKernelTable::PairKernelTable(const CylinderGeometry& geom, int m_max, const QuadSpec& spec)
    : geom_(geom) {
    geom.validate();
    if (m_max < 0) throw ValidationError("PairKernelTable: m_max >= 0 required");
    coeffs_.resize(m_max + 1);
    for (int m = 0; m <= m_max; ++m) coeffs_[m] = pair_fourier_coeff(m, geom, spec);
}

double PairKernelTable::eval(double x) const {
    const double theta = kTwoPi * x / geom_.torus_length();
    double v = coeffs_[0];
    for (int m = 1; m <= m_max(); ++m) v += 2.0 * coeffs_[m] * std::cos(m * theta);
    return v;
}

double PairKernelTable::l2_norm() const {
    double s = coeffs_[0] * coeffs_[0];
    for (int m = 1; m <= m_max(); ++m) s += 2.0 * coeffs_[m] * coeffs_[m];
    return std::sqrt(geom_.torus_length() * s);
}

}  // namespace cnt
