#pragma once

#include <functional>
#include <stdexcept>

namespace cnt {

/// Tolerances and subdivision budget for the adaptive quadrature routines.
struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
            throw std::invalid_argument("QuadSpec: tolerances must be positive, max_subdivisions >= 1");
    }
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7-15) quadrature on [a, b] for smooth integrands.
double quad_adaptive(const Integrand& f, double a, double b, const QuadSpec& spec = {});

/// Integrates f on [a, b] where f may have an integrable logarithmic
/// singularity at singular_at in [a, b]. The interval is split at the
/// singularity; Gauss-Kronrod nodes are interior, so the singular point is
/// never evaluated, and adaptive bisection grades the mesh toward it.
double quad_log_singular(const Integrand& f, double a, double b, double singular_at,
                         const QuadSpec& spec = {});

}  // namespace cnt
