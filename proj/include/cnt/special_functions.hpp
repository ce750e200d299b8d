#pragma once

namespace cnt {

/// Modified Bessel function of the second kind, order zero.
/// Relative error <= 1e-12 on [1e-8, 700]; returns 0 once exp(-x) underflows.
/// Throws std::domain_error for x <= 0 or non-finite x.
double bessel_k0(double x);

/// Complete elliptic integral of the first kind in the PARAMETER convention:
/// K(m) = integral_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta), 0 <= m < 1.
/// Evaluated through the arithmetic-geometric mean, K(m) = pi / (2 AGM(1, sqrt(1-m))).
double elliptic_k(double m);

/// Same integral addressed through the complementary parameter mc = 1 - m,
/// for arguments where m rounds to 1. Requires 0 < mc <= 1.
double elliptic_k_from_complement(double mc);

}  // namespace cnt
