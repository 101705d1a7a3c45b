#pragma once

#include "relboltz/kinematics.hpp"

namespace relboltz {

struct WeightParams {
    double alpha = 1.0;
    double beta = 1.0;
};

// Modified Bessel function K2 on x >= 0.1, evaluated through the translated
// integral representation
//   K2(x) = (1/(3 sqrt(x))) e^{-x} int_0^inf e^{-s} s^{3/2} (s/x + 2)^{3/2} ds
// with a 64-node generalized Gauss-Laguerre rule (weight e^{-s} s^{3/2}).
double bessel_k2(double x);

// e^{x} K2(x); stays finite where e^{-x} underflows (x = c^2 for large c).
double bessel_k2_scaled(double x);

// Normalized Juttner distribution. N = 3 uses the closed normalization
// 2 (2 pi)^{(N-1)/2} c K2(c^2); N = 2 is normalized by quadrature of the
// partition integral (the closed constant is N=3 specific).
double juttner(const Vec& p, double c, int dim);
double juttner(double pnorm, double c, int dim);

double maxwellian(const Vec& p, int dim);
double maxwellian(double pnorm, int dim);

// rho_c(x,p) = exp(-alpha p0 |x|^2 / c) J^beta(p)
double weight_rel(const Vec& x, const Vec& p, double c, const WeightParams& params);
// rho_inf(x,p) = exp(-alpha |x|^2) mu^beta(p)
double weight_newt(const Vec& x, const Vec& p, const WeightParams& params);

// Relative residual of the dispersion invariant
//   c^3 t^2/q0' + (q0'/c)|x+t(phat-qhat')|^2 + c^3 t^2/p0' + (p0'/c)|x+t(phat-phat')|^2
//   = c^3 t^2/p0 + (p0/c)|x|^2 + c^3 t^2/q0 + (q0/c)|x+t(phat-qhat)|^2,
// a consequence of first-order energy-momentum conservation alone.
double invariant_identity_residual(const Vec& x, double t, const Vec& p, const Vec& q,
                                   const Vec& omega, double c, Frame frame);

struct SharpAsympReport {
    double ratio = 0.0;     // J(|p| = h) e^{h^2/2}
    double remainder = 0.0; // |c^2 R(h^2/c^2)|, must stay <= 1/8
    bool pass = false;
};

// Checks J(h) <= A e^{-h^2/2} for h <= a1 sqrt(c) with the suite constant
// `bound`; also asserts the Taylor remainder bound |c^2 R| <= 1/8.
SharpAsympReport sharp_asymp_check(double h, double c, double a1 = 1.0, double bound = 0.08);

} // namespace relboltz
