#pragma once

#include <array>

#include "relboltz/kinematics.hpp"

namespace relboltz {

enum class LorentzKind { Boost, FrameEx2, HilbertSchmidtEx3, Custom };

// 4x4 real matrix Lam with Lam^T D Lam = D, D = diag(1,-1,-1,-1). N = 3 only.
struct LorentzMatrix {
    std::array<std::array<double, 4>, 4> m{};
    LorentzKind kind = LorentzKind::Custom;

    std::array<double, 4> apply(const std::array<double, 4>& x) const;
    std::array<double, 4> apply(const FourMomentum& P) const;
};

LorentzMatrix identity_lorentz();

// Max-entry residual of Lam^T D Lam - D.
double lorentz_condition_residual(const LorentzMatrix& lam);

// Lam^{-1} = D Lam^T D.
LorentzMatrix inverse(const LorentzMatrix& lam);

LorentzMatrix matmul(const LorentzMatrix& a, const LorentzMatrix& b);

// Boost with v = (p+q)/(p0+q0), gamma = (p0+q0)/sqrt(s); sends P+Q to
// (sqrt(s),0,0,0). Returns the identity when |p+q| = 0.
LorentzMatrix boost_to_com(const Vec& p, const Vec& q, double c);

// The rotation-like transform built from an orthonormal triple
// {w1, w2, w3 = (p+q)/|p+q|}. Errors when p+q = 0.
LorentzMatrix frame_transform_ex2(const Vec& p, const Vec& q, double c);

// Transform satisfying both Lam(P+Q) = (sqrt(s),0,0,0) and
// Lam(P-Q) = (0,0,0,g); needs p,q non-collinear and g > 0.
LorentzMatrix hs_transform_ex3(const Vec& p, const Vec& q, double c);

// Post-collision pair from any transform with Lam(P+Q) = (sqrt(s),0,0,0):
//   P' = (1/2) Lam^{-1} (sqrt(s), g w),  Q' = (1/2) Lam^{-1} (sqrt(s), -g w).
void post_collision_via(const LorentzMatrix& lam, const Vec& p, const Vec& q,
                        const Vec& omega, double c, Vec& p_out, Vec& q_out);

} // namespace relboltz
