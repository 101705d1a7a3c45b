#pragma once

#include "relboltz/collision_op.hpp"
#include "relboltz/field_grid.hpp"

namespace relboltz {

// Precomputed quadrature stencils for the collision operator on a fixed N=2
// momentum grid. The (q, omega) loops, kernel values, post-collision maps and
// their bilinear interpolation stencils are all independent of (x, t) and of
// the iterate, so a single table is shared by every spatial point, time node
// and Picard sweep. The optional cut-off enters through the stored left-hand
// sides c^3 (1/p0 + 1/q0 - 1/p0' - 1/q0'), compared against the (x,t)
// threshold at application time.
//
// For theta-independent cross sections the integrand is invariant under
// omega -> -omega (the CM pair swaps, the GS pair is unchanged), so the table
// folds the sphere to half the angles with doubled weights.
class CollisionTable {
  public:
    struct Params {
        Axis paxis;
        int n_omega = 16;
        double c = 1.0; // kNewtonianC selects the Newtonian kernel
        CrossSection sigma;
        Rep rep = Rep::CM;
        bool apply_cutoff = false; // requires sigma.cutoff (whose alpha enters h_c)
    };

    void build(const Params& params);

    // f: np2 values at one spatial point. Writes gain[i] and the loss
    // frequency lossfreq[i] (so that loss_i = f[i] * lossfreq[i]).
    void apply(const double* f, const Vec& x, double t, double* gain, double* lossfreq) const;

    int np2() const { return np2_; }
    bool cutoff_active() const { return cutoff_; }
    const Params& params() const { return params_; }

  private:
    Params params_;
    int np_ = 0, np2_ = 0, nw_ = 0;
    bool cutoff_ = false;
    double dq2_ = 0.0;
    // per momentum index: phat components and q0/c factor for the h_c term
    std::vector<double> phat_x_, phat_y_, q0_over_c_;
    // per (i, j, k) entry, k fastest
    std::vector<double> w_;
    std::vector<int> pbase_, qbase_;
    std::vector<float> pfx_, pfy_, qfx_, qfy_;
    std::vector<float> lhs_; // cutoff LHS, only when cutoff_
};

} // namespace relboltz
