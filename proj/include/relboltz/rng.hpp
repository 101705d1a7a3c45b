#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "relboltz/vec.hpp"

namespace relboltz {

// Deterministic random source. mt19937_64 output is fixed by the standard,
// and the transforms below avoid std::*_distribution (whose streams are
// implementation-defined), so frozen test values stay valid everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec normal_vec(int dim, double scale = 1.0)
    {
        Vec p = Vec::zero(dim);
        for (int i = 0; i < dim; ++i) p[i] = scale * normal();
        return p;
    }

    // Uniform direction on S^{N-1}.
    Vec unit_vec(int dim)
    {
        if (dim == 2) {
            const double a = 2.0 * M_PI * uniform();
            return Vec(std::cos(a), std::sin(a));
        }
        const double z = uniform(-1.0, 1.0);
        const double a = 2.0 * M_PI * uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return Vec(r * std::cos(a), r * std::sin(a), z);
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace relboltz
