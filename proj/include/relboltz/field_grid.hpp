#pragma once

#include <cstddef>
#include <vector>

#include "relboltz/vec.hpp"

namespace relboltz {

// Uniform node axis [lo, hi] with n nodes, reused for every component.
struct Axis {
    double lo = -6.0;
    double hi = 6.0;
    int n = 24;

    double d() const { return (hi - lo) / (n - 1); }
    double node(int i) const { return lo + i * d(); }
};

// Bilinear stencil for one point in an (axis x axis) plane.
struct Bilinear {
    int base = -1; // flat index of the lower-left corner, -1 when outside
    double fx = 0.0;
    double fy = 0.0;
};

Bilinear locate2(const Axis& a, double u, double v);

// plane is row-major n*n; returns 0 outside the axis box.
inline double interp2(const double* plane, int n, const Bilinear& b)
{
    if (b.base < 0) return 0.0;
    const double* p0 = plane + b.base;
    const double a0 = p0[0] + b.fy * (p0[1] - p0[0]);
    const double a1 = p0[n] + b.fy * (p0[n + 1] - p0[n]);
    return a0 + b.fx * (a1 - a0);
}

inline double interp2_at(const double* plane, const Axis& a, double u, double v)
{
    return interp2(plane, a.n, locate2(a, u, v));
}

// Tensor-grid sample of f(x,p) for N = 2: values indexed x-major,
// v[(ix1*nx + ix2) * np2 + (ip1*np + ip2)].
struct FieldGrid {
    Axis xaxis;
    Axis paxis;
    std::vector<double> v;

    FieldGrid() = default;
    FieldGrid(const Axis& xa, const Axis& pa);

    int nx2() const { return xaxis.n * xaxis.n; }
    int np2() const { return paxis.n * paxis.n; }

    double& at(int ix, int ip) { return v[static_cast<std::size_t>(ix) * np2() + ip]; }
    double at(int ix, int ip) const { return v[static_cast<std::size_t>(ix) * np2() + ip]; }

    Vec x_of(int ix) const { return Vec(xaxis.node(ix / xaxis.n), xaxis.node(ix % xaxis.n)); }
    Vec p_of(int ip) const { return Vec(paxis.node(ip / paxis.n), paxis.node(ip % paxis.n)); }

    // Multilinear sample with zero extension outside the box.
    double sample(const Vec& x, const Vec& p) const;
};

// Fill from a callable f(x, p).
template <typename F>
FieldGrid make_field(const Axis& xa, const Axis& pa, F&& f)
{
    FieldGrid g(xa, pa);
    for (int ix = 0; ix < g.nx2(); ++ix) {
        const Vec x = g.x_of(ix);
        for (int ip = 0; ip < g.np2(); ++ip) g.at(ix, ip) = f(x, g.p_of(ip));
    }
    return g;
}

} // namespace relboltz
