#include "relboltz/field_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace relboltz {

Bilinear locate2(const Axis& a, double u, double v)
{
    Bilinear b;
    const double d = a.d();
    const double tu = (u - a.lo) / d;
    const double tv = (v - a.lo) / d;
    if (tu < 0.0 || tv < 0.0 || tu > a.n - 1 || tv > a.n - 1) return b; // outside
    int iu = static_cast<int>(tu);
    int iv = static_cast<int>(tv);
    if (iu >= a.n - 1) iu = a.n - 2;
    if (iv >= a.n - 1) iv = a.n - 2;
    b.base = iu * a.n + iv;
    b.fx = tu - iu;
    b.fy = tv - iv;
    return b;
}

FieldGrid::FieldGrid(const Axis& xa, const Axis& pa) : xaxis(xa), paxis(pa)
{
    if (xa.n < 2 || pa.n < 2) throw std::invalid_argument("FieldGrid: axes need n >= 2");
    v.assign(static_cast<std::size_t>(nx2()) * np2(), 0.0);
}

double FieldGrid::sample(const Vec& x, const Vec& p) const
{
    const Bilinear bx = locate2(xaxis, x[0], x[1]);
    const Bilinear bp = locate2(paxis, p[0], p[1]);
    if (bx.base < 0 || bp.base < 0) return 0.0;
    // Bilinear in p of the four bilinear-in-x samples.
    const int np = paxis.n;
    const int np2v = np * np;
    auto xval = [&](int ip) {
        const int ix = bx.base;
        const std::size_t stride = static_cast<std::size_t>(np2v);
        const double f00 = v[ix * stride + ip];
        const double f01 = v[(ix + 1) * stride + ip];
        const double f10 = v[(ix + xaxis.n) * stride + ip];
        const double f11 = v[(ix + xaxis.n + 1) * stride + ip];
        const double a0 = f00 + bx.fy * (f01 - f00);
        const double a1 = f10 + bx.fy * (f11 - f10);
        return a0 + bx.fx * (a1 - a0);
    };
    const double g00 = xval(bp.base);
    const double g01 = xval(bp.base + 1);
    const double g10 = xval(bp.base + np);
    const double g11 = xval(bp.base + np + 1);
    const double b0 = g00 + bp.fy * (g01 - g00);
    const double b1 = g10 + bp.fy * (g11 - g10);
    return b0 + bp.fx * (b1 - b0);
}

} // namespace relboltz
