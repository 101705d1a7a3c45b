#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace relboltz {

// Spatial momentum / position vector with runtime dimension N in {2,3}.
// Stored in a fixed array; component v[2] is zero when N == 2 so that
// dimension-generic dot/cross code can ignore n where convenient.
struct Vec {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    int n = 3;

    Vec() = default;
    Vec(double x, double y) : v{x, y, 0.0}, n(2) {}
    Vec(double x, double y, double z) : v{x, y, z}, n(3) {}

    static Vec zero(int dim)
    {
        Vec r;
        r.n = dim;
        return r;
    }

    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }

    Vec& operator+=(const Vec& o)
    {
        for (int i = 0; i < 3; ++i) v[i] += o.v[i];
        return *this;
    }
    Vec& operator-=(const Vec& o)
    {
        for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
        return *this;
    }
    Vec& operator*=(double a)
    {
        for (int i = 0; i < 3; ++i) v[i] *= a;
        return *this;
    }

    bool finite() const
    {
        return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
    }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator-(Vec a)
{
    for (auto& x : a.v) x = -x;
    return a;
}

inline double dot(const Vec& a, const Vec& b)
{
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double norm_inf(const Vec& a)
{
    return std::max(std::fabs(a.v[0]), std::max(std::fabs(a.v[1]), std::fabs(a.v[2])));
}

// For N=2 the cross product is the scalar determinant p1*q2 - p2*q1;
// for N=3 the usual vector magnitude.
inline double cross_mag(const Vec& a, const Vec& b)
{
    if (a.n == 2) return std::fabs(a.v[0] * b.v[1] - a.v[1] * b.v[0]);
    const double cx = a.v[1] * b.v[2] - a.v[2] * b.v[1];
    const double cy = a.v[2] * b.v[0] - a.v[0] * b.v[2];
    const double cz = a.v[0] * b.v[1] - a.v[1] * b.v[0];
    return std::sqrt(cx * cx + cy * cy + cz * cz);
}

inline Vec cross3(const Vec& a, const Vec& b)
{
    Vec r(a.v[1] * b.v[2] - a.v[2] * b.v[1],
          a.v[2] * b.v[0] - a.v[0] * b.v[2],
          a.v[0] * b.v[1] - a.v[1] * b.v[0]);
    return r;
}

inline void require_same_frame(const Vec& a, const Vec& b)
{
    if (a.n != b.n) throw std::invalid_argument("vector dimensions differ");
}

} // namespace relboltz
