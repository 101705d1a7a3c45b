#pragma once

#include <functional>
#include <vector>

namespace relboltz {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Nodes/weights for int_0^inf x^alpha e^{-x} f(x) dx, by Newton iteration on
// the generalized Laguerre recurrence.
QuadRule gauss_laguerre(int n, double alpha);

// Nodes/weights for int_{-1}^{1} f(x) dx.
QuadRule gauss_legendre(int n);

// Composite Simpson on [a,b] with n panels (n made even internally).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

} // namespace relboltz
