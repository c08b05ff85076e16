#pragma once

// Independent numerical oracles for the test suites.  Deliberately built on
// different methods from the library under test: adaptive Simpson instead of
// fixed Gauss/tanh-sinh rules, Stirling + recurrence for log-gamma instead of
// Lanczos.

#include <cmath>
#include <complex>
#include <functional>

namespace oracles {

namespace detail {

template <class F>
double simpson(F&& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_step(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

template <class F>
double adaptive_quad(F&& f, double a, double b, double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Semi-infinite integral by doubling panels until the running tail is tiny.
template <class F>
double adaptive_quad_to_inf(F&& f, double a, double tol = 1e-12, double first_panel = 1.0) {
    double total = 0.0, width = first_panel, lo = a;
    for (int k = 0; k < 60; ++k) {
        const double hi = lo + width;
        const double piece = adaptive_quad(f, lo, hi, tol);
        total += piece;
        if (k > 2 && std::abs(piece) < tol * std::max(1.0, std::abs(total))) break;
        lo = hi;
        width *= 2.0;
    }
    return total;
}

// Nested 2-D adaptive cubature.
template <class F>
double adaptive_cubature(F&& f, double ax, double bx, double ay, double by, double tol = 1e-10) {
    return adaptive_quad([&](double x) { return adaptive_quad([&](double y) { return f(x, y); }, ay, by, 0.1 * tol); },
                         ax, bx, tol);
}

// log Gamma(z), Re z > 0, by recurrence shifts into |z| > 12 and the Stirling
// series with Bernoulli numbers.
inline std::complex<double> lgamma_complex(std::complex<double> z) {
    using cd = std::complex<double>;
    cd shift(0.0, 0.0);
    while (std::abs(z) < 12.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    static const double B[8] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                                1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400};
    cd s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * M_PI);
    cd zp = z;
    for (int k = 0; k < 8; ++k) {
        s += B[k] / ((2.0 * k + 1.0) * zp);
        zp *= z * z;
    }
    return s + shift;
}

template <class F>
double central_diff(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double second_diff(F&& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

} // namespace oracles
