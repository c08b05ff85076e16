#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "casimir/quadrature.hpp"

// Special functions of imaginary order/degree: the modified Bessel function
// K_{i lambda}(x), the modified spherical Bessel k_{i lambda - 1/2}(x), and
// the conical (Mehler) Legendre functions P^m_{i lambda - 1/2} on both the
// trigonometric branch (argument cos theta) and the hyperbolic branch
// (argument cosh alpha).  All are real for real lambda and even in
// lambda -> -lambda.
//
// Conventions (DLMF Ferrers F / cut P, verified against the hypergeometric
// series): with Pi(lambda,m) = prod_{l=0}^{m-1} (lambda^2 + (l+1/2)^2),
//
//   trig branch:  P^{+m} = Pi * P^{-m}
//   cut branch:   P^{+m} = (-1)^m Pi * P^{-m}
//
// The order -m functions are primary; they come from the generalized
// Mehler-Dirichlet representation
//
//   P^{-m}_{i lam - 1/2}(cos th)   = sqrt(2/pi) sin(th)^{-m} / Gamma(m+1/2)
//                                    * Int_0^th (cos t - cos th)^{m-1/2} cosh(lam t) dt
//   P^{-m}_{i lam - 1/2}(cosh al)  = sqrt(2/pi) sinh(al)^{-m} / Gamma(m+1/2)
//                                    * Int_0^al (cosh al - cosh t)^{m-1/2} cos(lam t) dt

namespace casimir::specfun {

enum class Branch { Trig, Hyperbolic };

inline constexpr int kMaxOrder = 12; // |m| cap, matching the kernel channels

namespace detail {

// arg Gamma(1 + i lam) via the Lanczos approximation (g=7, n=9).
inline double arg_gamma_1p_i(double lam) {
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
        771.32342877765313,   -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    std::complex<double> z(1.0, lam); // Gamma(z)
    std::complex<double> zz = z - 1.0;
    std::complex<double> a(c[0], 0.0);
    for (int i = 1; i < 9; ++i) a += c[i] / (zz + static_cast<double>(i));
    std::complex<double> t = zz + 7.5;
    std::complex<double> lg = 0.5 * std::log(2.0 * M_PI) + (zz + 0.5) * std::log(t) - t + std::log(a);
    return lg.imag();
}

inline const QuadratureRule& ts_unit_rule() {
    static const QuadratureRule r = make_rule(RuleKind::TanhSinh, 420, 1.0);
    return r;
}

inline const QuadratureRule& gl_unit_rule(int n) {
    static const QuadratureRule r64 = gauss_legendre(64, 0.0, 1.0);
    static const QuadratureRule r128 = gauss_legendre(128, 0.0, 1.0);
    static const QuadratureRule r256 = gauss_legendre(256, 0.0, 1.0);
    static const QuadratureRule r512 = gauss_legendre(512, 0.0, 1.0);
    static const QuadratureRule r1024 = gauss_legendre(1024, 0.0, 1.0);
    if (n <= 64) return r64;
    if (n <= 128) return r128;
    if (n <= 256) return r256;
    if (n <= 512) return r512;
    return r1024;
}

// K_{i lam}(x) by tanh-sinh quadrature of int_0^inf e^{-x cosh t} cos(lam t) dt.
// The cutoff t_max keeps x*cosh(t_max) at the exponent floor.
inline double besselk_im_integral(double lam, double x) {
    const double t_max = std::acosh(std::max(709.0 / x, 1.0 + 1e-8));
    const QuadratureRule& ts = ts_unit_rule();
    double s = 0.0;
    for (int i = 0; i < ts.size(); ++i) {
        const double t = t_max * ts.nodes[i];
        s += ts.weights[i] * std::exp(-x * std::cosh(t)) * std::cos(lam * t);
    }
    return t_max * s;
}

inline double besselk_im_deriv_integral(double lam, double x) {
    const double t_max = std::acosh(std::max(709.0 / x, 1.0 + 1e-8));
    const QuadratureRule& ts = ts_unit_rule();
    double s = 0.0;
    for (int i = 0; i < ts.size(); ++i) {
        const double t = t_max * ts.nodes[i];
        const double ch = std::cosh(t);
        s += ts.weights[i] * ch * std::exp(-x * ch) * std::cos(lam * t);
    }
    return -t_max * s;
}

// e^{lam pi/2} K_{i lam}(x) from the ascending series
//   K_{i lam}(x) = -(1/lam) Im[ Gamma(1-i lam) (x/2)^{i lam} S ],
//   S = sum_k (x^2/4)^k / (k! prod_{j<=k}(j + i lam)),
// written so that no exponentially small or large factor ever appears.
inline double besselk_im_scaled_series(double lam, double x) {
    const double glam = arg_gamma_1p_i(lam);
    std::complex<double> term(1.0, 0.0), S(1.0, 0.0);
    const double q = 0.25 * x * x;
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<double>(k) * std::complex<double>(k, lam));
        S += term;
        if (std::abs(term) < 1e-18 * std::abs(S)) break;
    }
    const double amp = std::sqrt(2.0 * M_PI / lam) / std::sqrt(1.0 - std::exp(-2.0 * M_PI * lam));
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, lam * std::log(0.5 * x) - glam));
    return -amp * (phase * S).imag();
}

} // namespace detail

namespace detail {

// The ascending series cancels ~e^{2x - lam pi/2} when x >> lam, the raw
// integral cancels ~e^{lam pi/2 - lam^2/(2x)} when lam >> sqrt(x); this
// switch keeps both in their accurate regions.
inline bool besselk_use_series(double lam, double x) {
    return lam >= 2.0 && x <= std::max(12.0, 1.2 * lam);
}

} // namespace detail

// e^{|lam| pi/2} K_{i lam}(x): stable across the whole lambda range used by
// the kernels (the unscaled function underflows and loses all relative
// accuracy beyond lam ~ 20).
inline double besselk_im_scaled(double lam, double x) {
    if (!(x > 0.0)) throw std::domain_error("besselk_im: x must be positive");
    lam = std::abs(lam);
    if (detail::besselk_use_series(lam, x)) return detail::besselk_im_scaled_series(lam, x);
    const double v = detail::besselk_im_integral(lam, x);
    const double s = lam * M_PI_2;
    if (s > 700.0) return 0.0; // out of the supported (lam,x) envelope
    return std::exp(s) * v;
}

inline double besselk_im(double lam, double x) {
    if (!(x > 0.0)) throw std::domain_error("besselk_im: x must be positive");
    lam = std::abs(lam);
    if (!detail::besselk_use_series(lam, x)) {
        return detail::besselk_im_integral(lam, x);
    }
    const double lg = -lam * M_PI_2;
    const double v = detail::besselk_im_scaled_series(lam, x);
    if (lg < -745.0) return 0.0;
    return std::exp(lg) * v;
}

// d/dx K_{i lam}(x)
inline double besselk_im_deriv(double lam, double x) {
    if (!(x > 0.0)) throw std::domain_error("besselk_im_deriv: x must be positive");
    return detail::besselk_im_deriv_integral(std::abs(lam), x);
}

// k_{i lam - 1/2}(x) = sqrt(pi/(2x)) K_{i lam}(x)
inline double sph_besselk_im(double lam, double x) {
    if (!(x > 0.0)) throw std::domain_error("sph_besselk_im: x must be positive");
    return std::sqrt(M_PI_2 / x) * besselk_im(lam, x);
}

inline double sph_besselk_im_scaled(double lam, double x) {
    if (!(x > 0.0)) throw std::domain_error("sph_besselk_im: x must be positive");
    return std::sqrt(M_PI_2 / x) * besselk_im_scaled(lam, x);
}

// prod_{l=0}^{m-1} (lam^2 + (l+1/2)^2); the +m/-m order conversion factor.
inline double order_product(double lam, int m) {
    m = std::abs(m);
    double p = 1.0;
    for (int l = 0; l < m; ++l) p *= lam * lam + (l + 0.5) * (l + 0.5);
    return p;
}

// Gamma(i lam - m + 1/2) / Gamma(i lam + m + 1/2).  For integer m this is the
// finite product 1/prod_{k=-m}^{m-1}(i lam + k + 1/2), whose factors pair to
// -(lam^2 + (l+1/2)^2); the ratio is real, equal to (-1)^m / Pi(lam,m) for
// m >= 0 and its reciprocal for m < 0.
inline std::complex<double> gamma_ratio(double lam, int m) {
    const double pi_m = order_product(lam, m);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (m >= 0) return {sign / pi_m, 0.0};
    return {sign * pi_m, 0.0};
}

namespace detail {

// Order -m conical function on the trig branch by the Mehler-Dirichlet
// integral with the endpoint substitution th - t = s^2.
inline double conical_p_negm_trig(int m, double lam, double th) {
    lam = std::abs(lam);
    if (th < 1e-3) {
        // two-term hypergeometric limit; avoids the 0*inf prefactor split
        const double z = std::sin(0.5 * th);
        double f = 1.0, mfac = 1.0;
        for (int j = 1; j <= m; ++j) mfac *= j;
        const double l2 = lam * lam + 0.25;
        f = 1.0 + l2 * z * z / (1.0 + m) + 0.5 * l2 * (l2 + 2.0) * std::pow(z * z, 2) / ((1.0 + m) * (2.0 + m));
        return std::pow(std::tan(0.5 * th), m) / mfac * f;
    }
    const double root = std::sqrt(th);
    const QuadratureRule& gl = gl_unit_rule(128);
    double acc = 0.0;
    for (int i = 0; i < gl.size(); ++i) {
        const double s = root * gl.nodes[i];
        const double s2 = s * s;
        const double t = th - s2;
        // cos t - cos th = 2 sin(th - s^2/2) sin(s^2/2), cancellation-free
        const double gos2 = 2.0 * std::sin(th - 0.5 * s2) * (std::sin(0.5 * s2) / s2);
        double pw;
        if (m == 0) {
            pw = 2.0 / std::sqrt(gos2);
        } else {
            pw = 2.0 * std::pow(s, 2 * m) * std::pow(gos2, m - 0.5);
        }
        acc += gl.weights[i] * pw * std::cosh(lam * t);
    }
    acc *= root;
    const double pref = std::sqrt(2.0 / M_PI) / (std::pow(std::sin(th), m) * std::tgamma(m + 0.5));
    return pref * acc;
}

// Order -m conical function on the cut, same substitution; the integrand
// oscillates like cos(lam t) so the node count scales with lam*al.
inline double conical_p_negm_cut(int m, double lam, double al) {
    lam = std::abs(lam);
    if (al < 1e-3) {
        const double z = std::sinh(0.5 * al);
        double mfac = 1.0;
        for (int j = 1; j <= m; ++j) mfac *= j;
        const double l2 = lam * lam + 0.25;
        const double f = 1.0 - l2 * z * z / (1.0 + m) + 0.5 * l2 * (l2 + 2.0) * std::pow(z * z, 2) / ((1.0 + m) * (2.0 + m));
        return std::pow(std::tanh(0.5 * al), m) / mfac * f;
    }
    const double root = std::sqrt(al);
    const int n_osc = 96 + 16 * static_cast<int>(std::ceil(lam * al / M_PI));
    const QuadratureRule& gl = gl_unit_rule(std::min(n_osc, 1024));
    double acc = 0.0;
    for (int i = 0; i < gl.size(); ++i) {
        const double s = root * gl.nodes[i];
        const double s2 = s * s;
        const double t = al - s2;
        // cosh al - cosh t = 2 sinh(al - s^2/2) sinh(s^2/2)
        const double gos2 = 2.0 * std::sinh(al - 0.5 * s2) * (std::sinh(0.5 * s2) / s2);
        double pw;
        if (m == 0) {
            pw = 2.0 / std::sqrt(gos2);
        } else {
            pw = 2.0 * std::pow(s, 2 * m) * std::pow(gos2, m - 0.5);
        }
        acc += gl.weights[i] * pw * std::cos(lam * t);
    }
    acc *= root;
    const double pref = std::sqrt(2.0 / M_PI) / (std::pow(std::sinh(al), m) * std::tgamma(m + 0.5));
    return pref * acc;
}

} // namespace detail

// P^m_{i lam - 1/2}(arg).  branch=Trig takes arg = cos(theta) in (-1,1];
// branch=Hyperbolic takes arg = cosh(alpha) >= 1.  Negative m supported.
inline double conical_p(int m, double lam, double arg, Branch branch) {
    if (std::abs(m) > kMaxOrder) throw std::domain_error("conical_p: |m| exceeds supported order");
    if (branch == Branch::Trig) {
        if (!(arg > -1.0 && arg <= 1.0)) throw std::domain_error("conical_p: trig branch needs arg in (-1,1]");
        const double th = std::acos(std::min(arg, 1.0));
        const double base = detail::conical_p_negm_trig(std::abs(m), lam, th);
        if (m <= 0) return base;
        return order_product(lam, m) * base;
    }
    if (!(arg >= 1.0)) throw std::domain_error("conical_p: hyperbolic branch needs arg >= 1");
    const double al = std::acosh(arg);
    const double base = detail::conical_p_negm_cut(std::abs(m), lam, al);
    if (m <= 0) return base;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * order_product(lam, m) * base;
}

// ddtheta of P^m_{i lam - 1/2}(s * cos theta), s = +-1, via the same-degree
// order recurrence  d/dth F^mu(cos th) = (F^{mu+1} - (nu+mu)(nu-mu+1) F^{mu-1})/2
// with (nu+mu)(nu-mu+1) = -(lam^2 + (mu-1/2)^2) at nu = i lam - 1/2.
inline double conical_p_dtheta(int m, double lam, double theta, int sign_arg) {
    if (!(theta > 0.0 && theta < M_PI)) throw std::domain_error("conical_p_dtheta: theta must lie in (0,pi)");
    const double th_eff = (sign_arg >= 0) ? theta : M_PI - theta;
    auto F = [&](int mu) { return conical_p(mu, lam, std::cos(th_eff), Branch::Trig); };
    const double cmu = -(lam * lam + (m - 0.5) * (m - 0.5)); // (nu+m)(nu-m+1)
    const double d = 0.5 * (F(m + 1) - cmu * F(m - 1));
    // d/dtheta picks up -1 for the mirrored argument -cos(theta) = cos(pi-theta)
    return (sign_arg >= 0) ? d : -d;
}

// d/d(cosh a) of P^m on the cut;  d/da P^mu(cosh a) = (P^{mu+1} + (nu+mu)(nu-mu+1) P^{mu-1})/2.
inline double conical_p_dxi(int m, double lam, double xi) {
    if (!(xi > 1.0)) throw std::domain_error("conical_p_dxi: xi must exceed 1");
    const double al = std::acosh(xi);
    auto P = [&](int mu) { return conical_p(mu, lam, xi, Branch::Hyperbolic); };
    const double cmu = -(lam * lam + (m - 0.5) * (m - 0.5));
    const double dda = 0.5 * (P(m + 1) + cmu * P(m - 1));
    return dda / std::sinh(al);
}

// Analytic continuation of the hyperbolic branch to complex argument
// z = cosh(alpha_c): the Mehler integral taken along the straight segment
// t = s * alpha_c.  Used by the tilted-cone machinery, degree i lam - 1/2,
// order 0 and 1 only.
inline std::complex<double> conical_p_complex(int m, double lam, std::complex<double> z) {
    using cd = std::complex<double>;
    if (std::abs(m) > 1) throw std::domain_error("conical_p_complex: only |m| <= 1 supported");
    lam = std::abs(lam);
    const int mm = std::abs(m);
    const cd al = std::acosh(z);
    cd base;
    if (std::abs(al) < 1e-3) {
        const cd w = 0.5 * (1.0 - z);
        const double l2 = lam * lam + 0.25;
        const cd head = std::pow(std::sqrt((z - 1.0) / (z + 1.0)), mm) / std::tgamma(mm + 1.0);
        base = head * (1.0 + l2 * w / (1.0 + mm) + 0.5 * l2 * (l2 + 2.0) * w * w / ((1.0 + mm) * (2.0 + mm)));
    } else {
        // integral along the straight segment t = al*(1-u^2), u in [0,1]
        const int n_osc = 96 + 16 * static_cast<int>(std::ceil(lam * std::abs(al) / M_PI));
        const QuadratureRule& gl = detail::gl_unit_rule(std::min(n_osc, 1024));
        cd acc(0.0, 0.0);
        for (int i = 0; i < gl.size(); ++i) {
            const double u = gl.nodes[i];
            const double u2 = u * u;
            const cd t = al * (1.0 - u2);
            // cosh al - cosh t = 2 sinh(al(1-u^2/2)) sinh(al u^2/2)
            const cd gu2 = 2.0 * std::sinh(al * (1.0 - 0.5 * u2)) * (std::sinh(al * (0.5 * u2)) / u2);
            cd pw;
            if (mm == 0) {
                pw = 2.0 * al / std::sqrt(gu2);
            } else {
                pw = 2.0 * al * std::pow(u, 2 * mm) * std::pow(gu2, cd(mm - 0.5, 0.0));
            }
            acc += gl.weights[i] * pw * std::cos(lam * t);
        }
        const cd pref = std::sqrt(cd(2.0 / M_PI)) / (std::pow(std::sinh(al), cd(mm)) * std::tgamma(mm + 0.5));
        base = pref * acc;
    }
    if (m <= 0) return base;
    return ((m % 2 == 0) ? 1.0 : -1.0) * order_product(lam, m) * base;
}

// P_0^{-|m|}: the ghost-mode angular factor, elementary on both branches.
inline double legendre_p0_negm(int m, double arg, Branch branch) {
    m = std::abs(m);
    double mfac = 1.0;
    for (int j = 1; j <= m; ++j) mfac *= j;
    if (branch == Branch::Trig) {
        const double th = std::acos(arg);
        return std::pow(std::tan(0.5 * th), m) / mfac;
    }
    const double al = std::acosh(arg);
    return std::pow(std::tanh(0.5 * al), m) / mfac;
}

} // namespace casimir::specfun
