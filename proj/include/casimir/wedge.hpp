#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "casimir/engine.hpp"
#include "casimir/kernels.hpp"
#include "casimir/specfun.hpp"

// Wedge opposite a conducting plane.  The EM field splits into Dirichlet and
// Neumann scalars; scattering waves carry a continuous imaginary angular
// momentum lambda.  Kernels are evaluated either in the plane-wave angle
// basis alpha (closed form, the default) or in the lambda basis (used for
// cross-validation and for near-parallel tilts, where the alpha kernel
// develops a narrow diagonal spike that a global rule cannot resolve).
//
// Everything is nondimensionalized with d = hbar = c = 1; energies are
// E d^2/(hbar c L_z).

namespace casimir::wedge {

using cd = std::complex<double>;

struct WedgeConfig {
    double theta0 = 0.0; // half-opening angle
    double phi0 = 0.0;   // tilt of the symmetry axis
    double d = 1.0;      // edge-plate distance
    double Lz = 1.0;     // edge length

    void validate() const {
        if (!(theta0 >= 0.0 && theta0 < M_PI_2)) throw std::domain_error("wedge: theta0 must lie in [0,pi/2)");
        if (!(theta0 + std::abs(phi0) < M_PI_2)) throw std::domain_error("wedge: face touches the plate (theta0+|phi0| >= pi/2)");
        if (!(d > 0.0)) throw std::domain_error("wedge: d must be positive");
        if (!(Lz > 0.0)) throw std::domain_error("wedge: Lz must be positive");
    }
};

enum class Bc { Dirichlet, Neumann, Em };
enum class Parity { Cosh, Sinh }; // symmetric (c) / antisymmetric (s)

// T-matrix of the wedge, Dirichlet/Neumann x parity channels: ratios of
// cosh/sinh(lambda theta0) to the same at (pi - theta0).
inline double wedge_tmatrix(Bc bc, Parity parity, double lam, double theta0) {
    if (!(theta0 >= 0.0 && theta0 <= M_PI_2)) throw std::domain_error("wedge_tmatrix: theta0 out of range");
    lam = std::abs(lam);
    const double a = theta0, b = M_PI - theta0;
    auto cosh_ratio = [&] {
        if (lam * b > 350.0) return std::exp(lam * (a - b)); // both cosh in pure growth
        return std::cosh(lam * a) / std::cosh(lam * b);
    };
    auto sinh_ratio = [&] {
        if (lam == 0.0) return a / b;
        if (lam * b > 350.0) return std::exp(lam * (a - b));
        return std::sinh(lam * a) / std::sinh(lam * b);
    };
    if (bc == Bc::Dirichlet) return (parity == Parity::Cosh) ? -cosh_ratio() : -sinh_ratio();
    if (bc == Bc::Neumann) return (parity == Parity::Cosh) ? sinh_ratio() : cosh_ratio();
    throw std::invalid_argument("wedge_tmatrix: EM has no single scalar T-matrix");
}

// Conversion between wedge waves and plate plane waves, tilt phi0, a = i alpha.
inline cd wedge_conversion(Parity parity, double lam, double alpha, double phi0) {
    const cd arg = lam * (cd(0.0, alpha) - phi0);
    const cd v = (parity == Parity::Cosh) ? std::cosh(arg) : std::sinh(arg);
    return (2.0 / M_PI) * v;
}

namespace detail {

inline cd sec(cd z) {
    const cd c = std::cos(z);
    if (std::abs(c) < 1e-9) throw std::domain_error("wedge kernel: sec argument within 1e-9 of a pole");
    return 1.0 / c;
}

inline cd cot(cd z) {
    const cd s = std::sin(z);
    if (std::abs(s) < 1e-9) throw std::domain_error("wedge kernel: cot argument within 1e-9 of a pole");
    return std::cos(z) / s;
}

inline double ln_cosh(double y) {
    y = std::abs(y);
    return y + std::log1p(std::exp(-2.0 * y)) - M_LN2;
}

inline double ln_sinh(double y) { // y > 0
    return y + std::log1p(-std::exp(-2.0 * y)) - M_LN2;
}

} // namespace detail

// N-kernel in the alpha basis (closed form): the eight-term sec/cot
// combination times e^{-pd(cosh a + cosh a')}.  Complex for phi0 != 0; the
// kernel is Hermitian with K(-a,-a') = conj K(a,a'), so traces stay real.
inline cd wedge_nkernel_alpha(Bc bc, double alpha, double alphap, double pd, double theta0,
                              double phi0) {
    if (!(pd > 0.0)) throw std::domain_error("wedge_nkernel_alpha: pd must be positive");
    if (bc == Bc::Em) throw std::invalid_argument("wedge_nkernel_alpha: EM is assembled from D+N");
    using detail::cot;
    using detail::sec;
    const double c = M_PI / (2.0 * (M_PI - theta0));
    const double sgn = (bc == Bc::Dirichlet) ? 1.0 : -1.0;
    const cd ip(0.0, 1.0);
    const cd sum_a = ip * (alpha + alphap);
    const cd dif_a = ip * (alpha - alphap);
    const cd s = sgn * sec(c * (theta0 + sum_a)) + sec(c * (theta0 + dif_a + 2.0 * phi0)) +
                 sec(c * (theta0 - dif_a - 2.0 * phi0)) + sgn * sec(c * (theta0 - sum_a)) +
                 sgn * cot(c * (M_PI + sum_a)) - cot(c * (M_PI + dif_a + 2.0 * phi0)) -
                 cot(c * (M_PI - dif_a - 2.0 * phi0)) + sgn * cot(c * (M_PI - sum_a));
    const double damping = std::exp(-pd * (std::cosh(alpha) + std::cosh(alphap)));
    return damping / (8.0 * (M_PI - theta0)) * s;
}

// N-kernel in the lambda basis, x = 2 p d.  Exponentials are combined in log
// space so the near-parallel regime (cosh((l+l')phi0) ~ e^{1400}) stays finite.
inline double wedge_nkernel_lambda(Bc bc, double lam, double lamp, double x, double theta0,
                                   double phi0) {
    if (!(x > 0.0)) throw std::domain_error("wedge_nkernel_lambda: x must be positive");
    if (bc == Bc::Em) throw std::invalid_argument("wedge_nkernel_lambda: EM is assembled from D+N");
    using detail::ln_cosh;
    using detail::ln_sinh;
    const double sgn = (bc == Bc::Dirichlet) ? 1.0 : -1.0;
    const double b = 2.0 * (M_PI - theta0);
    // ln of sinh(lam(pi-2theta0))/sinh(lam b) and sinh(lam pi)/sinh(lam b),
    // with the lam -> 0 limits taken analytically
    double lnR1, lnR2;
    if (lam < 1e-8) {
        lnR1 = std::log((M_PI - 2.0 * theta0) / b);
        lnR2 = std::log(M_PI / b);
    } else {
        lnR1 = (theta0 < M_PI_2 - 1e-14 ? ln_sinh(lam * (M_PI - 2.0 * theta0)) : -INFINITY) - ln_sinh(lam * b);
        lnR2 = ln_sinh(lam * M_PI) - ln_sinh(lam * b);
    }
    const double mu1 = lam + lamp, mu2 = std::abs(lam - lamp);
    double term1 = 0.0, term2 = 0.0;
    const double e1 = -mu1 * M_PI_2 + ln_cosh((lam - lamp) * phi0) + lnR1;
    if (e1 > -700.0) term1 = specfun::besselk_im_scaled(mu1, x) * std::exp(e1);
    const double e2 = -mu2 * M_PI_2 + ln_cosh((lam + lamp) * phi0) + lnR2;
    if (e2 > -700.0) term2 = specfun::besselk_im_scaled(mu2, x) * std::exp(e2);
    return (2.0 / M_PI) * (sgn * term1 + term2);
}

namespace detail {

inline QuadratureRule alpha_rule(double pd, int n_half) {
    const double alpha_max = std::acosh(1.0 + 14.0 / pd);
    const QuadratureRule half = make_rule(RuleKind::GaussLegendreMapped, n_half, 0.55 * alpha_max);
    return mirror_full_line(half);
}

// trace of N^1..n_max at fixed p, alpha basis
inline std::vector<double> traces_alpha(Bc bc, int n_max, double pd, double theta0, double phi0,
                                        const EngineParams& par) {
    const QuadratureRule rule = alpha_rule(pd, par.n_alpha);
    auto kfn = [&](double a, double ap) { return wedge_nkernel_alpha(bc, a, ap, pd, theta0, phi0); };
    KernelMatrixC A = discretize<cd>(kfn, rule, false, BasisTag::Alpha,
                                     {bc == Bc::Dirichlet ? ChannelBc::Dirichlet : ChannelBc::Neumann, 0});
    auto tr = trace_powers(A.values, n_max);
    std::vector<double> out(n_max);
    for (int i = 0; i < n_max; ++i) {
        if (std::abs(tr[i].imag()) > 1e-8 * std::abs(tr[i].real()) + 1e-13)
            throw std::runtime_error("wedge alpha trace developed an imaginary part");
        out[i] = tr[i].real();
    }
    return out;
}

inline std::vector<double> traces_lambda(Bc bc, int n_max, double pd, double theta0, double phi0,
                                         const EngineParams& par) {
    const double rate = M_PI - 2.0 * theta0 - 2.0 * std::abs(phi0);
    if (!(rate > 0.0)) throw std::domain_error("wedge: geometry outside validity region");
    const double span = std::min(16.0 / rate, 3000.0);
    const int n = std::min(std::max(par.n_lambda, static_cast<int>(std::ceil(6.5 / rate))), 400);
    const QuadratureRule rule = gauss_legendre(n, 0.0, span);
    auto kfn = [&](double l, double lp) { return wedge_nkernel_lambda(bc, l, lp, 2.0 * pd, theta0, phi0); };
    KernelMatrixR A = discretize<double>(kfn, rule, false, BasisTag::Lambda,
                                         {bc == Bc::Dirichlet ? ChannelBc::Dirichlet : ChannelBc::Neumann, 0});
    return trace_powers(A.values, n_max);
}

inline bool prefer_lambda_basis(double theta0, double phi0) {
    return (M_PI - 2.0 * theta0 - 2.0 * std::abs(phi0)) < 0.35;
}

} // namespace detail

struct EnergyResult {
    double value = 0.0; // E d^2/(hbar c L_z), sign included
    ReflectionSeriesResult series;
    Bc channel = Bc::Em;
    bool outer_converged = true;
};

// Scaled interaction energy E d^2/(hbar c L_z) = -(1/4pi) Int dp p tr ln(1-N),
// expanded to max_order reflections.  EM = Dirichlet + Neumann.
inline EnergyResult wedge_energy(const WedgeConfig& cfg, Bc bc, int max_order,
                                 const EngineParams& par = {}) {
    cfg.validate();
    if (max_order < 1 || max_order > 4) throw std::invalid_argument("wedge_energy: max_order in [1,4]");
    if (bc == Bc::Em) {
        EnergyResult d = wedge_energy(cfg, Bc::Dirichlet, max_order, par);
        EnergyResult n = wedge_energy(cfg, Bc::Neumann, max_order, par);
        EnergyResult em;
        em.channel = Bc::Em;
        em.outer_converged = d.outer_converged && n.outer_converged;
        em.series.per_order.resize(max_order);
        for (int i = 0; i < max_order; ++i)
            em.series.per_order[i] = d.series.per_order[i] + n.series.per_order[i];
        em.series.partial_sum = d.series.partial_sum + n.series.partial_sum;
        em.series.tail_estimate = d.series.tail_estimate + n.series.tail_estimate;
        em.series.converged = d.series.converged && n.series.converged;
        em.value = d.value + n.value;
        return em;
    }
    const bool use_lambda = detail::prefer_lambda_basis(cfg.theta0, cfg.phi0);
    // per-order p-integrals: integrand_n(p) = p * tr N^n(p)
    std::vector<double> order_values(max_order, 0.0);
    const QuadratureRule prule = make_rule(RuleKind::GaussLegendreMapped, par.n_energy, 0.6);
    bool outer_ok = true;
    std::vector<double> coarse(max_order, 0.0);
    auto accumulate = [&](const QuadratureRule& r, std::vector<double>& acc) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int i = 0; i < r.size(); ++i) {
            const double p = r.nodes[i];
            const std::vector<double> tr = use_lambda
                ? detail::traces_lambda(bc, max_order, p, cfg.theta0, cfg.phi0, par)
                : detail::traces_alpha(bc, max_order, p, cfg.theta0, cfg.phi0, par);
            for (int k = 0; k < max_order; ++k) acc[k] += r.weights[i] * p * tr[k];
        }
    };
    accumulate(prule, order_values);
    if (par.refine_outer) {
        const QuadratureRule pfine = make_rule(RuleKind::GaussLegendreMapped, 2 * par.n_energy, 0.6);
        accumulate(pfine, coarse);
        for (int k = 0; k < max_order; ++k) {
            if (std::abs(coarse[k] - order_values[k]) > 1e-4 * std::abs(coarse[k])) outer_ok = false;
            order_values[k] = coarse[k];
        }
    }
    EnergyResult res;
    res.channel = bc;
    res.outer_converged = outer_ok;
    res.series = reflection_series(
        [&](int n) { return order_values[n - 1] / (4.0 * M_PI); }, max_order, 4.0);
    res.value = -res.series.partial_sum;
    return res;
}

namespace detail {

// csc^3(x) sec(x) (2x - sin 2x), the shared second-reflection combination,
// with the small-angle series where the direct form cancels.
inline double csc3_sec_comb(double phi0) {
    const double a = std::abs(phi0);
    if (a < 0.05) {
        const double p2 = phi0 * phi0;
        return 4.0 / 3.0 + 16.0 * p2 / 15.0 + 0.37 * p2 * p2; // O(phi^6)
    }
    const double s = std::sin(a), c = std::cos(a);
    return (2.0 * a - std::sin(2.0 * a)) / (s * s * s * c);
}

} // namespace detail

enum class KnifeOrder { One, Two, Sum };

// Analytic knife-edge (theta0 = 0) energies through two reflections; returns
// the positive scaled quantity -E d^2/(hbar c L_z).
inline double knife_edge_closed_form(Bc bc, double phi0, KnifeOrder order) {
    if (!(std::abs(phi0) < M_PI_2)) throw std::domain_error("knife_edge_closed_form: |phi0| must be < pi/2 (area divergence)");
    const double sec = 1.0 / std::cos(phi0);
    const double G = detail::csc3_sec_comb(phi0);
    double f1, f2;
    if (bc == Bc::Em) {
        f1 = sec / (16.0 * M_PI * M_PI);
        f2 = (4.0 / 3.0 + G) / (256.0 * std::pow(M_PI, 3));
    } else {
        const double sgn = (bc == Bc::Dirichlet) ? 1.0 : -1.0;
        f1 = (sgn * M_PI / 8.0 + 0.5 * sec) / (16.0 * M_PI * M_PI);
        const double half_sec = 1.0 / std::cos(0.5 * phi0);
        f2 = (sgn * M_PI * M_PI / 64.0 * half_sec * half_sec + 1.0 / 12.0 + G / 16.0) /
             (32.0 * std::pow(M_PI, 3));
    }
    switch (order) {
    case KnifeOrder::One: return f1;
    case KnifeOrder::Two: return f2;
    case KnifeOrder::Sum: return f1 + f2;
    }
    throw std::invalid_argument("knife_edge_closed_form: bad order");
}

// One-reflection EM energy of a wedge with opening, -E d^2/(hbar c L_z).
inline double wedge_em_order1(double theta0, double phi0) {
    const double c1 = M_PI / (4.0 * (M_PI - theta0));
    const double t1 = std::tan(c1 * (M_PI - 2.0 * phi0));
    const double t2 = std::tan(c1 * (M_PI + 2.0 * phi0));
    return (t1 + t2) / (16.0 * M_PI * M_PI * 2.0 * (1.0 - theta0 / M_PI));
}

// Torque -dE/dphi0 of the one-reflection energy; analytic derivative.
// Positive torque drives phi0 toward pi/2.  Dirichlet and Neumann equal half
// the EM value at this order.
inline double wedge_torque(const WedgeConfig& cfg, Bc bc = Bc::Em) {
    cfg.validate();
    if (cfg.theta0 + std::abs(cfg.phi0) > M_PI_2 - 1e-6)
        throw std::domain_error("wedge_torque: face approaching the plate, torque diverges");
    const double c1 = M_PI / (4.0 * (M_PI - cfg.theta0));
    auto sec2 = [](double x) { const double c = std::cos(x); return 1.0 / (c * c); };
    const double dEM = (2.0 * c1 / (16.0 * M_PI * M_PI * 2.0 * (1.0 - cfg.theta0 / M_PI))) *
                       (sec2(c1 * (M_PI + 2.0 * cfg.phi0)) - sec2(c1 * (M_PI - 2.0 * cfg.phi0)));
    return (bc == Bc::Em) ? dEM : 0.5 * dEM;
}

// PFA reference for the fixed-face sweep of the hidden-face geometry: one
// face held at angle pi/2 - gamma_fixed to the plate while the opening
// psi = 2 theta0 varies.  Projected (plate-area) measure; the back face
// enters only once it tips past the vertical (psi > gamma_fixed).
inline double pfa_visibility_energy(double gamma_fixed, double psi) {
    if (!(gamma_fixed > 0.0 && gamma_fixed < M_PI_2)) throw std::domain_error("pfa_visibility_energy: fixed face angle out of range");
    const double pref = M_PI * M_PI / 1440.0;
    double v = std::tan(gamma_fixed);
    if (psi > gamma_fixed) v += std::tan(std::min(psi - gamma_fixed, M_PI_2 - 1e-12));
    return -pref * v;
}

} // namespace casimir::wedge
