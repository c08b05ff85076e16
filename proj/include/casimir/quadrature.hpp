#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir {

// Quadrature rules used throughout the library. Semi-infinite integrals are
// done through the rational map x = scale*u/(1-u), u in (0,1), so that the
// node density tracks an exponential damping of width ~scale.
enum class RuleKind { GaussLegendreMapped, TanhSinh, GaussLaguerre };

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    RuleKind kind = RuleKind::GaussLegendreMapped;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double scale = 1.0;

    int size() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline void gauss_legendre_base(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

} // namespace detail

// Gauss-Legendre rule on a finite interval [a,b].
inline QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    std::vector<double> x, w;
    detail::gauss_legendre_base(n, x, w);
    QuadratureRule r;
    r.kind = RuleKind::GaussLegendreMapped;
    r.lo = a;
    r.hi = b;
    r.scale = b - a;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * x[i];
        r.weights[i] = 0.5 * (b - a) * w[i];
    }
    return r;
}

// Factory for the rule kinds named in the engine configuration.
//  - GaussLegendreMapped: (0,inf) through x = scale*u/(1-u)
//  - TanhSinh:            (0,scale), double-exponential nodes
//  - GaussLaguerre:       (0,inf), Laguerre nodes with the e^{-x} weight
//    folded back in (weights integrate plain dx); nodes rescaled by `scale`.
inline QuadratureRule make_rule(RuleKind kind, int n_nodes, double scale) {
    if (n_nodes < 4) throw std::invalid_argument("make_rule: need at least 4 nodes");
    if (!(scale > 0.0)) throw std::invalid_argument("make_rule: scale must be positive");
    QuadratureRule r;
    r.kind = kind;
    r.scale = scale;
    switch (kind) {
    case RuleKind::GaussLegendreMapped: {
        std::vector<double> x, w;
        detail::gauss_legendre_base(n_nodes, x, w);
        r.nodes.resize(n_nodes);
        r.weights.resize(n_nodes);
        for (int i = 0; i < n_nodes; ++i) {
            const double u = 0.5 * (x[i] + 1.0);
            const double du = 0.5 * w[i];
            const double om = 1.0 - u;
            r.nodes[i] = scale * u / om;
            r.weights[i] = du * scale / (om * om);
        }
        break;
    }
    case RuleKind::TanhSinh: {
        // finite interval (0, scale)
        r.hi = scale;
        const int half = n_nodes / 2;
        const double h = 7.0 / n_nodes; // outermost |t| ~ 3.5
        for (int k = -half; k <= half; ++k) {
            const double t = k * h;
            const double s = std::sinh(t);
            const double u = std::tanh(0.5 * M_PI * s); // in (-1,1)
            const double ch = std::cosh(0.5 * M_PI * s);
            const double w = h * 0.5 * M_PI * std::cosh(t) / (ch * ch);
            const double node = 0.5 * scale * (1.0 + u);
            if (node <= 0.0 || node >= scale || w < 1e-300) continue;
            r.nodes.push_back(node);
            r.weights.push_back(0.5 * scale * w);
        }
        break;
    }
    case RuleKind::GaussLaguerre: {
        // Newton iteration on L_n with initial guesses from Stroud/Secrest.
        const int n = n_nodes;
        std::vector<double> x(n), w(n);
        double z = 0.0;
        for (int i = 0; i < n; ++i) {
            if (i == 0) z = 3.0 / (1.0 + 2.4 * n);
            else if (i == 1) z += 15.0 / (1.0 + 2.5 * n);
            else z += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (z - x[i - 2]);
            double pp = 0.0;
            for (int iter = 0; iter < 200; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0 - z) * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (p0 - p1) / z;
                double dz = p0 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-14 * std::max(1.0, z)) break;
            }
            x[i] = z;
            w[i] = 1.0 / (z * pp * pp); // e^{-x}-weighted Gauss-Laguerre weight
        }
        // fold back the e^{-x} weight and rescale
        for (int i = 0; i < n; ++i) {
            r.nodes.push_back(scale * x[i]);
            r.weights.push_back(scale * w[i] * std::exp(x[i]));
        }
        break;
    }
    default:
        throw std::invalid_argument("make_rule: unknown rule kind");
    }
    return r;
}

// Symmetric full-line rule built from a half-line rule (nodes mirrored).
inline QuadratureRule mirror_full_line(const QuadratureRule& half) {
    QuadratureRule r;
    r.kind = half.kind;
    r.scale = half.scale;
    r.lo = -std::numeric_limits<double>::infinity();
    const int n = half.size();
    r.nodes.resize(2 * n);
    r.weights.resize(2 * n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = -half.nodes[n - 1 - i];
        r.weights[i] = half.weights[n - 1 - i];
        r.nodes[n + i] = half.nodes[i];
        r.weights[n + i] = half.weights[i];
    }
    return r;
}

template <class F>
double integrate(const QuadratureRule& r, F&& f) {
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

} // namespace casimir
