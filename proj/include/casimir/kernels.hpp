#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "casimir/quadrature.hpp"

// Continuous-index operator machinery: symmetric Nystrom discretization so
// that tr A^n equals the nested quadrature of the kernel, the multiple
// reflection series -sum_n tr N^n / n with a power-law tail estimate, and the
// outer energy integral with a two-grid error estimate.

namespace casimir {

enum class BasisTag { Alpha, Lambda, PlaneWave };
enum class ChannelBc { Dirichlet, Neumann, EmM, EmN, EmR, Unset };

struct ChannelTag {
    ChannelBc bc = ChannelBc::Unset;
    int m = 0;
};

template <class Scalar>
struct KernelMatrix {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;
    QuadratureRule rule;
    BasisTag basis_tag = BasisTag::Alpha;
    ChannelTag channel;

    int size() const { return static_cast<int>(values.rows()); }
};

using KernelMatrixR = KernelMatrix<double>;
using KernelMatrixC = KernelMatrix<std::complex<double>>;

// A[i][j] = sqrt(w_i) K(x_i, x_j) sqrt(w_j); traces of powers then equal the
// nested quadratures of the continuous kernel.
template <class Scalar, class F>
KernelMatrix<Scalar> discretize(F&& kernel_fn, const QuadratureRule& rule, bool symmetrize,
                                BasisTag basis = BasisTag::Alpha, ChannelTag channel = {}) {
    const int n = rule.size();
    KernelMatrix<Scalar> A;
    A.rule = rule;
    A.basis_tag = basis;
    A.channel = channel;
    A.values.resize(n, n);
    std::vector<double> sw(n);
    for (int i = 0; i < n; ++i) sw[i] = std::sqrt(rule.weights[i]);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Scalar v = kernel_fn(rule.nodes[i], rule.nodes[j]);
            if (!std::isfinite(std::abs(v)))
                throw std::runtime_error("discretize: kernel returned a non-finite value");
            A.values(i, j) = sw[i] * v * sw[j];
        }
    }
    if (symmetrize) A.values = ((A.values + A.values.transpose()) * 0.5).eval();
    return A;
}

template <class Scalar>
Scalar trace_power(const KernelMatrix<Scalar>& A, int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("trace_power: order must lie in [1,6]");
    if (A.values.rows() != A.values.cols()) throw std::invalid_argument("trace_power: matrix not square");
    if (n == 1) return A.values.trace();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> P = A.values;
    for (int k = 2; k <= n; ++k) P = (P * A.values).eval();
    return P.trace();
}

// All trace powers 1..n_max in one pass.
template <class Scalar>
std::vector<Scalar> trace_powers(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A, int n_max) {
    std::vector<Scalar> tr(n_max);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> P = A;
    tr[0] = P.trace();
    for (int k = 2; k <= n_max; ++k) {
        P = (P * A).eval();
        tr[k - 1] = P.trace();
    }
    return tr;
}

struct ReflectionSeriesResult {
    std::vector<double> per_order; // tr N^n / n
    double partial_sum = 0.0;
    double tail_estimate = 0.0;
    bool converged = false;
};

// Assemble the series from per-order traces tr N^n.  The tail extrapolates
// |a_N| (N/n)^{1+p} past the last computed order; non-monotone magnitudes
// mark the result as unconverged regardless of tail size.
inline ReflectionSeriesResult reflection_series(const std::function<double(int)>& trace_of_power,
                                                int max_order, double falloff_exponent = 4.0) {
    if (max_order < 1 || max_order > 6) throw std::invalid_argument("reflection_series: max_order in [1,6]");
    ReflectionSeriesResult r;
    r.per_order.resize(max_order);
    for (int n = 1; n <= max_order; ++n) {
        r.per_order[n - 1] = trace_of_power(n) / n;
        r.partial_sum += r.per_order[n - 1];
    }
    const int N = max_order;
    const double aN = std::abs(r.per_order[N - 1]);
    const double p1 = 1.0 + falloff_exponent;
    double tail = 0.0;
    int n = N + 1;
    for (; n <= N + 400; ++n) tail += aN * std::pow(static_cast<double>(N) / n, p1);
    tail += aN * std::pow(static_cast<double>(N), p1) / (falloff_exponent * std::pow(static_cast<double>(n), falloff_exponent));
    r.tail_estimate = tail;
    bool monotone = true;
    for (int k = 1; k < max_order; ++k)
        if (std::abs(r.per_order[k]) > std::abs(r.per_order[k - 1])) monotone = false;
    r.converged = monotone && (r.tail_estimate < 1e-3 * std::abs(r.partial_sum));
    return r;
}

template <class Scalar>
ReflectionSeriesResult reflection_series(const KernelMatrix<Scalar>& A, int max_order,
                                         double falloff_exponent = 4.0) {
    auto traces = trace_powers(A.values, max_order);
    return reflection_series(
        [&](int n) {
            const Scalar t = traces[n - 1];
            if constexpr (std::is_same_v<Scalar, double>) return t;
            else return t.real();
        },
        max_order, falloff_exponent);
}

enum class Weight { None, Linear };

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// int_0^inf f(x) x^{0 or 1} dx on the given rule, with a two-grid Richardson
// error estimate from a rule of doubled size.
template <class F>
IntegralResult energy_integral(F&& integrand, Weight w, const QuadratureRule& rule) {
    auto apply = [&](const QuadratureRule& r) {
        double s = 0.0;
        for (int i = 0; i < r.size(); ++i) {
            const double x = r.nodes[i];
            const double fx = integrand(x);
            s += r.weights[i] * fx * (w == Weight::Linear ? x : 1.0);
        }
        return s;
    };
    const double coarse = apply(rule);
    const QuadratureRule fine = make_rule(rule.kind, 2 * rule.size(), rule.scale);
    const double refined = apply(fine);
    IntegralResult res;
    res.value = refined;
    res.error_estimate = std::abs(refined - coarse);
    res.converged = res.error_estimate <= 1e-4 * std::max(std::abs(refined), 1e-300);
    return res;
}

} // namespace casimir
