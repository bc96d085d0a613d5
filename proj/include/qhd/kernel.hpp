#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <variant>
#include <vector>

#include "qhd/errors.hpp"

namespace qhd {

/// Hard-core repulsion of radius d plus an exponentially decaying attractive
/// tail of range ell:
///   u(x) = n0            for x < d
///   u(x) = -n1 exp(-x/ell) for x > d
struct HardCoreExponential {
    double n0 = 0.0;
    double n1 = 0.0;
    double d = 1.0;
    double ell = 1.0;
};

/// Radial profile given at sample radii, linearly interpolated, zero beyond
/// the last sample. tail_cutoff limits the integration range.
struct TabulatedKernel {
    std::vector<double> radii;
    std::vector<double> values;
    double tail_cutoff = 0.0;  // 0 means radii.back()
};

using KernelSpec = std::variant<HardCoreExponential, TabulatedKernel>;

enum class MomentSource { Quadrature, ClosedForm };

/// a^2 and the normalized central moments c_{2n} of a kernel.
struct MomentTable {
    double a_squared = 0.0;
    std::map<int, double> c;  // n -> c_{2n}
    MomentSource source = MomentSource::Quadrature;

    double c2n(int n) const {
        auto it = c.find(n);
        if (it == c.end())
            throw config_error("moment table does not contain c_" + std::to_string(2 * n));
        return it->second;
    }
    bool has(int n) const { return c.count(n) != 0; }
};

namespace detail {

inline void validate_kernel(const HardCoreExponential& k) {
    if (!(k.d > 0.0)) throw config_error("kernel: core radius d must be > 0");
    if (!(k.ell > 0.0)) throw config_error("kernel: tail range ell must be > 0");
    if (k.n1 < 0.0) throw config_error("kernel: tail amplitude n1 must be >= 0");
}

inline void validate_kernel(const TabulatedKernel& k) {
    if (k.radii.size() < 2 || k.radii.size() != k.values.size())
        throw config_error("kernel: tabulated profile needs matching radii/values, >= 2 points");
    for (size_t i = 0; i < k.radii.size(); ++i) {
        if (!std::isfinite(k.radii[i]) || !std::isfinite(k.values[i]))
            throw config_error("kernel: tabulated profile contains non-finite entries");
        if (i > 0 && !(k.radii[i] > k.radii[i - 1]))
            throw config_error("kernel: tabulated radii must be strictly ascending");
    }
    if (!(k.radii.front() >= 0.0))
        throw config_error("kernel: tabulated radii must be non-negative");
}

inline double adaptive_integral(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, 1e-13);
}

// Upper incomplete gamma for integer s >= 1:
//   Gamma(s, y) = (s-1)! e^{-y} sum_{k=0}^{s-1} y^k / k!
inline double upper_gamma_int(int s, double y) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < s; ++k) {
        term *= y / k;
        sum += term;
    }
    double fact = 1.0;
    for (int k = 2; k < s; ++k) fact *= k;
    return fact * std::exp(-y) * sum;
}

}  // namespace detail

/// 3D radial moment m_{2n} = \int x^{2n} u(x) d^3x = 4 pi \int_0^inf x^{2n+2} u(x) dx.
/// Piecewise adaptive quadrature split at the core radius; the exponential tail
/// beyond 50 ell is added as an analytic incomplete-gamma remainder.
inline double radial_moment(const KernelSpec& kernel, int order) {
    if (order < 0 || order % 2 != 0)
        throw std::invalid_argument("radial_moment: order must be even and >= 0");
    const double four_pi = 4.0 * std::numbers::pi;
    const int p = order + 2;  // x^{2n+2} weight

    if (const auto* k = std::get_if<HardCoreExponential>(&kernel)) {
        detail::validate_kernel(*k);
        const double core = k->n0 == 0.0
                                ? 0.0
                                : k->n0 * detail::adaptive_integral(
                                              [p](double x) { return std::pow(x, p); }, 0.0,
                                              k->d);
        double tail = 0.0;
        if (k->n1 != 0.0) {
            const double cutoff = std::max(50.0 * k->ell, k->d);
            const double ell = k->ell;
            tail = -k->n1 * detail::adaptive_integral(
                                [p, ell](double x) { return std::pow(x, p) * std::exp(-x / ell); },
                                k->d, cutoff);
            // analytic remainder of the exponential tail beyond the cutoff
            tail -= k->n1 * std::pow(ell, p + 1) *
                    detail::upper_gamma_int(p + 1, cutoff / ell);
        }
        return four_pi * (core + tail);
    }

    const auto& k = std::get<TabulatedKernel>(kernel);
    detail::validate_kernel(k);
    const double cutoff = k.tail_cutoff > 0.0 ? k.tail_cutoff : k.radii.back();
    double vmax = 0.0;
    for (double v : k.values) vmax = std::max(vmax, std::abs(v));
    if (cutoff >= k.radii.back() && std::abs(k.values.back()) > 1e-10 * vmax)
        throw solver_error("radial_moment: tabulated kernel does not decay at its last sample");
    double total = 0.0;
    for (size_t i = 0; i + 1 < k.radii.size(); ++i) {
        double a = k.radii[i], b = std::min(k.radii[i + 1], cutoff);
        if (!(b > a)) break;
        const double x0 = k.radii[i], x1 = k.radii[i + 1];
        const double v0 = k.values[i], v1 = k.values[i + 1];
        total += detail::adaptive_integral(
            [=](double x) {
                double u = v0 + (v1 - v0) * (x - x0) / (x1 - x0);
                return std::pow(x, p) * u;
            },
            a, b);
    }
    return four_pi * total;
}

/// Enforce the normalization condition \int u d^3x = 1. For the hard-core form
/// this solves n0 from the exact quadrature (n1, d, ell held fixed); for a
/// tabulated profile the values are rescaled by 1/m0.
inline KernelSpec normalize(const KernelSpec& kernel) {
    if (const auto* k = std::get_if<HardCoreExponential>(&kernel)) {
        HardCoreExponential unit_core{1.0, 0.0, k->d, k->ell};
        HardCoreExponential tail_only{0.0, k->n1, k->d, k->ell};
        const double core_unit = radial_moment(KernelSpec(unit_core), 0);
        const double tail = radial_moment(KernelSpec(tail_only), 0);
        if (std::abs(core_unit) < 1e-300)
            throw solver_error("normalize: degenerate core, m0 cannot be solved");
        HardCoreExponential out = *k;
        out.n0 = (1.0 - tail) / core_unit;
        return out;
    }
    const double m0 = radial_moment(kernel, 0);
    if (std::abs(m0) < 1e-300)
        throw solver_error("normalize: m0 vanishes, normalization undefined");
    TabulatedKernel out = std::get<TabulatedKernel>(kernel);
    for (double& v : out.values) v /= m0;
    return out;
}

/// a^2 = -m_2; positive only for net-attractive kernels.
inline double interaction_length_sq(const KernelSpec& kernel) {
    const double a2 = -radial_moment(kernel, 2);
    if (!(a2 > 0.0))
        throw solver_error("kernel not net-attractive; a^2 undefined");
    return a2;
}

/// c_{2n} = (-1)^n m_{2n} / a^{2n}; c_2 == 1 by construction.
inline double normalized_moment_c2n(const KernelSpec& kernel, int n) {
    if (n < 1) throw std::invalid_argument("normalized_moment_c2n: n >= 1");
    const double a2 = interaction_length_sq(kernel);
    const double m2n = radial_moment(kernel, 2 * n);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * m2n / std::pow(a2, n);
}

/// Closed form for the hard-core/exponential kernel in the d << ell limit:
///   c_{2n} = (-1)^{n+1} (2n+2)!/24 * (ell/a)^{2(n-1)}
inline double closed_form_c2n(int n, double ell_over_a) {
    if (n < 1) throw std::invalid_argument("closed_form_c2n: n >= 1");
    if (!(ell_over_a > 0.0)) throw std::invalid_argument("closed_form_c2n: ell/a > 0");
    if (n > 84) throw std::overflow_error("closed_form_c2n: factorial overflow");
    double fact = 1.0;
    for (int k = 2; k <= 2 * n + 2; ++k) fact *= k;
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    return sign * (fact / 24.0) * std::pow(ell_over_a, 2 * (n - 1));
}

/// Quadrature moment table up to c_{2 n_max}. c_2 is pinned to 1 exactly.
inline MomentTable moment_table(const KernelSpec& kernel, int n_max = 4) {
    MomentTable t;
    t.source = MomentSource::Quadrature;
    t.a_squared = interaction_length_sq(kernel);
    t.c[1] = 1.0;
    for (int n = 2; n <= n_max; ++n) t.c[n] = normalized_moment_c2n(kernel, n);
    return t;
}

/// Closed-form table parametrized by ell/a (and a^2) for the d -> 0 limit.
inline MomentTable closed_form_table(double ell_over_a, double a_squared, int n_max = 4) {
    MomentTable t;
    t.source = MomentSource::ClosedForm;
    t.a_squared = a_squared;
    for (int n = 1; n <= n_max; ++n) t.c[n] = closed_form_c2n(n, ell_over_a);
    return t;
}

}  // namespace qhd
