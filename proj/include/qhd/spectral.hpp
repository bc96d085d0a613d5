#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "qhd/errors.hpp"
#include "qhd/fft.hpp"
#include "qhd/grid.hpp"

namespace qhd {

namespace detail {

inline void require_finite(const ScalarField& f, const char* op) {
    if (!f.finite()) throw solver_error(std::string(op) + ": non-finite input values");
}

// Apply a (complex) multiplier m(k) to the half spectrum of f, k = 2*pi*j/L.
template <typename Mult>
ScalarField apply_spectral(const ScalarField& f, Mult&& mult) {
    const Grid& g = f.grid();
    const int n = g.n();
    auto& plans = fft::plans_for(n);
    double* r = plans.real_buf();
    for (int i = 0; i < n; ++i) r[i] = f[i];
    plans.forward_r2c();
    std::complex<double>* c = plans.half_buf();
    const double dk = 2.0 * std::numbers::pi / g.length();
    const double norm = 1.0 / n;
    for (int j = 0; j < plans.nc(); ++j) c[j] *= mult(j * dk, j) * norm;
    plans.backward_c2r();
    ScalarField out(g);
    for (int i = 0; i < n; ++i) out[i] = r[i];
    return out;
}

}  // namespace detail

/// First derivative by Fourier differentiation (the Nyquist mode of an odd
/// derivative is not representable and is set to zero).
inline ScalarField spectral_gradient(const ScalarField& f) {
    detail::require_finite(f, "spectral_gradient");
    const int nyq = f.grid().n() / 2;
    return detail::apply_spectral(f, [nyq](double k, int j) -> std::complex<double> {
        if (j == nyq) return {0.0, 0.0};
        return {0.0, k};
    });
}

/// Second derivative (multiplier -k^2).
inline ScalarField spectral_laplacian(const ScalarField& f) {
    detail::require_finite(f, "spectral_laplacian");
    return detail::apply_spectral(
        f, [](double k, int) -> std::complex<double> { return {-k * k, 0.0}; });
}

/// 2n-th derivative, multiplier (-k^2)^n, in a single transform pair.
inline ScalarField spectral_laplacian_pow(const ScalarField& f, int npow) {
    if (npow < 1) throw std::invalid_argument("spectral_laplacian_pow: npow >= 1");
    detail::require_finite(f, "spectral_laplacian_pow");
    return detail::apply_spectral(f, [npow](double k, int) -> std::complex<double> {
        return {std::pow(-k * k, npow), 0.0};
    });
}

/// Periodic antiderivative with zero mean (multiplier 1/(ik), k != 0).
inline ScalarField spectral_antiderivative(const ScalarField& f) {
    detail::require_finite(f, "spectral_antiderivative");
    const int nyq = f.grid().n() / 2;
    return detail::apply_spectral(f, [nyq](double k, int j) -> std::complex<double> {
        if (j == 0 || j == nyq) return {0.0, 0.0};
        return {0.0, -1.0 / k};
    });
}

/// Trapezoid-free periodic quadrature: sum(values) * dx, spectrally accurate
/// for smooth periodic fields.
inline double integrate(const ScalarField& f) {
    detail::require_finite(f, "integrate");
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f[i];
    return s * f.grid().dx();
}

/// Zero the top third of the spectrum (2/3-rule dealiasing for products).
inline ScalarField dealias_two_thirds(const ScalarField& f) {
    detail::require_finite(f, "dealias_two_thirds");
    const int cut = (2 * (f.grid().n() / 2)) / 3;
    return detail::apply_spectral(f, [cut](double, int j) -> std::complex<double> {
        return {j <= cut ? 1.0 : 0.0, 0.0};
    });
}

/// Quadratic high-band damping rates: rate(k) = amplitude * ((k/kmax - k0)/(1 - k0))^2
/// for k/kmax > k0, else 0. Used as -rate*f sink terms by the time integrator.
inline ScalarField band_damping(const ScalarField& f, double k0_frac, double amplitude) {
    detail::require_finite(f, "band_damping");
    const double kmax = std::numbers::pi / f.grid().dx();
    return detail::apply_spectral(f, [=](double k, int) -> std::complex<double> {
        double z = (k / kmax - k0_frac) / (1.0 - k0_frac);
        if (z <= 0.0) return {0.0, 0.0};
        return {amplitude * z * z, 0.0};
    });
}

}  // namespace qhd
