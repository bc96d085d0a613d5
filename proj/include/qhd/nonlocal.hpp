#pragma once

#include <cmath>

#include "qhd/params.hpp"
#include "qhd/spectral.hpp"

namespace qhd {

/// Logarithm of the floored density. The floor is an additive blend in log
/// space, w = w_f + tau * softplus((ln rho - w_f)/tau) with w_f = ln(floor);
/// tau = 1 is exactly ln(rho + floor). A smooth blend instead of a hard clamp
/// keeps the floor transition spectrally representable.
inline ScalarField log_floored_density(const ScalarField& rho, const PhysicalParams& p) {
    const double rho_max = rho.max();
    if (!(rho_max > 0.0) || !rho.finite())
        throw solver_error("density field has no positive values");
    const double wf = std::log(p.floor_rel * rho_max);
    const double tau = p.blend_tau;
    return rho.map([wf, tau](double r) {
        if (!(r > 0.0)) return wf;
        const double z = (std::log(r) - wf) / tau;
        if (z > 36.0) return wf + tau * z;  // softplus(z) ~ z
        return wf + tau * std::log1p(std::exp(z));
    });
}

inline ScalarField floored_density(const ScalarField& rho, const PhysicalParams& p) {
    return log_floored_density(rho, p).map([](double w) { return std::exp(w); });
}

/// Thermodynamic chemical potential (kT/m)(ln rho + 1) + phi; with the
/// pressure term disabled only the external potential remains.
inline ScalarField thermo_potential(const ScalarField& rho, const PhysicalParams& p) {
    ScalarField phi = potential_field(p.potential, rho.grid());
    if (!p.pressure_term) return phi;
    ScalarField w = log_floored_density(rho, p);
    for (int i = 0; i < w.size(); ++i) phi[i] += p.kT_over_m * (w[i] + 1.0);
    return phi;
}

enum class BohmForm {
    SqrtRho,     // -(h^2/2) lap(sqrt(rho)) / sqrt(rho)
    LogDensity,  // -(h^2/4) [lap(ln rho) + (grad ln rho)^2 / 2]
};

/// Bohm quantum potential Q. Both evaluation routes are algebraically
/// identical; the sqrt form is the default.
inline ScalarField bohm_potential(const ScalarField& rho, const PhysicalParams& p,
                                  BohmForm form = BohmForm::SqrtRho) {
    const ScalarField w = log_floored_density(rho, p);
    const double h2 = p.hbar_kin * p.hbar_kin;
    if (form == BohmForm::SqrtRho) {
        const ScalarField amp = w.map([](double wi) { return std::exp(0.5 * wi); });
        ScalarField lap = spectral_laplacian(amp);
        for (int i = 0; i < lap.size(); ++i) lap[i] = -0.5 * h2 * lap[i] / amp[i];
        return lap;
    }
    const ScalarField wp = spectral_gradient(w);
    ScalarField lap = spectral_laplacian(w);
    for (int i = 0; i < lap.size(); ++i)
        lap[i] = -0.25 * h2 * (lap[i] + 0.5 * wp[i] * wp[i]);
    return lap;
}

/// Korteweg body force per unit mass, -grad Q.
inline ScalarField korteweg_force(const ScalarField& rho, const PhysicalParams& p) {
    return -1.0 * spectral_gradient(bohm_potential(rho, p));
}

/// Higher-order nonlocal potential
///   mu^(2n) = (kT/m) (-1)^n c_{2n}/(2n)! a^{2n} [ rho^{-1} lap^n rho + lap^n ln rho ]
/// with (kT/m) a^{2n} expressed through the thermal identification as
/// (h^2/4) a^{2(n-1)}.
inline ScalarField higher_order_potential(const ScalarField& rho, int n,
                                          const PhysicalParams& p) {
    if (n < 2) throw std::invalid_argument("higher_order_potential: n >= 2");
    if (n > p.n_max)
        throw config_error("higher_order_potential: n exceeds configured n_max");
    if (!p.moments) throw config_error("higher_order_potential: no moment table");
    const double c2n = p.moments->c2n(n);

    const ScalarField w = log_floored_density(rho, p);
    const ScalarField re = w.map([](double wi) { return std::exp(wi); });

    double fact = 1.0;
    for (int k = 2; k <= 2 * n; ++k) fact *= k;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double coef = sign * p.quantum_coupling() *
                        std::pow(p.a_squared(), n - 1) * c2n / fact;
    if (coef == 0.0) return ScalarField(rho.grid(), 0.0);

    const ScalarField lap_rho = spectral_laplacian_pow(re, n);
    const ScalarField lap_w = spectral_laplacian_pow(w, n);
    ScalarField out(rho.grid());
    for (int i = 0; i < out.size(); ++i)
        out[i] = coef * (lap_rho[i] / re[i] + lap_w[i]);
    return out;
}

/// Total specific force F = -grad[ mu_th + Q + sum_{n>=2} mu^(2n) ].
inline ScalarField total_specific_force(const ScalarField& rho, const PhysicalParams& p) {
    ScalarField mu = thermo_potential(rho, p);
    mu += bohm_potential(rho, p);
    for (int n = 2; n <= p.n_max; ++n) mu += higher_order_potential(rho, n, p);
    return -1.0 * spectral_gradient(mu);
}

/// 1D quantum stress P_Q = -(h^2/4) rho d^2(ln rho)/dx^2 (the xx component of
/// the kinematic stress tensor; its divergence equals rho grad Q).
inline ScalarField quantum_stress(const ScalarField& rho, const PhysicalParams& p) {
    const ScalarField w = log_floored_density(rho, p);
    const ScalarField lap_w = spectral_laplacian(w);
    const double coef = -0.25 * p.hbar_kin * p.hbar_kin;
    ScalarField out(rho.grid());
    for (int i = 0; i < out.size(); ++i)
        out[i] = coef * std::exp(w[i]) * lap_w[i];
    return out;
}

inline ScalarField quantum_stress_divergence(const ScalarField& rho,
                                             const PhysicalParams& p) {
    return spectral_gradient(quantum_stress(rho, p));
}

}  // namespace qhd
