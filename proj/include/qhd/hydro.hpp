#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qhd/nonlocal.hpp"

namespace qhd {

/// Madelung-side state: mass density and velocity potential (v = grad S).
struct HydroState {
    ScalarField rho;
    ScalarField S;
    double time = 0.0;
};

struct Monitors {
    double time = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double min_density = 0.0;
};

namespace detail {

// Internal stepping variables: w = ln(rho). The log form keeps the density
// positive by construction and evaluates the quantum term without dividing by
// a vanishing amplitude; see the integrator notes below.
struct WState {
    ScalarField w;
    ScalarField S;
};

struct HydroTerms {
    ScalarField phi;       // external potential samples
    double floor_log;      // ln(floor) at initialization
    double mask_on = 0.0;  // viscosity mask threshold in w
};

inline HydroTerms make_terms(const ScalarField& rho, const PhysicalParams& p) {
    HydroTerms t{potential_field(p.potential, rho.grid()),
                 std::log(p.floor_rel * rho.max())};
    t.mask_on = t.floor_log + p.damping.mask_offset;
    return t;
}

inline std::pair<ScalarField, ScalarField> rhs_w(const WState& s, const PhysicalParams& p,
                                                 const HydroTerms& t) {
    const Grid& g = s.w.grid();
    const ScalarField v = spectral_gradient(s.S);
    const ScalarField wp = spectral_gradient(s.w);
    const ScalarField lap_w = spectral_laplacian(s.w);
    const ScalarField lap_S = spectral_laplacian(s.S);

    ScalarField dw(g);
    for (int i = 0; i < g.n(); ++i) dw[i] = -v[i] * wp[i] - lap_S[i];

    const double h2 = p.hbar_kin * p.hbar_kin;
    ScalarField dS(g);
    for (int i = 0; i < g.n(); ++i) {
        const double Q = -0.25 * h2 * (lap_w[i] + 0.5 * wp[i] * wp[i]);
        double V = t.phi[i];
        if (p.pressure_term) V += p.kT_over_m * s.w[i];
        dS[i] = -0.5 * v[i] * v[i] - V - Q;
    }

    if (p.n_max >= 2) {
        const ScalarField rho_eff = s.w.map([](double w) { return std::exp(w); });
        for (int n = 2; n <= p.n_max; ++n) {
            double fact = 1.0;
            for (int k = 2; k <= 2 * n; ++k) fact *= k;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const double coef = sign * p.quantum_coupling() *
                                std::pow(p.a_squared(), n - 1) * p.moments->c2n(n) / fact;
            if (coef == 0.0) continue;
            const ScalarField ln_rho = spectral_laplacian_pow(rho_eff, n);
            const ScalarField lw = spectral_laplacian_pow(s.w, n);
            for (int i = 0; i < g.n(); ++i)
                dS[i] -= coef * (ln_rho[i] / rho_eff[i] + lw[i]);
        }
    }

    if (p.damping.viscosity_enabled) {
        const double nu = p.tail_viscosity();
        const ScalarField lap_Sv = lap_S;  // reuse
        for (int i = 0; i < g.n(); ++i) {
            const double m = 1.0 / (1.0 + std::exp((s.w[i] - t.mask_on) / p.damping.mask_width));
            dw[i] += nu * m * lap_w[i];
            dS[i] += nu * m * lap_Sv[i];
        }
    }
    if (p.damping.band_alpha > 0.0) {
        const ScalarField bw = band_damping(s.w, p.damping.band_k0_frac, p.damping.band_alpha);
        const ScalarField bS = band_damping(s.S, p.damping.band_k0_frac, p.damping.band_alpha);
        dw -= bw;
        dS -= bS;
    }
    return {std::move(dw), std::move(dS)};
}

inline double mass_of(const ScalarField& w) {
    double s = 0.0;
    for (int i = 0; i < w.size(); ++i) s += std::exp(w[i]);
    return s * w.grid().dx();
}

}  // namespace detail

/// Time derivatives of the Madelung system in velocity-potential form:
///   d(rho)/dt = -div(rho grad S)              (conservative flux form)
///   dS/dt     = -(grad S)^2/2 - V - Q - sum mu^(2n)
/// V = (kT/m) ln rho + phi with the pressure toggle honored.
inline std::pair<ScalarField, ScalarField> rhs(const HydroState& state,
                                               const PhysicalParams& p) {
    if (!state.rho.finite() || !(state.rho.max() > 0.0))
        throw solver_error("vacuum breakdown: density not positive at t=" +
                           std::to_string(state.time));
    const ScalarField w = log_floored_density(state.rho, p);
    const ScalarField rho_eff = w.map([](double wi) { return std::exp(wi); });
    const ScalarField v = spectral_gradient(state.S);
    const ScalarField drho = -1.0 * spectral_gradient(rho_eff * v);

    detail::HydroTerms t = detail::make_terms(state.rho, p);
    auto [dw, dS] = detail::rhs_w(detail::WState{w, state.S}, p, t);
    (void)dw;
    return {drho, std::move(dS)};
}

/// Classical RK4 update of (rho, S).
///
/// Stages are integrated in (ln rho, S) variables: the exponential map keeps
/// rho positive through every stage, which a floored linear update cannot
/// guarantee once the tail reaches the density floor. A conservative mass
/// projection (uniform shift of ln rho) removes the quadrature-level mass
/// residual of the log-form update each step.
inline HydroState step_rk4(const HydroState& state, double dt, const PhysicalParams& p) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be > 0");
    const Grid& g = state.rho.grid();

    detail::WState s{log_floored_density(state.rho, p), state.S};
    detail::HydroTerms t = detail::make_terms(state.rho, p);
    const double mass0 = detail::mass_of(s.w);

    auto [k1w, k1s] = detail::rhs_w(s, p, t);
    auto [k2w, k2s] =
        detail::rhs_w({s.w + 0.5 * dt * k1w, s.S + 0.5 * dt * k1s}, p, t);
    auto [k3w, k3s] =
        detail::rhs_w({s.w + 0.5 * dt * k2w, s.S + 0.5 * dt * k2s}, p, t);
    auto [k4w, k4s] = detail::rhs_w({s.w + dt * k3w, s.S + dt * k3s}, p, t);

    ScalarField w(g), S(g);
    const double c = dt / 6.0;
    for (int i = 0; i < g.n(); ++i) {
        w[i] = s.w[i] + c * (k1w[i] + 2.0 * k2w[i] + 2.0 * k3w[i] + k4w[i]);
        S[i] = s.S[i] + c * (k1s[i] + 2.0 * k2s[i] + 2.0 * k3s[i] + k4s[i]);
    }

    if (!w.finite() || !S.finite()) {
        double mn = state.rho.min();
        throw solver_error("step_rk4: non-finite state at t=" + std::to_string(state.time) +
                           " (min rho=" + std::to_string(mn) + ")");
    }
    if (p.project_mass) {
        const double mass = detail::mass_of(w);
        const double shift = std::log(mass0 / mass);
        for (int i = 0; i < g.n(); ++i) w[i] += shift;
    }

    HydroState out{ScalarField(g), std::move(S), state.time + dt};
    for (int i = 0; i < g.n(); ++i) out.rho[i] = std::exp(w[i]);
    return out;
}

/// Conserved-energy monitor per the effective free-energy density plus the
/// kinetic term: E = int[ rho v^2/2 + rho phi + (kT/m) rho ln rho (pressure)
///                        + (h^2/8) rho (grad ln rho)^2 ] dx
inline double energy(const HydroState& state, const PhysicalParams& p) {
    const ScalarField w = log_floored_density(state.rho, p);
    const ScalarField v = spectral_gradient(state.S);
    const ScalarField wp = spectral_gradient(w);
    const ScalarField phi = potential_field(p.potential, state.rho.grid());
    const double qc = 0.125 * p.hbar_kin * p.hbar_kin;
    double e = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        const double r = std::exp(w[i]);
        double d = 0.5 * r * v[i] * v[i] + r * phi[i] + qc * r * wp[i] * wp[i];
        if (p.pressure_term) d += p.kT_over_m * r * w[i];
        e += d;
    }
    return e * state.rho.grid().dx();
}

inline Monitors monitors_of(const HydroState& state, const PhysicalParams& p) {
    return Monitors{state.time, integrate(state.rho), energy(state, p), state.rho.min()};
}

struct Trajectory {
    std::vector<HydroState> snapshots;
    std::vector<Monitors> monitors;
};

/// Integrate to t_end with fixed dt, sampling every sample_every steps
/// (the initial and final states are always included).
inline Trajectory run(const HydroState& initial, const PhysicalParams& p, double t_end,
                      double dt, int sample_every) {
    if (!(t_end > 0.0)) throw std::invalid_argument("run: t_end must be > 0");
    if (sample_every < 1) throw std::invalid_argument("run: sample_every >= 1");
    const long n_steps = std::lround(t_end / dt);

    Trajectory traj;
    HydroState s = initial;
    traj.snapshots.push_back(s);
    traj.monitors.push_back(monitors_of(s, p));
    for (long i = 0; i < n_steps; ++i) {
        s = step_rk4(s, dt, p);
        if ((i + 1) % sample_every == 0 || i + 1 == n_steps) {
            traj.snapshots.push_back(s);
            traj.monitors.push_back(monitors_of(s, p));
        }
    }
    return traj;
}

}  // namespace qhd
