#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qhd/hydro.hpp"

namespace qhd {

/// Schrodinger-oracle state (kinematic convention psi = sqrt(rho) e^{iS/h}).
struct WaveState {
    ComplexField psi;
    double time = 0.0;
};

struct SplitStepDiag {
    int floored_points = 0;  // |psi|^2 floored inside the log nonlinearity
};

namespace detail {

inline void half_potential_phase(WaveState& s, double dt, const PhysicalParams& p,
                                 const ScalarField& phi, SplitStepDiag* diag) {
    const int n = s.psi.size();
    const double inv_h = 1.0 / p.hbar_kin;
    if (!p.pressure_term) {
        for (int i = 0; i < n; ++i) {
            const double ph = -phi[i] * 0.5 * dt * inv_h;
            s.psi[i] *= std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return;
    }
    double amax = 0.0;
    for (int i = 0; i < n; ++i) amax = std::max(amax, std::norm(s.psi[i]));
    const double floor = p.floor_rel * amax;
    for (int i = 0; i < n; ++i) {
        double a2 = std::norm(s.psi[i]);
        if (a2 < floor) {
            a2 = floor;
            if (diag) ++diag->floored_points;
        }
        const double V = phi[i] + p.kT_over_m * std::log(a2);
        const double ph = -V * 0.5 * dt * inv_h;
        s.psi[i] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
}

inline void kinetic_phase(WaveState& s, double dt, const PhysicalParams& p) {
    const Grid& g = s.psi.grid();
    const int n = g.n();
    auto& plans = fft::plans_for(n);
    std::complex<double>* in = plans.cplx_in();
    std::complex<double>* out = plans.cplx_out();
    for (int i = 0; i < n; ++i) in[i] = s.psi[i];
    plans.forward_c2c();
    const double dk = 2.0 * std::numbers::pi / g.length();
    const double c = -0.5 * p.hbar_kin * dt;
    const double norm = 1.0 / n;
    for (int j = 0; j < n; ++j) {
        const int m = (j <= n / 2) ? j : j - n;
        const double k = m * dk;
        const double ph = c * k * k;
        out[j] *= std::complex<double>(std::cos(ph), std::sin(ph)) * norm;
    }
    for (int i = 0; i < n; ++i) in[i] = out[i];
    plans.backward_c2c();
    for (int i = 0; i < n; ++i) s.psi[i] = out[i];
}

}  // namespace detail

/// Strang splitting for i h dpsi/dt = -(h^2/2) lap psi + V psi, second order
/// in dt. With the pressure term enabled V includes the logarithmic
/// self-interaction (kT/m) ln|psi|^2, which commutes with the phase step so
/// the splitting structure is unchanged.
inline WaveState split_step(const WaveState& state, double dt, const PhysicalParams& p,
                            SplitStepDiag* diag = nullptr) {
    if (!(dt > 0.0)) throw std::invalid_argument("split_step: dt must be > 0");
    const ScalarField phi = potential_field(p.potential, state.psi.grid());
    WaveState s = state;
    detail::half_potential_phase(s, dt, p, phi, diag);
    detail::kinetic_phase(s, dt, p);
    detail::half_potential_phase(s, dt, p, phi, diag);
    s.time = state.time + dt;
    return s;
}

inline double norm_squared(const WaveState& s) {
    double sum = 0.0;
    for (int i = 0; i < s.psi.size(); ++i) sum += std::norm(s.psi[i]);
    return sum * s.psi.grid().dx();
}

/// <psi| -(h^2/2) d^2/dx^2 + phi |psi>, the conserved oracle energy for
/// density-independent potentials.
inline double energy(const WaveState& s, const PhysicalParams& p) {
    const Grid& g = s.psi.grid();
    const int n = g.n();
    auto& plans = fft::plans_for(n);
    std::complex<double>* in = plans.cplx_in();
    std::complex<double>* out = plans.cplx_out();
    for (int i = 0; i < n; ++i) in[i] = s.psi[i];
    plans.forward_c2c();
    const double dk = 2.0 * std::numbers::pi / g.length();
    double kinetic = 0.0;
    for (int j = 0; j < n; ++j) {
        const int m = (j <= n / 2) ? j : j - n;
        const double k = m * dk;
        kinetic += 0.5 * p.hbar_kin * p.hbar_kin * k * k * std::norm(out[j]);
    }
    kinetic *= g.dx() / n;  // Parseval normalization
    const ScalarField phi = potential_field(p.potential, g);
    double pot = 0.0;
    for (int i = 0; i < n; ++i) pot += phi[i] * std::norm(s.psi[i]);
    return kinetic + pot * g.dx();
}

/// Madelung transform: rho = |psi|^2 and S = h * unwrapped phase, continuous
/// by construction (integrating the spectral phase derivative rather than
/// taking pointwise arg), pinned at the density maximum.
inline HydroState to_hydro(const WaveState& state, const PhysicalParams& p) {
    const Grid& g = state.psi.grid();
    const int n = g.n();

    ScalarField rho(g);
    double rho_max = 0.0;
    int i_max = 0;
    for (int i = 0; i < n; ++i) {
        rho[i] = std::norm(state.psi[i]);
        if (rho[i] > rho_max) {
            rho_max = rho[i];
            i_max = i;
        }
    }
    if (!(rho_max > 0.0)) throw solver_error("Madelung transform: null wavefunction");
    for (int i = 0; i < n; ++i)
        if (rho[i] < p.floor_rel * rho_max)
            throw solver_error("Madelung transform undefined at nodes");

    // dtheta/dx = Im(conj(psi) dpsi/dx) / |psi|^2
    ScalarField re(g), im(g);
    for (int i = 0; i < n; ++i) {
        re[i] = state.psi[i].real();
        im[i] = state.psi[i].imag();
    }
    const ScalarField dre = spectral_gradient(re);
    const ScalarField dim = spectral_gradient(im);
    ScalarField dtheta(g);
    for (int i = 0; i < n; ++i)
        dtheta[i] = (re[i] * dim[i] - im[i] * dre[i]) / rho[i];

    const double circulation = integrate(dtheta);
    const double winding = circulation / (2.0 * std::numbers::pi);
    if (std::abs(winding) > 0.25)
        throw solver_error("Madelung transform: nonzero phase winding (circulation " +
                           std::to_string(circulation) + ")");

    ScalarField S = spectral_antiderivative(dtheta);
    const double pin = std::arg(state.psi[i_max]) - S[i_max];
    for (int i = 0; i < n; ++i) S[i] = p.hbar_kin * (S[i] + pin);
    return HydroState{std::move(rho), std::move(S), state.time};
}

/// Inverse Madelung transform, psi = sqrt(rho) e^{iS/h}.
inline WaveState from_hydro(const HydroState& state, const PhysicalParams& p) {
    const Grid& g = state.rho.grid();
    const ScalarField w = log_floored_density(state.rho, p);
    ComplexField psi(g);
    const double inv_h = 1.0 / p.hbar_kin;
    for (int i = 0; i < g.n(); ++i) {
        const double amp = std::exp(0.5 * w[i]);
        const double ph = state.S[i] * inv_h;
        psi[i] = std::complex<double>(amp * std::cos(ph), amp * std::sin(ph));
    }
    return WaveState{std::move(psi), state.time};
}

/// Per-sample comparison metrics between a hydro trajectory and the oracle.
struct SampleMetrics {
    double time = 0.0;
    double rho_l2_rel = 0.0;
    double rho_max_rel = 0.0;
    double v_l2_rel = 0.0;
    double v_max_rel = 0.0;
};

inline std::vector<SampleMetrics> compare(const std::vector<HydroState>& hydro,
                                          const std::vector<WaveState>& oracle,
                                          const PhysicalParams& p) {
    if (hydro.size() != oracle.size())
        throw config_error("compare: trajectories have different sample counts");
    std::vector<SampleMetrics> out;
    out.reserve(hydro.size());
    for (size_t s = 0; s < hydro.size(); ++s) {
        const HydroState& h = hydro[s];
        const WaveState& ws = oracle[s];
        const Grid& g = h.rho.grid();
        if (g != ws.psi.grid()) throw config_error("compare: grid mismatch");
        if (std::abs(h.time - ws.time) > 1e-9)
            throw config_error("compare: sample times mismatch");

        // Oracle-side rho and v = h * d(phase)/dx, with the phase derivative
        // evaluated directly from psi (the strict node-checking transform is
        // not applicable to sub-floor tails).
        ScalarField rho_o(g), re(g), im(g);
        double omax = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            rho_o[i] = std::norm(ws.psi[i]);
            omax = std::max(omax, rho_o[i]);
            re[i] = ws.psi[i].real();
            im[i] = ws.psi[i].imag();
        }
        const ScalarField dre = spectral_gradient(re);
        const ScalarField dim = spectral_gradient(im);
        ScalarField vo(g);
        const double den_floor = p.floor_rel * omax;
        for (int i = 0; i < g.n(); ++i)
            vo[i] = p.hbar_kin * (re[i] * dim[i] - im[i] * dre[i]) /
                    std::max(rho_o[i], den_floor);
        const ScalarField vh = spectral_gradient(h.S);

        double d2 = 0.0, r2 = 0.0, dmax = 0.0, rmax = 0.0;
        double vd2 = 0.0, vr2 = 0.0, vdmax = 0.0, vrmax = 0.0;
        for (int i = 0; i < h.rho.size(); ++i) {
            const double dr = h.rho[i] - rho_o[i];
            d2 += dr * dr;
            r2 += rho_o[i] * rho_o[i];
            dmax = std::max(dmax, std::abs(dr));
            rmax = std::max(rmax, std::abs(rho_o[i]));
            const double dv = vh[i] - vo[i];
            vd2 += dv * dv;
            vr2 += vo[i] * vo[i];
            vdmax = std::max(vdmax, std::abs(dv));
            vrmax = std::max(vrmax, std::abs(vo[i]));
        }
        SampleMetrics m;
        m.time = h.time;
        m.rho_l2_rel = std::sqrt(d2 / std::max(r2, 1e-300));
        m.rho_max_rel = dmax / std::max(rmax, 1e-300);
        m.v_l2_rel = std::sqrt(vd2 / std::max(vr2, 1e-300));
        m.v_max_rel = vdmax / std::max(vrmax, 1e-300);
        out.push_back(m);
    }
    return out;
}

}  // namespace qhd
