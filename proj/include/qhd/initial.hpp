#pragma once

#include <cmath>

#include "qhd/hydro.hpp"

namespace qhd {

/// Periodized gaussian sum_k exp(-(x - c + k L)^2 / (2 sigma^2)); the image
/// sum makes the sampled profile smooth across the wrap point.
inline ScalarField periodized_gaussian(const Grid& g, double center, double sigma,
                                       int images = 8) {
    ScalarField out(g, 0.0);
    for (int i = 0; i < g.n(); ++i) {
        double s = 0.0;
        for (int k = -images; k <= images; ++k) {
            const double d = g.x(i) - center + k * g.length();
            s += std::exp(-0.5 * d * d / (sigma * sigma));
        }
        out[i] = s;
    }
    return out;
}

/// Unit-mass gaussian packet, optionally on a uniform pedestal, with an
/// optional linear velocity ramp S = v0 (x - c) (suitable only when the
/// density vanishes at the wrap).
inline HydroState gaussian_packet(const Grid& g, double sigma, double velocity = 0.0,
                                  double pedestal = 0.0, double center = -1.0) {
    const double c = center >= 0.0 ? center : g.center();
    ScalarField rho = periodized_gaussian(g, c, sigma);
    const double mass = integrate(rho);
    for (int i = 0; i < g.n(); ++i) rho[i] = rho[i] / mass + pedestal;
    ScalarField S(g, 0.0);
    if (velocity != 0.0)
        for (int i = 0; i < g.n(); ++i) S[i] = velocity * (g.x(i) - c);
    return HydroState{std::move(rho), std::move(S), 0.0};
}

/// Ground state of the harmonic trap, rho ~ exp(-omega x^2 / hbar_kin):
/// sigma^2 = hbar_kin / (2 omega), normalized to unit mass.
inline HydroState harmonic_ground_state(const Grid& g, double omega, double hbar_kin) {
    const double sigma = std::sqrt(0.5 * hbar_kin / omega);
    return gaussian_packet(g, sigma);
}

/// Vacuum-free standing density 1 + amplitude cos(2 pi m (x - c) / L), S = 0.
inline HydroState cosine_state(const Grid& g, double amplitude, int mode = 1) {
    if (std::abs(amplitude) >= 1.0)
        throw config_error("cosine state: |amplitude| must be < 1");
    ScalarField rho(g);
    const double c = g.center();
    for (int i = 0; i < g.n(); ++i)
        rho[i] = 1.0 + amplitude *
                           std::cos(2.0 * std::numbers::pi * mode * (g.x(i) - c) / g.length());
    return HydroState{std::move(rho), ScalarField(g, 0.0), 0.0};
}

}  // namespace qhd
