#pragma once

#include <cmath>
#include <limits>
#include <variant>
#include <vector>

#include "qhd/errors.hpp"
#include "qhd/grid.hpp"

namespace qhd {

struct NoPotential {};

/// phi(x) = 1/2 omega^2 (x - center)^2, centered on the domain middle.
/// On a periodic domain the quadratic is not periodic; beyond taper_radius the
/// potential is blended C-infinity-smoothly to a constant so that no slope
/// discontinuity is injected at the wrap point. A non-positive taper_radius
/// disables the taper (the raw wrapped parabola is used).
struct HarmonicPotential {
    double omega = 1.0;
    double taper_radius = 0.0;
    double taper_width = 1.0;
};

/// Piecewise-linear profile phi(x) on [0, L).
struct TabulatedPotential {
    std::vector<double> x;
    std::vector<double> phi;
};

using ExternalPotential = std::variant<NoPotential, HarmonicPotential, TabulatedPotential>;

namespace detail {

// C-infinity transition 0 -> 1 on [0, 1].
inline double smoothstep_inf(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

}  // namespace detail

/// Sample the external potential on a grid.
inline ScalarField potential_field(const ExternalPotential& pot, const Grid& g) {
    if (std::holds_alternative<NoPotential>(pot)) return ScalarField(g, 0.0);

    if (const auto* h = std::get_if<HarmonicPotential>(&pot)) {
        ScalarField out(g);
        const double cap = 0.5 * h->omega * h->omega *
                           (h->taper_radius + h->taper_width) *
                           (h->taper_radius + h->taper_width);
        for (int i = 0; i < g.n(); ++i) {
            const double xt = g.from_center(i);
            const double quad = 0.5 * h->omega * h->omega * xt * xt;
            if (h->taper_radius > 0.0) {
                const double f =
                    detail::smoothstep_inf((std::abs(xt) - h->taper_radius) / h->taper_width);
                out[i] = (1.0 - f) * quad + f * cap;
            } else {
                out[i] = quad;
            }
        }
        return out;
    }

    const auto& t = std::get<TabulatedPotential>(pot);
    if (t.x.size() < 2 || t.x.size() != t.phi.size())
        throw config_error("potential: tabulated profile needs matching x/phi, >= 2 points");
    ScalarField out(g);
    for (int i = 0; i < g.n(); ++i) {
        const double x = g.x(i);
        if (x <= t.x.front()) {
            out[i] = t.phi.front();
        } else if (x >= t.x.back()) {
            out[i] = t.phi.back();
        } else {
            auto hi = std::lower_bound(t.x.begin(), t.x.end(), x);
            const size_t j = hi - t.x.begin();
            const double w = (x - t.x[j - 1]) / (t.x[j] - t.x[j - 1]);
            out[i] = t.phi[j - 1] + w * (t.phi[j] - t.phi[j - 1]);
        }
    }
    return out;
}

}  // namespace qhd
