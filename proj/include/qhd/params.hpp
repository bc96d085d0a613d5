#pragma once

#include <cmath>
#include <optional>

#include "qhd/errors.hpp"
#include "qhd/kernel.hpp"
#include "qhd/potential.hpp"

namespace qhd {

/// Sub-floor tail regularization of the hydrodynamic integrator.
///
/// The masked Laplacian viscosity damps (ln rho, S) only where the density is
/// within mask_offset e-folds of the floor; the optional spectral band sink
/// removes content in the top part of the spectrum where no resolved physics
/// lives. Both act far below every reported tolerance; see the solver notes in
/// hydro.hpp.
struct TailDamping {
    bool viscosity_enabled = false;
    double viscosity = 0.0;      // 0 -> default 2*hbar_kin
    double mask_offset = 14.0;   // e-folds above the density floor
    double mask_width = 1.5;     // sigmoid width, e-folds
    double band_alpha = 0.0;     // 0 disables the spectral band sink
    double band_k0_frac = 0.25;  // band start as a fraction of k_max
};

/// Physical constants and model switches shared by every operator.
///
/// All quantities are per unit mass (kinematic): hbar_kin = hbar/m and
/// kT_over_m = kT/m. With a from the kernel's second moment, the thermal
/// identification hbar_kin^2/2 = 2 kT_over_m a^2 ties the two parametrizations
/// together; quantum_coupling() below is the combination (kT/m) a^2 = h^2/4
/// that scales every nonlocal term.
struct PhysicalParams {
    double mass = 1.0;
    double kT_over_m = 0.0;
    double hbar_kin = 1.0;
    ExternalPotential potential = NoPotential{};
    bool pressure_term = false;
    int n_max = 1;
    std::optional<MomentTable> moments;

    double floor_rel = 1e-12;  // density floor relative to max(rho)
    double blend_tau = 1.0;    // width (decades-e) of the log-space floor blend
    TailDamping damping;
    bool project_mass = true;  // conservative per-step mass projection

    void validate() const {
        if (!(mass > 0.0)) throw config_error("params: mass must be > 0");
        if (!(hbar_kin > 0.0)) throw config_error("params: hbar_kin must be > 0");
        if (kT_over_m < 0.0) throw config_error("params: kT_over_m must be >= 0");
        if (pressure_term && !(kT_over_m > 0.0))
            throw config_error("params: pressure term requires kT_over_m > 0");
        if (n_max < 1) throw config_error("params: n_max must be >= 1");
        if (n_max >= 2) {
            if (!moments)
                throw config_error("params: n_max >= 2 requires a kernel moment table");
            for (int n = 2; n <= n_max; ++n)
                if (!moments->has(n))
                    throw config_error("params: moment table lacks c_" + std::to_string(2 * n));
        }
        if (moments && kT_over_m > 0.0) {
            const double lhs = 0.5 * hbar_kin * hbar_kin;
            const double rhs = 2.0 * kT_over_m * moments->a_squared;
            if (std::abs(lhs - rhs) > 1e-9 * std::abs(lhs))
                throw config_error(
                    "params: hbar_kin and kernel moments are inconsistent "
                    "(hbar_kin^2/2 must equal 2*kT_over_m*a^2)");
        }
        if (!(floor_rel > 0.0) || floor_rel >= 1.0)
            throw config_error("params: floor_rel must be in (0, 1)");
        if (!(blend_tau >= 1.0)) throw config_error("params: blend_tau must be >= 1");
    }

    /// (kT/m) a^2 = hbar_kin^2 / 4, the scale of the quadratic nonlocal term.
    double quantum_coupling() const { return 0.25 * hbar_kin * hbar_kin; }

    /// a^2, from the kernel table when present, else from the thermal identity.
    double a_squared() const {
        if (moments) return moments->a_squared;
        if (kT_over_m > 0.0) return hbar_kin * hbar_kin / (4.0 * kT_over_m);
        throw config_error("params: a^2 requested but no kernel and kT_over_m == 0");
    }

    double tail_viscosity() const {
        return damping.viscosity > 0.0 ? damping.viscosity : 2.0 * hbar_kin;
    }

    /// hbar_kin from the thermal side of the identification (Eq.-20 route).
    static double hbar_from_thermal(double kT_over_m, double a_squared) {
        return std::sqrt(4.0 * kT_over_m * a_squared);
    }
};

}  // namespace qhd
