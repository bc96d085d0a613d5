#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qhd/nonlocal.hpp"

using namespace qhd;
namespace pi = std::numbers;

namespace {

ScalarField random_density(const Grid& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-0.3, 0.3);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi::pi);
    std::uniform_int_distribution<int> nmodes(1, 5);
    ScalarField f(g, 1.0);
    const int m_count = nmodes(rng);
    for (int m = 1; m <= m_count; ++m) {
        const double a = amp(rng) / m_count;
        const double ph = phase(rng);
        for (int i = 0; i < g.n(); ++i)
            f[i] += a * std::cos(2.0 * pi::pi * m * g.x(i) / g.length() + ph);
    }
    return f;
}

PhysicalParams basic_params() {
    PhysicalParams p;
    p.hbar_kin = 1.0;
    return p;
}

// Gaussian rho = exp(-xt^2/2) on a grid where x = 2 lies on a grid point.
struct GaussianCase {
    Grid g{512, 32.0};
    ScalarField rho;
    GaussianCase()
        : rho(ScalarField::sample(g, [this](double x) {
              const double xt = x - g.center();
              return std::exp(-0.5 * xt * xt);
          })) {}
    int index_at(double xt) const {
        return static_cast<int>(std::lround((xt + g.center()) / g.dx()));
    }
};

}  // namespace

TEST_CASE("thermo potential of a uniform gas") {
    Grid g(64, 5.0);
    PhysicalParams p = basic_params();
    p.kT_over_m = 1.0;
    p.pressure_term = true;
    // rho = e everywhere: (kT/m)(ln rho + 1) = 2
    ScalarField rho(g, std::exp(1.0));
    auto mu = thermo_potential(rho, p);
    for (int i = 0; i < g.n(); ++i) CHECK(mu[i] == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("thermo potential is the bare external potential with pressure off") {
    Grid g(64, 8.0);
    PhysicalParams p = basic_params();
    p.potential = HarmonicPotential{1.5};
    ScalarField rho(g, 0.7);
    auto mu = thermo_potential(rho, p);
    auto phi = potential_field(p.potential, g);
    CHECK((mu - phi).max_abs() == 0.0);
}

TEST_CASE("grad mu_th equals grad P / rho for the ideal gas") {
    Grid g(256, 20.0);
    PhysicalParams p = basic_params();
    p.kT_over_m = 1.0;
    p.pressure_term = true;
    const double c = g.center();
    auto rho = ScalarField::sample(
        g, [&](double x) { return 1.0 + 0.4 * std::exp(-0.5 * (x - c) * (x - c)); });
    auto lhs = spectral_gradient(thermo_potential(rho, p));
    // P = (kT/m) rho: grad P / rho evaluated spectrally
    auto gp = spectral_gradient(p.kT_over_m * rho);
    ScalarField rhs_field(g);
    for (int i = 0; i < g.n(); ++i) rhs_field[i] = gp[i] / rho[i];
    CHECK((lhs - rhs_field).max_abs() <= 1e-9);
}

TEST_CASE("bohm potential of a uniform density vanishes") {
    Grid g(64, 5.0);
    ScalarField rho(g, 0.37);
    auto q = bohm_potential(rho, basic_params());
    CHECK(q.max_abs() <= 1e-12);
}

TEST_CASE("bohm potential of a gaussian: Q = 1/4 - xt^2/8") {
    GaussianCase gc;
    auto p = basic_params();
    auto q = bohm_potential(gc.rho, p);
    // check on the bulk support (rho >= 1e-2 max), including x = 0 and x = 2
    const double rmax = gc.rho.max();
    double worst = 0.0;
    for (int i = 0; i < gc.g.n(); ++i) {
        if (gc.rho[i] < 1e-2 * rmax) continue;
        const double xt = gc.g.from_center(i);
        worst = std::max(worst, std::abs(q[i] - (0.25 - xt * xt / 8.0)));
    }
    CHECK(worst <= 1e-8);
    CHECK(q[gc.index_at(0.0)] == Catch::Approx(0.25).margin(1e-9));
    CHECK(q[gc.index_at(2.0)] == Catch::Approx(-0.25).margin(1e-9));
}

TEST_CASE("both bohm forms agree on smooth densities") {
    Grid g(256, 10.0);
    std::mt19937 rng(23);
    auto p = basic_params();
    for (int trial = 0; trial < 10; ++trial) {
        auto rho = random_density(g, rng);
        auto q1 = bohm_potential(rho, p, BohmForm::SqrtRho);
        auto q2 = bohm_potential(rho, p, BohmForm::LogDensity);
        CHECK((q1 - q2).max_abs() <= 1e-9);
    }
}

TEST_CASE("bohm potential is invariant under density rescaling") {
    Grid g(128, 10.0);
    std::mt19937 rng(31);
    auto p = basic_params();
    auto rho = random_density(g, rng);
    auto q1 = bohm_potential(rho, p);
    auto q2 = bohm_potential(137.0 * rho, p);
    CHECK((q1 - q2).max_abs() <= 1e-10);
}

TEST_CASE("korteweg force of the gaussian: F = xt/4 on the bulk") {
    GaussianCase gc;
    auto f = korteweg_force(gc.rho, basic_params());
    const double rmax = gc.rho.max();
    double worst = 0.0;
    for (int i = 0; i < gc.g.n(); ++i) {
        if (gc.rho[i] < 1e-2 * rmax) continue;
        const double xt = gc.g.from_center(i);
        worst = std::max(worst, std::abs(f[i] - xt / 4.0));
    }
    CHECK(worst <= 1e-7);
    CHECK(f[gc.index_at(2.0)] == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("harmonic ground state: Q + phi uniform, total force zero") {
    // rho ~ exp(-omega x^2 / h), phi = omega^2 x^2 / 2 -> Q + phi = h omega / 2
    Grid g(512, 9.0);
    const double omega = 1.0;
    PhysicalParams p = basic_params();
    p.potential = HarmonicPotential{omega};
    const double c = g.center();
    auto rho = ScalarField::sample(g, [&](double x) {
        double xt = x - c;
        return std::exp(-omega * xt * xt / p.hbar_kin);
    });
    auto q = bohm_potential(rho, p);
    auto phi = potential_field(p.potential, g);
    const double target = 0.5 * p.hbar_kin * omega;
    const double rmax = rho.max();
    double worst = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        if (rho[i] < 1e-2 * rmax) continue;
        worst = std::max(worst, std::abs(q[i] + phi[i] - target));
    }
    CHECK(worst <= 1e-8);

    auto force = total_specific_force(rho, p);
    double fworst = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        if (rho[i] < 1e-2 * rmax) continue;
        fworst = std::max(fworst, std::abs(force[i]));
    }
    CHECK(fworst <= 1e-8);
}

TEST_CASE("total force on a uniform density with no potential vanishes") {
    Grid g(64, 4.0);
    ScalarField rho(g, 1.2);
    auto f = total_specific_force(rho, basic_params());
    CHECK(f.max_abs() <= 1e-12);
}

TEST_CASE("higher-order potential vanishes for uniform density or zero c4") {
    Grid g(128, 8.0);
    PhysicalParams p = basic_params();
    p.n_max = 2;
    MomentTable t;
    t.a_squared = 0.01;
    t.c[1] = 1.0;
    t.c[2] = 0.0;
    p.moments = t;
    p.kT_over_m = p.hbar_kin * p.hbar_kin / (4.0 * t.a_squared);

    std::mt19937 rng(3);
    auto rho = random_density(g, rng);
    CHECK(higher_order_potential(rho, 2, p).max_abs() == 0.0);  // c4 = 0 annihilates

    p.moments->c[2] = -0.5;
    ScalarField uniform(g, 2.0);
    CHECK(higher_order_potential(uniform, 2, p).max_abs() <= 1e-10);
}

TEST_CASE("higher-order potential matches a finite-difference oracle") {
    // rho = 1 + 0.1 sin(2 pi x / L); mu^(4) via high-order central differences
    Grid g(256, 10.0);
    PhysicalParams p = basic_params();
    p.n_max = 2;
    MomentTable t;
    t.a_squared = 0.04;
    t.c[1] = 1.0;
    t.c[2] = -0.3;
    p.moments = t;
    p.kT_over_m = p.hbar_kin * p.hbar_kin / (4.0 * t.a_squared);

    auto rho = ScalarField::sample(
        g, [&](double x) { return 1.0 + 0.1 * std::sin(2.0 * pi::pi * x / g.length()); });
    auto mu = higher_order_potential(rho, 2, p);

    // independent oracle: 8th-order central differences for d^4/dx^4 of rho
    // and of ln(rho), on the analytic samples
    const double h = g.dx();
    auto val = [&](int i) { return rho[(i % g.n() + g.n()) % g.n()]; };
    auto lval = [&](int i) { return std::log(val(i)); };
    auto d4 = [&](auto&& f, int i) {
        // 4th derivative, O(h^6) stencil
        return (-((f(i - 4) + f(i + 4)) * 7.0 / 240.0) +
                (f(i - 3) + f(i + 3)) * 3.0 / 10.0 -
                (f(i - 2) + f(i + 2)) * 169.0 / 60.0 +
                (f(i - 1) + f(i + 1)) * 122.0 / 15.0 - f(i) * 91.0 / 8.0) /
               (h * h * h * h);
    };
    const double coef = p.quantum_coupling() * t.a_squared * t.c[2] / 24.0;
    double worst = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        const double oracle = coef * (d4(val, i) / rho[i] + d4(lval, i));
        worst = std::max(worst, std::abs(mu[i] - oracle) / std::max(std::abs(oracle), 1e-6));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("force correction scales linearly with c4") {
    Grid g(256, 20.0);
    PhysicalParams p1 = basic_params();
    p1.n_max = 2;
    MomentTable t;
    t.a_squared = 0.01;
    t.c[1] = 1.0;
    t.c[2] = -0.4;
    p1.moments = t;
    p1.kT_over_m = p1.hbar_kin * p1.hbar_kin / (4.0 * t.a_squared);
    PhysicalParams p2 = p1;
    p2.moments->c[2] = -0.2;

    const double c = g.center();
    auto rho = ScalarField::sample(
        g, [&](double x) { return 0.1 + std::exp(-0.5 * (x - c) * (x - c)); });
    auto f1 = higher_order_potential(rho, 2, p1);
    auto f2 = higher_order_potential(rho, 2, p2);
    CHECK((f1 - 2.0 * f2).max_abs() <= 1e-10 * f1.max_abs());
}

TEST_CASE("higher-order requires the moment table and respects n_max") {
    Grid g(64, 4.0);
    ScalarField rho(g, 1.0);
    PhysicalParams p = basic_params();
    CHECK_THROWS_AS(higher_order_potential(rho, 2, p), config_error);  // n > n_max
    p.n_max = 3;
    CHECK_THROWS_AS(higher_order_potential(rho, 2, p), config_error);  // no table
    CHECK_THROWS_AS(higher_order_potential(rho, 1, p), std::invalid_argument);
}

TEST_CASE("stress divergence equals rho grad Q") {
    Grid g(256, 10.0);
    std::mt19937 rng(47);
    PhysicalParams p = basic_params();
    for (int trial = 0; trial < 10; ++trial) {
        auto rho = random_density(g, rng);
        auto div_p = quantum_stress_divergence(rho, p);
        auto gq = spectral_gradient(bohm_potential(rho, p));
        ScalarField rgq(g);
        for (int i = 0; i < g.n(); ++i) rgq[i] = rho[i] * gq[i];
        CHECK((div_p - rgq).max_abs() <= 1e-8);
    }
}

TEST_CASE("stress divergence vanishes at the center of a symmetric gaussian") {
    GaussianCase gc;
    auto dv = quantum_stress_divergence(gc.rho, basic_params());
    CHECK(std::abs(dv[gc.index_at(0.0)]) <= 1e-10);
}

TEST_CASE("thermal and kinematic parametrizations of the quadratic term agree") {
    // with a^2 = h^2 / (4 kT/m), (kT/m) a^2 [bracket] == (h^2/4) [bracket]
    Grid g(256, 10.0);
    PhysicalParams p = basic_params();
    p.kT_over_m = 0.8;
    MomentTable t;
    t.a_squared = p.hbar_kin * p.hbar_kin / (4.0 * p.kT_over_m);
    t.c[1] = 1.0;
    p.moments = t;
    p.validate();

    std::mt19937 rng(77);
    auto rho = random_density(g, rng);
    // thermal route: -(kT/m) a^2 [lap ln rho + (grad ln rho)^2 / 2]
    auto w = log_floored_density(rho, p);
    auto wp = spectral_gradient(w);
    auto lw = spectral_laplacian(w);
    ScalarField mu_thermal(g);
    const double coef = -p.kT_over_m * t.a_squared;
    for (int i = 0; i < g.n(); ++i)
        mu_thermal[i] = coef * (lw[i] + 0.5 * wp[i] * wp[i]);
    auto q = bohm_potential(rho, p, BohmForm::LogDensity);
    CHECK((mu_thermal - q).max_abs() <= 1e-12);
    // and across forms at the spectral-identity level
    auto q_sqrt = bohm_potential(rho, p, BohmForm::SqrtRho);
    CHECK((mu_thermal - q_sqrt).max_abs() <= 1e-9);
}

TEST_CASE("density floor rejects non-positive densities") {
    Grid g(64, 4.0);
    ScalarField zero(g, 0.0);
    PhysicalParams p = basic_params();
    CHECK_THROWS_AS(log_floored_density(zero, p), solver_error);
    ScalarField neg(g, -1.0);
    CHECK_THROWS_AS(thermo_potential(neg, p), solver_error);
}
