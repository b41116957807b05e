#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bck/action.hpp"
#include "bck/catalog.hpp"

using namespace bck;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
Trajectory run(const Potential& pot, const Params& par, const State1D& ic,
               double t_end, double dt = 1e-2) {
    IntegratorConfig cfg;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    cfg.sample_dt = dt;
    return integrate(pot, par, ic, t_end, cfg);
}
}  // namespace

TEST_CASE("weak invariant on the free particle") {
    // H + 2 gamma A stays at its initial value H(t0) = qdot0^2/2 = 1/2.
    const Params par{0.5};
    const Trajectory traj =
        run(Potential::free_particle(), par, State1D{0.0, 1.0, 1.0}, 3.0);
    const ConstantSeries ws = weak_constant(traj);
    REQUIRE(ws.values.size() == traj.samples.size());
    REQUIRE(ws.values.front() == 0.5);
    REQUIRE(ws.report.max_abs_dev <= 1e-12);
}

TEST_CASE("weak invariant on a nonlinear potential") {
    const Params par{0.3};
    const Trajectory traj =
        run(Potential::log(-1.0), par, State1D{0.0, 1.0, 0.3}, 3.0);
    const ConstantSeries ws = weak_constant(traj);
    const double H0 = hamiltonian(traj.pot, par, traj.front().state);
    REQUIRE_THAT(ws.values.front(), WithinRel(H0, 1e-15));
    REQUIRE(ws.report.max_abs_dev <= 1e-9 * (1.0 + std::abs(H0)));
}

TEST_CASE("action reconstructed from the hamiltonian decay") {
    const Params par{0.5};
    const Trajectory traj =
        run(Potential::exponential(1.0), par, State1D{0.0, 0.0, 0.0}, 2.0);
    const auto rec = reconstruct_action(traj);
    REQUIRE(rec.size() == traj.samples.size());
    REQUIRE(rec.front() == 0.0);
    for (std::size_t i = 0; i < rec.size(); ++i)
        REQUIRE_THAT(rec[i], WithinAbs(traj.samples[i].action, 1e-9));
}

TEST_CASE("hamiltonian decays at rate minus two gamma lagrangian") {
    const Params par{0.5};
    const Trajectory traj = run(Potential::linear(1.0), par,
                                State1D{0.0, 1.0, 0.5}, 2.0, 1e-3);
    for (std::size_t i = 1; i + 1 < traj.samples.size(); i += 50) {
        const State1D& a = traj.samples[i - 1].state;
        const State1D& b = traj.samples[i + 1].state;
        const double dH = (hamiltonian(traj.pot, par, b) -
                           hamiltonian(traj.pot, par, a)) /
                          (b.t - a.t);
        const double L = lagrangian(traj.pot, par, traj.samples[i].state);
        REQUIRE_THAT(dH, WithinAbs(-2.0 * par.gamma * L,
                                   1e-4 * (1.0 + std::abs(L))));
    }
}

TEST_CASE("nonlocal constant of a variational symmetry") {
    // For a symmetry the quadrature constant equals N(t0) - f(t0, q0).
    const Params par{0.5};
    const Potential pot = Potential::linear(1.0);
    const Trajectory traj =
        run(pot, par, State1D{0.0, 1.0, 0.5}, 2.0, 1e-3);
    const CatalogBundle cat = make_catalog(pot, par, false);
    const Generator& x2 = cat.symmetry("X2").gen;
    const ConstantSeries cs = nonlocal_constant(x2, traj);
    REQUIRE(cs.report.max_abs_dev <= 1e-6);
    const State1D& s0 = traj.front().state;
    const double expect = noether_integral(x2, pot, par, s0) -
                          x2.f.v(s0.q, s0.t);
    REQUIRE_THAT(cs.values.front(), WithinAbs(expect, 1e-9));
}

TEST_CASE("nonlocal constant of a non-symmetry generator") {
    // The scaling field q d_q is not variational; its constant exists only
    // through the quadrature term, which the trapezoid sum must track.
    const Params par{0.5};
    Field2 xi;
    xi.v = [](double q, double) { return q; };
    xi.dq = [](double, double) { return 1.0; };
    xi.dt = [](double, double) { return 0.0; };
    xi.dqq = xi.dt;
    xi.dqt = xi.dt;
    xi.dtt = xi.dt;
    const Generator scaling{"q_dq", "test", Field2::zero(), xi,
                            Field2::zero()};
    const Trajectory traj = run(Potential::linear(1.0), par,
                                State1D{0.0, 1.0, 0.5}, 2.0, 5e-4);
    const ConstantSeries cs = nonlocal_constant(scaling, traj);
    const double scale = 1.0 + std::abs(cs.values.front());
    REQUIRE(cs.report.max_abs_dev <= 1e-5 * scale);
}

TEST_CASE("weak invariant drift is reported like an integral drift") {
    const Params par{0.5};
    const Trajectory traj =
        run(Potential::quadratic(2.0), par, State1D{0.0, 1.0, 0.0}, 3.0);
    const ConstantSeries ws = weak_constant(traj);
    REQUIRE(ws.id == "weak");
    REQUIRE(ws.report.reference == ws.values.front());
    REQUIRE(ws.report.normalized <= 1e-9);
}
