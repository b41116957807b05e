#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "bck/integrate.hpp"
#include "bck/integrals.hpp"
#include "bck/catalog.hpp"

using namespace bck;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
IntegratorConfig tight() {
    IntegratorConfig cfg;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    return cfg;
}
}  // namespace

TEST_CASE("integrator config validation") {
    REQUIRE_NOTHROW(validate(IntegratorConfig{}));
    IntegratorConfig bad = tight();
    bad.rtol = 1e-5;
    REQUIRE_THROWS_AS(validate(bad), DomainError);
    bad = tight();
    bad.rtol = 0.0;
    REQUIRE_THROWS_AS(validate(bad), DomainError);
    bad = tight();
    bad.atol = 0.0;
    REQUIRE_THROWS_AS(validate(bad), DomainError);
    bad = tight();
    bad.sample_dt = 0.0;
    REQUIRE_THROWS_AS(validate(bad), DomainError);
    bad = tight();
    bad.h_min = 0.0;
    REQUIRE_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("free particle matches the closed form") {
    const Params par{0.5};
    const Potential pot = Potential::free_particle();
    const State1D ic{0.0, 1.0, 1.0};
    const Trajectory traj = integrate(pot, par, ic, 1.0, tight());

    const State1D end = traj.back().state;
    REQUIRE(end.t == 1.0);
    // q(1) = 1 + (1 - e^{-1}), qdot(1) = e^{-1}
    REQUIRE_THAT(end.q, WithinAbs(1.6321205588285577, 1e-9));
    REQUIRE_THAT(end.qdot, WithinAbs(0.36787944117144233, 1e-9));

    for (const auto& smp : traj.samples) {
        const State1D ref = analytic_solution(pot, par, ic, smp.state.t);
        REQUIRE_THAT(smp.state.q, WithinAbs(ref.q, 1e-9));
        REQUIRE_THAT(smp.state.qdot, WithinAbs(ref.qdot, 1e-9));
    }
    REQUIRE(traj.stats.accepted > 0);
}

TEST_CASE("linear family matches the closed form") {
    const Params par{0.5};
    const Potential pot = Potential::linear(1.0);
    const State1D ic{0.0, 0.0, -6.0};
    const Trajectory traj = integrate(pot, par, ic, 3.0, tight());
    for (const auto& smp : traj.samples) {
        const State1D ref = analytic_solution(pot, par, ic, smp.state.t);
        REQUIRE_THAT(smp.state.q, WithinAbs(ref.q, 1e-8));
        REQUIRE_THAT(smp.state.qdot, WithinAbs(ref.qdot, 1e-8));
    }
}

TEST_CASE("quadratic family matches the closed form in all regimes") {
    const Params par{0.5};
    const State1D ic{0.0, 1.0, 0.3};
    // underdamped (A > g^2), critical (A = g^2), overdamped (A < g^2)
    for (double A : {2.0, 0.25, 0.1}) {
        const Potential pot = Potential::quadratic(A);
        const Trajectory traj = integrate(pot, par, ic, 4.0, tight());
        for (const auto& smp : traj.samples) {
            const State1D ref = analytic_solution(pot, par, ic, smp.state.t);
            REQUIRE_THAT(smp.state.q, WithinAbs(ref.q, 1e-8));
            REQUIRE_THAT(smp.state.qdot, WithinAbs(ref.qdot, 1e-8));
        }
    }
}

TEST_CASE("analytic solution rejects unsupported families") {
    const Params par{0.5};
    REQUIRE_THROWS_AS(analytic_solution(Potential::log(1.0), par,
                                        State1D{0.0, 1.0, 0.0}, 1.0),
                      Unsupported);
}

TEST_CASE("action along the free solution") {
    // A(t) = v0^2 (1 - e^{-2 g t}) / (4 g); at g=0.5, v0=1, t=1 this is
    // (1 - e^{-1})/2.
    const Params par{0.5};
    const Trajectory traj = integrate(Potential::free_particle(), par,
                                      State1D{0.0, 1.0, 1.0}, 1.0, tight());
    REQUIRE(traj.front().action == 0.0);
    REQUIRE_THAT(traj.back().action, WithinAbs(0.31606027941427885, 1e-9));
    for (const auto& smp : traj.samples) {
        const double ref =
            (1.0 - std::exp(-2.0 * 0.5 * smp.state.t)) / (4.0 * 0.5);
        REQUIRE_THAT(smp.action, WithinAbs(ref, 1e-9));
    }
}

TEST_CASE("accumulated action agrees with trapezoid quadrature") {
    const Params par{0.5};
    const Potential pot = Potential::exponential(1.0);
    IntegratorConfig cfg = tight();
    cfg.sample_dt = 5e-4;
    const Trajectory traj =
        integrate(pot, par, State1D{0.0, 0.0, 0.0}, 2.0, cfg);
    double acc = 0.0;
    double prev = lagrangian(pot, par, traj.front().state);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const double cur = lagrangian(pot, par, traj.samples[i].state);
        acc += 0.5 * (prev + cur) *
               (traj.samples[i].state.t - traj.samples[i - 1].state.t);
        prev = cur;
        // the trapezoid rule's own O(dt^2) truncation error dominates;
        // bound it relative to the accumulated magnitude
        REQUIRE_THAT(traj.samples[i].action,
                     WithinAbs(acc, 1e-6 * (1.0 + std::abs(acc))));
    }
}

TEST_CASE("sample grid includes t_end exactly") {
    const Params par{0.5};
    const Potential pot = Potential::free_particle();
    IntegratorConfig cfg = tight();

    Trajectory traj = integrate(pot, par, State1D{0.0, 0.0, 1.0}, 1.0, cfg);
    REQUIRE(traj.samples.size() == 101);  // initial + 100 samples at dt=0.01
    REQUIRE(traj.back().state.t == 1.0);

    cfg.sample_dt = 0.02;  // t_end not a multiple of the sample spacing
    traj = integrate(pot, par, State1D{0.0, 0.0, 1.0}, 0.05, cfg);
    REQUIRE(traj.samples.size() == 4);  // 0, 0.02, 0.04, 0.05
    REQUIRE(traj.back().state.t == 0.05);

    // t_end == t0 yields just the initial sample
    traj = integrate(pot, par, State1D{0.2, 0.3, 0.4}, 0.2, cfg);
    REQUIRE(traj.samples.size() == 1);
}

TEST_CASE("integration guards") {
    const Params par{1.0};
    const Potential pot = Potential::free_particle();
    REQUIRE_THROWS_AS(
        integrate(pot, par, State1D{0.0, 0.0, 1.0}, -1.0, tight()),
        DomainError);
    REQUIRE_THROWS_AS(
        integrate(pot, par, State1D{0.0, std::nan(""), 1.0}, 1.0, tight()),
        DomainError);
    REQUIRE_THROWS_AS(
        integrate(pot, par, State1D{0.0, 0.0, 1.0}, 15.1, tight()),
        OverflowGuard);
    REQUIRE_THROWS_AS(integrate(Potential::log(1.0), par,
                                State1D{0.0, -1.0, 0.0}, 1.0, tight()),
                      DomainError);
}

TEST_CASE("attractive power orbit leaving the domain is a domain error") {
    // Weak damping cannot absorb the fall energy: the orbit reaches q = 0 in
    // finite time and the integration must stop with a domain diagnostic.
    const Params par{0.1};
    const Potential pot = Potential::power(1.0, 3.0);
    REQUIRE_THROWS_MATCHES(
        integrate(pot, par, State1D{0.0, 0.5, -0.5}, 10.0, tight()),
        DomainError, Catch::Matchers::MessageMatches(ContainsSubstring(
                         "left the potential domain")));
}

TEST_CASE("long free run conserves the damped momentum integral") {
    const Params par{0.5};
    const CatalogBundle cat =
        make_catalog(Potential::free_particle(), par, false);
    const Trajectory traj = integrate(Potential::free_particle(), par,
                                      State1D{0.0, 0.0, -1.0}, 10.0, tight());
    const DriftReport rep = drift(cat.integral("I1"), traj);
    REQUIRE(rep.normalized <= 1e-11);
}

TEST_CASE("csv export round-trips at full precision") {
    const Params par{0.5};
    const Trajectory traj = integrate(Potential::free_particle(), par,
                                      State1D{0.0, 1.0, 1.0}, 0.1, tight());
    std::ostringstream os;
    write_csv(traj, os);
    const std::string text = os.str();
    REQUIRE(text.rfind("t,q,qdot,action", 0) == 0);

    // parse the q field of the second data row and demand exact equality
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);  // header
    std::getline(is, line);  // initial sample
    std::getline(is, line);  // second sample
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double q = std::strtod(line.substr(c1 + 1, c2 - c1 - 1).c_str(),
                                 nullptr);
    REQUIRE(q == traj.samples[1].state.q);
}

TEST_CASE("csv export accepts extra columns") {
    const Params par{0.5};
    const CatalogBundle cat =
        make_catalog(Potential::free_particle(), par, false);
    const Trajectory traj = integrate(Potential::free_particle(), par,
                                      State1D{0.0, 0.0, -1.0}, 0.1, tight());
    const FirstIntegral& I1 = cat.integral("I1");
    std::vector<double> col;
    for (const auto& smp : traj.samples)
        col.push_back(eval_integral(I1, smp.state));
    std::ostringstream os;
    write_csv(traj, os, {"I1"}, {col});
    REQUIRE(os.str().rfind("t,q,qdot,action,I1", 0) == 0);
}
