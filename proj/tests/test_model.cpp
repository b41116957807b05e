#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bck/model.hpp"
#include "bck/fd.hpp"
#include "bck/rng.hpp"

using namespace bck;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("params validation") {
    REQUIRE_NOTHROW(Params{0.5});
    REQUIRE(Params{0.5}.gamma == 0.5);
    REQUIRE(Params{0.5}.mass == 1.0);
    REQUIRE_THROWS_AS(Params{0.0}, DomainError);
    REQUIRE_THROWS_AS(Params{-1.0}, DomainError);
    REQUIRE_THROWS_AS(Params(0.5, 2.0), DomainError);
    REQUIRE_THROWS_AS(Params{std::nan("")}, DomainError);
}

TEST_CASE("exp weight cap") {
    const Params par{1.0};
    REQUIRE_THAT(exp_weight(par, 0.5), WithinRel(std::exp(1.0), 1e-15));
    REQUIRE_NOTHROW(exp_weight(par, 15.0));  // 2*gamma*t == cap exactly
    REQUIRE_THROWS_AS(exp_weight(par, 15.0001), OverflowGuard);
}

TEST_CASE("free and linear potential values") {
    const Params par{0.5};
    const auto pf = potential_eval(Potential::free_particle(), par, 2.7);
    REQUIRE(pf.V == 0.0);
    REQUIRE(pf.dV == 0.0);
    REQUIRE(pf.d2V == 0.0);

    const auto pl = potential_eval(Potential::linear(2.0), par, 1.5);
    REQUIRE(pl.V == -3.0);
    REQUIRE(pl.dV == -2.0);
    REQUIRE(pl.d2V == 0.0);
}

TEST_CASE("quadratic and log potential values") {
    const Params par{0.5};
    const auto pq = potential_eval(Potential::quadratic(2.0), par, 1.5);
    REQUIRE(pq.V == 2.25);
    REQUIRE(pq.dV == 3.0);
    REQUIRE(pq.d2V == 2.0);

    const auto pg = potential_eval(Potential::log(-1.0), par, 2.0);
    REQUIRE_THAT(pg.V, WithinRel(-std::log(2.0), 1e-15));
    REQUIRE_THAT(pg.dV, WithinRel(-0.5, 1e-15));
    REQUIRE_THAT(pg.d2V, WithinRel(0.25, 1e-15));
}

TEST_CASE("power potential carries its stabilizing quadratic term") {
    // V = A q^a + c q^2 with c = 4 g^2 a/(a+2)^2; for A=1, a=3, g=0.5
    // c = 0.12 and at q=1: V = 1.12, V' = 3.24, V'' = 6.24.
    const Params par{0.5};
    const auto pe = potential_eval(Potential::power(1.0, 3.0), par, 1.0);
    REQUIRE_THAT(pe.V, WithinRel(1.12, 1e-14));
    REQUIRE_THAT(pe.dV, WithinRel(3.24, 1e-14));
    REQUIRE_THAT(pe.d2V, WithinRel(6.24, 1e-14));
}

TEST_CASE("exponential potential carries its linear term") {
    // V = A e^q + 8 g^2 q; for A=1, g=0.5 at q=0: V = 1, V' = 3, V'' = 1.
    const Params par{0.5};
    const auto pe = potential_eval(Potential::exponential(1.0), par, 0.0);
    REQUIRE(pe.V == 1.0);
    REQUIRE(pe.dV == 3.0);
    REQUIRE(pe.d2V == 1.0);
}

TEST_CASE("excluded power exponents are rejected") {
    REQUIRE_THROWS_AS(Potential::power(1.0, -2.0), DomainError);
    REQUIRE_THROWS_AS(Potential::power(1.0, 0.0), DomainError);
    REQUIRE_THROWS_AS(Potential::power(1.0, 1.0), DomainError);
    REQUIRE_THROWS_AS(Potential::power(1.0, 2.0), DomainError);
    REQUIRE_NOTHROW(Potential::power(1.0, 3.0));
    REQUIRE_NOTHROW(Potential::power(1.0, -1.0));
    REQUIRE_NOTHROW(Potential::power(1.0, 2.5));
}

TEST_CASE("positive-domain potentials reject q <= 0") {
    const Params par{0.5};
    REQUIRE(Potential::log(1.0).positive_domain());
    REQUIRE(Potential::power(1.0, 3.0).positive_domain());
    REQUIRE_FALSE(Potential::exponential(1.0).positive_domain());
    REQUIRE_THROWS_AS(potential_eval(Potential::log(1.0), par, 0.0),
                      DomainError);
    REQUIRE_THROWS_AS(potential_eval(Potential::power(1.0, 3.0), par, -1.0),
                      DomainError);
}

TEST_CASE("lagrangian hamiltonian momentum at a pinned state") {
    const Params par{0.5};
    const Potential pot = Potential::free_particle();
    const State1D s{1.0, 2.0, 3.0};
    const double w = std::exp(1.0);
    REQUIRE_THAT(lagrangian(pot, par, s), WithinRel(4.5 * w, 1e-15));
    REQUIRE_THAT(hamiltonian(pot, par, s), WithinRel(4.5 * w, 1e-15));
    REQUIRE_THAT(canonical_momentum(par, s), WithinRel(3.0 * w, 1e-15));
}

TEST_CASE("hamiltonian differs from lagrangian by twice the potential") {
    const Params par{0.3};
    const Potential pot = Potential::quadratic(2.0);
    const State1D s{0.7, 1.3, -0.8};
    const double w = exp_weight(par, s.t);
    const double V = potential_eval(pot, par, s.q).V;
    REQUIRE_THAT(hamiltonian(pot, par, s) - lagrangian(pot, par, s),
                 WithinRel(2.0 * V * w, 1e-12));
}

TEST_CASE("euler-lagrange expression vanishes on-flow") {
    const Params par{0.5};
    const Potential pot = Potential::linear(1.0);
    const State1D s{0.3, 1.2, -0.4};
    const double acc = acceleration(pot, par, s.q, s.qdot);
    REQUIRE(euler_lagrange(pot, par, s.t, s.q, s.qdot, acc) == 0.0);
    // off-flow it equals -(qddot - acc) e^{2 g t}
    const double off = euler_lagrange(pot, par, s.t, s.q, s.qdot, acc + 1.0);
    REQUIRE_THAT(off, WithinRel(-exp_weight(par, s.t), 1e-14));
}

TEST_CASE("finite state check") {
    REQUIRE(finite(State1D{0.0, 1.0, 2.0}));
    REQUIRE_FALSE(finite(State1D{0.0, std::nan(""), 2.0}));
    REQUIRE_FALSE(finite(State1D{0.0, 1.0, HUGE_VAL}));
}

TEST_CASE("rng determinism and stream derivation") {
    Rng a(42), b(42);
    for (int i = 0; i < 5; ++i) REQUIRE(a.raw() == b.raw());

    Rng c(42);
    for (int i = 0; i < 1000; ++i) {
        const double x = c.uniform01();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
    for (int i = 0; i < 1000; ++i) {
        const double x = c.uniform(-2.0, 3.0);
        REQUIRE(x >= -2.0);
        REQUIRE(x < 3.0);
    }

    REQUIRE(Rng::derive(42, "a") != Rng::derive(42, "b"));
    REQUIRE(Rng::derive(42, "a") != Rng::derive(43, "a"));
    REQUIRE(Rng::derive(42, "a") == Rng::derive(42, "a"));
}

TEST_CASE("finite difference helpers") {
    REQUIRE_THAT(fd_derivative([](double x) { return std::sin(x); }, 0.3),
                 WithinAbs(std::cos(0.3), 1e-9));
    REQUIRE_THAT(fd_second([](double x) { return std::sin(x); }, 0.3),
                 WithinAbs(-std::sin(0.3), 1e-6));
    REQUIRE_THAT(fd_mixed([](double x, double y) { return x * x * y; }, 1.5,
                          -0.7),
                 WithinAbs(3.0, 1e-6));
}
