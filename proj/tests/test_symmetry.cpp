#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bck/catalog.hpp"

using namespace bck;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Params kPar{0.5};
const Potential kLin = Potential::linear(1.0);

Generator time_translation() {
    return {"d_t", "test", Field2::constant(1.0), Field2::zero(),
            Field2::zero()};
}

Generator scaling() {
    Field2 xi;
    xi.v = [](double q, double) { return q; };
    xi.dq = [](double, double) { return 1.0; };
    xi.dt = [](double, double) { return 0.0; };
    xi.dqq = xi.dt;
    xi.dqt = xi.dt;
    xi.dtt = xi.dt;
    return {"q_dq", "test", Field2::zero(), xi, Field2::zero()};
}

/// Gauge function Lambda = 0.3 q^2 t + 0.7 q + 0.1 t^2 with exact partials.
Field2 sample_gauge() {
    Field2 lam;
    lam.v = [](double q, double t) {
        return 0.3 * q * q * t + 0.7 * q + 0.1 * t * t;
    };
    lam.dq = [](double q, double t) { return 0.6 * q * t + 0.7; };
    lam.dt = [](double q, double t) { return 0.3 * q * q + 0.2 * t; };
    lam.dqq = [](double, double t) { return 0.6 * t; };
    lam.dqt = [](double q, double) { return 0.6 * q; };
    lam.dtt = [](double, double) { return 0.2; };
    return lam;
}

}  // namespace

TEST_CASE("catalog symmetries satisfy the invariance identity off-shell") {
    const CatalogBundle cat = make_catalog(kLin, kPar);
    Rng rng(Rng::derive(7, "rt"));
    REQUIRE(cat.symmetries.size() == 5);
    for (const auto& e : cat.symmetries) {
        for (int i = 0; i < 200; ++i) {
            const OffShellPoint p{rng.uniform(0.0, 3.0),
                                  rng.uniform(-3.0, 3.0),
                                  rng.uniform(-3.0, 3.0),
                                  rng.uniform(-5.0, 5.0)};
            const double L =
                lagrangian(kLin, kPar, State1D{p.t, p.q, p.qdot});
            const double r = rund_trautman_residual(e.gen, kLin, kPar, p);
            REQUIRE(std::abs(r) <= 1e-12 * (1.0 + std::abs(L)));
        }
    }
}

TEST_CASE("time translation is not a symmetry of the weighted lagrangian") {
    // Its residual is exactly the explicit time dependence 2 gamma L.
    const OffShellPoint p{0.7, 1.3, -0.8, 2.1};
    const double L = lagrangian(kLin, kPar, State1D{p.t, p.q, p.qdot});
    const double r =
        rund_trautman_residual(time_translation(), kLin, kPar, p);
    REQUIRE_THAT(r, WithinRel(2.0 * kPar.gamma * L, 1e-13));
}

TEST_CASE("residual is independent of the off-shell acceleration") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    for (const auto& e : cat.symmetries) {
        const OffShellPoint a{0.7, 1.3, -0.8, 0.0};
        const OffShellPoint b{0.7, 1.3, -0.8, 5.0};
        REQUIRE(rund_trautman_residual(e.gen, kLin, kPar, a) ==
                rund_trautman_residual(e.gen, kLin, kPar, b));
    }
}

TEST_CASE("residual is linear in the generator") {
    const OffShellPoint p{0.7, 1.3, -0.8, 2.1};
    const Generator dt = time_translation();
    const Generator sc = scaling();
    const double r1 = rund_trautman_residual(dt, kLin, kPar, p);
    const double r2 = rund_trautman_residual(sc, kLin, kPar, p);
    const double rsum =
        rund_trautman_residual(gen_add(dt, sc), kLin, kPar, p);
    const double rscaled =
        rund_trautman_residual(gen_scale(dt, 3.0), kLin, kPar, p);
    REQUIRE_THAT(rsum, WithinRel(r1 + r2, 1e-12));
    REQUIRE_THAT(rscaled, WithinRel(3.0 * r1, 1e-12));
}

TEST_CASE("noether values at the origin") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    const State1D s{0.0, 0.0, 0.0};
    // X1 carries f = (F/2g) e^{2gt}; at the origin its integral is +1 while
    // the catalog I1 = (qdot - F/2g) e^{2gt} evaluates to -1.
    REQUIRE(noether_integral(cat.symmetry("X1").gen, kLin, kPar, s) == 1.0);
    REQUIRE(eval_integral(cat.integral("I1"), s) == -1.0);
}

TEST_CASE("noether integrals match the catalog up to the recorded sign") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    Rng rng(Rng::derive(7, "signs"));
    REQUIRE(cat.symmetry("X1").eq8_sign == -1.0);
    REQUIRE(cat.symmetry("X2").eq8_sign == 1.0);
    REQUIRE(cat.symmetry("X3").eq8_sign == 1.0);
    REQUIRE(cat.symmetry("X4").eq8_sign == 1.0);
    REQUIRE(cat.symmetry("X5").eq8_sign == -1.0);
    for (const auto& e : cat.symmetries) {
        const FirstIntegral& I = cat.integral(e.integral_id);
        for (int i = 0; i < 50; ++i) {
            const State1D s{rng.uniform(0.0, 3.0), rng.uniform(-3.0, 3.0),
                            rng.uniform(-3.0, 3.0)};
            const double n = noether_integral(e.gen, kLin, kPar, s);
            const double expect = e.eq8_sign * I.value(s);
            REQUIRE_THAT(n, WithinAbs(expect,
                                      1e-12 * (1.0 + std::abs(expect))));
        }
    }
}

TEST_CASE("gauge shift leaves residual and integral unchanged") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    const Field2 lam = sample_gauge();
    Rng rng(Rng::derive(7, "gauge"));
    for (const auto& e : cat.symmetries) {
        for (int i = 0; i < 50; ++i) {
            const State1D s{rng.uniform(0.0, 3.0), rng.uniform(-3.0, 3.0),
                            rng.uniform(-3.0, 3.0)};
            const OffShellPoint p{s.t, s.q, s.qdot, rng.uniform(-5.0, 5.0)};
            const double L = lagrangian(kLin, kPar, s);
            REQUIRE(std::abs(rund_trautman_residual_gauged(e.gen, kLin, kPar,
                                                           p, lam)) <=
                    1e-12 * (1.0 + std::abs(L)));
            const double plain = noether_integral(e.gen, kLin, kPar, s);
            const double gauged =
                noether_integral_gauged(e.gen, kLin, kPar, s, lam);
            REQUIRE_THAT(gauged,
                         WithinAbs(plain, 1e-12 * (1.0 + std::abs(plain))));
        }
    }
}

TEST_CASE("zero gauge function is a no-op") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    const State1D s{0.4, -1.1, 0.9};
    const Generator& x2 = cat.symmetry("X2").gen;
    const Generator shifted = gauge_shift(x2, Field2::zero());
    REQUIRE(shifted.f.v(s.q, s.t) == x2.f.v(s.q, s.t));
    REQUIRE(noether_integral_gauged(x2, kLin, kPar, s, Field2::zero()) ==
            noether_integral(x2, kLin, kPar, s));
}

TEST_CASE("a gauge choice removes the divergence term of X2") {
    // Lambda = -e^{2gt} (F t q - g q^2) has X2(Lambda) = -(F t - 2 g q),
    // cancelling f2 exactly: the shifted pair is strictly invariant.
    const double g = kPar.gamma, F = 1.0;
    Field2 lam;
    lam.v = [g, F](double q, double t) {
        return -std::exp(2.0 * g * t) * (F * t * q - g * q * q);
    };
    lam.dq = [g, F](double q, double t) {
        return -std::exp(2.0 * g * t) * (F * t - 2.0 * g * q);
    };
    lam.dt = [g, F](double q, double t) {
        return std::exp(2.0 * g * t) *
               (-2.0 * g * (F * t * q - g * q * q) - F * q);
    };
    lam.dqq = [g](double, double t) {
        return 2.0 * g * std::exp(2.0 * g * t);
    };
    lam.dqt = [g, F](double q, double t) {
        return std::exp(2.0 * g * t) *
               (-2.0 * g * (F * t - 2.0 * g * q) - F);
    };
    lam.dtt = [g, F](double q, double t) {
        return std::exp(2.0 * g * t) *
               (-4.0 * g * g * (F * t * q - g * q * q) - 4.0 * g * F * q);
    };

    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    const Generator shifted = gauge_shift(cat.symmetry("X2").gen, lam);
    Rng rng(Rng::derive(7, "strict"));
    for (int i = 0; i < 100; ++i) {
        const double q = rng.uniform(-3.0, 3.0);
        const double t = rng.uniform(0.0, 3.0);
        const double scale = 1.0 + std::abs(F * t - 2.0 * g * q);
        REQUIRE(std::abs(shifted.f.v(q, t)) <= 1e-12 * scale);
        const OffShellPoint p{t, q, rng.uniform(-3.0, 3.0),
                              rng.uniform(-5.0, 5.0)};
        const double L = lagrangian(kLin, kPar, State1D{p.t, p.q, p.qdot});
        REQUIRE(std::abs(rund_trautman_residual_gauged(
                    cat.symmetry("X2").gen, kLin, kPar, p, lam)) <=
                1e-12 * (1.0 + std::abs(L)));
    }
}

TEST_CASE("lie residuals distinguish equation symmetries") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    REQUIRE(cat.lie_generators.size() == 3);
    Rng rng(Rng::derive(7, "lie"));
    for (const auto& gen : cat.lie_generators) {
        for (int i = 0; i < 100; ++i) {
            const State1D s{rng.uniform(0.0, 3.0), rng.uniform(-3.0, 3.0),
                            rng.uniform(-3.0, 3.0)};
            REQUIRE(std::abs(lie_residual(gen, kLin, kPar, s)) <= 1e-10);
        }
    }
    // time translation is an equation symmetry of every autonomous family
    REQUIRE(lie_residual(time_translation(), Potential::quadratic(2.0), kPar,
                         State1D{0.4, 1.2, -0.7}) == 0.0);
    // the scaling field is not: its residual equals the constant force F
    REQUIRE_THAT(lie_residual(scaling(), kLin, kPar, State1D{0.4, 1.2, -0.7}),
                 WithinAbs(1.0, 1e-13));
}

TEST_CASE("point symmetries of the weighted lagrangian are lie symmetries") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    Rng rng(Rng::derive(7, "lie2"));
    for (const auto& e : cat.symmetries) {
        for (int i = 0; i < 50; ++i) {
            const State1D s{rng.uniform(0.0, 2.0), rng.uniform(-2.0, 2.0),
                            rng.uniform(-2.0, 2.0)};
            REQUIRE(std::abs(lie_residual(e.gen, kLin, kPar, s)) <= 1e-9);
        }
    }
}

TEST_CASE("same symmetry classification") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    const Generator& x1 = cat.symmetry("X1").gen;
    const Generator& x2 = cat.symmetry("X2").gen;
    Rng rng(Rng::derive(7, "same"));
    REQUIRE(same_symmetry(x2, gen_scale(x2, 3.7), rng));
    REQUIRE_FALSE(same_symmetry(x1, x2, rng));
}

TEST_CASE("converse characteristics recover the generators") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    Rng rng(Rng::derive(7, "converse"));
    for (const auto& e : cat.symmetries) {
        const FirstIntegral& I = cat.integral(e.integral_id);
        for (int i = 0; i < 40; ++i) {
            const State1D s = draw_regular_state(cat, rng);
            const double expect =
                e.converse_factor * characteristic(e.gen, s);
            REQUIRE_THAT(converse_characteristic(I.value, kPar, s),
                         WithinAbs(expect,
                                   1e-6 * (1.0 + std::abs(expect))));
            if (I.d_dqdot) {
                REQUIRE_THAT(
                    converse_characteristic_exact(I.d_dqdot, kPar, s),
                    WithinAbs(expect, 1e-12 * (1.0 + std::abs(expect))));
            }
        }
    }
    for (const auto& y : cat.evolutionary) {
        const FirstIntegral& I = cat.integral(y.integral_id);
        for (int i = 0; i < 40; ++i) {
            const State1D s = draw_regular_state(cat, rng);
            const double expect = y.converse_factor * y.characteristic(s);
            REQUIRE_THAT(converse_characteristic(I.value, kPar, s),
                         WithinAbs(expect,
                                   1e-6 * (1.0 + std::abs(expect))));
        }
    }
}

TEST_CASE("first integrals are invariant under their own symmetry") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    const FirstIntegral& I2 = cat.integral("I2");
    auto I2fn = [&](const State1D& s) { return I2.value(s); };
    const State1D s{0.6, 1.4, -0.9};
    REQUIRE_THAT(invariance_residual(cat.symmetry("X2").gen, I2fn, s),
                 WithinAbs(0.0, 1e-6));
    // cross term: X1 moves I2 at the constant rate -2 gamma
    REQUIRE_THAT(invariance_residual(cat.symmetry("X1").gen, I2fn, s),
                 WithinAbs(-1.0, 1e-8));
}

TEST_CASE("generator partials audit") {
    const CatalogBundle cat = make_catalog(kLin, kPar, false);
    Rng rng(Rng::derive(7, "audit"));
    REQUIRE(audit_generator(cat.symmetry("X4").gen, rng) <= 1e-6);
}

TEST_CASE("value-only generators work at reduced accuracy") {
    // Build X2 from plain value lambdas; partials fall back to finite
    // differences, so the residual is only FD-accurate.
    const double g = kPar.gamma, F = 1.0;
    Generator x2{"X2-fd", "test", Field2::zero(),
                 Field2::from_value([g](double, double t) {
                     return std::exp(-2.0 * g * t);
                 }),
                 Field2::from_value([g, F](double q, double t) {
                     return F * t - 2.0 * g * q;
                 })};
    Rng rng(Rng::derive(7, "fd"));
    for (int i = 0; i < 50; ++i) {
        const OffShellPoint p{rng.uniform(0.0, 3.0), rng.uniform(-3.0, 3.0),
                              rng.uniform(-3.0, 3.0), 0.0};
        const double L = lagrangian(kLin, kPar, State1D{p.t, p.q, p.qdot});
        REQUIRE(std::abs(rund_trautman_residual(x2, kLin, kPar, p)) <=
                1e-5 * (1.0 + std::abs(L)));
    }
}
