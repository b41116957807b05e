#pragma once

// The symmetry/first-integral catalog.  For the linear potential V = -Fq
// (and its F = 0 specialization, the free particle) there are five
// variational point symmetries X1..X5 with integrals I1..I5, three further
// Lie point symmetries X6..X8 whose integrals I6..I8 are generated by the
// velocity-dependent evolutionary representatives Y6..Y8, and for each of
// the log, power and exponential families exactly one variational symmetry.
// All closed-form partials are audited against finite differences when the
// catalog is built.
//
// Conventions recorded per entry:
//   eq8_sign:        noether_integral(gen) == eq8_sign * integral
//   converse_factor: -e^{-2 gamma t} dI/dqdot == converse_factor * characteristic

#include <cmath>
#include <string>
#include <vector>

#include "bck/errors.hpp"
#include "bck/generator.hpp"
#include "bck/integrals.hpp"
#include "bck/model.hpp"
#include "bck/rng.hpp"

namespace bck {

struct SymmetryEntry {
    Generator gen;
    std::string integral_id;
    double eq8_sign = 1.0;
    double converse_factor = 1.0;
    std::string tau_str, xi_str, f_str;  ///< display forms
};

/// Velocity-dependent evolutionary representative (characteristic only).
struct EvolutionaryRep {
    std::string name;
    std::string integral_id;
    std::string formula;
    std::function<double(const State1D&)> characteristic;
    double converse_factor = 1.0;
    std::function<double(const State1D&)> singular_margin;
};

struct CatalogBundle {
    Potential pot;
    Params params{1.0};
    std::vector<SymmetryEntry> symmetries;
    std::vector<Generator> lie_generators;  ///< X6..X8 (linear family only)
    std::vector<EvolutionaryRep> evolutionary;
    std::vector<FirstIntegral> integrals;

    const FirstIntegral& integral(const std::string& id) const {
        for (const auto& I : integrals)
            if (I.id == id) return I;
        throw PotentialMismatch("catalog: integral " + id +
                                " is not available for the " +
                                to_string(pot.kind) + " potential");
    }

    const SymmetryEntry& symmetry(const std::string& name) const {
        for (const auto& e : symmetries)
            if (e.gen.name == name) return e;
        throw PotentialMismatch("catalog: symmetry " + name +
                                " is not available for the " +
                                to_string(pot.kind) + " potential");
    }
};

// ── closed-form field helpers ───────────────────────────────────────────────

namespace detail {

inline Fn2 cfn(double c) {
    return [c](double, double) { return c; };
}

/// c * q^m * exp(r t), with exact partials.  Covers every catalog slot.
inline Field2 monomial(double c, int m, double r) {
    auto term = [c, m, r](double q, double t, int dq_order, int dt_order) {
        double coef = c * std::pow(r, dt_order);
        double qpow = 1.0;
        int mm = m;
        for (int k = 0; k < dq_order; ++k) {
            coef *= mm;
            --mm;
        }
        if (coef == 0.0) return 0.0;
        for (int k = 0; k < mm; ++k) qpow *= q;
        return coef * qpow * std::exp(r * t);
    };
    Field2 f;
    f.v = [term](double q, double t) { return term(q, t, 0, 0); };
    f.dq = [term](double q, double t) { return term(q, t, 1, 0); };
    f.dt = [term](double q, double t) { return term(q, t, 0, 1); };
    f.dqq = [term](double q, double t) { return term(q, t, 2, 0); };
    f.dqt = [term](double q, double t) { return term(q, t, 1, 1); };
    f.dtt = [term](double q, double t) { return term(q, t, 0, 2); };
    return f;
}

inline Field2 sum(const Field2& a, const Field2& b) { return field_add(a, b); }
inline Field2 sum(const Field2& a, const Field2& b, const Field2& c) {
    return field_add(field_add(a, b), c);
}

}  // namespace detail

// ── catalog construction ────────────────────────────────────────────────────

/// Build the catalog bound to (pot, params).  When audit is true (the
/// default) every generator's closed-form partials are checked against
/// finite differences at `audit_points` random points; a discrepancy above
/// 1e-6 (normalized) is a build error.
inline CatalogBundle make_catalog(const Potential& pot, const Params& par,
                                  bool audit = true, int audit_points = 1000,
                                  std::uint64_t audit_seed = 0x5eedcafe) {
    using detail::cfn;
    using detail::monomial;
    using detail::sum;

    CatalogBundle cat;
    cat.pot = pot;
    cat.params = par;
    const double g = par.gamma;

    const bool linear_family = (pot.kind == PotentialKind::linear ||
                                pot.kind == PotentialKind::free_particle);

    if (linear_family) {
        const double F = (pot.kind == PotentialKind::linear) ? pot.F : 0.0;
        const double u = F / (2.0 * g);  // terminal velocity

        auto I1v = [g, u](const State1D& s) {
            return (s.qdot - u) * std::exp(2.0 * g * s.t);
        };
        auto I2v = [g, F](const State1D& s) {
            return F * s.t - 2.0 * g * s.q - s.qdot;
        };
        // normalized distance of I1 to zero (its own magnitude scale)
        auto margin_I1 = [g, F, I1v](const State1D& s) {
            const double scale =
                (2.0 * g * std::abs(s.qdot) + std::abs(F)) *
                    std::exp(2.0 * g * s.t) / (2.0 * g) +
                1e-300;
            return std::abs(I1v(s)) / scale;
        };
        // normalized distance of 2 gamma I2 + F to zero
        auto margin_D = [g, F, I2v](const State1D& s) {
            const double scale = 2.0 * g * (std::abs(F * s.t) +
                                            2.0 * g * std::abs(s.q) +
                                            std::abs(s.qdot)) +
                                 std::abs(F) + 1e-300;
            return std::abs(2.0 * g * I2v(s) + F) / scale;
        };

        // X1 = d_q,  f = (F/(2g)) e^{2gt}
        {
            SymmetryEntry e;
            e.gen = {"X1", "catalog", Field2::zero(), Field2::constant(1.0),
                     monomial(u, 0, 2.0 * g)};
            e.integral_id = "I1";
            e.eq8_sign = -1.0;
            e.converse_factor = -1.0;
            e.tau_str = "0";
            e.xi_str = "1";
            e.f_str = "(F/(2 g)) exp(2 g t)";
            cat.symmetries.push_back(e);
        }
        // X2 = e^{-2gt} d_q,  f = F t - 2 g q
        {
            SymmetryEntry e;
            e.gen = {"X2", "catalog", Field2::zero(), monomial(1.0, 0, -2.0 * g),
                     sum(monomial(-2.0 * g, 1, 0.0),
                         Field2{[F](double, double t) { return F * t; },
                                cfn(0.0), cfn(F), cfn(0.0), cfn(0.0),
                                cfn(0.0)})};
            e.integral_id = "I2";
            e.eq8_sign = 1.0;
            e.converse_factor = 1.0;
            e.tau_str = "0";
            e.xi_str = "exp(-2 g t)";
            e.f_str = "F t - 2 g q";
            cat.symmetries.push_back(e);
        }
        // X3 = e^{2gt} (2g d_t + F d_q),  f = (F/(4g))(8 g^2 q + F) e^{4gt}
        {
            SymmetryEntry e;
            e.gen = {"X3", "catalog", monomial(2.0 * g, 0, 2.0 * g),
                     monomial(F, 0, 2.0 * g),
                     sum(monomial(2.0 * g * F, 1, 4.0 * g),
                         monomial(F * F / (4.0 * g), 0, 4.0 * g))};
            e.integral_id = "I3";
            e.eq8_sign = 1.0;
            e.converse_factor = 1.0;
            e.tau_str = "2 g exp(2 g t)";
            e.xi_str = "F exp(2 g t)";
            e.f_str = "(F/(4 g)) (8 g^2 q + F) exp(4 g t)";
            cat.symmetries.push_back(e);
        }
        // X4 = e^{-2gt} (d_t + (F t - 2 g q) d_q)
        // f = 2 g^2 q^2 + F q (1 - 2 g t) + F^2 t^2 / 2
        {
            Field2 xi;  // (F t - 2 g q) e^{-2gt}
            xi.v = [F, g](double q, double t) {
                return (F * t - 2.0 * g * q) * std::exp(-2.0 * g * t);
            };
            xi.dq = [F, g](double, double t) {
                return -2.0 * g * std::exp(-2.0 * g * t);
            };
            xi.dt = [F, g](double q, double t) {
                return (F - 2.0 * g * (F * t - 2.0 * g * q)) *
                       std::exp(-2.0 * g * t);
            };
            xi.dqq = cfn(0.0);
            xi.dqt = [F, g](double, double t) {
                return 4.0 * g * g * std::exp(-2.0 * g * t);
            };
            xi.dtt = [F, g](double q, double t) {
                return (-4.0 * g * F +
                        4.0 * g * g * (F * t - 2.0 * g * q)) *
                       std::exp(-2.0 * g * t);
            };
            Field2 f;
            f.v = [F, g](double q, double t) {
                return 2.0 * g * g * q * q + F * q * (1.0 - 2.0 * g * t) +
                       0.5 * F * F * t * t;
            };
            f.dq = [F, g](double q, double t) {
                return 4.0 * g * g * q + F * (1.0 - 2.0 * g * t);
            };
            f.dt = [F, g](double q, double t) {
                return -2.0 * g * F * q + F * F * t;
            };
            f.dqq = cfn(4.0 * g * g);
            f.dqt = cfn(-2.0 * g * F);
            f.dtt = cfn(F * F);
            SymmetryEntry e;
            e.gen = {"X4", "catalog", monomial(1.0, 0, -2.0 * g), xi, f};
            e.integral_id = "I4";
            e.eq8_sign = 1.0;
            e.converse_factor = 1.0;
            e.tau_str = "exp(-2 g t)";
            e.xi_str = "(F t - 2 g q) exp(-2 g t)";
            e.f_str = "2 g^2 q^2 + F q (1 - 2 g t) + F^2 t^2 / 2";
            cat.symmetries.push_back(e);
        }
        // X5 = 2 d_t + (F t - 2 g q) d_q
        // f = (F/(4 g^2)) (F (2 g t - 1) + 4 g^2 q) e^{2gt}
        {
            Field2 xi;
            xi.v = [F, g](double q, double t) { return F * t - 2.0 * g * q; };
            xi.dq = cfn(-2.0 * g);
            xi.dt = cfn(F);
            xi.dqq = cfn(0.0);
            xi.dqt = cfn(0.0);
            xi.dtt = cfn(0.0);
            Field2 f;
            f.v = [F, g](double q, double t) {
                return (F / (4.0 * g * g)) *
                       (F * (2.0 * g * t - 1.0) + 4.0 * g * g * q) *
                       std::exp(2.0 * g * t);
            };
            f.dq = [F, g](double, double t) {
                return F * std::exp(2.0 * g * t);
            };
            f.dt = [F, g](double q, double t) {
                return (F * F * t + 2.0 * g * F * q) * std::exp(2.0 * g * t);
            };
            f.dqq = cfn(0.0);
            f.dqt = [F, g](double, double t) {
                return 2.0 * g * F * std::exp(2.0 * g * t);
            };
            f.dtt = [F, g](double q, double t) {
                return (F * F + 2.0 * g * (F * F * t + 2.0 * g * F * q)) *
                       std::exp(2.0 * g * t);
            };
            SymmetryEntry e;
            e.gen = {"X5", "catalog", Field2::constant(2.0), xi, f};
            e.integral_id = "I5";
            e.eq8_sign = -1.0;
            e.converse_factor = -1.0;
            e.tau_str = "2";
            e.xi_str = "F t - 2 g q";
            e.f_str = "(F/(4 g^2)) (F (2 g t - 1) + 4 g^2 q) exp(2 g t)";
            cat.symmetries.push_back(e);
        }

        // Lie-only generators (divergence-free slots; used by lie_residual)
        {
            Generator X6{"X6", "catalog-lie", Field2::constant(1.0),
                         Field2::zero(), Field2::zero()};
            Field2 tau7;  // F t - 2 g q
            tau7.v = [F, g](double q, double t) { return F * t - 2.0 * g * q; };
            tau7.dq = cfn(-2.0 * g);
            tau7.dt = cfn(F);
            tau7.dqq = cfn(0.0);
            tau7.dqt = cfn(0.0);
            tau7.dtt = cfn(0.0);
            Field2 xi7;  // (F t - 2 g q)^2
            xi7.v = [F, g](double q, double t) {
                const double w = F * t - 2.0 * g * q;
                return w * w;
            };
            xi7.dq = [F, g](double q, double t) {
                return -4.0 * g * (F * t - 2.0 * g * q);
            };
            xi7.dt = [F, g](double q, double t) {
                return 2.0 * F * (F * t - 2.0 * g * q);
            };
            xi7.dqq = cfn(8.0 * g * g);
            xi7.dqt = cfn(-4.0 * g * F);
            xi7.dtt = cfn(2.0 * F * F);
            Generator X7{"X7", "catalog-lie", tau7, xi7, Field2::zero()};

            Field2 tau8;  // 2 g (F t - 2 g q) e^{2gt}
            tau8.v = [F, g](double q, double t) {
                return 2.0 * g * (F * t - 2.0 * g * q) * std::exp(2.0 * g * t);
            };
            tau8.dq = [F, g](double, double t) {
                return -4.0 * g * g * std::exp(2.0 * g * t);
            };
            tau8.dt = [F, g](double q, double t) {
                return 2.0 * g *
                       (F + 2.0 * g * (F * t - 2.0 * g * q)) *
                       std::exp(2.0 * g * t);
            };
            tau8.dqq = cfn(0.0);
            tau8.dqt = [F, g](double, double t) {
                return -8.0 * g * g * g * std::exp(2.0 * g * t);
            };
            tau8.dtt = [F, g](double q, double t) {
                return 4.0 * g * g *
                       (2.0 * F + 2.0 * g * (F * t - 2.0 * g * q)) *
                       std::exp(2.0 * g * t);
            };
            Field2 xi8;  // F (F t - 2 g q) e^{2gt}
            xi8.v = [F, g](double q, double t) {
                return F * (F * t - 2.0 * g * q) * std::exp(2.0 * g * t);
            };
            xi8.dq = [F, g](double, double t) {
                return -2.0 * g * F * std::exp(2.0 * g * t);
            };
            xi8.dt = [F, g](double q, double t) {
                return F * (F + 2.0 * g * (F * t - 2.0 * g * q)) *
                       std::exp(2.0 * g * t);
            };
            xi8.dqq = cfn(0.0);
            xi8.dqt = [F, g](double, double t) {
                return -4.0 * g * g * F * std::exp(2.0 * g * t);
            };
            xi8.dtt = [F, g](double q, double t) {
                return 2.0 * g * F *
                       (2.0 * F + 2.0 * g * (F * t - 2.0 * g * q)) *
                       std::exp(2.0 * g * t);
            };
            Generator X8{"X8", "catalog-lie", tau8, xi8, Field2::zero()};

            cat.lie_generators.push_back(X6);
            cat.lie_generators.push_back(X7);
            cat.lie_generators.push_back(X8);
        }

        // first integrals of the linear family
        auto push = [&cat](FirstIntegral I) { cat.integrals.push_back(I); };
        const PotentialKind bind = pot.kind;
        push({"I1", bind, "catalog", "(1/(2 g)) (2 g qdot - F) exp(2 g t)",
              I1v,
              [g](const State1D& s) { return std::exp(2.0 * g * s.t); },
              nullptr});
        push({"I2", bind, "catalog", "F t - 2 g q - qdot", I2v,
              [](const State1D&) { return -1.0; }, nullptr});
        push({"I3", bind, "catalog", "g I1^2",
              [g, I1v](const State1D& s) {
                  const double i1 = I1v(s);
                  return g * i1 * i1;
              },
              [g, I1v](const State1D& s) {
                  return 2.0 * g * I1v(s) * std::exp(2.0 * g * s.t);
              },
              nullptr});
        push({"I4", bind, "catalog", "I2^2 / 2",
              [I2v](const State1D& s) {
                  const double i2 = I2v(s);
                  return 0.5 * i2 * i2;
              },
              [I2v](const State1D& s) { return -I2v(s); }, nullptr});
        push({"I5", bind, "catalog", "I1 (I2 - F/(2 g))",
              [u, I1v, I2v](const State1D& s) {
                  return I1v(s) * (I2v(s) - u);
              },
              [g, u, I1v, I2v](const State1D& s) {
                  return (I2v(s) - u) * std::exp(2.0 * g * s.t) - I1v(s);
              },
              nullptr});
        push({"I6", bind, "catalog", "F log|I1| - 2 g I2",
              [F, g, I1v, I2v](const State1D& s) {
                  return F * std::log(std::abs(I1v(s))) - 2.0 * g * I2v(s);
              },
              [F, g, I1v](const State1D& s) {
                  return F * std::exp(2.0 * g * s.t) / I1v(s) + 2.0 * g;
              },
              margin_I1});
        push({"I7", bind, "catalog", "I1 / (2 g I2 + F)",
              [F, g, I1v, I2v](const State1D& s) {
                  return I1v(s) / (2.0 * g * I2v(s) + F);
              },
              [F, g, I1v, I2v](const State1D& s) {
                  const double D = 2.0 * g * I2v(s) + F;
                  return (std::exp(2.0 * g * s.t) * D + 2.0 * g * I1v(s)) /
                         (D * D);
              },
              margin_D});
        push({"I8", bind, "catalog", "(2 g I2 + F) / I1",
              [F, g, I1v, I2v](const State1D& s) {
                  return (2.0 * g * I2v(s) + F) / I1v(s);
              },
              [F, g, I1v, I2v](const State1D& s) {
                  const double i1 = I1v(s);
                  return -(2.0 * g * i1 +
                           (2.0 * g * I2v(s) + F) * std::exp(2.0 * g * s.t)) /
                         (i1 * i1);
              },
              margin_I1});

        // evolutionary representatives of the Lie-only integrals
        cat.evolutionary.push_back(
            {"Y6", "I6", "(qdot / I1) d_q",
             [I1v](const State1D& s) { return s.qdot / I1v(s); }, -2.0 * g,
             margin_I1});
        cat.evolutionary.push_back(
            {"Y7", "I7", "((F t - 2 g q) / (2 g I2 + F)^2) d_q",
             [F, g, I2v](const State1D& s) {
                 const double D = 2.0 * g * I2v(s) + F;
                 return (F * s.t - 2.0 * g * s.q) / (D * D);
             },
             -2.0 * g, margin_D});
        cat.evolutionary.push_back(
            {"Y8", "I8", "((F t - 2 g q) / I1^2) d_q",
             [F, g, I1v](const State1D& s) {
                 const double i1 = I1v(s);
                 return (F * s.t - 2.0 * g * s.q) / (i1 * i1);
             },
             2.0 * g, margin_I1});
    }

    if (pot.kind == PotentialKind::log) {
        const double A = pot.A;
        Field2 xi;  // -2 g q e^{-2gt}
        xi = monomial(-2.0 * g, 1, -2.0 * g);
        Field2 f = sum(monomial(2.0 * g * g, 2, 0.0),
                       Field2{[g, A](double, double t) {
                                  return 2.0 * g * A * t;
                              },
                              cfn(0.0), cfn(2.0 * g * A), cfn(0.0), cfn(0.0),
                              cfn(0.0)});
        SymmetryEntry e;
        e.gen = {"V1", "catalog", monomial(1.0, 0, -2.0 * g), xi, f};
        e.integral_id = "IV1";
        e.eq8_sign = 1.0;
        e.converse_factor = 1.0;
        e.tau_str = "exp(-2 g t)";
        e.xi_str = "-2 g q exp(-2 g t)";
        e.f_str = "2 g (g q^2 + A t)";
        cat.symmetries.push_back(e);

        cat.integrals.push_back(
            {"IV1", PotentialKind::log, "catalog",
             "(qdot + 2 g q)^2 / 2 + A log(q) + 2 g A t",
             [g, A](const State1D& s) {
                 if (!(s.q > 0.0))
                     throw DomainError("IV1 requires q > 0");
                 const double w = s.qdot + 2.0 * g * s.q;
                 return 0.5 * w * w + A * std::log(s.q) + 2.0 * g * A * s.t;
             },
             [g](const State1D& s) { return s.qdot + 2.0 * g * s.q; },
             nullptr});
    }

    if (pot.kind == PotentialKind::power) {
        const double A = pot.A, a = pot.alpha;
        const double k = 4.0 * g / (a + 2.0);
        const double beta = 2.0 * g * (a - 2.0) / (a + 2.0);
        const double mu = 4.0 * g * a / (a + 2.0);  // = beta + 2 g
        const double C = k * k * (2.0 - a) / 4.0;
        SymmetryEntry e;
        e.gen = {"V2", "catalog", monomial(1.0, 0, beta), monomial(-k, 1, beta),
                 monomial(C, 2, mu)};
        e.integral_id = "IV2";
        e.eq8_sign = 1.0;
        e.converse_factor = 1.0;
        e.tau_str = "exp(2 g t (a-2)/(a+2))";
        e.xi_str = "-(4 g/(a+2)) q exp(2 g t (a-2)/(a+2))";
        e.f_str = "(4 g^2 (2-a)/(a+2)^2) q^2 exp(4 g a t/(a+2))";
        cat.symmetries.push_back(e);

        cat.integrals.push_back(
            {"IV2", PotentialKind::power, "catalog",
             "((qdot + k q)^2 / 2 + A q^a) exp(mu t), k = 4g/(a+2), mu = "
             "4ga/(a+2)",
             [g, A, a, k, mu](const State1D& s) {
                 if (!(s.q > 0.0))
                     throw DomainError("IV2 requires q > 0");
                 const double w = s.qdot + k * s.q;
                 return (0.5 * w * w + A * std::pow(s.q, a)) *
                        std::exp(mu * s.t);
             },
             [k, mu](const State1D& s) {
                 return (s.qdot + k * s.q) * std::exp(mu * s.t);
             },
             nullptr});
    }

    if (pot.kind == PotentialKind::exponential) {
        const double A = pot.A;
        Field2 f = sum(monomial(8.0 * g * g, 0, 4.0 * g),
                       monomial(-8.0 * g * g, 1, 4.0 * g));
        SymmetryEntry e;
        e.gen = {"V3", "catalog", monomial(1.0, 0, 2.0 * g),
                 monomial(-4.0 * g, 0, 2.0 * g), f};
        e.integral_id = "IV3";
        e.eq8_sign = 1.0;
        e.converse_factor = 1.0;
        e.tau_str = "exp(2 g t)";
        e.xi_str = "-4 g exp(2 g t)";
        e.f_str = "8 g^2 (1 - q) exp(4 g t)";
        cat.symmetries.push_back(e);

        cat.integrals.push_back(
            {"IV3", PotentialKind::exponential, "catalog",
             "((qdot + 4 g)^2 / 2 + A exp(q)) exp(4 g t)",
             [g, A](const State1D& s) {
                 const double w = s.qdot + 4.0 * g;
                 return (0.5 * w * w + A * std::exp(s.q)) *
                        std::exp(4.0 * g * s.t);
             },
             [g](const State1D& s) {
                 return (s.qdot + 4.0 * g) * std::exp(4.0 * g * s.t);
             },
             nullptr});
    }

    if (audit) {
        auto check = [&](const Generator& gen) {
            Rng rng(Rng::derive(audit_seed, gen.name));
            const double worst = audit_generator(gen, rng, audit_points);
            if (worst > 1e-6)
                throw Error("make_catalog: partial-derivative audit failed "
                            "for " + gen.name + " (worst " +
                            std::to_string(worst) + ")");
        };
        for (const auto& e : cat.symmetries) check(e.gen);
        for (const auto& gen : cat.lie_generators) check(gen);
    }
    return cat;
}

// ── consistency checks over the catalog ─────────────────────────────────────

/// Draw a linear-family state away from the singular sets of I6..I8.
inline State1D draw_regular_state(const CatalogBundle& cat, Rng& rng,
                                  double t_hi = 3.0) {
    const auto& I6 = cat.integral("I6");
    const auto& I7 = cat.integral("I7");
    for (int tries = 0; tries < 1000; ++tries) {
        State1D s{rng.uniform(0.0, t_hi), rng.uniform(-3.0, 3.0),
                  rng.uniform(-3.0, 3.0)};
        if (I6.singular_margin(s) > 1e-3 && I7.singular_margin(s) > 1e-3)
            return s;
    }
    throw Error("draw_regular_state: could not find a regular state");
}

struct RelationReport {
    std::string name;
    double max_err = 0.0;  ///< normalized by 1 + |lhs|
};

/// The functional relations tying the linear-family integrals together:
/// I3 = g I1^2, I4 = I2^2/2, I5 = I1 (I2 - F/(2g)), I6 = F log|I1| - 2 g I2,
/// I7 I8 = 1.  Returns per-relation worst normalized error over n states.
inline std::vector<RelationReport> functional_relations(const CatalogBundle& cat,
                                                        Rng& rng, int n = 1000) {
    const double g = cat.params.gamma;
    const double F =
        (cat.pot.kind == PotentialKind::linear) ? cat.pot.F : 0.0;
    const double u = F / (2.0 * g);
    const auto& I1 = cat.integral("I1");
    const auto& I2 = cat.integral("I2");
    const auto& I3 = cat.integral("I3");
    const auto& I4 = cat.integral("I4");
    const auto& I5 = cat.integral("I5");
    const auto& I6 = cat.integral("I6");
    const auto& I7 = cat.integral("I7");
    const auto& I8 = cat.integral("I8");

    std::vector<RelationReport> reps = {{"I3 = g I1^2"},
                                        {"I4 = I2^2/2"},
                                        {"I5 = I1 (I2 - F/2g)"},
                                        {"I6 = F log|I1| - 2 g I2"},
                                        {"I7 I8 = 1"}};
    auto upd = [](RelationReport& r, double lhs, double rhs) {
        const double e = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
        if (e > r.max_err) r.max_err = e;
    };
    for (int i = 0; i < n; ++i) {
        const State1D s = draw_regular_state(cat, rng);
        const double i1 = I1.value(s), i2 = I2.value(s);
        upd(reps[0], I3.value(s), g * i1 * i1);
        upd(reps[1], I4.value(s), 0.5 * i2 * i2);
        upd(reps[2], I5.value(s), i1 * (i2 - u));
        upd(reps[3], I6.value(s),
            F * std::log(std::abs(i1)) - 2.0 * g * i2);
        upd(reps[4], I7.value(s) * I8.value(s), 1.0);
    }
    return reps;
}

/// Finite-difference Jacobian determinant of (I1, I2) with respect to
/// (q, qdot); analytically 2 g e^{2 g t}, hence never zero.
inline double pair_jacobian_det(const CatalogBundle& cat, const State1D& s) {
    const auto& I1 = cat.integral("I1");
    const auto& I2 = cat.integral("I2");
    auto d_dq = [&](const FirstIntegral& I) {
        return fd_derivative(
            [&](double x) { return I.value(State1D{s.t, x, s.qdot}); }, s.q);
    };
    auto d_dv = [&](const FirstIntegral& I) {
        return fd_derivative(
            [&](double x) { return I.value(State1D{s.t, s.q, x}); }, s.qdot);
    };
    return d_dq(I1) * d_dv(I2) - d_dv(I1) * d_dq(I2);
}

}  // namespace bck
