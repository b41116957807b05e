#pragma once

// Point-symmetry generators X = tau(q,t) d_t + xi(q,t) d_q with an associated
// divergence term f(q,t), and the operations of variational symmetry theory:
// the first prolongation applied to L, the Rund-Trautman residual, the Noether
// first integral, gauge shifts of the divergence term, the Lie (equation)
// symmetry residual, and the converse map from first integrals back to
// characteristics.

#include <functional>
#include <string>

#include "bck/fd.hpp"
#include "bck/field.hpp"
#include "bck/model.hpp"
#include "bck/rng.hpp"

namespace bck {

/// Generator of a point transformation, plus the divergence term f entering
/// the invariance identity.  tau and xi need second partials only for the
/// Lie residual; f needs first partials only.
struct Generator {
    std::string name;
    std::string source;  ///< "catalog", "control", "user", ...
    Field2 tau;
    Field2 xi;
    Field2 f;
};

/// Point of the second-order jet space: (t, q, qdot) plus a free qddot.
/// Off-shell means qddot is NOT constrained by the equation of motion.
struct OffShellPoint {
    double t = 0.0;
    double q = 0.0;
    double qdot = 0.0;
    double qddot = 0.0;
};

/// Characteristic mu = xi - qdot * tau of the generator at a phase point.
inline double characteristic(const Generator& gen, const State1D& s) {
    return gen.xi.v(s.q, s.t) - s.qdot * gen.tau.v(s.q, s.t);
}

/// First prolongation of X applied to L:
///   X^[1](L) = tau L_t + xi L_q + (xidot - qdot taudot) L_qdot
/// with total derivatives taken along the jet (no qddot terms arise because
/// tau and xi do not depend on qdot).
inline double prolong1_L(const Generator& gen, const Potential& pot,
                         const Params& par, const OffShellPoint& p) {
    const double w = exp_weight(par, p.t);
    const PotentialEval pe = potential_eval(pot, par, p.q);
    const double L = (0.5 * p.qdot * p.qdot - pe.V) * w;
    const double L_t = 2.0 * par.gamma * L;
    const double L_q = -pe.dV * w;
    const double L_qdot = p.qdot * w;

    const double tau = gen.tau.v(p.q, p.t);
    const double xi = gen.xi.v(p.q, p.t);
    const double taudot = gen.tau.dt(p.q, p.t) + p.qdot * gen.tau.dq(p.q, p.t);
    const double xidot = gen.xi.dt(p.q, p.t) + p.qdot * gen.xi.dq(p.q, p.t);
    return tau * L_t + xi * L_q + (xidot - p.qdot * taudot) * L_qdot;
}

/// Rund-Trautman residual X^[1](L) + D(tau) L - D(f).  Identically zero
/// exactly for the variational symmetries; independent of qddot for point
/// transformations.
inline double rund_trautman_residual(const Generator& gen, const Potential& pot,
                                     const Params& par, const OffShellPoint& p) {
    const double w = exp_weight(par, p.t);
    const PotentialEval pe = potential_eval(pot, par, p.q);
    const double L = (0.5 * p.qdot * p.qdot - pe.V) * w;
    const double Dtau = gen.tau.dt(p.q, p.t) + p.qdot * gen.tau.dq(p.q, p.t);
    const double Df = gen.f.dt(p.q, p.t) + p.qdot * gen.f.dq(p.q, p.t);
    return prolong1_L(gen, pot, par, p) + Dtau * L - Df;
}

/// Noether first integral of a variational symmetry:
///   I = f - L tau - L_qdot (xi - qdot tau).
inline double noether_integral(const Generator& gen, const Potential& pot,
                               const Params& par, const State1D& s) {
    const double L = lagrangian(pot, par, s);
    const double p = canonical_momentum(par, s);
    const double tau = gen.tau.v(s.q, s.t);
    const double xi = gen.xi.v(s.q, s.t);
    return gen.f.v(s.q, s.t) - L * tau - p * (xi - s.qdot * tau);
}

// ── gauge freedom of the divergence term ────────────────────────────────────

/// Shift generated by a gauge function Lambda(q, t): the Lagrangian moves by
/// the total derivative D(Lambda) and the divergence term by X(Lambda) =
/// tau Lambda_t + xi Lambda_q.  Returns the generator with the shifted f;
/// the first integral is unchanged (checked by tests).
inline Generator gauge_shift(const Generator& gen, const Field2& lambda) {
    Generator out = gen;
    out.name = gen.name + "+gauge";
    const Field2 tau = gen.tau, xi = gen.xi, f = gen.f, lam = lambda;
    Field2 fs;
    fs.v = [tau, xi, f, lam](double q, double t) {
        return f.v(q, t) + tau.v(q, t) * lam.dt(q, t) +
               xi.v(q, t) * lam.dq(q, t);
    };
    fs.dq = [tau, xi, f, lam](double q, double t) {
        return f.dq(q, t) + tau.dq(q, t) * lam.dt(q, t) +
               tau.v(q, t) * lam.dqt(q, t) + xi.dq(q, t) * lam.dq(q, t) +
               xi.v(q, t) * lam.dqq(q, t);
    };
    fs.dt = [tau, xi, f, lam](double q, double t) {
        return f.dt(q, t) + tau.dt(q, t) * lam.dt(q, t) +
               tau.v(q, t) * lam.dtt(q, t) + xi.dt(q, t) * lam.dq(q, t) +
               xi.v(q, t) * lam.dqt(q, t);
    };
    fs.complete_seconds();
    out.f = fs;
    return out;
}

/// Rund-Trautman residual of `gen` with divergence term f + X(Lambda) taken
/// with respect to the shifted Lagrangian L + D(Lambda).  Equal to the
/// unshifted residual as an identity in (q, qdot, t).
inline double rund_trautman_residual_gauged(const Generator& gen,
                                            const Potential& pot,
                                            const Params& par,
                                            const OffShellPoint& p,
                                            const Field2& lam) {
    const double w = exp_weight(par, p.t);
    const PotentialEval pe = potential_eval(pot, par, p.q);
    const double L = (0.5 * p.qdot * p.qdot - pe.V) * w;
    // G = D(Lambda) = Lambda_t + qdot Lambda_q as a jet function
    const double G = lam.dt(p.q, p.t) + p.qdot * lam.dq(p.q, p.t);
    const double G_t = lam.dtt(p.q, p.t) + p.qdot * lam.dqt(p.q, p.t);
    const double G_q = lam.dqt(p.q, p.t) + p.qdot * lam.dqq(p.q, p.t);
    const double G_qdot = lam.dq(p.q, p.t);

    const double tau = gen.tau.v(p.q, p.t);
    const double xi = gen.xi.v(p.q, p.t);
    const double taudot = gen.tau.dt(p.q, p.t) + p.qdot * gen.tau.dq(p.q, p.t);
    const double xidot = gen.xi.dt(p.q, p.t) + p.qdot * gen.xi.dq(p.q, p.t);
    const double eta1 = xidot - p.qdot * taudot;

    const double X1G = tau * G_t + xi * G_q + eta1 * G_qdot;
    const Generator shifted = gauge_shift(gen, lam);
    const double Dfs =
        shifted.f.dt(p.q, p.t) + p.qdot * shifted.f.dq(p.q, p.t);
    return prolong1_L(gen, pot, par, p) + X1G + taudot * (L + G) - Dfs;
}

/// Noether integral of the gauge-shifted pair (f + X(Lambda), L + D(Lambda)).
/// Its value coincides with noether_integral(gen, ...) identically.
inline double noether_integral_gauged(const Generator& gen, const Potential& pot,
                                      const Params& par, const State1D& s,
                                      const Field2& lam) {
    const double L =
        lagrangian(pot, par, s) + lam.dt(s.q, s.t) + s.qdot * lam.dq(s.q, s.t);
    const double p = canonical_momentum(par, s) + lam.dq(s.q, s.t);
    const double tau = gen.tau.v(s.q, s.t);
    const double xi = gen.xi.v(s.q, s.t);
    const double fshift = gen.f.v(s.q, s.t) +
                          tau * lam.dt(s.q, s.t) + xi * lam.dq(s.q, s.t);
    return fshift - L * tau - p * (xi - s.qdot * tau);
}

// ── Lie (equation) symmetry residual ────────────────────────────────────────

/// Residual of the linearized symmetry condition for the equation of motion,
/// evaluated on-flow (qddot = -V' - 2 gamma qdot):
///   eta2 + 2 gamma eta1 + xi V''(q)
/// where eta1, eta2 are the first and second prolongation coefficients.
/// Zero for Lie symmetries of the equation of motion.
inline double lie_residual(const Generator& gen, const Potential& pot,
                           const Params& par, const State1D& s) {
    const double q = s.q, t = s.t, v = s.qdot;
    const PotentialEval pe = potential_eval(pot, par, q);
    const double acc = -pe.dV - 2.0 * par.gamma * v;

    const double tau_t = gen.tau.dt(q, t), tau_q = gen.tau.dq(q, t);
    const double tau_tt = gen.tau.dtt(q, t), tau_qt = gen.tau.dqt(q, t),
                 tau_qq = gen.tau.dqq(q, t);
    const double xi_t = gen.xi.dt(q, t), xi_q = gen.xi.dq(q, t);
    const double xi_tt = gen.xi.dtt(q, t), xi_qt = gen.xi.dqt(q, t),
                 xi_qq = gen.xi.dqq(q, t);

    const double eta1 = xi_t + v * xi_q - v * (tau_t + v * tau_q);
    // partials of eta1 as a function of (t, q, qdot)
    const double eta1_t = xi_tt + v * xi_qt - v * (tau_tt + v * tau_qt);
    const double eta1_q = xi_qt + v * xi_qq - v * (tau_qt + v * tau_qq);
    const double eta1_v = xi_q - tau_t - 2.0 * v * tau_q;
    const double Deta1 = eta1_t + v * eta1_q + acc * eta1_v;
    const double Dtau = tau_t + v * tau_q;
    const double eta2 = Deta1 - acc * Dtau;

    return eta2 + 2.0 * par.gamma * eta1 + gen.xi.v(q, t) * pe.d2V;
}

// ── converse direction: from integrals to characteristics ───────────────────

/// Evolutionary characteristic recovered from a first integral:
///   mu = -e^{-2 gamma t} dI/dqdot
/// with the derivative taken by central differences of `I`.
inline double converse_characteristic(
    const std::function<double(const State1D&)>& I, const Params& par,
    const State1D& s) {
    const double dIdv = fd_derivative(
        [&](double v) {
            return I(State1D{s.t, s.q, v});
        },
        s.qdot);
    return -std::exp(-2.0 * par.gamma * s.t) * dIdv;
}

/// Same with an analytic dI/dqdot.
inline double converse_characteristic_exact(
    const std::function<double(const State1D&)>& dIdqdot, const Params& par,
    const State1D& s) {
    return -std::exp(-2.0 * par.gamma * s.t) * dIdqdot(s);
}

/// X^[1] applied to a first integral (partials of I by finite differences):
///   tau I_t + xi I_q + eta1 I_qdot.
/// Vanishes (to FD accuracy) when the integral is invariant under X.
inline double invariance_residual(const Generator& gen,
                                  const std::function<double(const State1D&)>& I,
                                  const State1D& s) {
    const double I_t = fd_derivative(
        [&](double x) { return I(State1D{x, s.q, s.qdot}); }, s.t);
    const double I_q = fd_derivative(
        [&](double x) { return I(State1D{s.t, x, s.qdot}); }, s.q);
    const double I_v = fd_derivative(
        [&](double x) { return I(State1D{s.t, s.q, x}); }, s.qdot);
    const double tau = gen.tau.v(s.q, s.t);
    const double xi = gen.xi.v(s.q, s.t);
    const double taudot = gen.tau.dt(s.q, s.t) + s.qdot * gen.tau.dq(s.q, s.t);
    const double xidot = gen.xi.dt(s.q, s.t) + s.qdot * gen.xi.dq(s.q, s.t);
    return tau * I_t + xi * I_q + (xidot - s.qdot * taudot) * I_v;
}

// ── generator algebra ───────────────────────────────────────────────────────

inline Generator gen_add(const Generator& a, const Generator& b) {
    return {a.name + "+" + b.name, "combined", field_add(a.tau, b.tau),
            field_add(a.xi, b.xi), field_add(a.f, b.f)};
}

inline Generator gen_scale(const Generator& a, double c) {
    return {a.name + "*scaled", a.source, field_scale(a.tau, c),
            field_scale(a.xi, c), field_scale(a.f, c)};
}

/// Same symmetry class: characteristics proportional by one fixed nonzero
/// scalar across sampled states.
inline bool same_symmetry(const Generator& a, const Generator& b, Rng& rng,
                          int n = 64, double tol = 1e-9, const Box& box = {}) {
    double ratio = 0.0;
    bool have_ratio = false;
    for (int i = 0; i < n; ++i) {
        const State1D s{rng.uniform(box.t_lo, box.t_hi),
                        rng.uniform(box.q_lo, box.q_hi), rng.uniform(-3.0, 3.0)};
        const double ca = characteristic(a, s);
        const double cb = characteristic(b, s);
        if (!have_ratio) {
            if (std::abs(cb) < 1e-9) {
                if (std::abs(ca) > tol * (1.0 + std::abs(ca))) return false;
                continue;
            }
            ratio = ca / cb;
            if (std::abs(ratio) < 1e-12) return false;
            have_ratio = true;
            continue;
        }
        if (std::abs(ca - ratio * cb) >
            tol * (1.0 + std::abs(ca) + std::abs(ratio * cb)))
            return false;
    }
    return have_ratio;
}

/// Audit of the generator's closed-form partials against finite differences.
/// Returns the worst normalized discrepancy over the three fields.
inline double audit_generator(const Generator& gen, Rng& rng, int n = 1000,
                              const Box& box = {}) {
    double worst = audit_field(gen.tau, rng, n, box);
    worst = std::max(worst, audit_field(gen.xi, rng, n, box));
    worst = std::max(worst, audit_field(gen.f, rng, n, box));
    return worst;
}

}  // namespace bck
