#pragma once

// Damped-particle model: the exponentially weighted Lagrangian
//   L = (qdot^2/2 - V(q)) * e^{2*gamma*t}        (unit mass)
// its Hamiltonian partner H = (qdot^2/2 + V(q)) * e^{2*gamma*t}, and the
// potential families the symmetry catalog binds to.  Everything downstream
// (generators, first integrals, canonical charts) is built on these.

#include <cmath>
#include <string>

#include "bck/errors.hpp"

namespace bck {

/// Hard cap on the exponent 2*gamma*t; beyond this the weight e^{2*gamma*t}
/// is considered numerically meaningless and evaluation throws OverflowGuard.
inline constexpr double EXP_CAP = 30.0;

/// Damping strength and (fixed, unit) mass.
struct Params {
    double gamma;       ///< damping coefficient, must be > 0
    double mass = 1.0;  ///< kept explicit for clarity; only 1.0 is supported

    explicit Params(double gamma_, double mass_ = 1.0)
        : gamma(gamma_), mass(mass_) {
        if (!(gamma > 0.0) || !std::isfinite(gamma))
            throw DomainError("Params: gamma must be positive and finite");
        if (mass != 1.0)
            throw DomainError("Params: only unit mass is supported");
    }
};

/// Phase point of the one-dimensional problem.
struct State1D {
    double t = 0.0;
    double q = 0.0;
    double qdot = 0.0;
};

inline bool finite(const State1D& s) {
    return std::isfinite(s.t) && std::isfinite(s.q) && std::isfinite(s.qdot);
}

/// The exponential weight e^{2*gamma*t}, guarded by EXP_CAP.
inline double exp_weight(const Params& p, double t) {
    const double x = 2.0 * p.gamma * t;
    if (x > EXP_CAP)
        throw OverflowGuard("exp_weight: 2*gamma*t = " + std::to_string(x) +
                            " exceeds cap " + std::to_string(EXP_CAP));
    return std::exp(x);
}

// ── potential families ──────────────────────────────────────────────────────

enum class PotentialKind {
    free_particle,  ///< V = 0
    linear,         ///< V = -F q
    quadratic,      ///< V = A q^2 / 2   (A is the squared natural frequency)
    log,            ///< V = A log q, q > 0
    power,          ///< V = A q^alpha + 4 gamma^2 alpha/(alpha+2)^2 q^2, q > 0
    exponential,    ///< V = A e^q + 8 gamma^2 q
};

inline std::string to_string(PotentialKind k) {
    switch (k) {
        case PotentialKind::free_particle: return "free";
        case PotentialKind::linear:        return "linear";
        case PotentialKind::quadratic:     return "quadratic";
        case PotentialKind::log:           return "log";
        case PotentialKind::power:         return "power";
        case PotentialKind::exponential:   return "exp";
    }
    return "?";
}

/// One-dimensional potential.  The log and power families are defined only
/// for q > 0; the power family excludes alpha in {-2, 0, 1, 2}.  The power
/// and exponential families carry gamma-dependent quadratic/linear
/// augmentations, evaluated with the live gamma from Params.
struct Potential {
    PotentialKind kind = PotentialKind::free_particle;
    double F = 0.0;      ///< linear: constant force
    double A = 0.0;      ///< strength of the leading term
    double alpha = 0.0;  ///< power: exponent

    static Potential free_particle() { return {PotentialKind::free_particle}; }

    static Potential linear(double F) {
        Potential p{PotentialKind::linear};
        p.F = F;
        return p;
    }

    static Potential quadratic(double A) {
        Potential p{PotentialKind::quadratic};
        p.A = A;
        return p;
    }

    static Potential log(double A) {
        Potential p{PotentialKind::log};
        p.A = A;
        return p;
    }

    static Potential power(double A, double alpha) {
        if (alpha == -2.0 || alpha == 0.0 || alpha == 1.0 || alpha == 2.0)
            throw DomainError("Potential::power: alpha = " +
                              std::to_string(alpha) + " is excluded");
        Potential p{PotentialKind::power};
        p.A = A;
        p.alpha = alpha;
        return p;
    }

    static Potential exponential(double A) {
        Potential p{PotentialKind::exponential};
        p.A = A;
        return p;
    }

    /// True if evaluation is restricted to q > 0.
    bool positive_domain() const {
        return kind == PotentialKind::log || kind == PotentialKind::power;
    }
};

/// Value and first two derivatives of V at q.
struct PotentialEval {
    double V = 0.0;
    double dV = 0.0;   ///< V'(q)
    double d2V = 0.0;  ///< V''(q)
};

inline PotentialEval potential_eval(const Potential& pot, const Params& par,
                                    double q) {
    if (pot.positive_domain() && !(q > 0.0))
        throw DomainError("potential_eval: " + to_string(pot.kind) +
                          " potential requires q > 0, got q = " +
                          std::to_string(q));
    const double g = par.gamma;
    switch (pot.kind) {
        case PotentialKind::free_particle:
            return {0.0, 0.0, 0.0};
        case PotentialKind::linear:
            return {-pot.F * q, -pot.F, 0.0};
        case PotentialKind::quadratic:
            return {0.5 * pot.A * q * q, pot.A * q, pot.A};
        case PotentialKind::log:
            return {pot.A * std::log(q), pot.A / q, -pot.A / (q * q)};
        case PotentialKind::power: {
            const double a = pot.alpha;
            const double c = 4.0 * g * g * a / ((a + 2.0) * (a + 2.0));
            const double qa = std::pow(q, a);
            return {pot.A * qa + c * q * q,
                    pot.A * a * qa / q + 2.0 * c * q,
                    pot.A * a * (a - 1.0) * qa / (q * q) + 2.0 * c};
        }
        case PotentialKind::exponential: {
            const double eq = std::exp(q);
            const double c = 8.0 * g * g;
            return {pot.A * eq + c * q, pot.A * eq + c, pot.A * eq};
        }
    }
    throw DomainError("potential_eval: unknown potential kind");
}

// ── Lagrangian / Hamiltonian / equation of motion ───────────────────────────

/// L = (qdot^2/2 - V) e^{2 gamma t}
inline double lagrangian(const Potential& pot, const Params& par,
                         const State1D& s) {
    const double w = exp_weight(par, s.t);
    return (0.5 * s.qdot * s.qdot - potential_eval(pot, par, s.q).V) * w;
}

/// H = (qdot^2/2 + V) e^{2 gamma t}
inline double hamiltonian(const Potential& pot, const Params& par,
                          const State1D& s) {
    const double w = exp_weight(par, s.t);
    return (0.5 * s.qdot * s.qdot + potential_eval(pot, par, s.q).V) * w;
}

/// Canonical momentum conjugate to q: p = qdot e^{2 gamma t}.
inline double canonical_momentum(const Params& par, const State1D& s) {
    return s.qdot * exp_weight(par, s.t);
}

/// On-flow acceleration qddot = -V'(q) - 2 gamma qdot.
inline double acceleration(const Potential& pot, const Params& par,
                           double q, double qdot) {
    return -potential_eval(pot, par, q).dV - 2.0 * par.gamma * qdot;
}

/// Euler-Lagrange expression E(L) = -(qddot + 2 gamma qdot + V') e^{2 gamma t};
/// vanishes exactly on solutions of the equation of motion.
inline double euler_lagrange(const Potential& pot, const Params& par,
                             double t, double q, double qdot, double qddot) {
    const double w = exp_weight(par, t);
    // Grouped so that qddot from acceleration() cancels bit-for-bit: the
    // inner sum reproduces the exact double that acceleration() negated.
    return -(qddot +
             (2.0 * par.gamma * qdot + potential_eval(pot, par, q).dV)) *
           w;
}

}  // namespace bck
