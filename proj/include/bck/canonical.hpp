#pragma once

// Canonical charts (T, Q, P) in which the damped dynamics becomes an
// autonomous Hamiltonian system H~(Q, P).  One chart per catalog symmetry of
// the linear family (X1..X5) and one per special potential (V1..V3).  Each
// chart records which catalog integral H~ reproduces and with which constant
// factor; the tau = 0 charts (X1, X2) additionally carry a validity window
// and a separate closed form for dQ/dT (elsewhere dQ/dT equals P).

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bck/catalog.hpp"
#include "bck/errors.hpp"
#include "bck/integrals.hpp"
#include "bck/integrate.hpp"
#include "bck/model.hpp"

namespace bck {

struct ChartPoint {
    double T = 0.0;
    double Q = 0.0;
    double P = 0.0;
};

struct CanonicalChart {
    std::string id;          ///< "V1".."V3", "X1".."X5"
    PotentialKind binding;
    std::string integral_id; ///< catalog integral equal to H~ / factor
    double factor = 1.0;     ///< H~ == factor * integral
    std::function<double(const State1D&)> T, Q, P;
    std::function<double(const State1D&)> Qprime;    ///< dQ/dT closed form
    std::function<double(double Q, double P)> htilde;
    std::function<bool(const State1D&)> in_window;   ///< null = everywhere
    std::function<double(double)> pot_of_Q;          ///< V~(Q), V-charts only
    std::string T_str, Q_str, P_str, H_str;
};

/// Map a phase point through the chart.  Throws OutOfWindow outside the
/// chart's validity window.
inline ChartPoint chart_map(const CanonicalChart& c, const State1D& s) {
    if (c.in_window && !c.in_window(s))
        throw OutOfWindow("chart_map: state outside the validity window of " +
                          c.id);
    return {c.T(s), c.Q(s), c.P(s)};
}

inline double h_tilde(const CanonicalChart& c, const ChartPoint& p) {
    return c.htilde(p.Q, p.P);
}

/// Charts available for a potential family.
inline std::vector<CanonicalChart> make_charts(const Potential& pot,
                                               const Params& par) {
    const double g = par.gamma;
    std::vector<CanonicalChart> charts;

    const bool linear_family = (pot.kind == PotentialKind::linear ||
                                pot.kind == PotentialKind::free_particle);
    if (linear_family) {
        const double F = (pot.kind == PotentialKind::linear) ? pot.F : 0.0;
        const double u = F / (2.0 * g);
        {
            CanonicalChart c;
            c.id = "X3";
            c.binding = pot.kind;
            c.integral_id = "I3";
            c.factor = 1.0 / (2.0 * g);
            c.T = [g](const State1D& s) { return std::exp(-2.0 * g * s.t); };
            c.Q = [g, F](const State1D& s) { return 2.0 * g * s.q - F * s.t; };
            c.P = [g, u](const State1D& s) {
                return -(s.qdot - u) * std::exp(2.0 * g * s.t);
            };
            c.Qprime = c.P;
            c.htilde = [](double, double P) { return 0.5 * P * P; };
            c.T_str = "exp(-2 g t)";
            c.Q_str = "2 g q - F t";
            c.P_str = "-(2 g qdot - F) exp(2 g t) / (2 g)";
            c.H_str = "P^2/2";
            charts.push_back(c);
        }
        {
            CanonicalChart c;
            c.id = "X4";
            c.binding = pot.kind;
            c.integral_id = "I4";
            c.factor = 4.0 * g * g;
            c.T = [g](const State1D& s) { return std::exp(2.0 * g * s.t); };
            c.Q = [g, F](const State1D& s) {
                return (F * (1.0 - 2.0 * g * s.t) + 4.0 * g * g * s.q) *
                       std::exp(2.0 * g * s.t);
            };
            c.P = [g, F](const State1D& s) {
                return -2.0 * g * (F * s.t - 2.0 * g * s.q - s.qdot);
            };
            c.Qprime = c.P;
            c.htilde = [](double, double P) { return 0.5 * P * P; };
            c.T_str = "exp(2 g t)";
            c.Q_str = "(F (1 - 2 g t) + 4 g^2 q) exp(2 g t)";
            c.P_str = "-2 g (F t - 2 g q - qdot)";
            c.H_str = "P^2/2";
            charts.push_back(c);
        }
        {
            CanonicalChart c;
            c.id = "X5";
            c.binding = pot.kind;
            c.integral_id = "I5";
            c.factor = -2.0 * g * g;
            c.T = [g](const State1D& s) { return g * s.t; };
            c.Q = [g, F](const State1D& s) {
                return (F * (1.0 - g * s.t) + 2.0 * g * g * s.q) *
                       std::exp(g * s.t);
            };
            c.P = [g, F](const State1D& s) {
                return g * std::exp(g * s.t) *
                       (2.0 * s.qdot - F * s.t + 2.0 * g * s.q);
            };
            c.Qprime = c.P;
            c.htilde = [](double Q, double P) {
                return 0.5 * P * P - 0.5 * Q * Q;
            };
            c.T_str = "g t";
            c.Q_str = "(F (1 - g t) + 2 g^2 q) exp(g t)";
            c.P_str = "g exp(g t) (2 qdot - F t + 2 g q)";
            c.H_str = "P^2/2 - Q^2/2";
            charts.push_back(c);
        }
        {
            // tau = 0 chart: new time runs along q.  Valid for qdot < 0,
            // where sqrt(P) = -g qdot picks the branch that reproduces the
            // printed Hamiltonian.
            CanonicalChart c;
            c.id = "X1";
            c.binding = pot.kind;
            c.integral_id = "I1";
            c.factor = -2.0 * g;
            c.T = [g](const State1D& s) { return 2.0 * g * g * s.q; };
            c.Q = [g](const State1D& s) { return std::exp(2.0 * g * s.t); };
            c.P = [g](const State1D& s) {
                return g * g * s.qdot * s.qdot;
            };
            c.Qprime = [g](const State1D& s) {
                return std::exp(2.0 * g * s.t) / (g * s.qdot);
            };
            c.htilde = [F](double Q, double P) {
                return (2.0 * std::sqrt(P) + F) * Q;
            };
            c.in_window = [](const State1D& s) { return s.qdot < -1e-6; };
            c.T_str = "2 g^2 q";
            c.Q_str = "exp(2 g t)";
            c.P_str = "g^2 qdot^2  (sqrt branch: -g qdot, window qdot < 0)";
            c.H_str = "(2 sqrt(P) + F) Q";
            charts.push_back(c);
        }
        {
            CanonicalChart c;
            c.id = "X2";
            c.binding = pot.kind;
            c.integral_id = "I2";
            c.factor = g;
            c.T = [g](const State1D& s) {
                return 0.5 * g * g * s.q * std::exp(2.0 * g * s.t);
            };
            c.Q = [g](const State1D& s) { return g * s.t; };
            c.P = [g](const State1D& s) {
                const double w = s.qdot + 2.0 * g * s.q;
                return 0.25 * g * g * w * w * std::exp(2.0 * g * s.t);
            };
            c.Qprime = [g](const State1D& s) {
                return 2.0 * std::exp(-2.0 * g * s.t) /
                       (g * (s.qdot + 2.0 * g * s.q));
            };
            c.htilde = [F](double Q, double P) {
                return 2.0 * std::exp(-Q) * std::sqrt(P) + F * Q;
            };
            c.in_window = [g](const State1D& s) {
                return s.qdot + 2.0 * g * s.q < -1e-6;
            };
            c.T_str = "(g^2/2) q exp(2 g t)";
            c.Q_str = "g t";
            c.P_str =
                "(g^2/4) (qdot + 2 g q)^2 exp(2 g t)  (window qdot + 2 g q < 0)";
            c.H_str = "2 exp(-Q) sqrt(P) + F Q";
            charts.push_back(c);
        }
    }

    if (pot.kind == PotentialKind::log) {
        const double A = pot.A;
        CanonicalChart c;
        c.id = "V1";
        c.binding = pot.kind;
        c.integral_id = "IV1";
        c.factor = 1.0;
        c.T = [g](const State1D& s) {
            return std::exp(2.0 * g * s.t) / (2.0 * g);
        };
        c.Q = [g](const State1D& s) { return s.q * std::exp(2.0 * g * s.t); };
        c.P = [g](const State1D& s) { return s.qdot + 2.0 * g * s.q; };
        c.Qprime = c.P;
        c.htilde = [A](double Q, double P) {
            if (!(Q > 0.0)) throw DomainError("V1 chart: Q must be positive");
            return 0.5 * P * P + A * std::log(Q);
        };
        c.pot_of_Q = [A](double Q) { return A * std::log(Q); };
        c.T_str = "exp(2 g t) / (2 g)";
        c.Q_str = "q exp(2 g t)";
        c.P_str = "qdot + 2 g q";
        c.H_str = "P^2/2 + A log(Q)";
        charts.push_back(c);
    }

    if (pot.kind == PotentialKind::power) {
        const double A = pot.A, a = pot.alpha;
        const double k = 4.0 * g / (a + 2.0);
        const double mu = 4.0 * g * a / (a + 2.0);
        CanonicalChart c;
        c.id = "V2";
        c.binding = pot.kind;
        c.integral_id = "IV2";
        c.factor = 1.0;
        c.T = [g, a](const State1D& s) {
            return (2.0 + a) / (2.0 - a) *
                   std::exp(2.0 * g * (2.0 - a) / (2.0 + a) * s.t) /
                   (2.0 * g);
        };
        c.Q = [k](const State1D& s) { return s.q * std::exp(k * s.t); };
        c.P = [k, mu](const State1D& s) {
            return (s.qdot + k * s.q) * std::exp(0.5 * mu * s.t);
        };
        c.Qprime = c.P;
        c.htilde = [A, a](double Q, double P) {
            if (!(Q > 0.0)) throw DomainError("V2 chart: Q must be positive");
            return 0.5 * P * P + A * std::pow(Q, a);
        };
        c.pot_of_Q = [A, a](double Q) { return A * std::pow(Q, a); };
        c.T_str = "((2+a)/(2-a)) exp(2 g t (2-a)/(2+a)) / (2 g)";
        c.Q_str = "q exp(4 g t/(a+2))";
        c.P_str = "(qdot + 4 g q/(a+2)) exp(2 g a t/(a+2))";
        c.H_str = "P^2/2 + A Q^a";
        charts.push_back(c);
    }

    if (pot.kind == PotentialKind::exponential) {
        const double A = pot.A;
        CanonicalChart c;
        c.id = "V3";
        c.binding = pot.kind;
        c.integral_id = "IV3";
        c.factor = 1.0;
        c.T = [g](const State1D& s) {
            return -std::exp(-2.0 * g * s.t) / (2.0 * g);
        };
        c.Q = [g](const State1D& s) { return s.q + 4.0 * g * s.t; };
        c.P = [g](const State1D& s) {
            return (s.qdot + 4.0 * g) * std::exp(2.0 * g * s.t);
        };
        c.Qprime = c.P;
        c.htilde = [A](double Q, double P) {
            return 0.5 * P * P + A * std::exp(Q);
        };
        c.pot_of_Q = [A](double Q) { return A * std::exp(Q); };
        c.T_str = "-exp(-2 g t) / (2 g)";
        c.Q_str = "q + 4 g t";
        c.P_str = "(qdot + 4 g) exp(2 g t)";
        c.H_str = "P^2/2 + A exp(Q)";
        charts.push_back(c);
    }

    return charts;
}

inline const CanonicalChart& find_chart(const std::vector<CanonicalChart>& cs,
                                        const std::string& id) {
    for (const auto& c : cs)
        if (c.id == id) return c;
    throw PotentialMismatch("find_chart: no chart " + id +
                            " for this potential");
}

// ── chart verification along a trajectory ───────────────────────────────────

struct ChartReport {
    std::string chart_id;
    std::string integral_id;
    double factor = 1.0;
    bool T_monotone = false;
    int orientation = 0;         ///< sign of dT along the trajectory
    double max_match_rel = 0.0;  ///< H~ vs factor * integral, pointwise
    double max_dqdt_rel = 0.0;   ///< finite-difference dQ/dT vs Q' closed form
    DriftReport htilde_drift;
};

/// Check the chart along an integrated trajectory: T strictly monotone, H~
/// constant, H~ == factor * integral pointwise, and dQ/dT == Q'.
inline ChartReport chart_consistency(const CanonicalChart& chart,
                                     const Trajectory& traj,
                                     const FirstIntegral& integral) {
    const auto& smp = traj.samples;
    ChartReport rep;
    rep.chart_id = chart.id;
    rep.integral_id = integral.id;
    rep.factor = chart.factor;

    std::vector<ChartPoint> pts;
    pts.reserve(smp.size());
    for (const auto& s : smp) pts.push_back(chart_map(chart, s.state));

    rep.htilde_drift = drift_of(
        chart.id + ".htilde",
        [&](std::size_t i) { return h_tilde(chart, pts[i]); }, pts.size());

    rep.T_monotone = true;
    int orient = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dT = pts[i + 1].T - pts[i].T;
        const int s = (dT > 0.0) - (dT < 0.0);
        if (s == 0) {
            rep.T_monotone = false;
            break;
        }
        if (orient == 0)
            orient = s;
        else if (s != orient) {
            rep.T_monotone = false;
            break;
        }
    }
    rep.orientation = orient;

    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double h = h_tilde(chart, pts[i]);
        const double iv =
            chart.factor * eval_integral(integral, smp[i].state);
        const double rel =
            std::abs(h - iv) / std::max(1.0, std::max(std::abs(h),
                                                      std::abs(iv)));
        rep.max_match_rel = std::max(rep.max_match_rel, rel);
    }

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dT = pts[i + 1].T - pts[i].T;
        if (std::abs(dT) <
            1e-13 * std::max(1.0, std::abs(pts[i].T)))
            continue;
        const double fd = (pts[i + 1].Q - pts[i].Q) / dT;
        const double qp = 0.5 * (chart.Qprime(smp[i].state) +
                                 chart.Qprime(smp[i + 1].state));
        const double rel = std::abs(fd - qp) / (1.0 + std::abs(qp));
        rep.max_dqdt_rel = std::max(rep.max_dqdt_rel, rel);
    }
    return rep;
}

// ── transformed potential from the generator data ───────────────────────────

/// V~ evaluated from the symmetry data at a phase-space point:
///   V~ = (V tau - xi^2/(2 tau)) e^{2 gamma t} + f.
/// For the V-charts this is a function of Q alone and coincides with the
/// potential term of H~ (checked by tests via pot_of_Q).
inline double vtilde_from_generator(const SymmetryEntry& entry,
                                    const Potential& pot, const Params& par,
                                    double q, double t) {
    const double tau = entry.gen.tau.v(q, t);
    if (std::abs(tau) < 1e-300)
        throw SingularPoint("vtilde_from_generator: tau vanishes");
    const double xi = entry.gen.xi.v(q, t);
    const double V = potential_eval(pot, par, q).V;
    return (V * tau - xi * xi / (2.0 * tau)) * std::exp(2.0 * par.gamma * t) +
           entry.gen.f.v(q, t);
}

}  // namespace bck
