#pragma once

// Weak (on-flow) conservation statements built from the action integral:
// the energy-like constant H + 2 gamma * Action, the nonlocal constant
// attached to an arbitrary generator, and reconstruction of the action from
// the Hamiltonian decay.

#include <functional>
#include <string>
#include <vector>

#include "bck/generator.hpp"
#include "bck/integrals.hpp"
#include "bck/integrate.hpp"
#include "bck/model.hpp"

namespace bck {

struct ConstantSeries {
    std::string id;
    std::vector<double> values;  ///< one per trajectory sample
    DriftReport report;
};

/// H(t) + 2 gamma A(t) along the trajectory; equals H(t0) identically on
/// solutions (dH/dt = -2 gamma L on-flow).
inline ConstantSeries weak_constant(const Trajectory& traj) {
    ConstantSeries out;
    out.id = "weak";
    out.values.reserve(traj.samples.size());
    for (const auto& smp : traj.samples)
        out.values.push_back(hamiltonian(traj.pot, traj.params, smp.state) +
                             2.0 * traj.params.gamma * smp.action);
    out.report = drift_of(
        out.id, [&](std::size_t i) { return out.values[i]; },
        out.values.size());
    return out;
}

/// Nonlocal constant of an arbitrary generator (no symmetry assumption):
///   J(t) = int_{t0}^{t} (X^[1](L) + D(tau) L) dt'  -  L tau - p (xi - qdot tau)
/// The integral is accumulated by the trapezoid rule on the sample grid with
/// the on-flow acceleration.  For a variational symmetry J(t) equals the
/// Noether integral minus f(t0).
inline ConstantSeries nonlocal_constant(const Generator& gen,
                                        const Trajectory& traj) {
    const Potential& pot = traj.pot;
    const Params& par = traj.params;
    const auto& smp = traj.samples;

    auto integrand = [&](const State1D& s) {
        const OffShellPoint p{s.t, s.q, s.qdot,
                              acceleration(pot, par, s.q, s.qdot)};
        const double L = lagrangian(pot, par, s);
        const double Dtau = gen.tau.dt(s.q, s.t) + s.qdot * gen.tau.dq(s.q, s.t);
        return prolong1_L(gen, pot, par, p) + Dtau * L;
    };

    ConstantSeries out;
    out.id = "nonlocal." + gen.name;
    out.values.reserve(smp.size());
    double acc = 0.0;
    double prev = integrand(smp.front().state);
    for (std::size_t i = 0; i < smp.size(); ++i) {
        if (i > 0) {
            const double cur = integrand(smp[i].state);
            acc += 0.5 * (prev + cur) *
                   (smp[i].state.t - smp[i - 1].state.t);
            prev = cur;
        }
        const State1D& s = smp[i].state;
        const double L = lagrangian(pot, par, s);
        const double p = canonical_momentum(par, s);
        const double tau = gen.tau.v(s.q, s.t);
        const double xi = gen.xi.v(s.q, s.t);
        out.values.push_back(acc - L * tau - p * (xi - s.qdot * tau));
    }
    out.report = drift_of(
        out.id, [&](std::size_t i) { return out.values[i]; },
        out.values.size());
    return out;
}

/// Action recovered from the Hamiltonian decay: A(t) = (H(t0) - H(t))/(2 gamma).
inline std::vector<double> reconstruct_action(const Trajectory& traj) {
    std::vector<double> out;
    out.reserve(traj.samples.size());
    const double H0 =
        hamiltonian(traj.pot, traj.params, traj.samples.front().state);
    for (const auto& smp : traj.samples)
        out.push_back((H0 - hamiltonian(traj.pot, traj.params, smp.state)) /
                      (2.0 * traj.params.gamma));
    return out;
}

}  // namespace bck
