#pragma once

// First integrals as evaluatable objects with singular-set guards, plus the
// drift diagnostics used to verify conservation along integrated trajectories.

#include <cstddef>
#include <functional>
#include <string>

#include "bck/errors.hpp"
#include "bck/integrate.hpp"
#include "bck/model.hpp"

namespace bck {

/// Relative distance below which a state counts as sitting on the singular
/// set of an integral (denominators, log arguments).
inline constexpr double SINGULAR_THRESHOLD = 1e-9;

struct FirstIntegral {
    std::string id;              ///< "I1".."I8", "IV1".."IV3"
    PotentialKind binding;       ///< potential family the formula belongs to
    std::string source;          ///< provenance within the catalog
    std::string formula;         ///< display string
    std::function<double(const State1D&)> value;
    std::function<double(const State1D&)> d_dqdot;  ///< analytic, may be null
    /// Normalized distance to the singular set (null = regular everywhere).
    std::function<double(const State1D&)> singular_margin;
};

/// Evaluate with the singular-set guard.
inline double eval_integral(const FirstIntegral& I, const State1D& s) {
    if (I.singular_margin && I.singular_margin(s) < SINGULAR_THRESHOLD)
        throw SingularPoint("eval_integral: " + I.id +
                            " evaluated too close to its singular set at t = " +
                            std::to_string(s.t));
    return I.value(s);
}

// ── drift diagnostics ───────────────────────────────────────────────────────

struct DriftReport {
    std::string id;
    double reference = 0.0;       ///< value at the first sample
    double max_abs_dev = 0.0;     ///< max |I(t_k) - reference|
    double normalized = 0.0;      ///< max_abs_dev / max(|reference|, 1e-12)
    std::size_t argmax = 0;       ///< sample index of the worst deviation
};

/// Drift of an arbitrary sample-indexed quantity.
inline DriftReport drift_of(const std::string& id,
                            const std::function<double(std::size_t)>& eval,
                            std::size_t n) {
    DriftReport rep;
    rep.id = id;
    rep.reference = eval(0);
    for (std::size_t i = 1; i < n; ++i) {
        const double d = std::abs(eval(i) - rep.reference);
        if (d > rep.max_abs_dev) {
            rep.max_abs_dev = d;
            rep.argmax = i;
        }
    }
    rep.normalized = rep.max_abs_dev / std::max(std::abs(rep.reference), 1e-12);
    return rep;
}

/// Drift of a first integral along a trajectory.  Throws SingularPoint if any
/// sample is too close to the integral's singular set.
inline DriftReport drift(const FirstIntegral& I, const Trajectory& traj) {
    return drift_of(I.id,
                    [&](std::size_t i) {
                        return eval_integral(I, traj.samples[i].state);
                    },
                    traj.samples.size());
}

/// Drift of a state-function (e.g. a Noether integral bound to a generator).
inline DriftReport drift(const std::string& id,
                         const std::function<double(const State1D&)>& fn,
                         const Trajectory& traj) {
    return drift_of(id,
                    [&](std::size_t i) { return fn(traj.samples[i].state); },
                    traj.samples.size());
}

}  // namespace bck
