#pragma once

// Adaptive Dormand-Prince 5(4) integration of the damped equation of motion
//   qddot = -V'(q) - 2 gamma qdot
// with the action integral carried as an extra ODE component (dA/dt = L).
// Steps always land exactly on the sample grid, and state updates use Kahan
// compensation: the conserved quantities checked downstream carry e^{2 gamma t}
// weights that amplify any drift in the raw state, so the usual accumulated
// roundoff of a long integration would otherwise dominate the drift metrics.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <vector>

#include "bck/errors.hpp"
#include "bck/model.hpp"

namespace bck {

struct IntegratorConfig {
    double rtol = 1e-10;     ///< relative tolerance, must satisfy 0 < rtol <= 1e-6
    double atol = 1e-12;     ///< absolute tolerance
    double h_init = 1e-3;    ///< initial step
    double h_min = 1e-12;    ///< below this the integration aborts
    double h_max = 0.0;      ///< optional extra cap; 0 means "sample_dt only"
    double sample_dt = 1e-2; ///< sample spacing; also the hard step cap
};

inline void validate(const IntegratorConfig& cfg) {
    if (!(cfg.rtol > 0.0) || cfg.rtol > 1e-6)
        throw DomainError("IntegratorConfig: rtol must be in (0, 1e-6]");
    if (!(cfg.atol > 0.0))
        throw DomainError("IntegratorConfig: atol must be positive");
    if (!(cfg.sample_dt > 0.0))
        throw DomainError("IntegratorConfig: sample_dt must be positive");
    if (!(cfg.h_min > 0.0) || !(cfg.h_init > 0.0))
        throw DomainError("IntegratorConfig: steps must be positive");
}

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
    double max_error_estimate = 0.0;  ///< largest accepted scaled error
};

template <std::size_t N>
using StateVec = std::array<double, N>;

namespace detail {

// Dormand-Prince 5(4) tableau (FSAL: the 7th stage is the next step's first).
inline constexpr double DP_C[7] = {0.0,      1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0,
                                   8.0 / 9.0, 1.0,      1.0};
inline constexpr double DP_A[7][6] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0},
};
inline constexpr double DP_B5[7] = {35.0 / 384.0,     0.0, 500.0 / 1113.0,
                                    125.0 / 192.0,    -2187.0 / 6784.0,
                                    11.0 / 84.0,      0.0};
inline constexpr double DP_B4[7] = {5179.0 / 57600.0,   0.0,
                                    7571.0 / 16695.0,   393.0 / 640.0,
                                    -92097.0 / 339200.0, 187.0 / 2100.0,
                                    1.0 / 40.0};

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) stepper over a fixed-size state vector.
/// Rhs has signature void(double t, const StateVec<N>&, StateVec<N>& dydt).
template <std::size_t N, class Rhs>
class DormandPrince54 {
  public:
    DormandPrince54(Rhs rhs, const IntegratorConfig& cfg)
        : rhs_(rhs), cfg_(cfg), h_(cfg.h_init) {
        comp_.fill(0.0);
    }

    StepStats& stats() { return stats_; }

    /// Advance (t, y) to exactly t_target.
    void advance_to(double& t, StateVec<N>& y, double t_target) {
        using namespace detail;
        while (t < t_target) {
            double h_cap = cfg_.sample_dt;
            if (cfg_.h_max > 0.0 && cfg_.h_max < h_cap) h_cap = cfg_.h_max;
            const double remaining = t_target - t;
            if (remaining < h_cap) h_cap = remaining;
            double h = std::min(h_, h_cap);
            const bool hits_target = (h == remaining);
            const bool capped = (h < h_);
            // A step capped by the remaining gap may be arbitrarily small
            // (roundoff sliver before a sample point); only a step shrunk by
            // the error controller counts as underflow.
            if (h < cfg_.h_min && !hits_target)
                throw StepSizeUnderflow(
                    "integrate: step size underflow at t = " + std::to_string(t),
                    t);

            if (!k1_valid_) {
                rhs_(t, y, k_[0]);
                ++stats_.rhs_evals;
                k1_valid_ = true;
            }
            StateVec<N> stage;
            for (int s = 1; s < 7; ++s) {
                for (std::size_t i = 0; i < N; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < s; ++j) acc += DP_A[s][j] * k_[j][i];
                    stage[i] = y[i] + h * acc;
                }
                rhs_(t + DP_C[s] * h, stage, k_[s]);
                ++stats_.rhs_evals;
            }
            // 5th-order increment and embedded error estimate
            StateVec<N> delta, err;
            for (std::size_t i = 0; i < N; ++i) {
                double d5 = 0.0, d4 = 0.0;
                for (int j = 0; j < 7; ++j) {
                    d5 += DP_B5[j] * k_[j][i];
                    d4 += DP_B4[j] * k_[j][i];
                }
                delta[i] = h * d5;
                err[i] = h * (d5 - d4);
            }
            double norm2 = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double ynew = y[i] + delta[i];
                const double scale =
                    cfg_.atol +
                    cfg_.rtol * std::max(std::abs(y[i]), std::abs(ynew));
                const double r = err[i] / scale;
                norm2 += r * r;
            }
            const double errnorm = std::sqrt(norm2 / static_cast<double>(N));

            const double safe =
                errnorm > 0.0 ? 0.9 * std::pow(errnorm, -0.2) : 5.0;
            const double proposed = h * std::min(5.0, std::max(0.2, safe));

            if (errnorm <= 1.0) {
                // accept: compensated state update (classic Kahan)
                for (std::size_t i = 0; i < N; ++i) {
                    const double yc = delta[i] - comp_[i];
                    const double tt = y[i] + yc;
                    comp_[i] = (tt - y[i]) - yc;
                    y[i] = tt;
                }
                t = hits_target ? t_target : t + h;
                k_[0] = k_[6];  // FSAL
                ++stats_.accepted;
                stats_.max_error_estimate =
                    std::max(stats_.max_error_estimate, errnorm);
                // An accepted step capped below the controller's proposal
                // (to land on a sample point) carries no evidence that
                // smaller steps are needed, so never let it shrink h_.
                h_ = capped ? std::max(h_, proposed) : proposed;
            } else {
                ++stats_.rejected;  // y unchanged, so k1 stays valid
                h_ = proposed;      // always shrink after a rejection
            }
        }
        t = t_target;
    }

  private:
    Rhs rhs_;
    IntegratorConfig cfg_;
    double h_;
    bool k1_valid_ = false;
    StateVec<N> comp_;
    std::array<StateVec<N>, 7> k_{};
    StepStats stats_;
};

// ── one-dimensional trajectories ────────────────────────────────────────────

struct TrajectorySample {
    State1D state;
    double action = 0.0;  ///< integral of L from t0 along the solution
};

struct Trajectory {
    Potential pot;
    Params params{1.0};
    std::vector<TrajectorySample> samples;
    StepStats stats;

    const TrajectorySample& front() const { return samples.front(); }
    const TrajectorySample& back() const { return samples.back(); }
};

/// Sample grid t0 + k*sample_dt up to and including t_end.
inline std::vector<double> sample_grid(double t0, double t_end, double dt) {
    std::vector<double> grid;
    const double tol = 1e-12 * std::max(1.0, std::abs(t_end));
    for (std::size_t k = 1;; ++k) {
        const double tk = t0 + static_cast<double>(k) * dt;
        if (tk >= t_end - tol) break;
        grid.push_back(tk);
    }
    grid.push_back(t_end);
    return grid;
}

/// Integrate the damped equation of motion from ic to t_end, sampling every
/// cfg.sample_dt (the initial condition is the first sample, action 0).
inline Trajectory integrate(const Potential& pot, const Params& par,
                            const State1D& ic, double t_end,
                            const IntegratorConfig& cfg = {}) {
    validate(cfg);
    if (!finite(ic)) throw DomainError("integrate: non-finite initial state");
    if (!(t_end >= ic.t))
        throw DomainError("integrate: t_end must be >= initial time");
    if (2.0 * par.gamma * t_end > EXP_CAP)
        throw OverflowGuard("integrate: 2*gamma*t_end exceeds EXP_CAP");
    if (pot.positive_domain() && !(ic.q > 0.0))
        throw DomainError("integrate: initial q outside potential domain");

    auto rhs = [&pot, &par](double t, const StateVec<3>& y, StateVec<3>& dy) {
        if (pot.positive_domain() && y[0] < 1e-12)
            throw DomainError(
                "integrate: trajectory left the potential domain (q -> 0) at "
                "t = " + std::to_string(t));
        const PotentialEval pe = potential_eval(pot, par, y[0]);
        dy[0] = y[1];
        dy[1] = -pe.dV - 2.0 * par.gamma * y[1];
        dy[2] = (0.5 * y[1] * y[1] - pe.V) * std::exp(2.0 * par.gamma * t);
    };

    Trajectory traj;
    traj.pot = pot;
    traj.params = par;
    traj.samples.push_back({ic, 0.0});

    DormandPrince54<3, decltype(rhs)> stepper(rhs, cfg);
    StateVec<3> y{ic.q, ic.qdot, 0.0};
    double t = ic.t;
    if (t_end > ic.t) {
        for (double tk : sample_grid(ic.t, t_end, cfg.sample_dt)) {
            stepper.advance_to(t, y, tk);
            traj.samples.push_back({State1D{tk, y[0], y[1]}, y[2]});
        }
    }
    traj.stats = stepper.stats();
    return traj;
}

// ── closed-form solutions for the solvable families ─────────────────────────

/// Closed-form solution state at time t for the free, linear and quadratic
/// families (quadratic in all three damping regimes, decided by sign of
/// A - gamma^2).  Throws Unsupported for other potentials.
inline State1D analytic_solution(const Potential& pot, const Params& par,
                                 const State1D& ic, double t) {
    const double g = par.gamma;
    const double dt = t - ic.t;
    const double q0 = ic.q, v0 = ic.qdot;
    switch (pot.kind) {
        case PotentialKind::free_particle: {
            const double e = std::exp(-2.0 * g * dt);
            return {t, q0 + v0 * (1.0 - e) / (2.0 * g), v0 * e};
        }
        case PotentialKind::linear: {
            const double u = pot.F / (2.0 * g);  // terminal velocity
            const double e = std::exp(-2.0 * g * dt);
            return {t, q0 + u * dt + (v0 - u) * (1.0 - e) / (2.0 * g),
                    u + (v0 - u) * e};
        }
        case PotentialKind::quadratic: {
            const double zeta = pot.A - g * g;
            const double damp = std::exp(-g * dt);
            if (zeta > 0.0) {  // underdamped
                const double w = std::sqrt(zeta);
                const double c1 = q0, c2 = (v0 + g * q0) / w;
                const double cs = std::cos(w * dt), sn = std::sin(w * dt);
                return {t, damp * (c1 * cs + c2 * sn),
                        damp * ((-g * c1 + w * c2) * cs -
                                (g * c2 + w * c1) * sn)};
            }
            if (zeta == 0.0) {  // critical
                const double c1 = q0, c2 = v0 + g * q0;
                return {t, damp * (c1 + c2 * dt),
                        damp * (c2 - g * c1 - g * c2 * dt)};
            }
            // overdamped
            const double k = std::sqrt(-zeta);
            const double cp = (v0 + (g + k) * q0) / (2.0 * k);
            const double cm = q0 - cp;
            const double ep = std::exp((-g + k) * dt);
            const double em = std::exp((-g - k) * dt);
            return {t, cp * ep + cm * em,
                    cp * (-g + k) * ep + cm * (-g - k) * em};
        }
        default:
            throw Unsupported("analytic_solution: no closed form for " +
                              to_string(pot.kind));
    }
}

// ── CSV export ──────────────────────────────────────────────────────────────

namespace detail {
inline void put17(std::ostream& os, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
}
}  // namespace detail

/// Write t,q,qdot,action rows with 17 significant digits.  extra_header (no
/// leading comma needed) and extra_cols allow appended per-sample columns.
inline void write_csv(const Trajectory& traj, std::ostream& os,
                      const std::vector<std::string>& extra_header = {},
                      const std::vector<std::vector<double>>& extra_cols = {}) {
    os << "t,q,qdot,action";
    for (const auto& h : extra_header) os << ',' << h;
    os << '\n';
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        detail::put17(os, s.state.t);
        os << ',';
        detail::put17(os, s.state.q);
        os << ',';
        detail::put17(os, s.state.qdot);
        os << ',';
        detail::put17(os, s.action);
        for (const auto& col : extra_cols) {
            os << ',';
            detail::put17(os, col[i]);
        }
        os << '\n';
    }
}

}  // namespace bck
