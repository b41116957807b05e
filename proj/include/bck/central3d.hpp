#pragma once

// Three-dimensional central-potential extension: damped motion
//   vdot = -(V'(r)/r) r_vec - 2 gamma v_vec
// with the damped angular momentum (r x v) e^{2 gamma t} conserved, its
// projections on fixed axes (the rotational integrals), the decaying areal
// velocity, and radial energy-like integrals for the log/power families.

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "bck/errors.hpp"
#include "bck/integrate.hpp"
#include "bck/model.hpp"

namespace bck {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Vec3 operator*(double c, const Vec3& a) {
    return {c * a.x, c * a.y, c * a.z};
}
inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct State3D {
    double t = 0.0;
    Vec3 r, v;
};

struct Trajectory3D {
    Potential pot;  ///< interpreted as V(r), r = |r_vec|
    Params params{1.0};
    std::vector<State3D> samples;
    StepStats stats;
};

/// Damped angular momentum (r x v) e^{2 gamma t}; a vector first integral.
inline Vec3 angular_momentum_integral(const Params& par, const State3D& s) {
    return std::exp(2.0 * par.gamma * s.t) * cross(s.r, s.v);
}

/// Rotational integral for a fixed axis: axis . (r x v) e^{2 gamma t}.
inline double rotational_integral(const Vec3& axis, const Params& par,
                                  const State3D& s) {
    return dot(axis, angular_momentum_integral(par, s));
}

/// Instantaneous areal velocity |r x v| / 2 (decays as e^{-2 gamma t}).
inline double areal_velocity(const State3D& s) {
    return 0.5 * norm(cross(s.r, s.v));
}

/// Radial energy-like integral for central log/power potentials (the
/// one-dimensional catalog formulas with q -> r_vec applied componentwise):
///   log:   |v + 2 g r|^2 / 2 + A log r + 2 g A t
///   power: (|v + k r|^2 / 2 + A r^a) e^{mu t},  k = 4g/(a+2), mu = 4ga/(a+2)
inline double central_energy_integral(const Potential& pot, const Params& par,
                                      const State3D& s) {
    const double g = par.gamma;
    const double r = norm(s.r);
    if (!(r > 0.0))
        throw DomainError("central_energy_integral: r must be positive");
    switch (pot.kind) {
        case PotentialKind::log: {
            const Vec3 w = s.v + (2.0 * g) * s.r;
            return 0.5 * dot(w, w) + pot.A * std::log(r) + 2.0 * g * pot.A * s.t;
        }
        case PotentialKind::power: {
            const double a = pot.alpha;
            const double k = 4.0 * g / (a + 2.0);
            const double mu = 4.0 * g * a / (a + 2.0);
            const Vec3 w = s.v + k * s.r;
            return (0.5 * dot(w, w) + pot.A * std::pow(r, a)) *
                   std::exp(mu * s.t);
        }
        default:
            throw Unsupported(
                "central_energy_integral: only log/power central potentials "
                "have a cataloged radial integral");
    }
}

/// Integrate the 3D damped central-force motion, sampling like integrate().
inline Trajectory3D integrate3d(const Potential& pot, const Params& par,
                                const State3D& ic, double t_end,
                                const IntegratorConfig& cfg = {}) {
    validate(cfg);
    if (!(t_end >= ic.t))
        throw DomainError("integrate3d: t_end must be >= initial time");
    if (2.0 * par.gamma * t_end > EXP_CAP)
        throw OverflowGuard("integrate3d: 2*gamma*t_end exceeds EXP_CAP");
    if (pot.positive_domain() && !(norm(ic.r) > 0.0))
        throw DomainError("integrate3d: initial r outside potential domain");

    auto rhs = [&pot, &par](double t, const StateVec<6>& y, StateVec<6>& dy) {
        const double r =
            std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        if (r < 1e-12)
            throw DomainError(
                "integrate3d: trajectory reached the center (r -> 0) at t = " +
                std::to_string(t));
        const double dV = potential_eval(pot, par, r).dV;
        const double c = -dV / r;
        const double g2 = 2.0 * par.gamma;
        dy[0] = y[3];
        dy[1] = y[4];
        dy[2] = y[5];
        dy[3] = c * y[0] - g2 * y[3];
        dy[4] = c * y[1] - g2 * y[4];
        dy[5] = c * y[2] - g2 * y[5];
    };

    Trajectory3D traj;
    traj.pot = pot;
    traj.params = par;
    traj.samples.push_back(ic);

    DormandPrince54<6, decltype(rhs)> stepper(rhs, cfg);
    StateVec<6> y{ic.r.x, ic.r.y, ic.r.z, ic.v.x, ic.v.y, ic.v.z};
    double t = ic.t;
    if (t_end > ic.t) {
        for (double tk : sample_grid(ic.t, t_end, cfg.sample_dt)) {
            stepper.advance_to(t, y, tk);
            traj.samples.push_back(
                {tk, {y[0], y[1], y[2]}, {y[3], y[4], y[5]}});
        }
    }
    traj.stats = stepper.stats();
    return traj;
}

/// Largest relative out-of-plane excursion with respect to the initial
/// orbital plane (normal along the initial angular momentum).
inline double planarity_deviation(const Trajectory3D& traj) {
    const Vec3 l0 = angular_momentum_integral(traj.params, traj.samples.front());
    const double ln = norm(l0);
    if (ln < 1e-300)
        throw DomainError("planarity_deviation: initial angular momentum is 0");
    const Vec3 n = (1.0 / ln) * l0;
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const double r = norm(s.r);
        if (r < 1e-300) continue;
        worst = std::max(worst, std::abs(dot(n, s.r)) / r);
    }
    return worst;
}

/// CSV rows t,x,y,z,vx,vy,vz,lx,ly,lz where (lx,ly,lz) is the conserved
/// damped angular momentum (r x v) e^{2 gamma t}.
inline void write_csv3d(const Trajectory3D& traj, std::ostream& os) {
    os << "t,x,y,z,vx,vy,vz,lx,ly,lz\n";
    for (const auto& s : traj.samples) {
        const Vec3 l = angular_momentum_integral(traj.params, s);
        const double cols[10] = {s.t,   s.r.x, s.r.y, s.r.z, s.v.x,
                                 s.v.y, s.v.z, l.x,   l.y,   l.z};
        for (int i = 0; i < 10; ++i) {
            if (i) os << ',';
            detail::put17(os, cols[i]);
        }
        os << '\n';
    }
}

}  // namespace bck
