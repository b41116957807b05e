#pragma once

// Scalar fields on the (q, t) plane with first and second partials, the
// building block for symmetry generators and gauge terms.  Catalog entries
// supply closed-form partials; user-supplied fields can have them synthesized
// by finite differences (at reduced accuracy).

#include <functional>
#include <utility>

#include "bck/fd.hpp"
#include "bck/rng.hpp"

namespace bck {

using Fn2 = std::function<double(double q, double t)>;

/// Scalar field with value, first partials and second partials.
struct Field2 {
    Fn2 v;    ///< value
    Fn2 dq;   ///< d/dq
    Fn2 dt;   ///< d/dt
    Fn2 dqq;  ///< d2/dq2
    Fn2 dqt;  ///< d2/dqdt
    Fn2 dtt;  ///< d2/dt2

    static Field2 zero() { return constant(0.0); }

    static Field2 constant(double c) {
        auto z = [](double, double) { return 0.0; };
        return {[c](double, double) { return c; }, z, z, z, z, z};
    }

    /// Build from a value function only; partials by central differences.
    static Field2 from_value(Fn2 f) {
        Field2 out;
        out.v = f;
        out.dq = [f](double q, double t) {
            return fd_derivative([&](double x) { return f(x, t); }, q);
        };
        out.dt = [f](double q, double t) {
            return fd_derivative([&](double x) { return f(q, x); }, t);
        };
        out.dqq = [f](double q, double t) {
            return fd_second([&](double x) { return f(x, t); }, q);
        };
        out.dtt = [f](double q, double t) {
            return fd_second([&](double x) { return f(q, x); }, t);
        };
        out.dqt = [f](double q, double t) { return fd_mixed(f, q, t); };
        return out;
    }

    /// Fill any missing second partials by differencing the first partials
    /// (the firsts must be present).
    void complete_seconds() {
        if (!dqq) {
            Fn2 d1 = dq;
            dqq = [d1](double q, double t) {
                return fd_derivative([&](double x) { return d1(x, t); }, q);
            };
        }
        if (!dqt) {
            Fn2 d1 = dq;
            dqt = [d1](double q, double t) {
                return fd_derivative([&](double x) { return d1(q, x); }, t);
            };
        }
        if (!dtt) {
            Fn2 d1 = dt;
            dtt = [d1](double q, double t) {
                return fd_derivative([&](double x) { return d1(q, x); }, t);
            };
        }
    }
};

inline Field2 field_add(const Field2& a, const Field2& b) {
    auto mix = [](const Fn2& fa, const Fn2& fb) -> Fn2 {
        return [fa, fb](double q, double t) { return fa(q, t) + fb(q, t); };
    };
    return {mix(a.v, b.v),     mix(a.dq, b.dq),   mix(a.dt, b.dt),
            mix(a.dqq, b.dqq), mix(a.dqt, b.dqt), mix(a.dtt, b.dtt)};
}

inline Field2 field_scale(const Field2& a, double c) {
    auto mul = [c](const Fn2& fa) -> Fn2 {
        return [fa, c](double q, double t) { return c * fa(q, t); };
    };
    return {mul(a.v), mul(a.dq), mul(a.dt), mul(a.dqq), mul(a.dqt), mul(a.dtt)};
}

/// Sampling box for audits and randomized checks.
struct Box {
    double q_lo = 0.1, q_hi = 5.0;
    double t_lo = 0.0, t_hi = 5.0;
};

/// Largest normalized discrepancy between the supplied partials of `field`
/// and finite differences (firsts against the value, seconds against the
/// firsts) over n random points.  Normalization is |diff| / (1 + |analytic|).
inline double audit_field(const Field2& field, Rng& rng, int n,
                          const Box& box = {}) {
    double worst = 0.0;
    auto check = [&worst](double analytic, double numeric) {
        const double d =
            std::abs(analytic - numeric) / (1.0 + std::abs(analytic));
        if (d > worst) worst = d;
    };
    for (int i = 0; i < n; ++i) {
        const double q = rng.uniform(box.q_lo, box.q_hi);
        const double t = rng.uniform(box.t_lo, box.t_hi);
        check(field.dq(q, t), fd_derivative(
                                  [&](double x) { return field.v(x, t); }, q));
        check(field.dt(q, t), fd_derivative(
                                  [&](double x) { return field.v(q, x); }, t));
        check(field.dqq(q, t),
              fd_derivative([&](double x) { return field.dq(x, t); }, q));
        check(field.dqt(q, t),
              fd_derivative([&](double x) { return field.dq(q, x); }, t));
        check(field.dtt(q, t),
              fd_derivative([&](double x) { return field.dt(q, x); }, t));
    }
    return worst;
}

}  // namespace bck
