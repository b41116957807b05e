#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "bck/central3d.hpp"
#include "bck/integrate.hpp"

using namespace bck;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
IntegratorConfig tight3d() {
    IntegratorConfig cfg;
    cfg.rtol = 1e-12;
    cfg.atol = 1e-14;
    return cfg;
}
}  // namespace

TEST_CASE("vector helpers") {
    const Vec3 a{1.0, 0.0, 0.0}, b{0.0, 1.0, 0.0};
    const Vec3 c = cross(a, b);
    REQUIRE(c.x == 0.0);
    REQUIRE(c.y == 0.0);
    REQUIRE(c.z == 1.0);
    REQUIRE(dot(a, b) == 0.0);
    REQUIRE(norm(Vec3{3.0, 4.0, 0.0}) == 5.0);
}

TEST_CASE("damped angular momentum at a pinned state") {
    const Params par{0.5};
    const State3D s{0.0, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}};
    const Vec3 l = angular_momentum_integral(par, s);
    REQUIRE(l.x == 0.0);
    REQUIRE(l.y == 0.0);
    REQUIRE(l.z == 1.0);
    REQUIRE(rotational_integral(Vec3{0.0, 0.0, 1.0}, par, s) == 1.0);
    REQUIRE(areal_velocity(s) == 0.5);
}

TEST_CASE("central energy at a pinned state") {
    // log family, A=1, g=0.5: w = v + r = (0,2,0), value 2 + log 2.
    const Params par{0.5};
    const State3D s{0.0, Vec3{2.0, 0.0, 0.0}, Vec3{-2.0, 2.0, 0.0}};
    REQUIRE_THAT(central_energy_integral(Potential::log(1.0), par, s),
                 WithinRel(2.0 + std::log(2.0), 1e-15));
    REQUIRE_THROWS_AS(
        central_energy_integral(Potential::quadratic(1.0), par, s),
        Unsupported);
    REQUIRE_THROWS_AS(
        central_energy_integral(Potential::log(1.0), par,
                                State3D{0.0, Vec3{0.0, 0.0, 0.0}, s.v}),
        DomainError);
}

TEST_CASE("a planar orbit stays planar") {
    const Params par{0.3};
    const Potential pot = Potential::quadratic(1.0);
    const State3D ic{0.0, Vec3{1.0, 0.2, 0.0}, Vec3{0.1, 1.1, 0.0}};
    const Trajectory3D traj = integrate3d(pot, par, ic, 6.0, tight3d());
    for (const auto& s : traj.samples) {
        REQUIRE(s.r.z == 0.0);
        REQUIRE(s.v.z == 0.0);
    }
    REQUIRE(planarity_deviation(traj) <= 1e-14);
}

TEST_CASE("angular momentum components are conserved") {
    const Params par{0.3};
    const Potential pot = Potential::quadratic(1.0);
    const State3D ic{0.0, Vec3{1.0, 0.2, -0.3}, Vec3{0.1, 1.1, 0.4}};
    const Trajectory3D traj = integrate3d(pot, par, ic, 8.0, tight3d());
    const Vec3 l0 = angular_momentum_integral(par, ic);
    const double scale = norm(l0);
    for (const auto& s : traj.samples) {
        const Vec3 l = angular_momentum_integral(par, s);
        REQUIRE(std::abs(l.x - l0.x) <= 1e-9 * scale);
        REQUIRE(std::abs(l.y - l0.y) <= 1e-9 * scale);
        REQUIRE(std::abs(l.z - l0.z) <= 1e-9 * scale);
    }
}

TEST_CASE("areal velocity decays exponentially") {
    const Params par{0.3};
    const Potential pot = Potential::quadratic(1.0);
    const State3D ic{0.0, Vec3{1.0, 0.2, -0.3}, Vec3{0.1, 1.1, 0.4}};
    const Trajectory3D traj = integrate3d(pot, par, ic, 8.0, tight3d());
    const double a0 = areal_velocity(ic);
    for (const auto& s : traj.samples) {
        const double rescaled =
            areal_velocity(s) * std::exp(2.0 * par.gamma * s.t);
        REQUIRE_THAT(rescaled, WithinAbs(a0, 1e-9 * (1.0 + a0)));
    }
}

TEST_CASE("isotropic quadratic motion separates into 1d components") {
    const Params par{0.3};
    const double A = 1.0;
    const Potential pot = Potential::quadratic(A);
    const State3D ic{0.0, Vec3{1.0, 0.2, -0.3}, Vec3{0.1, 1.1, 0.4}};
    const Trajectory3D traj = integrate3d(pot, par, ic, 8.0, tight3d());
    const State1D icx{0.0, ic.r.x, ic.v.x};
    const State1D icy{0.0, ic.r.y, ic.v.y};
    const State1D icz{0.0, ic.r.z, ic.v.z};
    for (const auto& s : traj.samples) {
        const State1D rx = analytic_solution(pot, par, icx, s.t);
        const State1D ry = analytic_solution(pot, par, icy, s.t);
        const State1D rz = analytic_solution(pot, par, icz, s.t);
        REQUIRE_THAT(s.r.x, WithinAbs(rx.q, 1e-9));
        REQUIRE_THAT(s.r.y, WithinAbs(ry.q, 1e-9));
        REQUIRE_THAT(s.r.z, WithinAbs(rz.q, 1e-9));
        REQUIRE_THAT(s.v.x, WithinAbs(rx.qdot, 1e-9));
        REQUIRE_THAT(s.v.y, WithinAbs(ry.qdot, 1e-9));
        REQUIRE_THAT(s.v.z, WithinAbs(rz.qdot, 1e-9));
    }
}

TEST_CASE("central energy is conserved for log and power forces") {
    const State3D ic{0.0, Vec3{1.0, 0.2, -0.3}, Vec3{0.1, 1.1, 0.4}};
    struct Case {
        Potential pot;
        double gamma, t_end;
    };
    const Case cases[] = {
        {Potential::log(1.0), 0.2, 5.0},
        {Potential::power(1.0, 3.0), 0.2, 4.0},
    };
    for (const auto& cs : cases) {
        const Params par{cs.gamma};
        const Trajectory3D traj =
            integrate3d(cs.pot, par, ic, cs.t_end, tight3d());
        const double e0 = central_energy_integral(cs.pot, par, ic);
        for (const auto& s : traj.samples) {
            const double e = central_energy_integral(cs.pot, par, s);
            REQUIRE_THAT(e, WithinAbs(e0, 1e-8 * (1.0 + std::abs(e0))));
        }
    }
}

TEST_CASE("3d guards") {
    const Params par{1.0};
    const State3D ic{0.0, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}};
    REQUIRE_THROWS_AS(
        integrate3d(Potential::free_particle(), par, ic, 16.0, tight3d()),
        OverflowGuard);
    REQUIRE_THROWS_AS(
        integrate3d(Potential::log(1.0), par,
                    State3D{0.0, Vec3{0.0, 0.0, 0.0}, ic.v}, 1.0, tight3d()),
        DomainError);
}

TEST_CASE("3d csv export") {
    const Params par{0.3};
    const Trajectory3D traj = integrate3d(
        Potential::quadratic(1.0), par,
        State3D{0.0, Vec3{1.0, 0.2, 0.0}, Vec3{0.1, 1.1, 0.0}}, 0.1,
        tight3d());
    std::ostringstream os;
    write_csv3d(traj, os);
    REQUIRE(os.str().rfind("t,x,y,z,vx,vy,vz,lx,ly,lz", 0) == 0);
}
