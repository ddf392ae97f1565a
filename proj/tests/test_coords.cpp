#include <doctest.h>

#include <cmath>
#include <random>

#include "carlab/coords.hpp"
#include "carlab/operators.hpp"

using namespace carlab;

TEST_CASE("polar chart: examples and round trips") {
    const auto p1 = polar_from_cartesian(1.0, 0.0);
    CHECK(p1.t == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p1.theta == doctest::Approx(0.0).epsilon(1e-15));

    const auto p2 = polar_from_cartesian(0.0, std::exp(1.0));
    CHECK(p2.t == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p2.theta == doctest::Approx(1.5707963267948966).epsilon(1e-14));

    CHECK_THROWS_AS(polar_from_cartesian(0.0, 0.0), std::domain_error);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 2000; ++k) {
        const double x1 = u(rng), x2 = u(rng);
        if (x1 == 0.0 && x2 == 0.0) continue;
        const auto [y1, y2] = cartesian_from_polar(polar_from_cartesian(x1, x2));
        CHECK(std::hypot(y1 - x1, y2 - x2) < 1e-12);
    }
}

TEST_CASE("convexification: values, monotonicity, ordering") {
    const ConvexifyParams p25(0.25), p50(0.5), p75(0.75);
    CHECK(convexify(0.0, p25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(convexify(0.0, p75) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(convexify(-40.0, p50) - (-40.0)) < 1e-8);

    // t(-3; 0.5) = -3 + e^{-1.5}
    const double t = convexify(-3.0, p50);
    CHECK(t == doctest::Approx(-2.7768698398515702).epsilon(1e-13));
    CHECK(-3.0 < t);
    CHECK(t < -2.0);
    CHECK(-2.0 < -1.5);  // T + 1 < T/2 at T = -3

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SUBCASE("strictly increasing on sorted samples") {
        for (double eps : {0.1, 0.5, 0.9}) {
            const ConvexifyParams p(eps);
            std::vector<double> ts;
            for (int k = 0; k < 200; ++k) ts.push_back(-40.0 + 42.0 * u(rng));
            std::sort(ts.begin(), ts.end());
            for (size_t i = 0; i + 1 < ts.size(); ++i)
                if (ts[i] != ts[i + 1]) CHECK(convexify(ts[i], p) < convexify(ts[i + 1], p));
        }
    }
    SUBCASE("chain T < t < T+1 < T/2 for T < -2") {
        for (int k = 0; k < 2000; ++k) {
            const double T = -2.0 - 28.0 * u(rng);
            const double eps = 0.001 + 0.998 * u(rng);
            const double tv = convexify(T, ConvexifyParams(eps));
            CHECK(T < tv);
            CHECK(tv < T + 1.0);
            CHECK(T + 1.0 < T / 2.0);
        }
    }
}

TEST_CASE("deconvexify: inverse pair and bisection oracle") {
    const ConvexifyParams p(0.5);
    CHECK(std::abs(deconvexify(1.0, p)) < 1e-13);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const double t = -50.0 + 52.0 * u(rng);
        for (double eps : {0.25, 0.5, 0.75}) {
            const ConvexifyParams q(eps);
            CHECK(std::abs(convexify(deconvexify(t, q), q) - t) < 1e-12 * std::max(1.0, std::abs(t)));
        }
    }

    // Independent bisection on the monotone map.
    const double target = -10.0;
    double lo = -12.0, hi = -9.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (convexify(mid, p) < target ? lo : hi) = mid;
    }
    CHECK(std::abs(deconvexify(target, p) - 0.5 * (lo + hi)) < 1e-12);
}

TEST_CASE("jacobian dt/dT") {
    const ConvexifyParams p(0.5);
    CHECK(jacobian_dt_dT(0.0, p) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(std::abs(jacobian_dt_dT(-60.0, p) - 1.0) < 1e-12);

    // O(step^2) agreement with a centered difference of convexify.
    const double T = -1.3;
    double e_prev = 0.0, order = 0.0;
    for (double s : {0.02, 0.01}) {
        const double fd = (convexify(T + s, p) - convexify(T - s, p)) / (2.0 * s);
        const double e = std::abs(fd - jacobian_dt_dT(T, p));
        if (e_prev > 0.0) order = std::log2(e_prev / e);
        e_prev = e;
    }
    CHECK(order >= 1.9);
    for (double T2 : {-30.0, -4.0, 0.5}) CHECK(jacobian_dt_dT(T2, p) > 0.0);
}

TEST_CASE("pullback: constants, planar coordinate fields, monomial growth") {
    const ConvexifyParams p(0.5);
    const auto one = make_poly({Complex(1.0)});
    const auto U1 = pullback_plane_field(one, p);
    const CylJet j1 = U1->jet(-6.0, 1.2, 2);
    CHECK(j1.at(0, 0) == Complex(1.0));
    CHECK(j1.at(1, 0) == Complex(0.0));
    CHECK(j1.at(0, 1) == Complex(0.0));
    CHECK(j1.at(2, 0) == Complex(0.0));

    // u = x1 (real part of x): dth U vanishes on the axis theta = 0
    const auto x1f = make_plane_sum({monomial_curve(1), make_conj_x()},
                                    {Complex(0.5, 0.0), Complex(0.5, 0.0)});
    const auto Ux1 = pullback_plane_field(x1f, p);
    CHECK(std::abs(Ux1->jet(-6.0, 0.0, 1).at(0, 1)) < 1e-18);

    // |U| = e^{k t}: log-magnitude slope in t equals k
    const auto u3 = monomial_curve(3);
    const auto U3 = pullback_plane_field(u3, p);
    const double Ta = -7.0, Tb = -6.0;
    const double slope =
        (std::log(std::abs(U3->jet(Tb, 0.7, 0).at(0, 0))) -
         std::log(std::abs(U3->jet(Ta, 0.7, 0).at(0, 0)))) /
        (convexify(Tb, p) - convexify(Ta, p));
    CHECK(slope == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("pullback jets match finite differences of the composed map") {
    const ConvexifyParams p(0.5);
    const auto u = make_poly({Complex(0.3, 0.0), Complex(1, 0), Complex(0, 0), Complex(0.5, 0.25)});
    const auto U = pullback_plane_field(u, p);
    const double T = -6.3, th = 2.1;
    const CylJet j = U->jet(T, th, 2);
    auto val = [&](double Tq, double thq) { return U->jet(Tq, thq, 0).at(0, 0); };
    for (double s : {2e-5}) {
        CHECK(std::abs((val(T + s, th) - val(T - s, th)) / (2 * s) - j.at(1, 0)) < 1e-8);
        CHECK(std::abs((val(T, th + s) - val(T, th - s)) / (2 * s) - j.at(0, 1)) < 1e-8);
        CHECK(std::abs((val(T + s, th) - 2.0 * val(T, th) + val(T - s, th)) / (s * s) -
                       j.at(2, 0)) < 1e-4);
        CHECK(std::abs((val(T, th + s) - 2.0 * val(T, th) + val(T, th - s)) / (s * s) -
                       j.at(0, 2)) < 1e-4);
        CHECK(std::abs((val(T + s, th + s) - val(T + s, th - s) - val(T - s, th + s) +
                        val(T - s, th - s)) /
                           (4 * s * s) -
                       j.at(1, 1)) < 1e-4);
    }

    CHECK_THROWS_AS(U->jet(-6.0, 0.0, 3), JetOrderError);
    CHECK_THROWS_AS(U->jet(1.0, 0.0, 2), std::domain_error);  // image leaves the domain
}

TEST_CASE("pullback Laplacian consistency with the cylinder operator") {
    // Lap u at x(T,theta) equals e^{-2t} (1+eps E)^{-2} (Q U)(T,theta).
    // The flat field is not harmonic, so both sides are genuinely nonzero;
    // probe at moderate radii where it is far from underflow.
    const ConvexifyParams p(0.5);
    const auto nonh = make_flat();
    const auto U = pullback_plane_field(nonh, p);
    for (double T : {-1.3, -1.1}) {
        for (double th : {0.4, 3.0}) {
            const double t = convexify(T, p);
            const double g = jacobian_dt_dT(T, p);
            const auto [x1, x2] = cartesian_from_polar({t, th});
            const Complex lap = nonh->jet(x1, x2).laplacian(0);
            const Complex q = apply_Q(*U, {T, th}, p);
            CHECK(std::abs(lap) > 1e-4);
            CHECK(std::abs(lap - std::exp(-2.0 * t) / (g * g) * q) <
                  1e-10 * (1.0 + std::abs(lap)));
        }
    }
}
