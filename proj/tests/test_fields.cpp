#include <doctest.h>

#include <cmath>
#include <random>

#include "carlab/fields.hpp"

using namespace carlab;

namespace {

// Independent evaluation of the documented glue closed form.
double glue_direct(double s) {
    auto sigma = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    return sigma(s) / (sigma(s) + sigma(1.0 - s));
}

Complex fd_T(const CylField& f, double T, double th, int a, int b, double step) {
    return (f.jet(T + step, th, 4).at(a, b) - f.jet(T - step, th, 4).at(a, b)) / (2.0 * step);
}

}  // namespace

TEST_CASE("step-down bump: flat regions exact, midpoint matches the glue") {
    const auto b = make_bump(CutoffSpec(-5.0, -4.0));
    const CylJet left = b->jet(-6.0, 0.3);
    CHECK(left.at(0, 0) == Complex(1.0));
    for (int s = 1; s <= 4; ++s)
        for (int k = 0; k <= s; ++k) CHECK(left.at(s - k, k) == Complex(0.0));
    CHECK(b->jet(-3.0, 1.0).at(0, 0) == Complex(0.0));

    // Symmetric glue: the midpoint value is exactly 1/2, and agrees with a
    // direct evaluation of the closed form.
    const double mid = b->jet(-4.5, 0.0).at(0, 0).real();
    CHECK(mid == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mid == doctest::Approx(glue_direct(0.5)).epsilon(1e-14));
    const double q = b->jet(-4.25, 0.0).at(0, 0).real();
    CHECK(q == doctest::Approx(glue_direct(0.25)).epsilon(1e-13));
    CHECK(q > 0.0);
    CHECK(q < 1.0);
}

TEST_CASE("degenerate cutoff interval rejected") {
    CHECK_THROWS_AS(CutoffSpec(-4.0, -4.0), std::invalid_argument);
    CHECK_THROWS_AS(CutoffSpec(-3.0, -4.0), std::invalid_argument);
}

TEST_CASE("mode fields: theta structure") {
    const BumpWindow w(-6.0, -5.4, -4.8, -4.0);
    const auto m0 = make_mode(0, w);
    CHECK(m0->jet(-5.0, 1.7).at(0, 1) == Complex(0.0));

    for (int m : {2, -2}) {
        const auto m2 = make_mode(m, w);
        for (double th : {0.0, 0.9, 3.8}) {
            const CylJet j = m2->jet(-5.1, th);
            CHECK(std::abs(j.at(0, 2) + 4.0 * j.at(0, 0)) < 1e-14);
        }
    }

    // dT dth of b(T) e^{i th} equals i b'(T) e^{i th}; b' from a centered
    // difference of the envelope as the product-rule oracle.
    const auto m1 = make_mode(1, w);
    const double T = -5.55, th = 0.8;
    const double step = 1e-5;
    const Complex phase = std::polar(1.0, th);
    const double bp_fd = ((m1->jet(T + step, 0.0).at(0, 0) - m1->jet(T - step, 0.0).at(0, 0)) /
                          (2.0 * step))
                             .real();
    const Complex oracle = Complex(0, 1) * bp_fd * phase;
    CHECK(std::abs(m1->jet(T, th).at(1, 1) - oracle) < 1e-8);
}

TEST_CASE("2-pi periodicity to machine precision") {
    const auto f = make_mode(5, BumpWindow(-7.0, -6.5, -6.0, -5.5));
    for (double th : {0.1, 2.2, 5.9}) {
        const CylJet a = f->jet(-6.2, th);
        const CylJet b = f->jet(-6.2, th + 2.0 * 3.14159265358979323846);
        for (int s = 0; s <= 4; ++s)
            for (int k = 0; k <= s; ++k)
                CHECK(std::abs(a.at(s - k, k) - b.at(s - k, k)) <
                      1e-12 * (1.0 + std::abs(a.at(s - k, k))));
    }
}

TEST_CASE("stored derivatives agree with centered differences at O(step^2)") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto f = make_mode(3, BumpWindow(-7.0, -6.4, -5.8, -5.2));
    for (int trial = 0; trial < 12; ++trial) {
        const double T = -6.9 + 1.6 * u(rng);
        const double th = 6.28 * u(rng);
        const CylJet j = f->jet(T, th, 4);
        for (int a = 1; a <= 3; ++a) {
            const double e1 = std::abs(fd_T(*f, T, th, a - 1, 0, 4e-3) - j.at(a, 0));
            const double e2 = std::abs(fd_T(*f, T, th, a - 1, 0, 2e-3) - j.at(a, 0));
            const double scale = std::abs(j.at(a, 0)) + 1.0;
            if (e1 > 1e-11 * scale)  // above the rounding floor: order visible
                CHECK(e2 < 0.5 * e1);
            else
                CHECK(e2 < 1e-10 * scale);
        }
        const Complex dth_fd =
            (f->jet(T, th + 1e-5).at(0, 0) - f->jet(T, th - 1e-5).at(0, 0)) / (2e-5);
        CHECK(std::abs(dth_fd - j.at(0, 1)) < 1e-9 * (1.0 + std::abs(j.at(0, 1))));
    }
}

TEST_CASE("sum combinator is exact linearity at the jet level") {
    const auto f = make_mode(1, BumpWindow(-7.0, -6.4, -5.8, -5.2));
    const auto g = make_mode(4, BumpWindow(-7.2, -6.6, -6.0, -5.4));
    const Complex ca(0.7, -0.2), cb(0.0, 1.3);
    const auto s = make_sum({f, g}, {ca, cb});
    const CylJet js = s->jet(-6.1, 2.4);
    const CylJet manual = ca * f->jet(-6.1, 2.4) + cb * g->jet(-6.1, 2.4);
    for (int t = 0; t <= 4; ++t)
        for (int k = 0; k <= t; ++k) CHECK(js.at(t - k, k) == manual.at(t - k, k));
}

TEST_CASE("profile product obeys the Leibniz rule") {
    const auto base = make_mode(2, BumpWindow(-8.0, -7.0, -6.0, -5.0));
    const CutoffSpec psi(-6.2, -5.4);
    const auto cut = make_cut(base, {CutoffFactor{CutoffFactor::Kind::stepdown, psi, 1.0}});
    const double T = -5.8, th = 1.1;
    const CylJet ju = base->jet(T, th, 4);
    const TProfile pp = stepdown_profile(T, psi);
    const CylJet jc = cut->jet(T, th, 4);
    // dT^2 (psi u) = psi u_TT + 2 psi' u_T + psi'' u, assembled by hand
    const Complex manual =
        pp.d[0] * ju.at(2, 0) + 2.0 * pp.d[1] * ju.at(1, 0) + pp.d[2] * ju.at(0, 0);
    CHECK(std::abs(jc.at(2, 0) - manual) < 1e-14 * (1.0 + std::abs(manual)));
    const Complex d1 = pp.d[0] * ju.at(1, 0) + pp.d[1] * ju.at(0, 0);
    CHECK(std::abs(jc.at(1, 0) - d1) < 1e-14 * (1.0 + std::abs(d1)));
}

TEST_CASE("monomial curves") {
    const auto u1 = monomial_curve(1);
    const PlaneJet j1 = u1->jet(1.0, 0.0);
    CHECK(j1.val(0) == Complex(1.0, 0.0));
    CHECK(j1.dx1(0) == Complex(1.0, 0.0));
    CHECK(j1.dx2(0) == Complex(0.0, 1.0));

    const auto u2 = monomial_curve(2);
    const PlaneJet j2 = u2->jet(0.0, 0.0);
    CHECK(j2.val(0) == Complex(0.0));
    CHECK(j2.dx1(0) == Complex(0.0));
    CHECK(j2.dx2(0) == Complex(0.0));

    const auto u3 = monomial_curve(3);
    CHECK(std::abs(u3->jet(0.5, 0.5).val(0) - Complex(-0.25, 0.25)) < 1e-15);

    CHECK_THROWS_AS(monomial_curve(0), std::invalid_argument);
}

TEST_CASE("plane jets: derivative consistency and domain enforcement") {
    const auto u = make_poly({Complex(0.2, 0.1), Complex(0, 0), Complex(1, 0), Complex(0, 2)});
    const double x1 = 0.31, x2 = -0.22, s = 1e-5;
    const PlaneJet j = u->jet(x1, x2);
    const Complex fd1 = (u->jet(x1 + s, x2).val(0) - u->jet(x1 - s, x2).val(0)) / (2 * s);
    const Complex fd2 = (u->jet(x1, x2 + s).val(0) - u->jet(x1, x2 - s).val(0)) / (2 * s);
    CHECK(std::abs(fd1 - j.dx1(0)) < 1e-9);
    CHECK(std::abs(fd2 - j.dx2(0)) < 1e-9);
    const Complex fd12 =
        (u->jet(x1 + s, x2 + s).val(0) - u->jet(x1 + s, x2 - s).val(0) -
         u->jet(x1 - s, x2 + s).val(0) + u->jet(x1 - s, x2 - s).val(0)) /
        (4 * s * s);
    CHECK(std::abs(fd12 - j.dx1x2(0)) < 1e-6);

    CHECK_THROWS_AS(u->jet(1.5, 0.0), std::domain_error);
}

TEST_CASE("flat field vanishes to very high order at 0") {
    const auto f = make_flat();
    CHECK(f->jet(0.0, 0.0).val(0) == Complex(0.0));
    const PlaneJet j = f->jet(0.05, 0.0);
    CHECK(std::abs(j.val(0)) < 1e-170);
    CHECK(std::abs(j.val(0)) > 0.0);
    const double s = 1e-6;
    const Complex fd = (f->jet(0.4 + s, 0.1).val(0) - f->jet(0.4 - s, 0.1).val(0)) / (2 * s);
    CHECK(std::abs(fd - f->jet(0.4, 0.1).dx1(0)) < 1e-7);
}

TEST_CASE("json recipes round-trip") {
    const auto f = make_sum({make_mode(2, BumpWindow(-8.0, -7.4, -6.2, -5.6)),
                             make_mode(0, BumpWindow(-7.8, -7.2, -6.4, -5.8))},
                            {Complex(1, 0), Complex(0, -0.5)});
    const auto g = cyl_field_from_json(f->recipe());
    const CylJet a = f->jet(-6.9, 0.7), b = g->jet(-6.9, 0.7);
    for (int t = 0; t <= 4; ++t)
        for (int k = 0; k <= t; ++k) CHECK(a.at(t - k, k) == b.at(t - k, k));

    Mat m(2);
    m(0, 0) = 1.5;
    m(0, 1) = 0.3;
    m(1, 0) = -0.2;
    m(1, 1) = 0.9;
    const auto u = make_linear_image(monomial_curve(2), m);
    const auto w = plane_field_from_json(u->recipe());
    CHECK(std::abs(u->jet(0.3, 0.2).val(0) - w->jet(0.3, 0.2).val(0)) == 0.0);
}

TEST_CASE("default family: ten compactly supported fields below T0") {
    const auto fam = default_test_family();
    CHECK(fam.size() == 10);
    for (const auto& [id, f] : fam) {
        const auto [lo, hi] = f->support();
        CHECK(lo > -10.0);
        CHECK(hi < -5.0);
        CHECK(std::abs(f->jet(lo, 0.4).at(0, 0)) == 0.0);
        CHECK(std::abs(f->jet(hi, 0.4).at(0, 0)) == 0.0);
        CHECK(std::abs(f->jet(0.5 * (lo + hi), 0.4).at(0, 0)) > 0.0);
    }
}
