#include <doctest.h>

#include <cmath>
#include <random>

#include "carlab/operators.hpp"

using namespace carlab;

namespace {

// theta-independent field with jet of T itself (value T, dT = 1).
class LinearTField final : public CylField {
  public:
    CylJet jet(double T, double, int order) const override {
        CylJet r;
        r.order = order;
        r.at(0, 0) = T;
        if (order >= 1) r.at(1, 0) = 1.0;
        return r;
    }
    json recipe() const override { return json{{"kind", "linear_T"}}; }
};

// |x|^2, the simplest non-harmonic plane field.
class AbsSquaredField final : public PlaneField {
  public:
    int components() const override { return 1; }
    PlaneJet jet(double x1, double x2) const override {
        check_domain(x1, x2);
        PlaneJet r(1);
        r.comp[0][0] = x1 * x1 + x2 * x2;
        r.comp[0][1] = 2.0 * x1;
        r.comp[0][2] = 2.0 * x2;
        r.comp[0][3] = 2.0;
        r.comp[0][5] = 2.0;
        return r;
    }
    json recipe() const override { return json{{"kind", "abs_squared"}}; }
};

Mat conjugating_matrix() {
    Mat m(2);
    m(0, 0) = 2.0;
    m(0, 1) = 1.0;
    m(1, 0) = 0.0;
    m(1, 1) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("semiclassical parameter validation") {
    CHECK(SemiclassicalParams(0.1).h == 0.1);
    CHECK(SemiclassicalParams(0.05, 0.1).h0 == 0.1);
    CHECK_THROWS_AS(SemiclassicalParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(SemiclassicalParams(0.3, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(ConvexifyParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ConvexifyParams(1.0), std::invalid_argument);
}

TEST_CASE("coefficients: closed forms, limits, signs") {
    const ConvexifyParams p(0.5);
    const auto c0 = coefficients(0.0, p);
    CHECK(c0.c == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(c0.c_prime == doctest::Approx(-0.125 / 2.25).epsilon(1e-15));
    CHECK(c0.a == doctest::Approx(2.25).epsilon(1e-15));

    const auto cm = coefficients(-60.0, p);
    CHECK(std::abs(cm.c) < 1e-12);
    CHECK(std::abs(cm.c_prime) < 1e-12);
    CHECK(std::abs(cm.c_double_prime) < 1e-12);
    CHECK(std::abs(cm.c_triple_prime) < 1e-12);
    CHECK(std::abs(cm.a - 1.0) < 1e-12);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double T = -60.0 * u(rng);
        const double eps = 0.1 + 0.8 * u(rng);
        const auto c = coefficients(T, ConvexifyParams(eps));
        CHECK(c.c < 0.0);
        CHECK(c.c_prime < 0.0);
        CHECK(c.a >= 1.0);  // eps e^{eps T} can round away far left
    }
}

TEST_CASE("hand-derived c'' and c''' validated against centered differences") {
    for (const auto& [T, eps] :
         std::vector<std::pair<double, double>>{{-1.0, 0.5}, {-3.0, 0.25}, {-0.5, 0.75}}) {
        const ConvexifyParams p(eps);
        const auto c = coefficients(T, p);
        double e2a = 0, e2b = 0, e3a = 0, e3b = 0;
        {
            const double s = 0.02;
            e2a = std::abs((coefficients(T + s, p).c_prime - coefficients(T - s, p).c_prime) /
                               (2 * s) -
                           c.c_double_prime);
            e3a = std::abs(
                (coefficients(T + s, p).c_double_prime - coefficients(T - s, p).c_double_prime) /
                    (2 * s) -
                c.c_triple_prime);
        }
        {
            const double s = 0.01;
            e2b = std::abs((coefficients(T + s, p).c_prime - coefficients(T - s, p).c_prime) /
                               (2 * s) -
                           c.c_double_prime);
            e3b = std::abs(
                (coefficients(T + s, p).c_double_prime - coefficients(T - s, p).c_double_prime) /
                    (2 * s) -
                c.c_triple_prime);
        }
        CHECK(std::log2(e2a / e2b) >= 1.9);
        CHECK(std::log2(e3a / e3b) >= 1.9);
    }
}

TEST_CASE("Q on eigen-structures") {
    const ConvexifyParams p(0.5);
    const auto bump = make_bump(CutoffSpec(-5.0, -4.0));
    // flat region: constant 1, so Q annihilates it
    CHECK(std::abs(apply_Q(*bump, {-7.0, 0.3}, p)) == 0.0);

    const LinearTField lin;
    const double T = -3.7;
    CHECK(std::abs(apply_Q(lin, {T, 0.0}, p) - coefficients(T, p).c) < 1e-16);

    // enveloped pure mode, evaluated in the flat envelope region
    const auto m3 = make_mode(3, BumpWindow(-8.0, -7.0, -6.0, -5.0));
    const ConvexCoord at{-6.5, 1.3};
    const CylJet j = m3->jet(at.T, at.theta);
    const Complex expected = -9.0 * coefficients(at.T, p).a * j.at(0, 0);
    CHECK(std::abs(apply_Q(*m3, at, p) - expected) < 1e-14);
}

TEST_CASE("Qtilde: values and conjugation identity") {
    const ConvexifyParams p(0.5);
    const double h = 0.1;
    const auto bump = make_bump(CutoffSpec(-5.0, -4.0));
    const double c = coefficients(-7.0, p).c;
    CHECK(std::abs(apply_Qtilde(*bump, {-7.0, 0.2}, p, h) - (1.0 + h * c)) < 1e-16);

    const auto m2 = make_mode(2, BumpWindow(-8.0, -7.0, -6.0, -5.0));
    const ConvexCoord at{-6.5, 0.9};
    const auto cs = coefficients(at.T, p);
    const Complex expected =
        (1.0 + h * cs.c - cs.a * h * h * 4.0) * m2->jet(at.T, at.theta).at(0, 0);
    CHECK(std::abs(apply_Qtilde(*m2, at, p, h) - expected) < 1e-14);

    // residual of Qt - h^2 e^{-T/h} Q e^{T/h} across the test family
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (const auto& [id, f] : default_test_family()) {
        const auto [lo, hi] = f->support();
        for (double hh : {0.1, 0.05}) {
            for (int k = 0; k < 40; ++k) {
                const double T = lo + (hi - lo) * u(rng);
                const double th = 6.28 * u(rng);
                const CylJet j = f->jet(T, th, 2);
                const double scale = std::abs(j.at(0, 0)) + hh * std::abs(j.at(1, 0)) +
                                     hh * hh * std::abs(j.at(2, 0)) + 1e-300;
                worst = std::max(worst,
                                 std::abs(conjugation_residual(*f, {T, th}, p, hh)) / scale);
            }
        }
    }
    CHECK(worst < 1e-10);

    // constant field near T = -1 at h = 0.1
    const auto plateau = make_bump(CutoffSpec(0.5, 1.0));
    CHECK(std::abs(conjugation_residual(*plateau, {-1.0, 0.2}, p, 0.1)) < 1e-11);

    // extreme but legal h = 1 at T = 0
    const auto wide = make_mode(1, BumpWindow(-1.5, -0.8, 0.5, 1.2));
    const CylJet j0 = wide->jet(0.0, 0.4, 2);
    const double scale = std::abs(j0.at(0, 0)) + 1.0;
    CHECK(std::abs(conjugation_residual(*wide, {0.0, 0.4}, p, 1.0)) < 1e-12 * scale);

    CHECK_THROWS_AS(conjugation_residual(*m2, {-6.0, 0.0}, p, 0.005), std::domain_error);
}

TEST_CASE("A and B: split of Qtilde") {
    const ConvexifyParams p(0.5);
    const double h = 0.1;
    const auto bump = make_bump(CutoffSpec(-5.0, -4.0));
    const auto cs = coefficients(-7.0, p);
    const double fA = 1.0 + h * cs.c - 0.5 * h * h * cs.c_prime;
    CHECK(std::abs(apply_A(*bump, {-7.0, 0.1}, p, h) - fA) < 1e-15);
    CHECK(std::abs(apply_B(*bump, {-7.0, 0.1}, p, h) - 0.5 * h * h * cs.c_prime) < 1e-18);
    CHECK(std::abs(apply_A(*bump, {-7.0, 0.1}, p, h) + apply_B(*bump, {-7.0, 0.1}, p, h) -
                   apply_Qtilde(*bump, {-7.0, 0.1}, p, h)) < 1e-15);

    const LinearTField lin;
    // B T = (2 + h c) h + (h^2 c'/2) T; the zeroth piece dies off to the left.
    {
        const auto c3 = coefficients(-3.0, p);
        const double exact = (2.0 + h * c3.c) * h + 0.5 * h * h * c3.c_prime * (-3.0);
        CHECK(std::abs(apply_B(lin, {-3.0, 0.0}, p, h) - exact) < 1e-15);
        CHECK(std::abs(apply_B(lin, {-60.0, 0.0}, p, h) -
                       (2.0 + h * coefficients(-60.0, p).c) * h) < 1e-12);
    }

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (const auto& [id, f] : default_test_family()) {
        const auto [lo, hi] = f->support();
        for (int k = 0; k < 30; ++k) {
            const ConvexCoord at{lo + (hi - lo) * u(rng), 6.28 * u(rng)};
            const Complex q = apply_Qtilde(*f, at, p, h);
            const Complex ab = apply_A(*f, at, p, h) + apply_B(*f, at, p, h);
            const double scale =
                std::max({std::abs(q), std::abs(f->jet(at.T, at.theta, 0).at(0, 0)), 1e-300});
            worst = std::max(worst, std::abs(q - ab) / scale);
        }
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("commutator: limits and the two-path oracle") {
    const ConvexifyParams p(0.5);
    const double h = 0.1;

    // constant-coefficient limit: compactly supported far left
    const auto far = make_mode(2, BumpWindow(-61.0, -60.5, -59.5, -59.0));
    const ConvexCoord at_far{-60.0, 0.8};
    const CylJet jf = far->jet(at_far.T, at_far.theta);
    const double scale =
        std::abs(jf.at(0, 0)) + std::abs(jf.at(1, 0)) + std::abs(jf.at(0, 1)) + 1e-300;
    CHECK(std::abs(apply_commutator(*far, at_far, p, h)) < 1e-10 * scale);

    // [A,B] applied to a constant: closed form from the coefficient profiles
    //   [A,B] 1 = h^4 c'''/2 - (2 + h c)(h^2 c' - h^3 c''/2)
    const auto bump = make_bump(CutoffSpec(-5.0, -4.0));
    const ConvexCoord at{-6.2, 0.0};
    const auto cs = coefficients(at.T, p);
    const double closed = 0.5 * std::pow(h, 4) * cs.c_triple_prime -
                          (2.0 + h * cs.c) * (h * h * cs.c_prime - 0.5 * h * h * h * cs.c_double_prime);
    CHECK(std::abs(apply_commutator(*bump, at, p, h) - closed) < 1e-15);

    // jet order below 4 is rejected
    const auto u1 = pullback_plane_field(monomial_curve(1), p);
    CHECK_THROWS_AS(apply_commutator(*u1, {-6.0, 0.0}, p, h), JetOrderError);
}

TEST_CASE("curve equation: monomials, conjugates, and the anti-holomorphic example") {
    const auto js = acs_standard(1);
    for (int k = 1; k <= 4; ++k) {
        const auto r = jhol_residual(*monomial_curve(k), js, 0.4, -0.3);
        CHECK(std::abs(r[0]) < 1e-15);
    }

    const auto rbar = jhol_residual(*make_conj_x(), js, 0.4, -0.3);
    CHECK(std::abs(rbar[0] - Complex(2.0, 0.0)) < 1e-15);

    const Mat m = conjugating_matrix();
    const auto jc = acs_conjugated(m);
    {
        const Mat j = jc.J(Vec{0.0, 0.0});
        const Mat shouldBeMinusI = j * j + Mat::identity(2);
        CHECK(max_abs(shouldBeMinusI) < 1e-12);
    }
    for (int k = 1; k <= 3; ++k) {
        const auto u = make_linear_image(monomial_curve(k), m);
        const auto r = jhol_residual(*u, jc, 0.25, 0.31);
        CHECK(std::abs(r[0]) < 1e-14);
    }
}

TEST_CASE("anticommutation of dJ with J") {
    // constant structures: exactly zero
    CHECK(max_abs(anticommute_residual(acs_standard(1), Vec{0.1, 0.2}, 0)) == 0.0);
    CHECK(max_abs(anticommute_residual(acs_conjugated(conjugating_matrix()), Vec{0.1, 0.2}, 1)) ==
          0.0);

    // perturbed structure with exact dJ: zero to rounding
    const auto jp = acs_perturbed(0.1);
    const Vec at{0.2, -0.3};
    CHECK(max_abs(anticommute_residual(jp, at, 0)) < 1e-14);
    {
        const Mat j = jp.J(at);
        CHECK(max_abs(j * j + Mat::identity(2)) < 1e-12);
    }

    // centered-difference dJ: small residual, O(step^2) decay
    const auto j1 = with_fd_derivative(jp, 1e-3);
    CHECK(max_abs(anticommute_residual(j1, at, 0)) < 1e-9);
    double e_prev = 0.0, order = 0.0;
    for (double s : {0.04, 0.02}) {
        const auto jf = with_fd_derivative(jp, s);
        const double e = max_abs(anticommute_residual(jf, at, 0));
        if (e_prev > 0.0) order = std::log2(e_prev / e);
        e_prev = e;
    }
    CHECK(order >= 1.9);
}

TEST_CASE("Laplacian identity of the reduction") {
    const auto js = acs_standard(1);
    // holomorphic solution: both sides vanish
    const auto r1 = laplacian_identity_residual(*monomial_curve(3), js, 0.3, 0.2);
    CHECK(std::abs(r1[0]) < 1e-14);

    // conjugated constant structure, exact solution family
    const Mat m = conjugating_matrix();
    const auto jc = acs_conjugated(m);
    const auto u = make_linear_image(monomial_curve(2), m);
    const auto r2 = laplacian_identity_residual(*u, jc, 0.3, -0.25);
    CHECK(std::abs(r2[0]) < 1e-10);

    // non-solution with nonzero Laplacian: the identity genuinely fails
    // (|x|^2 rather than conj(x), whose Laplacian vanishes identically)
    const AbsSquaredField q;
    const auto r3 = laplacian_identity_residual(q, js, 0.5, 0.0);
    CHECK(std::abs(r3[0]) > 0.1);
}

TEST_CASE("difference of structures along a segment") {
    // zero-length segment
    const auto jp = acs_perturbed(0.2);
    const auto u = monomial_curve(2);
    {
        const Mat r = j_difference_residual(*u, *u, jp, 0.3, 0.1, 3);
        CHECK(max_abs(r) == 0.0);
    }

    // affine structure: Gauss with 2 nodes is exact
    const auto ja = acs_affine(0.5);
    const auto u4 = make_stack({monomial_curve(2), monomial_curve(1)});
    const auto v4 = make_stack({monomial_curve(1), monomial_curve(3)});
    CHECK(max_abs(j_difference_residual(*u4, *v4, ja, 0.3, 0.2, 2)) < 1e-13);

    // generic smooth structure: refinement decreases the residual fast
    const auto v = monomial_curve(1);
    double prev = 1e300;
    for (int nodes : {1, 2, 3, 4}) {
        const double e = max_abs(j_difference_residual(*u, *v, jp, 0.35, 0.15, nodes));
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 1e-10);
}

TEST_CASE("empirical constant of the differential inequality") {
    const auto js = acs_standard(1);
    const SampleRegion region{Rect{-0.4, 0.4, -0.4, 0.4}, 10, 10};

    // two holomorphic solutions: Lap w = 0, constant 0
    const auto r1 = diff_ineq_constant(*monomial_curve(2), *monomial_curve(3), js, region);
    CHECK(r1.constant == 0.0);
    CHECK(r1.skipped == 0);

    // identical inputs: every sample has zero denominator
    CHECK_THROWS_AS(diff_ineq_constant(*monomial_curve(2), *monomial_curve(2), js, region),
                    std::runtime_error);

    // conjugated family with one matrix: both solve, Lap w = 0
    const Mat m = conjugating_matrix();
    const auto jc = acs_conjugated(m);
    const auto mu = make_linear_image(monomial_curve(2), m);
    const auto mv = make_linear_image(monomial_curve(3), m);
    CHECK(diff_ineq_constant(*mu, *mv, jc, region).constant < 1e-8);
}
