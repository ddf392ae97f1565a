#include "carlab/operators.hpp"

#include <cmath>

namespace carlab {

CoefficientSet coefficients(double T, const ConvexifyParams& p) {
    const double eps = p.epsilon;
    const double E = std::exp(eps * T);
    const double g = 1.0 + eps * E;
    CoefficientSet s;
    s.c = -eps * eps * E / g;
    s.c_prime = -eps * eps * eps * E / (g * g);
    s.c_double_prime = -std::pow(eps, 4) * E * (1.0 - eps * E) / (g * g * g);
    s.c_triple_prime =
        -std::pow(eps, 5) * E * (1.0 - 4.0 * eps * E + eps * eps * E * E) / (g * g * g * g);
    s.a = g * g;
    return s;
}

TProfile coeff_c_profile(double T, const ConvexifyParams& p) {
    const CoefficientSet s = coefficients(T, p);
    TProfile r;
    r.order = 3;
    r.d = {s.c, s.c_prime, s.c_double_prime, s.c_triple_prime, 0.0};
    return r;
}

TProfile coeff_a_profile(double T, const ConvexifyParams& p) {
    const double eps = p.epsilon;
    const double E = std::exp(eps * T);
    const double g = 1.0 + eps * E;
    TProfile r;
    r.order = 3;
    r.d = {g * g,
           2.0 * eps * eps * E * g,
           2.0 * std::pow(eps, 3) * E * (1.0 + 2.0 * eps * E),
           2.0 * std::pow(eps, 4) * E * (1.0 + 4.0 * eps * E),
           0.0};
    return r;
}

namespace {

TProfile c_prime_profile(double T, const ConvexifyParams& p) {
    const CoefficientSet s = coefficients(T, p);
    TProfile r;
    r.order = 2;
    r.d = {s.c_prime, s.c_double_prime, s.c_triple_prime, 0.0, 0.0};
    return r;
}

// 1 + h c - h^2 c' / 2 (the zeroth-order part of A), derivatives to order 2.
TProfile a_zeroth_profile(double T, const ConvexifyParams& p, double h) {
    const TProfile c = coeff_c_profile(T, p);
    const TProfile cp = c_prime_profile(T, p);
    TProfile r;
    r.order = 2;
    for (int k = 0; k <= 2; ++k) r.d[k] = h * c.d[k] - 0.5 * h * h * cp.d[k];
    r.d[0] += 1.0;
    return r;
}

// e^{alpha T} with derivatives; guard against overflow in the scalar factor.
TProfile exp_profile(double T, double alpha) {
    const double x = alpha * T;
    if (std::abs(x) > 500.0)
        throw std::domain_error("exp_profile: |alpha*T| > 500 rejected");
    TProfile r;
    const double v = std::exp(x);
    double pw = 1.0;
    for (int k = 0; k <= kMaxDerivOrder; ++k) {
        r.d[k] = v * pw;
        pw *= alpha;
    }
    return r;
}

}  // namespace

CylJet apply_Q_jet(const CylJet& v, double T, const ConvexifyParams& p) {
    v.require(2, "apply_Q");
    const CylJet dT = v.d_T();
    return dT.d_T() + mul_profile(coeff_c_profile(T, p), dT) +
           mul_profile(coeff_a_profile(T, p), v.d_theta().d_theta());
}

CylJet apply_Qtilde_jet(const CylJet& v, double T, const ConvexifyParams& p, double h) {
    v.require(2, "apply_Qtilde");
    const TProfile c = coeff_c_profile(T, p);
    const CylJet dT = v.d_T();
    // h^2 dTT + 2h dT + 1 + h^2 c dT + h c + a h^2 dthth
    CylJet r = Complex(h * h) * dT.d_T() + Complex(2.0 * h) * dT + v;
    r = r + Complex(h * h) * mul_profile(c, dT) + Complex(h) * mul_profile(c, v);
    r = r + Complex(h * h) * mul_profile(coeff_a_profile(T, p), v.d_theta().d_theta());
    return r;
}

CylJet apply_A_jet(const CylJet& v, double T, const ConvexifyParams& p, double h) {
    v.require(2, "apply_A");
    CylJet r = Complex(h * h) * v.d_T().d_T() + mul_profile(a_zeroth_profile(T, p, h), v);
    r = r + Complex(h * h) * mul_profile(coeff_a_profile(T, p), v.d_theta().d_theta());
    return r;
}

CylJet apply_B_jet(const CylJet& v, double T, const ConvexifyParams& p, double h) {
    v.require(1, "apply_B");
    const TProfile c = coeff_c_profile(T, p);
    TProfile two_plus_hc;  // 2 + h c, order 3
    two_plus_hc.order = 3;
    for (int k = 0; k <= 3; ++k) two_plus_hc.d[k] = h * c.d[k];
    two_plus_hc.d[0] += 2.0;
    return Complex(h) * mul_profile(two_plus_hc, v.d_T()) +
           Complex(0.5 * h * h) * mul_profile(c_prime_profile(T, p), v);
}

Complex apply_Q(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p) {
    return apply_Q_jet(v.jet(at.T, at.theta, 2), at.T, p).at(0, 0);
}

Complex apply_Qtilde(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p,
                     double h) {
    return apply_Qtilde_jet(v.jet(at.T, at.theta, 2), at.T, p, h).at(0, 0);
}

Complex apply_A(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p, double h) {
    return apply_A_jet(v.jet(at.T, at.theta, 2), at.T, p, h).at(0, 0);
}

Complex apply_B(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p, double h) {
    return apply_B_jet(v.jet(at.T, at.theta, 1), at.T, p, h).at(0, 0);
}

Complex apply_commutator(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p,
                         double h) {
    const CylJet v4 = v.jet(at.T, at.theta, 4);
    v4.require(4, "apply_commutator");
    const Complex ab = apply_A_jet(apply_B_jet(v4, at.T, p, h), at.T, p, h).at(0, 0);
    const Complex ba = apply_B_jet(apply_A_jet(v4, at.T, p, h), at.T, p, h).at(0, 0);
    return ab - ba;
}

Complex conjugation_residual(const CylField& v, const ConvexCoord& at,
                             const ConvexifyParams& p, double h) {
    if (std::abs(at.T / h) > 500.0)
        throw std::domain_error("conjugation_residual: |T/h| > 500 rejected");
    const CylJet vj = v.jet(at.T, at.theta, 2);
    const Complex lhs = apply_Qtilde_jet(vj, at.T, p, h).at(0, 0);
    const CylJet grown = mul_profile(exp_profile(at.T, 1.0 / h), vj);
    const Complex rhs =
        h * h * std::exp(-at.T / h) * apply_Q_jet(grown, at.T, p).at(0, 0);
    return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Almost complex structures

AlmostComplexStructure acs_standard(int n) {
    AlmostComplexStructure s;
    s.n = n;
    const Mat j0 = standard_j0(n);
    s.J = [j0](const Vec&) { return j0; };
    s.dJ = [n](const Vec&, const Vec&) { return Mat(2 * n); };
    return s;
}

AlmostComplexStructure acs_conjugated(const Mat& m) {
    AlmostComplexStructure s;
    s.n = m.n / 2;
    const Mat j = m * standard_j0(s.n) * inverse(m);
    s.J = [j](const Vec&) { return j; };
    const int dim = m.n;
    s.dJ = [dim](const Vec&, const Vec&) { return Mat(dim); };
    return s;
}

AlmostComplexStructure acs_perturbed(double delta) {
    // M(w) = I + delta * [[w0, w1], [w1, -w0]]: the symmetric traceless
    // perturbation does not commute with J0, so J genuinely varies with w.
    // Invertible for small delta near the probed region; dM is exact.
    AlmostComplexStructure s;
    s.n = 1;
    const Mat j0 = standard_j0(1);
    auto mat_of = [delta](const Vec& w) {
        Mat m = Mat::identity(2);
        m(0, 0) += delta * w[0];
        m(0, 1) += delta * w[1];
        m(1, 0) += delta * w[1];
        m(1, 1) -= delta * w[0];
        return m;
    };
    auto dmat_of = [delta](const Vec& d) {
        Mat m(2);
        m(0, 0) = delta * d[0];
        m(0, 1) = delta * d[1];
        m(1, 0) = delta * d[1];
        m(1, 1) = -delta * d[0];
        return m;
    };
    s.J = [mat_of, j0](const Vec& w) {
        const Mat m = mat_of(w);
        return m * j0 * inverse(m);
    };
    s.dJ = [mat_of, dmat_of, j0](const Vec& w, const Vec& d) {
        // d(M J0 M^{-1}) = dM J0 M^{-1} - M J0 M^{-1} dM M^{-1}
        const Mat m = mat_of(w);
        const Mat minv = inverse(m);
        const Mat dm = dmat_of(d);
        return dm * j0 * minv - m * j0 * minv * dm * minv;
    };
    return s;
}

AlmostComplexStructure acs_affine(double strength) {
    // On R^4: N = [[0, K], [0, 0]] with K = [[1, 0], [0, -1]] anticommuting
    // with the 2x2 rotation block, so (J0 + w0 N)^2 = -I for every w.
    AlmostComplexStructure s;
    s.n = 2;
    Mat n4(4);
    n4(0, 2) = strength;
    n4(1, 3) = -strength;
    const Mat j0 = standard_j0(2);
    s.J = [j0, n4](const Vec& w) { return j0 + w[0] * n4; };
    s.dJ = [n4](const Vec&, const Vec& d) { return d[0] * n4; };
    return s;
}

AlmostComplexStructure with_fd_derivative(const AlmostComplexStructure& s, double step) {
    AlmostComplexStructure r = s;
    auto J = s.J;
    r.dJ = [J, step](const Vec& w, const Vec& d) {
        Vec wp = w, wm = w;
        for (size_t i = 0; i < w.size(); ++i) {
            wp[i] += step * d[i];
            wm[i] -= step * d[i];
        }
        return (1.0 / (2.0 * step)) * (J(wp) - J(wm));
    };
    return r;
}

std::vector<Complex> jhol_residual(const PlaneField& u, const AlmostComplexStructure& s,
                                   double x1, double x2) {
    const PlaneJet j = u.jet(x1, x2);
    std::vector<Complex> d1(j.n), d2(j.n), val(j.n);
    for (int i = 0; i < j.n; ++i) {
        val[i] = j.val(i);
        d1[i] = j.dx1(i);
        d2[i] = j.dx2(i);
    }
    const Vec r = s.J(to_real(val)) * to_real(d2);
    const auto jd2 = to_complex(r);
    std::vector<Complex> out(j.n);
    for (int i = 0; i < j.n; ++i) out[i] = d1[i] + jd2[i];
    return out;
}

Mat anticommute_residual(const AlmostComplexStructure& s, const Vec& at, int dir) {
    Vec e(at.size(), 0.0);
    e[static_cast<size_t>(dir)] = 1.0;
    const Mat dj = s.dJ(at, e);
    const Mat j = s.J(at);
    return dj * j + j * dj;
}

std::vector<Complex> laplacian_identity_residual(const PlaneField& u,
                                                 const AlmostComplexStructure& s, double x1,
                                                 double x2) {
    const PlaneJet j = u.jet(x1, x2);
    std::vector<Complex> val(j.n), d1(j.n), d2(j.n), lap(j.n);
    for (int i = 0; i < j.n; ++i) {
        val[i] = j.val(i);
        d1[i] = j.dx1(i);
        d2[i] = j.dx2(i);
        lap[i] = j.laplacian(i);
    }
    const Vec w = to_real(val);
    const Vec du1 = to_real(d1), du2 = to_real(d2);
    // Chain rule: dxi (J o u) = dJ(u)[dxi u]
    const Mat dJ1 = s.dJ(w, du1);
    const Mat dJ2 = s.dJ(w, du2);
    const Vec rhs_v = dJ2 * du1;
    const Vec rhs_w = dJ1 * du2;
    const auto t1 = to_complex(rhs_v);
    const auto t2 = to_complex(rhs_w);
    std::vector<Complex> out(j.n);
    for (int i = 0; i < j.n; ++i) out[i] = lap[i] - (t1[i] - t2[i]);
    return out;
}

// Defined with the quadrature kernels.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

Mat j_difference_residual(const PlaneField& u, const PlaneField& v,
                          const AlmostComplexStructure& s, double x1, double x2,
                          int quad_nodes) {
    if (quad_nodes < 1) throw std::invalid_argument("j_difference_residual: need >= 1 node");
    const PlaneJet ju = u.jet(x1, x2);
    const PlaneJet jv = v.jet(x1, x2);
    std::vector<Complex> uval(ju.n), vval(jv.n);
    for (int i = 0; i < ju.n; ++i) {
        uval[i] = ju.val(i);
        vval[i] = jv.val(i);
    }
    const Vec uw = to_real(uval), vw = to_real(vval);
    Vec diff(uw.size());
    for (size_t i = 0; i < uw.size(); ++i) diff[i] = uw[i] - vw[i];

    const Mat lhs = s.J(uw) - s.J(vw);

    std::vector<double> nodes, weights;
    gauss_legendre(quad_nodes, nodes, weights);
    Mat integral(lhs.n);
    for (int q = 0; q < quad_nodes; ++q) {
        const double tau = 0.5 * (nodes[q] + 1.0);  // map to [0,1]
        Vec w(uw.size());
        for (size_t i = 0; i < uw.size(); ++i) w[i] = vw[i] + tau * diff[i];
        integral = integral + (0.5 * weights[q]) * s.dJ(w, diff);
    }
    return lhs - integral;
}

DiffIneqResult diff_ineq_constant(const PlaneField& u, const PlaneField& v,
                                  const AlmostComplexStructure& /*s*/,
                                  const SampleRegion& region) {
    DiffIneqResult res{0.0, 0, 0};
    for (int ix = 0; ix < region.nx; ++ix) {
        for (int iy = 0; iy < region.ny; ++iy) {
            const double x1 = region.rect.x1_min +
                              (region.rect.x1_max - region.rect.x1_min) * (ix + 0.5) / region.nx;
            const double x2 = region.rect.x2_min +
                              (region.rect.x2_max - region.rect.x2_min) * (iy + 0.5) / region.ny;
            const PlaneJet ju = u.jet(x1, x2);
            const PlaneJet jv = v.jet(x1, x2);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < ju.n; ++i) {
                num += std::norm(ju.laplacian(i) - jv.laplacian(i));
                den += std::abs(ju.val(i) - jv.val(i)) + std::abs(ju.dx1(i) - jv.dx1(i)) +
                       std::abs(ju.dx2(i) - jv.dx2(i));
            }
            num = std::sqrt(num);
            if (den == 0.0) {
                ++res.skipped;
                continue;
            }
            ++res.used;
            res.constant = std::max(res.constant, num / den);
        }
    }
    if (res.used == 0)
        throw std::runtime_error("diff_ineq_constant: all samples had zero denominator");
    return res;
}

}  // namespace carlab
