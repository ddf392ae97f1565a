#pragma once

// Differential operators on the convexified cylinder and the identities of the
// J-holomorphic reduction.
//
//   Q  = dT^2 + c(T) dT + a(T) dth^2,        a(T) = (1 + eps e^{eps T})^2,
//   c(T) = -eps^2 e^{eps T} / (1 + eps e^{eps T}),
//   Qt = h^2 e^{-T/h} o Q o e^{T/h}
//      = (h dT + 1)^2 + h c (h dT + 1) + a h^2 dth^2 = A + B,
//   A  = h^2 dT^2 + (1 + h c - h^2 c'/2) + a h^2 dth^2   (formally symmetric),
//   B  = (2 + h c) h dT + h^2 c'/2                       (formally antisymmetric).

#include <functional>

#include "carlab/coords.hpp"
#include "carlab/fields.hpp"
#include "carlab/jets.hpp"
#include "carlab/linalg.hpp"

namespace carlab {

struct SemiclassicalParams {
    double h;
    double h0 = 0.2;

    explicit SemiclassicalParams(double h_, double h0_ = 0.2) : h(h_), h0(h0_) {
        if (!(h > 0.0 && h < h0))
            throw std::invalid_argument("SemiclassicalParams: need 0 < h < h0");
    }
};

struct CoefficientSet {
    double c;
    double c_prime;
    double c_double_prime;
    double c_triple_prime;
    double a;
};

// Closed forms at (T, eps). c and c' are textbook; c'' and c''' are obtained
// by differentiating c' by hand and are validated against finite differences
// in the test suite before the ledgers rely on them:
//   c''  = -eps^4 E (1 - eps E) / g^3,
//   c''' = -eps^5 E (1 - 4 eps E + eps^2 E^2) / g^4,  E = e^{eps T}, g = 1 + eps E.
CoefficientSet coefficients(double T, const ConvexifyParams& p);

// Coefficient profiles with T-derivatives for jet-level operator application.
TProfile coeff_c_profile(double T, const ConvexifyParams& p);  // order 3
TProfile coeff_a_profile(double T, const ConvexifyParams& p);  // order 3

// Jet-level applications. Orders: Q, Qt, A consume 2; B consumes 1.
CylJet apply_Q_jet(const CylJet& v, double T, const ConvexifyParams& p);
CylJet apply_Qtilde_jet(const CylJet& v, double T, const ConvexifyParams& p, double h);
CylJet apply_A_jet(const CylJet& v, double T, const ConvexifyParams& p, double h);
CylJet apply_B_jet(const CylJet& v, double T, const ConvexifyParams& p, double h);

// Pointwise values.
Complex apply_Q(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p);
Complex apply_Qtilde(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p,
                     double h);
Complex apply_A(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p, double h);
Complex apply_B(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p, double h);

// (AB - BA) V at the point, by two-pass jet composition (needs a 4-jet).
Complex apply_commutator(const CylField& v, const ConvexCoord& at, const ConvexifyParams& p,
                         double h);

// Qt V - h^2 e^{-T/h} Q(e^{T/h} V); identically zero up to rounding.
// Rejects |T/h| > 500 (the identity is checked at moderate exponents only).
Complex conjugation_residual(const CylField& v, const ConvexCoord& at,
                             const ConvexifyParams& p, double h);

// ---------------------------------------------------------------------------
// Almost complex structures on R^{2n}

struct AlmostComplexStructure {
    int n = 1;  // complex dimension; matrices are 2n x 2n
    std::function<Mat(const Vec&)> J;
    // Directional derivative: dJ(w)[delta].
    std::function<Mat(const Vec&, const Vec&)> dJ;
};

AlmostComplexStructure acs_standard(int n = 1);
AlmostComplexStructure acs_conjugated(const Mat& m);
// J(w) = M(w) J0 M(w)^{-1} with M(w) = I + delta * S(w), S smooth with exact dS.
AlmostComplexStructure acs_perturbed(double delta);
// Affine structure on R^4: J(w) = J0 + w0 * N with N J0 + J0 N = 0, N^2 = 0.
AlmostComplexStructure acs_affine(double strength);
// Replace dJ by centered differences of J with the given step.
AlmostComplexStructure with_fd_derivative(const AlmostComplexStructure& s, double step);

// dx1 u + J(u) dx2 u at the point, viewed in C^n.
std::vector<Complex> jhol_residual(const PlaneField& u, const AlmostComplexStructure& s,
                                   double x1, double x2);

// (dJ)J + J(dJ) in coordinate direction `dir`; zero for any valid J.
Mat anticommute_residual(const AlmostComplexStructure& s, const Vec& at, int dir);

// Lap u - [(dx2 J(u)) dx1 u - (dx1 J(u)) dx2 u], with dxi J(u) the chain-rule
// derivative of the composite J o u.
std::vector<Complex> laplacian_identity_residual(const PlaneField& u,
                                                 const AlmostComplexStructure& s, double x1,
                                                 double x2);

// J(u) - J(v) - integral_0^1 dJ(v + tau (u - v))[u - v] dtau  (Gauss-Legendre).
Mat j_difference_residual(const PlaneField& u, const PlaneField& v,
                          const AlmostComplexStructure& s, double x1, double x2,
                          int quad_nodes);

struct SampleRegion {
    Rect rect;
    int nx = 16, ny = 16;
};

struct DiffIneqResult {
    double constant;
    int used = 0;
    int skipped = 0;
};

// Empirical sup of |Lap w| / (|w| + |dx1 w| + |dx2 w|), w = u - v.
// Zero-denominator samples are skipped and counted; throws when all skip.
DiffIneqResult diff_ineq_constant(const PlaneField& u, const PlaneField& v,
                                  const AlmostComplexStructure& s, const SampleRegion& region);

}  // namespace carlab
