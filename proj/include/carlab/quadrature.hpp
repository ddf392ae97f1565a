#pragma once

// Weighted inner products and norms on the cylinder, restricted to compact
// supports: composite Gauss-Legendre panels in T, uniform (trapezoidal) rule
// in theta (exact on trigonometric polynomials below the node count).
//
// Two execution paths share one panel-partial reduction layout:
//   - integrate():     OpenMP over panels, partial sums combined in panel
//                      order (bitwise deterministic for any thread count);
//   - integrate_ref(): plain serial loop with the same arithmetic, kept as
//                      the reference the parallel kernel is tested against.
//
// Integrals whose weight e^{-2T/h} overflows any fixed-precision format are
// computed in log-space (integrate_log), mirroring the V-substitution that
// the estimate itself is proved through.

#include <functional>
#include <vector>

#include "carlab/fields.hpp"
#include "carlab/operators.hpp"

namespace carlab {

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct CylinderGrid {
    double t_min, t_max;
    int panels;        // composite Gauss-Legendre panels in T, 8 nodes each
    int n_theta;       // uniform theta nodes

    CylinderGrid(double t_min_, double t_max_, int panels_, int n_theta_)
        : t_min(t_min_), t_max(t_max_), panels(panels_), n_theta(n_theta_) {
        if (!(t_min < t_max) || panels < 1 || n_theta < 2)
            throw std::invalid_argument("CylinderGrid: bad parameters");
    }

    // Default panel density: >= 32 T-nodes per unit support length.
    static CylinderGrid standard(double t_min, double t_max, int n_theta = 32);

    CylinderGrid refined(int factor = 2) const {
        return CylinderGrid(t_min, t_max, panels * factor, n_theta);
    }

    int nodes_per_panel() const { return 8; }
    int total_t_nodes() const { return panels * nodes_per_panel(); }

    // T nodes/weights of one panel.
    void panel_nodes(int panel, std::vector<double>& t, std::vector<double>& w) const;
};

// Throws when |f| at the grid's T endpoints exceeds 1e-12 (integrand support
// must lie inside [t_min, t_max]).
void check_support(const CylField& f, const CylinderGrid& grid);

using NodeFn = std::function<double(double T, double theta)>;
using NodeFnC = std::function<Complex(double T, double theta)>;
using NodeFnMulti = std::function<void(double T, double theta, double* out)>;

double integrate(const CylinderGrid& grid, const NodeFn& f);
double integrate_ref(const CylinderGrid& grid, const NodeFn& f);
Complex integrate_c(const CylinderGrid& grid, const NodeFnC& f);

// n_out integrands evaluated in one pass (shared jet evaluation).
std::vector<double> integrate_multi(const CylinderGrid& grid, int n_out, const NodeFnMulti& f);

// log of the integral of exp(log_f); log_f may return -inf where the
// integrand vanishes. Deterministic panel-ordered log-sum-exp.
double integrate_log(const CylinderGrid& grid, const NodeFn& log_f);

struct WeightSpec {
    enum class Kind { none, exp_epsT, exp_m2Toverh, exp_m2Toverh_plus_epsT };
    Kind kind = Kind::none;
    double eps = 0.0;
    double h = 0.0;

    static WeightSpec none() { return WeightSpec{}; }
    static WeightSpec exp_epsT(double eps) {
        return WeightSpec{Kind::exp_epsT, eps, 0.0};
    }
    static WeightSpec exp_m2Toverh(double h) {
        return WeightSpec{Kind::exp_m2Toverh, 0.0, h};
    }
    static WeightSpec exp_m2Toverh_plus_epsT(double eps, double h) {
        return WeightSpec{Kind::exp_m2Toverh_plus_epsT, eps, h};
    }

    double log_at(double T) const;
    // Direct value; throws when the exponent magnitude exceeds 700.
    double at(double T) const;
};

// Quadrature of f * conj(g) * w over the cylinder.
Complex weighted_inner(const CylField& f, const CylField& g, const WeightSpec& w,
                       const CylinderGrid& grid);

// Left side of the V-form estimate:
//   h * integral (|V|^2 + |h dT V|^2 + |h dth V|^2 + |h^2 dTT V|^2
//                 + |h^2 dTth V|^2 + |h^2 dthth V|^2) e^{eps T}.
double carleman_lhs_V(const CylField& v, const ConvexifyParams& p, double h,
                      const CylinderGrid& grid);

// Right side without its constant: integral |Qt V|^2.
double carleman_rhs_V(const CylField& v, const ConvexifyParams& p, double h,
                      const CylinderGrid& grid);

// U-form sides for U = e^{T/h} V, supplied in factored form (the direct
// weight e^{-2T/h} overflows; the substitution is exact:
// |h^2 Q U|^2 e^{-2T/h} = |Qt V|^2 and |dU-terms|^2 e^{-2T/h + eps T}
// reduce to the V-form term by term after conjugation).
struct FactoredU {
    CylFieldPtr v;
    double h;
};

std::pair<double, double> carleman_sides_U(const FactoredU& u, const ConvexifyParams& p,
                                           const CylinderGrid& grid);

}  // namespace carlab
