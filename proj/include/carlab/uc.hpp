#pragma once

// Endgame experiments: vanishing-order estimation at the origin, the psi/chi_R
// cutoff composition, the split of the cut-off right-hand side, and the h->0
// growth sweep that exhibits the contradiction forcing infinite-order-vanishing
// solutions to vanish.
//
// The weights e^{-2T/h} overflow double precision over the probed windows, so
// every weighted integral here is carried in log space; the reported rows
// store log(lhs), log(bound) and their difference. Monotonicity statements
// about ratios are equivalent in logs.

#include <optional>

#include "carlab/ledger.hpp"

namespace carlab {

struct VanishingOrderReport {
    double estimated_order = 0.0;
    double fit_residual = 0.0;          // rms residual of the log-log fit
    std::vector<double> radii_used;
    bool saturated = false;             // order beyond cap, or probe underflow
    double cap = 50.0;
    bool all_below_floor = false;       // |u| under the probe floor at every radius
};

struct VanishingOrderOptions {
    int angles = 128;
    double cap = 50.0;
    double floor = 1e-280;
};

// Geometric radii, ratio 0.7, n radii with the stated innermost one, descending.
std::vector<double> default_radii(int n = 8, double innermost = 1e-3, double ratio = 0.7);

// Least-squares slope of log(max_{|x|=r} |u|) against log r.
VanishingOrderReport vanishing_order(const PlaneField& u, const std::vector<double>& radii,
                                     const VanishingOrderOptions& opts = {});

struct ScaledCutoff {
    CutoffSpec base;  // step-up recipe, e.g. 0 on (-inf,-2], 1 on [-1,inf)
    double R;
};

// chi_R(T) * psi(T) * U with exact product-rule jets; support in [base.left*R, psi.right].
CylFieldPtr cutoff_compose(CylFieldPtr u, const CutoffSpec& psi, const ScaledCutoff& chi);

// Split of the cut-off right-hand side into the interior error piece and the
// transition-band piece, both in log space, with their measured absorption
// ratios:
//   error:    h^4 II e^{2T} (|U^psi|^2 + |dT U^psi|^2 + |dth U^psi|^2) e^{-2T/h}
//   boundary: h^4 II_{[T0-1,T0]} (|U|^2 + |dT U|^2) e^{-2T/h}
//   err_ratio = error / (h^2 II (|U^psi|^2 + |h dT U^psi|^2 + |h dth U^psi|^2)
//                              e^{-2T/h + eps T})            (pointwise <= 1)
//   bnd_ratio = boundary / (h^5 e^{-2(T0-1)/h})
struct CutoffSplit {
    double log_error_term;
    double log_boundary_term;
    double err_ratio;
    double bnd_ratio;
    double band_sup;  // sup over the band of |U|^2 + |dT U|^2
};

CutoffSplit rhs_cutoff_split(CylFieldPtr u_pullback, const CutoffSpec& psi,
                             const ConvexifyParams& p, double h, const CylinderGrid& grid,
                             double T0);

struct FinalBoundRow {
    double h;
    double log_lhs;    // log of h II (six terms of U^psi,chi) e^{-2T/h + eps T}
    double log_bound;  // log of h^5 e^{-2(T0-1)/h}, constant-free
    double log_ratio;  // log_lhs - log_bound
};

struct ContradictionSweep {
    std::vector<FinalBoundRow> rows;
    bool identically_zero = false;  // U vanished on the probed window
    bool monotone = false;          // log_ratio strictly increasing as h decreases
};

struct ContradictionConfig {
    double eps = 0.5;
    double T0 = -5.0;
    double R = 8.0;  // chi_R window: support starts at -2R
    std::vector<double> h_list = {0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
    int n_theta = 32;
    int panels_per_unit = 4;
};

ContradictionSweep final_contradiction_sweep(PlaneFieldPtr u, const ContradictionConfig& cfg);

// log of II |U|^2 e^{-N T} over the grid window.
double decay_integral_log(const CylField& u, double N, const CylinderGrid& grid);

struct UcDemoConfig {
    SampleRegion jhol_region{Rect{-0.4, 0.4, -0.4, 0.4}, 12, 12};
    std::vector<double> radii = default_radii();
    ContradictionConfig sweep;
};

struct UcDemoReport {
    double jhol_sup_u = 0.0;
    double jhol_sup_v = 0.0;
    std::optional<double> diff_ineq_const;  // empty when w == 0 at every sample
    VanishingOrderReport order;
    std::optional<ContradictionSweep> sweep;  // run only at finite order
    std::string verdict;
};

// End-to-end pipeline for a pair of candidate solutions: residuals of the
// curve equation, the differential-inequality constant for w = u - v, the
// vanishing order of w, and (at finite order) the growth sweep.
UcDemoReport uc_demo(PlaneFieldPtr u, PlaneFieldPtr v, const AlmostComplexStructure& s,
                     const UcDemoConfig& cfg);

}  // namespace carlab
