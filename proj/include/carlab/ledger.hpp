#pragma once

// Term-by-term verification of the energy decomposition
//   integral |Qt V|^2 = ||A V||^2 + ||B V||^2 + <[A,B] V, V>,
// the integration-by-parts expansions of the three pieces, the split of the
// indefinite first-order theta term with its absorption margins, and the
// empirical constant sweep of the weighted estimate.

#include <string>
#include <vector>

#include "carlab/quadrature.hpp"

namespace carlab {

struct TermLedger {
    std::vector<std::pair<std::string, double>> entries;
    double target = 0.0;

    double sum() const {
        double s = 0.0;
        for (const auto& e : entries) s += e.second;
        return s;
    }
    double residual() const { return std::abs(sum() - target) / std::abs(target); }
    double value(const std::string& label) const;
};

struct DecompositionResult {
    double total;      // integral |Qt V|^2
    double a_norm;     // ||A V||^2
    double b_norm;     // ||B V||^2
    double commutator; // Re <[A,B] V, V> by two-pass jet composition
    double parts_sum() const { return a_norm + b_norm + commutator; }
    double residual() const { return std::abs(total - parts_sum()) / total; }
};

DecompositionResult decomposition_check(const CylField& v, const ConvexifyParams& p, double h,
                                        const CylinderGrid& grid);

// Eight terms, in display order; target = ||A V||^2 by direct quadrature.
//   a1_dTT_sq       |h^2 dTT V|^2
//   a2_zeroth_sq    |(1 + h c - h^2 c'/2) V|^2
//   a3_dthth_sq     |a h^2 dthth V|^2
//   a4_c2c3_pair    h^3 <V, (c'' - h c'''/2) V>
//   a5_dT_cross     -2 <h dT V, (1 + h c - h^2 c'/2) h dT V>
//   a6_dth_eps3     -2 eps^3 h^2 <h dth V, (1 + 2 eps E) E h dth V>
//   a7_mixed_cross  +2 <h^2 dTth V, a h^2 dTth V>
//   a8_dth_zeroth   -2 <h dth V, (1 + h c - h^2 c'/2) a h dth V>
TermLedger expand_A_norm(const CylField& v, const ConvexifyParams& p, double h,
                         const CylinderGrid& grid);

// Four terms; target = ||B V||^2.
//   b1_dT_sq     |(2 + h c) h dT V|^2
//   b2_c1_sq     -(1/4) h^4 |c' V|^2
//   b3_cc2_pair  -(1/2) h^4 <V, c c'' V>
//   b4_c2_pair   -h^3 <V, c'' V>
TermLedger expand_B_norm(const CylField& v, const ConvexifyParams& p, double h,
                         const CylinderGrid& grid);

// Five terms; target = Re <[A,B] V, V> with the commutator composed at jet level.
//   k1_dT_c1     -2 h^2 <c' h dT V, h dT V>
//   k2_V_c1      -2 h^2 <c' V, V>
//   k3_V_c2_cc1  h^3 <(c'' - c c') V, V>
//   k4_V_cc2_c3  (1/2) h^4 <(c c'' + c''') V, V>
//   k5_dth_pos   2 h eps^2 <(2 + h c)(1 + eps E) E h dth V, h dth V>
TermLedger expand_commutator(const CylField& v, const ConvexifyParams& p, double h,
                             const CylinderGrid& grid);

struct AbsorptionParams {
    double lambda = 2.5;
};

// Split of the a8 term with the free parameter lambda:
//   part1 = -2 <h dth V, (1 + lambda h c) a h dth V>
//   part2 = -2 <h dth V, ((1 - lambda) h c - h^2 c'/2) a h dth V>
// part1 + part2 equals a8 for every lambda.
std::pair<double, double> trouble_split(const CylField& v, const ConvexifyParams& p, double h,
                                        const CylinderGrid& grid, const AbsorptionParams& ap);

// The three absorption margins (absorber minus absorbed magnitude):
//   zeroth:      a2_zeroth_sq   vs  <(1 + lambda h c) V, V>            (needs lambda > 2)
//   theta_2nd:   a3_dthth_sq    vs  <(1 + lambda h c) a h^2 dthth V, a h^2 dthth V>
//                                                                      (needs lambda > 0)
//   theta_1st:   k5_dth_pos     vs  |part2 of the split|               (needs lambda < 3)
// Precondition 1 + lambda h c > 0 on the grid is checked.
struct AbsorptionReport {
    double margin_zeroth, absorber_zeroth, absorbed_zeroth;
    double margin_theta2, absorber_theta2, absorbed_theta2;
    double margin_theta1, absorber_theta1, absorbed_theta1;
    bool all_nonnegative(double tol = 0.0) const {
        return margin_zeroth >= -tol && margin_theta2 >= -tol && margin_theta1 >= -tol;
    }
};

AbsorptionReport absorption_check(const CylField& v, const ConvexifyParams& p, double h,
                                  const CylinderGrid& grid, const AbsorptionParams& ap);

struct CarlemanReport {
    std::string field_id;
    double h, epsilon, T0;
    double lhs, rhs, ratio;
};

struct SweepConfig {
    std::vector<std::pair<std::string, CylFieldPtr>> fields;
    std::vector<double> h_list;
    std::vector<double> eps_list;
    double T0 = -5.0;
    CylinderGrid grid = CylinderGrid::standard(-9.6, -5.05);
};

std::vector<CarlemanReport> carleman_ratio_sweep(const SweepConfig& cfg);

// Per-h maximum of lhs/rhs over fields and epsilons, in h_list order.
std::vector<std::pair<double, double>> per_h_max_ratio(const std::vector<CarlemanReport>& reports,
                                                       const std::vector<double>& h_list);

}  // namespace carlab
