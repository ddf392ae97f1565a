#include "carlab/ledger.hpp"

#include <cmath>

namespace carlab {

double TermLedger::value(const std::string& label) const {
    for (const auto& e : entries)
        if (e.first == label) return e.second;
    throw std::invalid_argument("TermLedger: no entry " + label);
}

DecompositionResult decomposition_check(const CylField& v, const ConvexifyParams& p, double h,
                                        const CylinderGrid& grid) {
    check_support(v, grid);
    DecompositionResult r{};
    const auto vals = integrate_multi(grid, 3, [&](double T, double th, double* out) {
        const CylJet j = v.jet(T, th, 2);
        out[0] = std::norm(apply_Qtilde_jet(j, T, p, h).at(0, 0));
        out[1] = std::norm(apply_A_jet(j, T, p, h).at(0, 0));
        out[2] = std::norm(apply_B_jet(j, T, p, h).at(0, 0));
    });
    r.total = vals[0];
    r.a_norm = vals[1];
    r.b_norm = vals[2];
    if (r.total == 0.0)
        throw std::invalid_argument("decomposition_check: V vanishes on the grid");
    r.commutator = integrate(grid, [&](double T, double th) {
        const CylJet j = v.jet(T, th, 4);
        const Complex ab = apply_A_jet(apply_B_jet(j, T, p, h), T, p, h).at(0, 0);
        const Complex ba = apply_B_jet(apply_A_jet(j, T, p, h), T, p, h).at(0, 0);
        return ((ab - ba) * std::conj(j.at(0, 0))).real();
    });
    return r;
}

TermLedger expand_A_norm(const CylField& v, const ConvexifyParams& p, double h,
                         const CylinderGrid& grid) {
    check_support(v, grid);
    const double eps = p.epsilon;
    const double h2 = h * h, h3 = h2 * h, h4 = h2 * h2;
    const auto vals = integrate_multi(grid, 9, [&](double T, double th, double* out) {
        const CylJet j = v.jet(T, th, 2);
        const CoefficientSet cs = coefficients(T, p);
        const double E = std::exp(eps * T);
        const double f = 1.0 + h * cs.c - 0.5 * h2 * cs.c_prime;
        const double v2 = std::norm(j.at(0, 0));
        const double vT2 = std::norm(j.at(1, 0));
        const double vth2 = std::norm(j.at(0, 1));
        const double vTT2 = std::norm(j.at(2, 0));
        const double vTth2 = std::norm(j.at(1, 1));
        const double vthth2 = std::norm(j.at(0, 2));
        out[0] = h4 * vTT2;                                       // a1
        out[1] = f * f * v2;                                      // a2
        out[2] = cs.a * cs.a * h4 * vthth2;                       // a3
        out[3] = h3 * (cs.c_double_prime - 0.5 * h * cs.c_triple_prime) * v2;  // a4
        out[4] = -2.0 * f * h2 * vT2;                             // a5
        out[5] = -2.0 * std::pow(eps, 3) * h2 * (1.0 + 2.0 * eps * E) * E * h2 * vth2;  // a6
        out[6] = 2.0 * cs.a * h4 * vTth2;                         // a7
        out[7] = -2.0 * f * cs.a * h2 * vth2;                     // a8
        out[8] = std::norm(apply_A_jet(j, T, p, h).at(0, 0));     // target
    });
    TermLedger l;
    l.entries = {{"a1_dTT_sq", vals[0]},   {"a2_zeroth_sq", vals[1]},
                 {"a3_dthth_sq", vals[2]}, {"a4_c2c3_pair", vals[3]},
                 {"a5_dT_cross", vals[4]}, {"a6_dth_eps3", vals[5]},
                 {"a7_mixed_cross", vals[6]}, {"a8_dth_zeroth", vals[7]}};
    l.target = vals[8];
    return l;
}

TermLedger expand_B_norm(const CylField& v, const ConvexifyParams& p, double h,
                         const CylinderGrid& grid) {
    check_support(v, grid);
    const double h2 = h * h, h3 = h2 * h, h4 = h2 * h2;
    const auto vals = integrate_multi(grid, 5, [&](double T, double th, double* out) {
        const CylJet j = v.jet(T, th, 1);
        const CoefficientSet cs = coefficients(T, p);
        const double v2 = std::norm(j.at(0, 0));
        const double vT2 = std::norm(j.at(1, 0));
        const double two_hc = 2.0 + h * cs.c;
        out[0] = two_hc * two_hc * h2 * vT2;
        out[1] = -0.25 * h4 * cs.c_prime * cs.c_prime * v2;
        out[2] = -0.5 * h4 * cs.c * cs.c_double_prime * v2;
        out[3] = -h3 * cs.c_double_prime * v2;
        out[4] = std::norm(apply_B_jet(j, T, p, h).at(0, 0));
    });
    TermLedger l;
    l.entries = {{"b1_dT_sq", vals[0]},
                 {"b2_c1_sq", vals[1]},
                 {"b3_cc2_pair", vals[2]},
                 {"b4_c2_pair", vals[3]}};
    l.target = vals[4];
    return l;
}

TermLedger expand_commutator(const CylField& v, const ConvexifyParams& p, double h,
                             const CylinderGrid& grid) {
    check_support(v, grid);
    const double eps = p.epsilon;
    const double h2 = h * h, h3 = h2 * h, h4 = h2 * h2;
    const auto vals = integrate_multi(grid, 6, [&](double T, double th, double* out) {
        const CylJet j = v.jet(T, th, 4);
        const CoefficientSet cs = coefficients(T, p);
        const double E = std::exp(eps * T);
        const double v2 = std::norm(j.at(0, 0));
        const double vT2 = std::norm(j.at(1, 0));
        const double vth2 = std::norm(j.at(0, 1));
        out[0] = -2.0 * h2 * cs.c_prime * h2 * vT2;
        out[1] = -2.0 * h2 * cs.c_prime * v2;
        out[2] = h3 * (cs.c_double_prime - cs.c * cs.c_prime) * v2;
        out[3] = 0.5 * h4 * (cs.c * cs.c_double_prime + cs.c_triple_prime) * v2;
        out[4] = 2.0 * h * eps * eps * (2.0 + h * cs.c) * (1.0 + eps * E) * E * h2 * vth2;
        const Complex ab = apply_A_jet(apply_B_jet(j, T, p, h), T, p, h).at(0, 0);
        const Complex ba = apply_B_jet(apply_A_jet(j, T, p, h), T, p, h).at(0, 0);
        out[5] = ((ab - ba) * std::conj(j.at(0, 0))).real();
    });
    TermLedger l;
    l.entries = {{"k1_dT_c1", vals[0]},
                 {"k2_V_c1", vals[1]},
                 {"k3_V_c2_cc1", vals[2]},
                 {"k4_V_cc2_c3", vals[3]},
                 {"k5_dth_pos", vals[4]}};
    l.target = vals[5];
    return l;
}

std::pair<double, double> trouble_split(const CylField& v, const ConvexifyParams& p, double h,
                                        const CylinderGrid& grid, const AbsorptionParams& ap) {
    check_support(v, grid);
    const double lam = ap.lambda;
    const double h2 = h * h;
    const auto vals = integrate_multi(grid, 2, [&](double T, double th, double* out) {
        const CylJet j = v.jet(T, th, 1);
        const CoefficientSet cs = coefficients(T, p);
        const double vth2 = h2 * std::norm(j.at(0, 1));
        out[0] = -2.0 * (1.0 + lam * h * cs.c) * cs.a * vth2;
        out[1] = -2.0 * ((1.0 - lam) * h * cs.c - 0.5 * h2 * cs.c_prime) * cs.a * vth2;
    });
    return {vals[0], vals[1]};
}

AbsorptionReport absorption_check(const CylField& v, const ConvexifyParams& p, double h,
                                  const CylinderGrid& grid, const AbsorptionParams& ap) {
    check_support(v, grid);
    const double lam = ap.lambda;
    // Positivity of 1 + lambda h c over the grid's T range.
    {
        std::vector<double> t, w;
        for (int pn = 0; pn < grid.panels; ++pn) {
            grid.panel_nodes(pn, t, w);
            for (double T : t)
                if (1.0 + lam * h * coefficients(T, p).c <= 0.0)
                    throw std::domain_error("absorption_check: 1 + lambda h c <= 0 (h too large)");
        }
    }
    const double eps = p.epsilon;
    const double h2 = h * h, h4 = h2 * h2;
    const auto vals = integrate_multi(grid, 6, [&](double T, double th, double* out) {
        const CylJet j = v.jet(T, th, 2);
        const CoefficientSet cs = coefficients(T, p);
        const double E = std::exp(eps * T);
        const double f = 1.0 + h * cs.c - 0.5 * h2 * cs.c_prime;
        const double wgt = 1.0 + lam * h * cs.c;
        const double v2 = std::norm(j.at(0, 0));
        const double vth2 = std::norm(j.at(0, 1));
        const double vthth2 = std::norm(j.at(0, 2));
        out[0] = f * f * v2;                       // absorber: a2
        out[1] = wgt * v2;                         // absorbed magnitude (zeroth)
        out[2] = cs.a * cs.a * h4 * vthth2;        // absorber: a3
        out[3] = wgt * cs.a * cs.a * h4 * vthth2;  // absorbed magnitude (theta 2nd)
        out[4] = 2.0 * h * eps * eps * (2.0 + h * cs.c) * (1.0 + eps * E) * E * h2 * vth2;  // k5
        out[5] = -2.0 * ((1.0 - lam) * h * cs.c - 0.5 * h2 * cs.c_prime) * cs.a * h2 * vth2;
    });
    AbsorptionReport r{};
    r.absorber_zeroth = vals[0];
    r.absorbed_zeroth = std::abs(vals[1]);
    r.margin_zeroth = r.absorber_zeroth - r.absorbed_zeroth;
    r.absorber_theta2 = vals[2];
    r.absorbed_theta2 = std::abs(vals[3]);
    r.margin_theta2 = r.absorber_theta2 - r.absorbed_theta2;
    r.absorber_theta1 = vals[4];
    r.absorbed_theta1 = std::abs(vals[5]);
    r.margin_theta1 = r.absorber_theta1 - r.absorbed_theta1;
    return r;
}

std::vector<CarlemanReport> carleman_ratio_sweep(const SweepConfig& cfg) {
    if (cfg.fields.empty() || cfg.h_list.empty() || cfg.eps_list.empty())
        throw std::invalid_argument("carleman_ratio_sweep: empty configuration");
    std::vector<CarlemanReport> reports;
    reports.reserve(cfg.fields.size() * cfg.h_list.size() * cfg.eps_list.size());
    for (const auto& [id, field] : cfg.fields) {
        for (double eps : cfg.eps_list) {
            const ConvexifyParams p(eps);
            for (double h : cfg.h_list) {
                CarlemanReport r;
                r.field_id = id;
                r.h = h;
                r.epsilon = eps;
                r.T0 = cfg.T0;
                r.lhs = carleman_lhs_V(*field, p, h, cfg.grid);
                r.rhs = carleman_rhs_V(*field, p, h, cfg.grid);
                r.ratio = r.lhs / r.rhs;
                reports.push_back(std::move(r));
            }
        }
    }
    return reports;
}

std::vector<std::pair<double, double>> per_h_max_ratio(const std::vector<CarlemanReport>& reports,
                                                       const std::vector<double>& h_list) {
    std::vector<std::pair<double, double>> out;
    out.reserve(h_list.size());
    for (double h : h_list) {
        double mx = 0.0;
        for (const auto& r : reports)
            if (r.h == h) mx = std::max(mx, r.ratio);
        out.emplace_back(h, mx);
    }
    return out;
}

}  // namespace carlab
