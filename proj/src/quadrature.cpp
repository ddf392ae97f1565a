#include "carlab/quadrature.hpp"

#include <cmath>
#include <limits>

namespace carlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    const double pi = 3.141592653589793238462643383279503;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pnm1 = (n == 1) ? 1.0 : p0;
            pp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

CylinderGrid CylinderGrid::standard(double t_min, double t_max, int n_theta) {
    // 24 panels (192 Gauss nodes) per unit length: the exp-glue envelopes are
    // smooth but only Gevrey-regular, and the ledger residual tolerances need
    // an order of magnitude of headroom at this density.
    const double len = t_max - t_min;
    const int panels = std::max(2, static_cast<int>(std::ceil(len * 24.0)));
    return CylinderGrid(t_min, t_max, panels, n_theta);
}

void CylinderGrid::panel_nodes(int panel, std::vector<double>& t, std::vector<double>& w) const {
    static const auto rule = [] {
        std::pair<std::vector<double>, std::vector<double>> r;
        gauss_legendre(8, r.first, r.second);
        return r;
    }();
    const std::vector<double>& xi = rule.first;
    const std::vector<double>& wi = rule.second;
    const double width = (t_max - t_min) / panels;
    const double lo = t_min + panel * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    t.resize(xi.size());
    w.resize(xi.size());
    for (size_t j = 0; j < xi.size(); ++j) {
        t[j] = mid + half * xi[j];
        w[j] = half * wi[j];
    }
}

void check_support(const CylField& f, const CylinderGrid& grid) {
    for (double theta : {0.0, 1.1, 2.9, 4.4}) {
        if (std::abs(f.jet(grid.t_min, theta, 0).at(0, 0)) > 1e-12 ||
            std::abs(f.jet(grid.t_max, theta, 0).at(0, 0)) > 1e-12)
            throw std::invalid_argument("quadrature: integrand support violates grid endpoints");
    }
}

double integrate(const CylinderGrid& grid, const NodeFn& f) {
    std::vector<double> partial(static_cast<size_t>(grid.panels), 0.0);
    const double w_th = kTwoPi / grid.n_theta;
#pragma omp parallel for schedule(static)
    for (int p = 0; p < grid.panels; ++p) {
        std::vector<double> t, w;
        grid.panel_nodes(p, t, w);
        double acc = 0.0;
        for (size_t j = 0; j < t.size(); ++j) {
            double row = 0.0;
            for (int i = 0; i < grid.n_theta; ++i) row += f(t[j], i * w_th);
            acc += w[j] * (row * w_th);
        }
        partial[static_cast<size_t>(p)] = acc;
    }
    double total = 0.0;
    for (double x : partial) total += x;  // fixed panel order
    return total;
}

double integrate_ref(const CylinderGrid& grid, const NodeFn& f) {
    const double w_th = kTwoPi / grid.n_theta;
    double total = 0.0;
    for (int p = 0; p < grid.panels; ++p) {
        std::vector<double> t, w;
        grid.panel_nodes(p, t, w);
        for (size_t j = 0; j < t.size(); ++j) {
            double row = 0.0;
            for (int i = 0; i < grid.n_theta; ++i) row += f(t[j], i * w_th);
            total += w[j] * (row * w_th);
        }
    }
    return total;
}

Complex integrate_c(const CylinderGrid& grid, const NodeFnC& f) {
    std::vector<Complex> partial(static_cast<size_t>(grid.panels), Complex(0.0));
    const double w_th = kTwoPi / grid.n_theta;
#pragma omp parallel for schedule(static)
    for (int p = 0; p < grid.panels; ++p) {
        std::vector<double> t, w;
        grid.panel_nodes(p, t, w);
        Complex acc = 0.0;
        for (size_t j = 0; j < t.size(); ++j) {
            Complex row = 0.0;
            for (int i = 0; i < grid.n_theta; ++i) row += f(t[j], i * w_th);
            acc += w[j] * (row * w_th);
        }
        partial[static_cast<size_t>(p)] = acc;
    }
    Complex total = 0.0;
    for (const Complex& x : partial) total += x;
    return total;
}

std::vector<double> integrate_multi(const CylinderGrid& grid, int n_out, const NodeFnMulti& f) {
    std::vector<std::vector<double>> partial(static_cast<size_t>(grid.panels),
                                             std::vector<double>(static_cast<size_t>(n_out), 0.0));
    const double w_th = kTwoPi / grid.n_theta;
#pragma omp parallel for schedule(static)
    for (int p = 0; p < grid.panels; ++p) {
        std::vector<double> t, w;
        grid.panel_nodes(p, t, w);
        std::vector<double> acc(static_cast<size_t>(n_out), 0.0);
        std::vector<double> row(static_cast<size_t>(n_out), 0.0);
        std::vector<double> val(static_cast<size_t>(n_out), 0.0);
        for (size_t j = 0; j < t.size(); ++j) {
            std::fill(row.begin(), row.end(), 0.0);
            for (int i = 0; i < grid.n_theta; ++i) {
                f(t[j], i * w_th, val.data());
                for (int k = 0; k < n_out; ++k) row[static_cast<size_t>(k)] += val[static_cast<size_t>(k)];
            }
            for (int k = 0; k < n_out; ++k)
                acc[static_cast<size_t>(k)] += w[j] * (row[static_cast<size_t>(k)] * w_th);
        }
        partial[static_cast<size_t>(p)] = acc;
    }
    std::vector<double> total(static_cast<size_t>(n_out), 0.0);
    for (const auto& acc : partial)
        for (int k = 0; k < n_out; ++k) total[static_cast<size_t>(k)] += acc[static_cast<size_t>(k)];
    return total;
}

double integrate_log(const CylinderGrid& grid, const NodeFn& log_f) {
    std::vector<double> partial(static_cast<size_t>(grid.panels), kNegInf);
    const double w_th = kTwoPi / grid.n_theta;
    const double log_w_th = std::log(w_th);
#pragma omp parallel for schedule(static)
    for (int p = 0; p < grid.panels; ++p) {
        std::vector<double> t, w;
        grid.panel_nodes(p, t, w);
        // Collect node log-contributions, then one panel log-sum-exp.
        std::vector<double> logs;
        logs.reserve(t.size() * static_cast<size_t>(grid.n_theta));
        double mx = kNegInf;
        for (size_t j = 0; j < t.size(); ++j) {
            const double log_wj = std::log(w[j]) + log_w_th;
            for (int i = 0; i < grid.n_theta; ++i) {
                const double l = log_f(t[j], i * w_th) + log_wj;
                logs.push_back(l);
                if (l > mx) mx = l;
            }
        }
        if (mx == kNegInf) {
            partial[static_cast<size_t>(p)] = kNegInf;
            continue;
        }
        double s = 0.0;
        for (double l : logs) s += std::exp(l - mx);
        partial[static_cast<size_t>(p)] = mx + std::log(s);
    }
    double mx = kNegInf;
    for (double x : partial) mx = std::max(mx, x);
    if (mx == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : partial) s += std::exp(x - mx);  // fixed panel order
    return mx + std::log(s);
}

double WeightSpec::log_at(double T) const {
    switch (kind) {
        case Kind::none: return 0.0;
        case Kind::exp_epsT: return eps * T;
        case Kind::exp_m2Toverh: return -2.0 * T / h;
        case Kind::exp_m2Toverh_plus_epsT: return -2.0 * T / h + eps * T;
    }
    return 0.0;
}

double WeightSpec::at(double T) const {
    const double l = log_at(T);
    if (std::abs(l) > 700.0)
        throw std::domain_error("WeightSpec: weight exponent overflows double range");
    return std::exp(l);
}

Complex weighted_inner(const CylField& f, const CylField& g, const WeightSpec& w,
                       const CylinderGrid& grid) {
    return integrate_c(grid, [&](double T, double th) {
        return f.jet(T, th, 0).at(0, 0) * std::conj(g.jet(T, th, 0).at(0, 0)) * w.at(T);
    });
}

double carleman_lhs_V(const CylField& v, const ConvexifyParams& p, double h,
                      const CylinderGrid& grid) {
    check_support(v, grid);
    const double h2 = h * h, h4 = h2 * h2;
    return h * integrate(grid, [&](double T, double th) {
               const CylJet j = v.jet(T, th, 2);
               const double six =
                   std::norm(j.at(0, 0)) + h2 * std::norm(j.at(1, 0)) +
                   h2 * std::norm(j.at(0, 1)) + h4 * std::norm(j.at(2, 0)) +
                   h4 * std::norm(j.at(1, 1)) + h4 * std::norm(j.at(0, 2));
               return six * std::exp(p.epsilon * T);
           });
}

double carleman_rhs_V(const CylField& v, const ConvexifyParams& p, double h,
                      const CylinderGrid& grid) {
    check_support(v, grid);
    return integrate(grid, [&](double T, double th) {
        return std::norm(apply_Qtilde_jet(v.jet(T, th, 2), T, p, h).at(0, 0));
    });
}

std::pair<double, double> carleman_sides_U(const FactoredU& u, const ConvexifyParams& p,
                                           const CylinderGrid& grid) {
    if (!u.v || !(u.h > 0.0))
        throw std::invalid_argument("carleman_sides_U: U must be supplied as e^{T/h} V");
    return {carleman_lhs_V(*u.v, p, u.h, grid), carleman_rhs_V(*u.v, p, u.h, grid)};
}

}  // namespace carlab
