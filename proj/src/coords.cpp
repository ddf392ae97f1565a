#include "carlab/coords.hpp"

#include <cmath>

namespace carlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double normalize_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

PolarCoord polar_from_cartesian(double x1, double x2) {
    if (x1 == 0.0 && x2 == 0.0)
        throw std::domain_error("polar_from_cartesian: chart excludes the origin");
    PolarCoord p;
    p.t = 0.5 * std::log(x1 * x1 + x2 * x2);
    p.theta = normalize_angle(std::atan2(x2, x1));
    return p;
}

std::pair<double, double> cartesian_from_polar(const PolarCoord& p) {
    const double r = std::exp(p.t);
    return {r * std::cos(p.theta), r * std::sin(p.theta)};
}

double convexify(double T, const ConvexifyParams& p) { return T + std::exp(p.epsilon * T); }

double jacobian_dt_dT(double T, const ConvexifyParams& p) {
    return 1.0 + p.epsilon * std::exp(p.epsilon * T);
}

double deconvexify(double t, const ConvexifyParams& p) {
    // Root of f(T) = T + e^{eps T} - t. f is convex increasing with f' >= 1,
    // so Newton from the right endpoint T = t decreases monotonically.
    double lo = t - std::exp(p.epsilon * std::min(t, 700.0 / p.epsilon)) - 1.0;
    double hi = t;
    double x = t;
    for (int it = 0; it < 100; ++it) {
        const double f = x + std::exp(p.epsilon * x) - t;
        if (std::abs(f) <= 1e-13 * std::max(1.0, std::abs(t))) return x;
        if (f > 0.0) hi = x; else lo = x;
        const double fp = 1.0 + p.epsilon * std::exp(p.epsilon * x);
        double next = x - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
        if (next == x) return x;
        x = next;
    }
    throw std::runtime_error("deconvexify: iteration cap reached");
}

namespace {

class PullbackField final : public CylField {
  public:
    PullbackField(PlaneFieldPtr u, ConvexifyParams p, int component)
        : u_(std::move(u)), p_(p), comp_(component) {
        if (comp_ < 0 || comp_ >= u_->components())
            throw std::invalid_argument("pullback: component out of range");
    }

    CylJet jet(double T, double theta, int order) const override {
        if (order > 2) throw JetOrderError("pullback jet available to order 2 only");
        const double eps = p_.epsilon;
        const double E = std::exp(eps * T);
        const double t = T + E;
        const double tp = 1.0 + eps * E;   // dt/dT
        const double tpp = eps * eps * E;  // d2t/dT2
        const double rho = std::exp(t);
        const double ct = std::cos(theta), st = std::sin(theta);

        const double x1 = rho * ct, x2 = rho * st;
        const PlaneJet uj = u_->jet(x1, x2);

        // d/dT rho = tp * rho ; d2/dT2 rho = (tpp + tp^2) rho
        const double rT = tp * rho;
        const double rTT = (tpp + tp * tp) * rho;

        const double x1T = rT * ct, x2T = rT * st;
        const double x1th = -rho * st, x2th = rho * ct;
        const double x1TT = rTT * ct, x2TT = rTT * st;
        const double x1Tth = -rT * st, x2Tth = rT * ct;
        const double x1thth = -x1, x2thth = -x2;

        const Complex ux = uj.dx1(comp_), uy = uj.dx2(comp_);
        const Complex uxx = uj.dx1x1(comp_), uxy = uj.dx1x2(comp_), uyy = uj.dx2x2(comp_);

        CylJet r;
        r.order = std::min(order, 2);
        r.at(0, 0) = uj.val(comp_);
        if (r.order >= 1) {
            r.at(1, 0) = ux * x1T + uy * x2T;
            r.at(0, 1) = ux * x1th + uy * x2th;
        }
        if (r.order >= 2) {
            r.at(2, 0) = uxx * (x1T * x1T) + 2.0 * uxy * (x1T * x2T) + uyy * (x2T * x2T) +
                         ux * x1TT + uy * x2TT;
            r.at(1, 1) = uxx * (x1T * x1th) + uxy * (x1T * x2th + x1th * x2T) +
                         uyy * (x2T * x2th) + ux * x1Tth + uy * x2Tth;
            r.at(0, 2) = uxx * (x1th * x1th) + 2.0 * uxy * (x1th * x2th) + uyy * (x2th * x2th) +
                         ux * x1thth + uy * x2thth;
        }
        return r;
    }

    json recipe() const override {
        return json{{"kind", "pullback"}, {"epsilon", p_.epsilon}, {"component", comp_},
                    {"plane", u_->recipe()}};
    }

  private:
    PlaneFieldPtr u_;
    ConvexifyParams p_;
    int comp_;
};

}  // namespace

CylFieldPtr pullback_plane_field(PlaneFieldPtr u, const ConvexifyParams& p, int component) {
    return std::make_shared<PullbackField>(std::move(u), p, component);
}

}  // namespace carlab
