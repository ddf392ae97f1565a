#pragma once

// Coordinate chain: Cartesian <-> conformal polar (x = e^t(cos th, sin th)),
// and the convexified variable T with t = T + e^{eps T}.

#include "carlab/fields.hpp"
#include "carlab/jets.hpp"

namespace carlab {

struct ConvexifyParams {
    double epsilon;

    explicit ConvexifyParams(double eps) : epsilon(eps) {
        if (!(eps > 0.0 && eps < 1.0))
            throw std::invalid_argument("ConvexifyParams: epsilon must lie in (0,1)");
    }
};

struct PolarCoord {
    double t;
    double theta;  // normalized to [0, 2*pi)
};

struct ConvexCoord {
    double T;
    double theta;
};

double normalize_angle(double theta);

PolarCoord polar_from_cartesian(double x1, double x2);
std::pair<double, double> cartesian_from_polar(const PolarCoord& p);

double convexify(double T, const ConvexifyParams& p);
double jacobian_dt_dT(double T, const ConvexifyParams& p);

// Inverse of T |-> T + e^{eps T}: safeguarded Newton, tolerance 1e-13,
// iteration cap 100 (cap hit signals a bug, not bad input).
double deconvexify(double t, const ConvexifyParams& p);

// U(T, theta) := u(x1, x2) with (x1,x2) = e^{t(T)} (cos theta, sin theta);
// chain-rule jets through both coordinate changes, order <= 2.
// Only the first component of u is carried (the cylinder estimates act
// componentwise); use component index for C^n-valued inputs.
CylFieldPtr pullback_plane_field(PlaneFieldPtr u, const ConvexifyParams& p, int component = 0);

}  // namespace carlab
