#pragma once

// Closed-form test functions on the cylinder (-inf, T0) x S^1 and on a planar
// neighborhood of the origin, carrying exact derivatives: smooth cutoffs from
// the exp(-1/s) glue, windowed Fourier modes b(T) e^{i m theta}, and complex
// polynomial curves in x = x1 + i x2.

#include <json.hpp>
#include <limits>
#include <memory>
#include <vector>

#include "carlab/jets.hpp"
#include "carlab/linalg.hpp"

namespace carlab {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Smooth transition profiles

// Step-down recipe: 1 on (-inf, left_edge], 0 on [right_edge, inf).
struct CutoffSpec {
    double left_edge;
    double right_edge;

    CutoffSpec(double l, double r) : left_edge(l), right_edge(r) {
        if (!(l < r)) throw std::invalid_argument("CutoffSpec: left_edge must be < right_edge");
    }
};

// glue(s) = sigma(s) / (sigma(s) + sigma(1-s)), sigma(s) = exp(-1/s) for s>0.
// Rises from 0 at s<=0 to 1 at s>=1, C-infinity.
Taylor glue_taylor(double s);

// 1 on (-inf, L], 0 on [R, inf); exact derivatives through order 4.
TProfile stepdown_profile(double T, const CutoffSpec& spec);

// 0 on (-inf, L], 1 on [R, inf).
TProfile stepup_profile(double T, const CutoffSpec& spec);

// Scaled step-up: profile of chi(T / R) where chi is stepup over `base`.
TProfile stepup_scaled_profile(double T, const CutoffSpec& base, double R);

// Compactly supported window: stepup over [up_left, up_right] times
// stepdown over [down_left, down_right].
struct BumpWindow {
    double up_left, up_right, down_left, down_right;

    BumpWindow(double ul, double ur, double dl, double dr)
        : up_left(ul), up_right(ur), down_left(dl), down_right(dr) {
        if (!(ul < ur && ur <= dl && dl < dr))
            throw std::invalid_argument("BumpWindow: edges must satisfy ul < ur <= dl < dr");
    }
};

TProfile window_profile(double T, const BumpWindow& w);

// ---------------------------------------------------------------------------
// Cylinder fields

class CylField {
  public:
    virtual ~CylField() = default;

    // Jet at (T, theta) valid to total order `order` (<= 4).
    virtual CylJet jet(double T, double theta, int order = kMaxDerivOrder) const = 0;

    // Conservative T-support bounds; +-inf when not compactly supported.
    virtual std::pair<double, double> support() const {
        const double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }

    virtual json recipe() const = 0;
};

using CylFieldPtr = std::shared_ptr<const CylField>;

// theta-independent step-down cutoff field (derivatives exact; flat regions
// produce exact 0/1 jets).
CylFieldPtr make_bump(const CutoffSpec& spec);

// b(T) e^{i m theta} with b the compactly supported window bump.
CylFieldPtr make_mode(int m, const BumpWindow& envelope);

// sum_k coeff_k * field_k
CylFieldPtr make_sum(std::vector<CylFieldPtr> fields, std::vector<Complex> coeffs);

CylFieldPtr make_scaled(CylFieldPtr f, Complex s);

// Multiplicative T-profile applied to a field (exact Leibniz at jet level).
struct CutoffFactor {
    enum class Kind { stepdown, stepup, stepup_scaled } kind;
    CutoffSpec spec;
    double scale = 1.0;  // R for stepup_scaled

    TProfile profile(double T) const;
};

CylFieldPtr make_cut(CylFieldPtr base, std::vector<CutoffFactor> factors);

CylFieldPtr cyl_field_from_json(const json& j);

// The canonical windowed-mode family used by sweeps and batch checks.
std::vector<std::pair<std::string, CylFieldPtr>> default_test_family();

// ---------------------------------------------------------------------------
// Plane fields

struct Rect {
    double x1_min = -1.0, x1_max = 1.0, x2_min = -1.0, x2_max = 1.0;
    bool contains(double x1, double x2) const {
        return x1 >= x1_min && x1 <= x1_max && x2 >= x2_min && x2 <= x2_max;
    }
};

class PlaneField {
  public:
    virtual ~PlaneField() = default;

    virtual int components() const = 0;
    virtual Rect domain() const { return Rect{}; }

    // Order-2 jet; throws std::domain_error outside the stated domain.
    virtual PlaneJet jet(double x1, double x2) const = 0;

    virtual json recipe() const = 0;

    void check_domain(double x1, double x2) const {
        if (!domain().contains(x1, x2))
            throw std::domain_error("plane field: evaluation outside domain");
    }
};

using PlaneFieldPtr = std::shared_ptr<const PlaneField>;

// x |-> x^k, exact first and second partials.
PlaneFieldPtr monomial_curve(int k);

// sum_k coeffs[k] x^k (single complex component).
PlaneFieldPtr make_poly(std::vector<Complex> coeffs);

// x |-> conj(x).
PlaneFieldPtr make_conj_x();

// exp(-1/|x|^2), flat to infinite order at 0.
PlaneFieldPtr make_flat();

// Constant linear image w |-> M w of the real view of another field.
PlaneFieldPtr make_linear_image(PlaneFieldPtr base, const Mat& m);

PlaneFieldPtr make_plane_sum(std::vector<PlaneFieldPtr> fields, std::vector<Complex> coeffs);

// Stack single-component fields into one C^n-valued field.
PlaneFieldPtr make_stack(std::vector<PlaneFieldPtr> components);

PlaneFieldPtr plane_field_from_json(const json& j);

}  // namespace carlab
