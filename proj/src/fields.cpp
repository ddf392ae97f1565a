#include "carlab/fields.hpp"

#include <cmath>

namespace carlab {

namespace {

Complex i_pow(int b) {
    switch (b & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Glue profiles

Taylor glue_taylor(double s) {
    // Caller guarantees 0 < s < 1; flat regions are short-circuited upstream.
    const Taylor sv = Taylor::variable(s);
    const Taylor one = Taylor::constant(1.0);
    const Taylor sig = texp(-(one / sv));
    const Taylor sig_m = texp(-(one / (one - sv)));
    return sig / (sig + sig_m);
}

TProfile stepdown_profile(double T, const CutoffSpec& spec) {
    if (T <= spec.left_edge) return TProfile::constant(1.0);
    if (T >= spec.right_edge) return TProfile::constant(0.0);
    const double width = spec.right_edge - spec.left_edge;
    const double s = (spec.right_edge - T) / width;
    return TProfile::from_taylor(rescale_affine(glue_taylor(s), -1.0 / width));
}

TProfile stepup_profile(double T, const CutoffSpec& spec) {
    if (T <= spec.left_edge) return TProfile::constant(0.0);
    if (T >= spec.right_edge) return TProfile::constant(1.0);
    const double width = spec.right_edge - spec.left_edge;
    const double s = (T - spec.left_edge) / width;
    return TProfile::from_taylor(rescale_affine(glue_taylor(s), 1.0 / width));
}

TProfile stepup_scaled_profile(double T, const CutoffSpec& base, double R) {
    if (R <= 0.0) throw std::invalid_argument("stepup_scaled_profile: R must be positive");
    const double s = T / R;
    if (s <= base.left_edge) return TProfile::constant(0.0);
    if (s >= base.right_edge) return TProfile::constant(1.0);
    const double width = base.right_edge - base.left_edge;
    const double u = (s - base.left_edge) / width;
    return TProfile::from_taylor(rescale_affine(glue_taylor(u), 1.0 / (width * R)));
}

TProfile window_profile(double T, const BumpWindow& w) {
    return stepup_profile(T, CutoffSpec(w.up_left, w.up_right)) *
           stepdown_profile(T, CutoffSpec(w.down_left, w.down_right));
}

TProfile CutoffFactor::profile(double T) const {
    switch (kind) {
        case Kind::stepdown: return stepdown_profile(T, spec);
        case Kind::stepup: return stepup_profile(T, spec);
        case Kind::stepup_scaled: return stepup_scaled_profile(T, spec, scale);
    }
    throw std::logic_error("CutoffFactor: bad kind");
}

// ---------------------------------------------------------------------------
// Cylinder fields

namespace {

class BumpField final : public CylField {
  public:
    explicit BumpField(CutoffSpec spec) : spec_(spec) {}

    CylJet jet(double T, double /*theta*/, int order) const override {
        CylJet r;
        r.order = order;
        const TProfile p = stepdown_profile(T, spec_);
        for (int a = 0; a <= order; ++a) r.at(a, 0) = p.d[a];
        return r;
    }

    std::pair<double, double> support() const override {
        return {-std::numeric_limits<double>::infinity(), spec_.right_edge};
    }

    json recipe() const override {
        return json{{"kind", "bump"}, {"left", spec_.left_edge}, {"right", spec_.right_edge}};
    }

  private:
    CutoffSpec spec_;
};

class ModeField final : public CylField {
  public:
    ModeField(int m, BumpWindow w) : m_(m), w_(w) {}

    CylJet jet(double T, double theta, int order) const override {
        CylJet r;
        r.order = order;
        const TProfile b = window_profile(T, w_);
        const Complex phase = std::polar(1.0, m_ * theta);
        for (int s = 0; s <= order; ++s) {
            for (int bth = 0; bth <= s; ++bth) {
                const int a = s - bth;
                // dT^a dth^b [b(T) e^{i m th}] = b^(a)(T) (i m)^b e^{i m th}
                r.at(a, bth) = b.d[a] * i_pow(bth) * std::pow(static_cast<double>(m_),
                                                              static_cast<double>(bth)) *
                               phase;
            }
        }
        return r;
    }

    std::pair<double, double> support() const override { return {w_.up_left, w_.down_right}; }

    json recipe() const override {
        return json{{"kind", "mode"},
                    {"m", m_},
                    {"window", {w_.up_left, w_.up_right, w_.down_left, w_.down_right}}};
    }

  private:
    int m_;
    BumpWindow w_;
};

class SumField final : public CylField {
  public:
    SumField(std::vector<CylFieldPtr> fields, std::vector<Complex> coeffs)
        : fields_(std::move(fields)), coeffs_(std::move(coeffs)) {
        if (fields_.empty() || fields_.size() != coeffs_.size())
            throw std::invalid_argument("SumField: fields/coeffs mismatch");
    }

    CylJet jet(double T, double theta, int order) const override {
        CylJet r = coeffs_[0] * fields_[0]->jet(T, theta, order);
        for (size_t k = 1; k < fields_.size(); ++k)
            r = r + coeffs_[k] * fields_[k]->jet(T, theta, order);
        return r;
    }

    std::pair<double, double> support() const override {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& f : fields_) {
            auto [a, b] = f->support();
            lo = std::min(lo, a);
            hi = std::max(hi, b);
        }
        return {lo, hi};
    }

    json recipe() const override {
        json terms = json::array();
        for (size_t k = 0; k < fields_.size(); ++k)
            terms.push_back(json{{"coeff", {coeffs_[k].real(), coeffs_[k].imag()}},
                                 {"field", fields_[k]->recipe()}});
        return json{{"kind", "sum"}, {"terms", terms}};
    }

  private:
    std::vector<CylFieldPtr> fields_;
    std::vector<Complex> coeffs_;
};

class CutField final : public CylField {
  public:
    CutField(CylFieldPtr base, std::vector<CutoffFactor> factors)
        : base_(std::move(base)), factors_(std::move(factors)) {}

    CylJet jet(double T, double theta, int order) const override {
        CylJet r = base_->jet(T, theta, order);
        for (const auto& f : factors_) r = mul_profile(f.profile(T), r);
        return r;
    }

    std::pair<double, double> support() const override {
        auto [lo, hi] = base_->support();
        for (const auto& f : factors_) {
            if (f.kind == CutoffFactor::Kind::stepdown)
                hi = std::min(hi, f.spec.right_edge);
            else if (f.kind == CutoffFactor::Kind::stepup)
                lo = std::max(lo, f.spec.left_edge);
            else
                lo = std::max(lo, f.spec.left_edge * f.scale);
        }
        return {lo, hi};
    }

    json recipe() const override {
        json cuts = json::array();
        for (const auto& f : factors_) {
            const char* kind = f.kind == CutoffFactor::Kind::stepdown    ? "stepdown"
                               : f.kind == CutoffFactor::Kind::stepup ? "stepup"
                                                                      : "stepup_scaled";
            cuts.push_back(json{{"kind", kind},
                                {"left", f.spec.left_edge},
                                {"right", f.spec.right_edge},
                                {"scale", f.scale}});
        }
        return json{{"kind", "cut"}, {"base", base_->recipe()}, {"factors", cuts}};
    }

  private:
    CylFieldPtr base_;
    std::vector<CutoffFactor> factors_;
};

}  // namespace

CylFieldPtr make_bump(const CutoffSpec& spec) { return std::make_shared<BumpField>(spec); }

CylFieldPtr make_mode(int m, const BumpWindow& envelope) {
    return std::make_shared<ModeField>(m, envelope);
}

CylFieldPtr make_sum(std::vector<CylFieldPtr> fields, std::vector<Complex> coeffs) {
    return std::make_shared<SumField>(std::move(fields), std::move(coeffs));
}

CylFieldPtr make_scaled(CylFieldPtr f, Complex s) {
    return make_sum({std::move(f)}, {s});
}

CylFieldPtr make_cut(CylFieldPtr base, std::vector<CutoffFactor> factors) {
    return std::make_shared<CutField>(std::move(base), std::move(factors));
}

CylFieldPtr cyl_field_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bump") {
        return make_bump(CutoffSpec(j.at("left").get<double>(), j.at("right").get<double>()));
    }
    if (kind == "mode") {
        const auto w = j.at("window");
        return make_mode(j.at("m").get<int>(),
                         BumpWindow(w.at(0).get<double>(), w.at(1).get<double>(),
                                    w.at(2).get<double>(), w.at(3).get<double>()));
    }
    if (kind == "sum") {
        std::vector<CylFieldPtr> fields;
        std::vector<Complex> coeffs;
        for (const auto& t : j.at("terms")) {
            coeffs.emplace_back(t.at("coeff").at(0).get<double>(),
                                t.at("coeff").at(1).get<double>());
            fields.push_back(cyl_field_from_json(t.at("field")));
        }
        return make_sum(std::move(fields), std::move(coeffs));
    }
    if (kind == "cut") {
        std::vector<CutoffFactor> factors;
        for (const auto& c : j.at("factors")) {
            const std::string k = c.at("kind").get<std::string>();
            CutoffFactor f{CutoffFactor::Kind::stepdown,
                           CutoffSpec(c.at("left").get<double>(), c.at("right").get<double>()),
                           c.value("scale", 1.0)};
            if (k == "stepup") f.kind = CutoffFactor::Kind::stepup;
            else if (k == "stepup_scaled") f.kind = CutoffFactor::Kind::stepup_scaled;
            else if (k != "stepdown") throw std::invalid_argument("cut factor kind: " + k);
            factors.push_back(f);
        }
        return make_cut(cyl_field_from_json(j.at("base")), std::move(factors));
    }
    throw std::invalid_argument("unknown cylinder field kind: " + kind);
}

std::vector<std::pair<std::string, CylFieldPtr>> default_test_family() {
    std::vector<std::pair<std::string, CylFieldPtr>> fam;
    fam.emplace_back("f0_m0", make_mode(0, BumpWindow(-8.2, -7.6, -6.4, -5.8)));
    fam.emplace_back("f1_m1", make_mode(1, BumpWindow(-8.2, -7.6, -6.4, -5.8)));
    fam.emplace_back("f2_m2", make_mode(2, BumpWindow(-8.8, -8.0, -7.0, -6.2)));
    fam.emplace_back("f3_m3", make_mode(3, BumpWindow(-7.8, -7.2, -6.2, -5.6)));
    fam.emplace_back("f4_m4_wide", make_mode(4, BumpWindow(-9.2, -8.4, -6.6, -5.9)));
    fam.emplace_back("f5_m5", make_mode(5, BumpWindow(-8.0, -7.4, -6.8, -6.1)));
    fam.emplace_back("f6_m8", make_mode(8, BumpWindow(-8.6, -7.9, -6.3, -5.7)));
    fam.emplace_back("f7_sum13",
                     make_sum({make_mode(1, BumpWindow(-8.2, -7.6, -6.4, -5.8)),
                               make_mode(3, BumpWindow(-8.4, -7.7, -6.6, -6.0))},
                              {Complex(0.8, 0.0), Complex(0.0, 0.6)}));
    fam.emplace_back("f8_m2_narrow", make_mode(2, BumpWindow(-7.6, -7.2, -6.9, -6.5)));
    fam.emplace_back("f9_m0_wide", make_mode(0, BumpWindow(-9.0, -8.1, -5.9, -5.3)));
    return fam;
}

// ---------------------------------------------------------------------------
// Plane fields

namespace {

class PolyField final : public PlaneField {
  public:
    explicit PolyField(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("PolyField: empty coefficients");
    }

    int components() const override { return 1; }

    PlaneJet jet(double x1, double x2) const override {
        check_domain(x1, x2);
        const Complex x(x1, x2);
        Complex p = 0.0, dp = 0.0, ddp = 0.0;
        // Horner for p, p', p'' in the complex variable.
        for (size_t k = coeffs_.size(); k-- > 0;) {
            ddp = ddp * x + 2.0 * dp;
            dp = dp * x + p;
            p = p * x + coeffs_[k];
        }
        PlaneJet r(1);
        r.comp[0][0] = p;
        r.comp[0][1] = dp;                   // d/dx1 = d/dx
        r.comp[0][2] = Complex(0, 1) * dp;   // d/dx2 = i d/dx
        r.comp[0][3] = ddp;
        r.comp[0][4] = Complex(0, 1) * ddp;
        r.comp[0][5] = -ddp;
        return r;
    }

    json recipe() const override {
        json c = json::array();
        for (const auto& z : coeffs_) c.push_back({z.real(), z.imag()});
        return json{{"kind", "poly"}, {"coeffs", c}};
    }

  private:
    std::vector<Complex> coeffs_;
};

class ConjXField final : public PlaneField {
  public:
    int components() const override { return 1; }

    PlaneJet jet(double x1, double x2) const override {
        check_domain(x1, x2);
        PlaneJet r(1);
        r.comp[0][0] = Complex(x1, -x2);
        r.comp[0][1] = Complex(1, 0);
        r.comp[0][2] = Complex(0, -1);
        return r;
    }

    json recipe() const override { return json{{"kind", "conj_x"}}; }
};

class FlatField final : public PlaneField {
  public:
    int components() const override { return 1; }

    PlaneJet jet(double x1, double x2) const override {
        check_domain(x1, x2);
        PlaneJet r(1);
        const double r2 = x1 * x1 + x2 * x2;
        if (r2 == 0.0) return r;  // flat zero jet at the origin
        const double u = std::exp(-1.0 / r2);
        const double g1 = 2.0 * x1 / (r2 * r2);
        const double g2 = 2.0 * x2 / (r2 * r2);
        r.comp[0][0] = u;
        r.comp[0][1] = u * g1;
        r.comp[0][2] = u * g2;
        r.comp[0][3] = u * (g1 * g1 + 2.0 / (r2 * r2) - 8.0 * x1 * x1 / (r2 * r2 * r2));
        r.comp[0][4] = u * (g1 * g2 - 8.0 * x1 * x2 / (r2 * r2 * r2));
        r.comp[0][5] = u * (g2 * g2 + 2.0 / (r2 * r2) - 8.0 * x2 * x2 / (r2 * r2 * r2));
        return r;
    }

    json recipe() const override { return json{{"kind", "flat"}}; }
};

class LinearImageField final : public PlaneField {
  public:
    LinearImageField(PlaneFieldPtr base, Mat m) : base_(std::move(base)), m_(std::move(m)) {
        if (m_.n != 2 * base_->components())
            throw std::invalid_argument("LinearImageField: matrix size mismatch");
    }

    int components() const override { return base_->components(); }
    Rect domain() const override { return base_->domain(); }

    PlaneJet jet(double x1, double x2) const override {
        const PlaneJet b = base_->jet(x1, x2);
        PlaneJet r(b.n);
        for (int k = 0; k < 6; ++k) {
            std::vector<Complex> col(b.n);
            for (int i = 0; i < b.n; ++i) col[i] = b.comp[i][k];
            const Vec img = m_ * to_real(col);
            const auto back = to_complex(img);
            for (int i = 0; i < b.n; ++i) r.comp[i][k] = back[i];
        }
        return r;
    }

    json recipe() const override {
        return json{{"kind", "linear_image"}, {"base", base_->recipe()}, {"matrix", m_.a}};
    }

  private:
    PlaneFieldPtr base_;
    Mat m_;
};

class PlaneSumField final : public PlaneField {
  public:
    PlaneSumField(std::vector<PlaneFieldPtr> fields, std::vector<Complex> coeffs)
        : fields_(std::move(fields)), coeffs_(std::move(coeffs)) {
        if (fields_.empty() || fields_.size() != coeffs_.size())
            throw std::invalid_argument("PlaneSumField: fields/coeffs mismatch");
    }

    int components() const override { return fields_[0]->components(); }

    PlaneJet jet(double x1, double x2) const override {
        PlaneJet r = coeffs_[0] * fields_[0]->jet(x1, x2);
        for (size_t k = 1; k < fields_.size(); ++k)
            r = r + coeffs_[k] * fields_[k]->jet(x1, x2);
        return r;
    }

    json recipe() const override {
        json terms = json::array();
        for (size_t k = 0; k < fields_.size(); ++k)
            terms.push_back(json{{"coeff", {coeffs_[k].real(), coeffs_[k].imag()}},
                                 {"field", fields_[k]->recipe()}});
        return json{{"kind", "plane_sum"}, {"terms", terms}};
    }

  private:
    std::vector<PlaneFieldPtr> fields_;
    std::vector<Complex> coeffs_;
};

class StackField final : public PlaneField {
  public:
    explicit StackField(std::vector<PlaneFieldPtr> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("StackField: no components");
        for (const auto& p : parts_)
            if (p->components() != 1)
                throw std::invalid_argument("StackField: parts must be single-component");
    }

    int components() const override { return static_cast<int>(parts_.size()); }

    PlaneJet jet(double x1, double x2) const override {
        PlaneJet r(components());
        for (size_t i = 0; i < parts_.size(); ++i) r.comp[i] = parts_[i]->jet(x1, x2).comp[0];
        return r;
    }

    json recipe() const override {
        json parts = json::array();
        for (const auto& p : parts_) parts.push_back(p->recipe());
        return json{{"kind", "stack"}, {"parts", parts}};
    }

  private:
    std::vector<PlaneFieldPtr> parts_;
};

}  // namespace

PlaneFieldPtr monomial_curve(int k) {
    if (k < 1) throw std::invalid_argument("monomial_curve: k must be >= 1");
    std::vector<Complex> c(static_cast<size_t>(k) + 1, 0.0);
    c.back() = 1.0;
    return std::make_shared<PolyField>(std::move(c));
}

PlaneFieldPtr make_poly(std::vector<Complex> coeffs) {
    return std::make_shared<PolyField>(std::move(coeffs));
}

PlaneFieldPtr make_conj_x() { return std::make_shared<ConjXField>(); }

PlaneFieldPtr make_flat() { return std::make_shared<FlatField>(); }

PlaneFieldPtr make_linear_image(PlaneFieldPtr base, const Mat& m) {
    return std::make_shared<LinearImageField>(std::move(base), m);
}

PlaneFieldPtr make_plane_sum(std::vector<PlaneFieldPtr> fields, std::vector<Complex> coeffs) {
    return std::make_shared<PlaneSumField>(std::move(fields), std::move(coeffs));
}

PlaneFieldPtr make_stack(std::vector<PlaneFieldPtr> components) {
    return std::make_shared<StackField>(std::move(components));
}

PlaneFieldPtr plane_field_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "monomial") return monomial_curve(j.at("k").get<int>());
    if (kind == "poly") {
        std::vector<Complex> c;
        for (const auto& z : j.at("coeffs"))
            c.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        return make_poly(std::move(c));
    }
    if (kind == "conj_x") return make_conj_x();
    if (kind == "flat") return make_flat();
    if (kind == "linear_image") {
        const auto a = j.at("matrix").get<std::vector<double>>();
        const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(a.size()))));
        Mat m(n);
        m.a = a;
        return make_linear_image(plane_field_from_json(j.at("base")), m);
    }
    if (kind == "plane_sum") {
        std::vector<PlaneFieldPtr> fields;
        std::vector<Complex> coeffs;
        for (const auto& t : j.at("terms")) {
            coeffs.emplace_back(t.at("coeff").at(0).get<double>(),
                                t.at("coeff").at(1).get<double>());
            fields.push_back(plane_field_from_json(t.at("field")));
        }
        return make_plane_sum(std::move(fields), std::move(coeffs));
    }
    if (kind == "stack") {
        std::vector<PlaneFieldPtr> parts;
        for (const auto& p : j.at("parts")) parts.push_back(plane_field_from_json(p));
        return make_stack(std::move(parts));
    }
    throw std::invalid_argument("unknown plane field kind: " + kind);
}

}  // namespace carlab
