#pragma once

// Pointwise derivative data ("jets") on the cylinder (T, theta) up to total
// order 4, and on the plane (x1, x2) up to order 2.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "carlab/taylor.hpp"

namespace carlab {

using Complex = std::complex<double>;

class JetOrderError : public std::invalid_argument {
  public:
    explicit JetOrderError(const std::string& what) : std::invalid_argument(what) {}
};

// T-dependent real coefficient at a point: value and derivatives up to
// `order`. Coefficients are theta-independent throughout.
struct TProfile {
    int order = kMaxDerivOrder;
    std::array<double, kMaxDerivOrder + 1> d{};

    static TProfile constant(double x, int order = kMaxDerivOrder) {
        TProfile p;
        p.order = order;
        p.d[0] = x;
        return p;
    }
    static TProfile from_taylor(const Taylor& t, int order = kMaxDerivOrder) {
        TProfile p;
        p.order = order;
        for (int k = 0; k <= order; ++k) p.d[k] = t.d[k];
        return p;
    }
};

inline TProfile operator*(const TProfile& a, const TProfile& b) {
    TProfile r;
    r.order = std::min(a.order, b.order);
    for (int k = 0; k <= r.order; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += binom_small(k, j) * a.d[j] * b.d[k - j];
        r.d[k] = s;
    }
    return r;
}

inline TProfile operator+(const TProfile& a, const TProfile& b) {
    TProfile r;
    r.order = std::min(a.order, b.order);
    for (int k = 0; k <= r.order; ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
}

inline TProfile operator*(double s, const TProfile& a) {
    TProfile r = a;
    for (int k = 0; k <= r.order; ++k) r.d[k] = s * a.d[k];
    return r;
}

// Complex jet on the cylinder: entries dT^a dth^b with a+b <= order <= 4.
// Mixed partials are stored once (symmetry is structural).
struct CylJet {
    int order = kMaxDerivOrder;
    std::array<Complex, 15> d{};

    static constexpr int index(int a, int b) {
        const int s = a + b;
        return s * (s + 1) / 2 + b;
    }

    Complex& at(int a, int b) { return d[index(a, b)]; }
    const Complex& at(int a, int b) const { return d[index(a, b)]; }

    void require(int min_order, const char* who) const {
        if (order < min_order)
            throw JetOrderError(std::string(who) + ": jet order " + std::to_string(order) +
                                " < required " + std::to_string(min_order));
    }

    CylJet d_T() const {
        CylJet r;
        r.order = order - 1;
        for (int s = 0; s <= r.order; ++s)
            for (int b = 0; b <= s; ++b) r.at(s - b, b) = at(s - b + 1, b);
        return r;
    }

    CylJet d_theta() const {
        CylJet r;
        r.order = order - 1;
        for (int s = 0; s <= r.order; ++s)
            for (int b = 0; b <= s; ++b) r.at(s - b, b) = at(s - b, b + 1);
        return r;
    }
};

inline CylJet operator+(const CylJet& x, const CylJet& y) {
    CylJet r;
    r.order = std::min(x.order, y.order);
    for (int s = 0; s <= r.order; ++s)
        for (int b = 0; b <= s; ++b) r.at(s - b, b) = x.at(s - b, b) + y.at(s - b, b);
    return r;
}

inline CylJet operator-(const CylJet& x, const CylJet& y) {
    CylJet r;
    r.order = std::min(x.order, y.order);
    for (int s = 0; s <= r.order; ++s)
        for (int b = 0; b <= s; ++b) r.at(s - b, b) = x.at(s - b, b) - y.at(s - b, b);
    return r;
}

inline CylJet operator*(Complex s, const CylJet& x) {
    CylJet r = x;
    for (int ss = 0; ss <= r.order; ++ss)
        for (int b = 0; b <= ss; ++b) r.at(ss - b, b) *= s;
    return r;
}

// Leibniz in T only: profile is theta-independent.
inline CylJet mul_profile(const TProfile& p, const CylJet& x) {
    CylJet r;
    r.order = std::min(p.order, x.order);
    for (int s = 0; s <= r.order; ++s) {
        for (int b = 0; b <= s; ++b) {
            const int a = s - b;
            Complex acc = 0.0;
            for (int j = 0; j <= a; ++j) acc += binom_small(a, j) * p.d[j] * x.at(a - j, b);
            r.at(a, b) = acc;
        }
    }
    return r;
}

// C^n-valued jet on the plane up to order 2.
// Entry layout per component: {val, dx1, dx2, dx1x1, dx1x2, dx2x2}.
struct PlaneJet {
    int n = 1;
    std::vector<std::array<Complex, 6>> comp;

    explicit PlaneJet(int n_ = 1) : n(n_), comp(static_cast<size_t>(n_)) {}

    Complex val(int i) const { return comp[i][0]; }
    Complex dx1(int i) const { return comp[i][1]; }
    Complex dx2(int i) const { return comp[i][2]; }
    Complex dx1x1(int i) const { return comp[i][3]; }
    Complex dx1x2(int i) const { return comp[i][4]; }
    Complex dx2x2(int i) const { return comp[i][5]; }
    Complex laplacian(int i) const { return comp[i][3] + comp[i][5]; }
};

inline PlaneJet operator+(const PlaneJet& x, const PlaneJet& y) {
    if (x.n != y.n) throw std::invalid_argument("plane jet: component mismatch");
    PlaneJet r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < 6; ++k) r.comp[i][k] = x.comp[i][k] + y.comp[i][k];
    return r;
}

inline PlaneJet operator*(Complex s, const PlaneJet& x) {
    PlaneJet r = x;
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < 6; ++k) r.comp[i][k] *= s;
    return r;
}

}  // namespace carlab
