#pragma once

// Truncated derivative arithmetic up to order 4, used to evaluate closed-form
// coefficient profiles (cutoff glues, exponentials) with exact derivatives.

#include <array>
#include <cmath>
#include <stdexcept>

namespace carlab {

inline constexpr int kMaxDerivOrder = 4;

inline double binom_small(int n, int k) {
    static const double table[5][5] = {
        {1, 0, 0, 0, 0},
        {1, 1, 0, 0, 0},
        {1, 2, 1, 0, 0},
        {1, 3, 3, 1, 0},
        {1, 4, 6, 4, 1},
    };
    return table[n][k];
}

// Value and derivatives d[k] = f^(k) at a single point.
struct Taylor {
    std::array<double, kMaxDerivOrder + 1> d{};

    static Taylor constant(double x) {
        Taylor t;
        t.d[0] = x;
        return t;
    }
    static Taylor variable(double x) {
        Taylor t;
        t.d[0] = x;
        t.d[1] = 1.0;
        return t;
    }
};

inline Taylor operator+(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (int k = 0; k <= kMaxDerivOrder; ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
}

inline Taylor operator-(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (int k = 0; k <= kMaxDerivOrder; ++k) r.d[k] = a.d[k] - b.d[k];
    return r;
}

inline Taylor operator-(const Taylor& a) {
    Taylor r;
    for (int k = 0; k <= kMaxDerivOrder; ++k) r.d[k] = -a.d[k];
    return r;
}

inline Taylor operator*(double s, const Taylor& a) {
    Taylor r;
    for (int k = 0; k <= kMaxDerivOrder; ++k) r.d[k] = s * a.d[k];
    return r;
}

inline Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (int k = 0; k <= kMaxDerivOrder; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += binom_small(k, j) * a.d[j] * b.d[k - j];
        r.d[k] = s;
    }
    return r;
}

// Leibniz solve for q = f / g, requires g(0) != 0.
inline Taylor operator/(const Taylor& f, const Taylor& g) {
    if (g.d[0] == 0.0) throw std::domain_error("taylor: division by zero value");
    Taylor q;
    for (int k = 0; k <= kMaxDerivOrder; ++k) {
        double s = f.d[k];
        for (int j = 0; j < k; ++j) s -= binom_small(k, j) * q.d[j] * g.d[k - j];
        q.d[k] = s / g.d[0];
    }
    return q;
}

// e = exp(f) via e' = f' e.
inline Taylor texp(const Taylor& f) {
    Taylor e;
    e.d[0] = std::exp(f.d[0]);
    for (int k = 1; k <= kMaxDerivOrder; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k - 1; ++j) s += binom_small(k - 1, j) * f.d[j + 1] * e.d[k - 1 - j];
        e.d[k] = s;
    }
    return e;
}

// Derivatives in T of p(s(T)) when s is affine in T with slope ds_dT.
inline Taylor rescale_affine(const Taylor& p, double ds_dT) {
    Taylor r;
    double pw = 1.0;
    for (int k = 0; k <= kMaxDerivOrder; ++k) {
        r.d[k] = p.d[k] * pw;
        pw *= ds_dT;
    }
    return r;
}

}  // namespace carlab
