#pragma once

// Small dense matrices over R^{2n} (n <= 4 in practice) for almost complex
// structures and the complex<->real vector view.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace carlab {

using Vec = std::vector<double>;

struct Mat {
    int n = 0;  // square, n x n
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline Mat operator+(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
    return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (size_t k = 0; k < r.a.size(); ++k) r.a[k] = x.a[k] - y.a[k];
    return r;
}

inline Mat operator*(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

inline Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

inline Vec operator*(const Mat& m, const Vec& v) {
    Vec r(static_cast<size_t>(m.n), 0.0);
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.n; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline double max_abs(const Mat& m) {
    double r = 0.0;
    for (double v : m.a) r = std::max(r, std::abs(v));
    return r;
}

inline double max_abs(const Vec& v) {
    double r = 0.0;
    for (double x : v) r = std::max(r, std::abs(x));
    return r;
}

// Gauss-Jordan with partial pivoting.
inline Mat inverse(const Mat& m) {
    const int n = m.n;
    Mat a = m;
    Mat inv = Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-14) throw std::domain_error("inverse: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const double d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Interleaved view: C^n vector (z_0,...,z_{n-1}) <-> R^{2n} with
// x[2j] = Re z_j, x[2j+1] = Im z_j.
inline Vec to_real(const std::vector<std::complex<double>>& z) {
    Vec x(z.size() * 2);
    for (size_t j = 0; j < z.size(); ++j) {
        x[2 * j] = z[j].real();
        x[2 * j + 1] = z[j].imag();
    }
    return x;
}

inline std::vector<std::complex<double>> to_complex(const Vec& x) {
    std::vector<std::complex<double>> z(x.size() / 2);
    for (size_t j = 0; j < z.size(); ++j) z[j] = {x[2 * j], x[2 * j + 1]};
    return z;
}

// Multiplication by i in the interleaved view.
inline Mat standard_j0(int n) {
    Mat m(2 * n);
    for (int j = 0; j < n; ++j) {
        m(2 * j, 2 * j + 1) = -1.0;
        m(2 * j + 1, 2 * j) = 1.0;
    }
    return m;
}

inline double euclid_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace carlab
