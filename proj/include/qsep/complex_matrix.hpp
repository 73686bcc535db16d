#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>

#include "qsep/errors.hpp"

namespace qsep {

using cx = std::complex<double>;

// Everything in this library lives in dimension <= 6 (a 2x3 bipartite
// system at most), so vectors and matrices use fixed-capacity storage
// and never allocate.
inline constexpr int max_dim = 6;

inline bool finite(cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class cvec {
  public:
    explicit cvec(int dim) : dim_(dim) {
        if (dim < 1 || dim > max_dim)
            throw error(errc::invalid_input, "vector dimension must be in [1,6], got " + std::to_string(dim));
        entries_.fill(cx{});
    }

    cvec(std::initializer_list<cx> xs) : cvec(static_cast<int>(xs.size())) {
        int i = 0;
        for (cx x : xs) entries_[i++] = x;
    }

    int dim() const { return dim_; }

    cx& operator[](int i) { return entries_[i]; }
    cx operator[](int i) const { return entries_[i]; }

    cvec& operator+=(const cvec& o) {
        for (int i = 0; i < dim_; ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    cvec& operator-=(const cvec& o) {
        for (int i = 0; i < dim_; ++i) entries_[i] -= o.entries_[i];
        return *this;
    }
    cvec& operator*=(cx s) {
        for (int i = 0; i < dim_; ++i) entries_[i] *= s;
        return *this;
    }

    friend cvec operator+(cvec a, const cvec& b) { return a += b; }
    friend cvec operator-(cvec a, const cvec& b) { return a -= b; }
    friend cvec operator*(cx s, cvec v) { return v *= s; }

    double norm_sq() const {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += std::norm(entries_[i]);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    cvec normalized() const {
        double n = norm();
        if (n < 1e-300) throw error(errc::invalid_input, "cannot normalize a zero vector");
        cvec out = *this;
        for (int i = 0; i < dim_; ++i) out.entries_[i] /= n;
        return out;
    }

    cvec conj() const {
        cvec out = *this;
        for (int i = 0; i < dim_; ++i) out.entries_[i] = std::conj(out.entries_[i]);
        return out;
    }

    double max_abs() const {
        double m = 0;
        for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(entries_[i]));
        return m;
    }

    bool is_finite() const {
        for (int i = 0; i < dim_; ++i)
            if (!finite(entries_[i])) return false;
        return true;
    }

  private:
    int dim_;
    std::array<cx, max_dim> entries_;
};

// <a|b>, antilinear in the first argument.
inline cx dot(const cvec& a, const cvec& b) {
    if (a.dim() != b.dim()) throw error(errc::invalid_input, "dot: dimension mismatch");
    cx s{};
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline cvec kron(const cvec& a, const cvec& b) {
    int d = a.dim() * b.dim();
    if (d > max_dim) throw error(errc::invalid_input, "kron: result dimension exceeds 6");
    cvec out(d);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

class cmat {
  public:
    cmat(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 1 || rows > max_dim || cols < 1 || cols > max_dim)
            throw error(errc::invalid_input, "matrix dimensions must be in [1,6]");
        entries_.fill(cx{});
    }

    // Row-major construction from nested braces.
    cmat(std::initializer_list<std::initializer_list<cx>> rows)
        : cmat(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size())) {
        int i = 0;
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw error(errc::invalid_input, "ragged initializer");
            int j = 0;
            for (cx x : r) (*this)(i, j++) = x;
            ++i;
        }
    }

    static cmat identity(int n) {
        cmat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static cmat diag(std::initializer_list<cx> d) {
        cmat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        int i = 0;
        for (cx x : d) m(i, i) = x, ++i;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cx& operator()(int i, int j) { return entries_[i * cols_ + j]; }
    cx operator()(int i, int j) const { return entries_[i * cols_ + j]; }

    cmat& operator+=(const cmat& o) {
        for (int k = 0; k < rows_ * cols_; ++k) entries_[k] += o.entries_[k];
        return *this;
    }
    cmat& operator-=(const cmat& o) {
        for (int k = 0; k < rows_ * cols_; ++k) entries_[k] -= o.entries_[k];
        return *this;
    }
    cmat& operator*=(cx s) {
        for (int k = 0; k < rows_ * cols_; ++k) entries_[k] *= s;
        return *this;
    }

    friend cmat operator+(cmat a, const cmat& b) { return a += b; }
    friend cmat operator-(cmat a, const cmat& b) { return a -= b; }
    friend cmat operator*(cx s, cmat m) { return m *= s; }

    friend cmat operator*(const cmat& a, const cmat& b) {
        if (a.cols_ != b.rows_) throw error(errc::invalid_input, "matmul: dimension mismatch");
        cmat out(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                cx aik = a(i, k);
                for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend cvec operator*(const cmat& m, const cvec& v) {
        if (m.cols_ != v.dim()) throw error(errc::invalid_input, "matvec: dimension mismatch");
        cvec out(m.rows_);
        for (int i = 0; i < m.rows_; ++i) {
            cx s{};
            for (int j = 0; j < m.cols_; ++j) s += m(i, j) * v[j];
            out[i] = s;
        }
        return out;
    }

    cmat adjoint() const {
        cmat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    cmat transpose() const {
        cmat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    cmat conj() const {
        cmat out = *this;
        for (int k = 0; k < rows_ * cols_; ++k) out.entries_[k] = std::conj(out.entries_[k]);
        return out;
    }

    cx trace() const {
        cx s{};
        for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
        return s;
    }

    double max_abs() const {
        double m = 0;
        for (int k = 0; k < rows_ * cols_; ++k) m = std::max(m, std::abs(entries_[k]));
        return m;
    }

    bool is_finite() const {
        for (int k = 0; k < rows_ * cols_; ++k)
            if (!finite(entries_[k])) return false;
        return true;
    }

    cvec col(int j) const {
        cvec out(rows_);
        for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    void set_col(int j, const cvec& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

  private:
    int rows_, cols_;
    std::array<cx, max_dim * max_dim> entries_;
};

// |v><v|
inline cmat outer(const cvec& v) {
    cmat out(v.dim(), v.dim());
    for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

inline cmat kron(const cmat& a, const cmat& b) {
    int r = a.rows() * b.rows(), c = a.cols() * b.cols();
    if (r > max_dim || c > max_dim)
        throw error(errc::invalid_input, "kron: result dimension exceeds 6");
    cmat out(r, c);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline cx det2(const cmat& m) {
    if (m.rows() != 2 || m.cols() != 2) throw error(errc::invalid_input, "det2 expects a 2x2 matrix");
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

// (m + m^dag)/2
inline cmat hermitize(const cmat& m) {
    cmat out = m;
    out += m.adjoint();
    out *= 0.5;
    return out;
}

inline double max_abs_diff(const cmat& a, const cmat& b) {
    cmat d = a;
    d -= b;
    return d.max_abs();
}

}  // namespace qsep
