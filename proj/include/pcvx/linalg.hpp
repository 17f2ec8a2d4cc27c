#pragma once

#include "pcvx/rational.hpp"
#include "pcvx/registry.hpp"

#include <vector>

namespace pcvx {

/// Dense exact matrix over a field (Rational or GaussianRational).
template <typename F>
using Mat = std::vector<std::vector<F>>;

template <typename F>
Mat<F> make_mat(int rows, int cols) {
    return Mat<F>(rows, std::vector<F>(cols, F(0)));
}

namespace detail {
inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }
}  // namespace detail

/// In-place reduced row echelon form. Returns pivot column indices (their
/// count is the rank).
template <typename F>
std::vector<int> rref(Mat<F>& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!detail::is_zero(a[i][c])) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        F inv = F(1) / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || detail::is_zero(a[i][c])) continue;
            F f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename F>
int rank(Mat<F> a) {
    return static_cast<int>(rref(a).size());
}

/// Canonical kernel basis from the RREF: one vector per free column, with a
/// 1 in the free slot. Basis order follows ascending free-column index.
template <typename F>
std::vector<std::vector<F>> nullspace(Mat<F> a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    auto pivots = rref(a);
    std::vector<int> pivot_of_col(cols, -1);
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) pivot_of_col[pivots[i]] = i;
    std::vector<std::vector<F>> basis;
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<F> v(cols, F(0));
        v[c] = F(1);
        for (int p = 0; p < static_cast<int>(pivots.size()); ++p)
            v[pivots[p]] = -a[p][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <typename F>
F determinant(Mat<F> a) {
    const int n = static_cast<int>(a.size());
    F det(1);
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (!detail::is_zero(a[i][c])) { pr = i; break; }
        if (pr < 0) return F(0);
        if (pr != c) {
            std::swap(a[c], a[pr]);
            det = -det;
        }
        det = det * a[c][c];
        F inv = F(1) / a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (detail::is_zero(a[i][c])) continue;
            F f = a[i][c] * inv;
            for (int j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return det;
}

/// Determinant of the principal submatrix indexed by rows/cols in `idx`.
template <typename F>
F principal_minor(const Mat<F>& a, const std::vector<int>& idx) {
    const int n = static_cast<int>(idx.size());
    Mat<F> sub = make_mat<F>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sub[i][j] = a[idx[i]][idx[j]];
    return determinant(std::move(sub));
}

/// Real value of a determinant of a Hermitian Gaussian-rational matrix;
/// throws if a nonzero imaginary part shows up (it cannot, structurally).
Rational hermitian_minor(const Mat<GaussianRational>& h, const std::vector<int>& idx);

/// Sylvester test: all leading principal minors strictly positive.
bool is_positive_definite(const Mat<GaussianRational>& h, Rational* min_minor = nullptr);

/// Non-strict PSD: every principal minor (all 2^n - 1 of them) nonnegative.
bool is_positive_semidefinite(const Mat<GaussianRational>& h, Rational* min_minor = nullptr);

}  // namespace pcvx
