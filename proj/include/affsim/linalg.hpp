#pragma once

// Dense exact linear algebra over an ExactField scalar.

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "affsim/errors.hpp"
#include "affsim/scalar.hpp"

namespace affsim {

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

template <typename S>
Matrix<S> zero_matrix(Index rows, Index cols) {
    return Matrix<S>::Constant(rows, cols, S(0));
}

template <typename S>
Matrix<S> identity_matrix(Index n) {
    Matrix<S> m = zero_matrix<S>(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
}

template <typename S>
bool is_zero(const Matrix<S>& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <typename S>
bool is_zero(const Vector<S>& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return false;
    return true;
}

/// Exact product. Skips zero entries, which dominate the block-structured
/// operands this library multiplies.
template <typename S>
Matrix<S> mat_mul(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.cols() != b.rows())
        throw ShapeError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Matrix<S> out = zero_matrix<S>(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k) {
            const S& aik = a(i, k);
            if (is_zero(aik)) continue;
            for (Index j = 0; j < b.cols(); ++j)
                if (!is_zero(b(k, j))) out(i, j) += aik * b(k, j);
        }
    return out;
}

template <typename S>
struct RrefResult {
    Matrix<S> reduced;
    Index rank = 0;
    std::vector<Index> pivot_cols;
};

/// Reduced row-echelon form. The pivot in each column is the first nonzero
/// entry at or below the current row, so the result depends only on the input.
template <typename S>
RrefResult<S> rref(Matrix<S> m) {
    RrefResult<S> out;
    Index row = 0;
    for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Index pivot = row;
        while (pivot < m.rows() && is_zero(m(pivot, col))) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row) m.row(pivot).swap(m.row(row));

        const S inv = inverse(m(row, col));
        for (Index j = col; j < m.cols(); ++j)
            if (!is_zero(m(row, j))) m(row, j) *= inv;

        for (Index r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m(r, col))) continue;
            const S factor = m(r, col);
            for (Index j = col; j < m.cols(); ++j)
                if (!is_zero(m(row, j))) m(r, j) -= factor * m(row, j);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = row;
    out.reduced = std::move(m);
    return out;
}

template <typename S>
Index rank(const Matrix<S>& m) {
    return rref(m).rank;
}

/// Basis of the right null space, one vector per column of the result
/// (cols - rank columns). Column f has a 1 in free coordinate f.
template <typename S>
Matrix<S> kernel(const Matrix<S>& m) {
    const auto r = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (Index c : r.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    Matrix<S> basis = zero_matrix<S>(m.cols(), m.cols() - r.rank);
    Index out = 0;
    for (Index free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        basis(free, out) = S(1);
        for (Index k = 0; k < r.rank; ++k) basis(r.pivot_cols[static_cast<std::size_t>(k)], out) = -r.reduced(k, free);
        ++out;
    }
    return basis;
}

enum class CharPolyMethod { Auto, FaddeevLeVerrier, Hessenberg };

namespace detail {

template <typename S>
S trace(const Matrix<S>& m) {
    S t(0);
    for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
template <typename S>
std::vector<S> char_poly_faddeev(const Matrix<S>& a) {
    const Index n = a.rows();
    std::vector<S> c(static_cast<std::size_t>(n + 1), S(0));
    c[static_cast<std::size_t>(n)] = S(1);
    Matrix<S> m = zero_matrix<S>(n, n);
    for (Index k = 1; k <= n; ++k) {
        m = mat_mul(a, m);
        for (Index i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
        c[static_cast<std::size_t>(n - k)] = -trace(mat_mul(a, m)) / S(static_cast<int>(k));
    }
    return c;
}

// Similarity reduction to upper Hessenberg form followed by the standard
// determinant recurrence; valid over any field.
template <typename S>
std::vector<S> char_poly_hessenberg(Matrix<S> h) {
    const Index n = h.rows();
    for (Index m = 1; m + 1 < n; ++m) {
        Index i = m;
        while (i < n && is_zero(h(i, m - 1))) ++i;
        if (i == n) continue;
        if (i != m) {
            h.row(i).swap(h.row(m));
            h.col(i).swap(h.col(m));
        }
        const S pivot_inv = inverse(h(m, m - 1));
        for (Index r = m + 1; r < n; ++r) {
            if (is_zero(h(r, m - 1))) continue;
            const S u = h(r, m - 1) * pivot_inv;
            h.row(r) -= u * h.row(m);
            h.col(m) += u * h.col(r);
        }
    }

    // p[k] is the characteristic polynomial of the leading k x k block.
    std::vector<std::vector<S>> p(static_cast<std::size_t>(n + 1));
    p[0] = {S(1)};
    for (Index m = 1; m <= n; ++m) {
        auto& cur = p[static_cast<std::size_t>(m)];
        const auto& prev = p[static_cast<std::size_t>(m - 1)];
        cur.assign(static_cast<std::size_t>(m + 1), S(0));
        for (std::size_t k = 0; k < prev.size(); ++k) {
            cur[k + 1] += prev[k];
            cur[k] -= h(m - 1, m - 1) * prev[k];
        }
        S sub(1);
        for (Index i = m - 1; i >= 1; --i) {
            sub *= h(i, i - 1);
            const S coef = h(i - 1, m - 1) * sub;
            if (is_zero(coef)) continue;
            const auto& lower = p[static_cast<std::size_t>(i - 1)];
            for (std::size_t k = 0; k < lower.size(); ++k) cur[k] -= coef * lower[k];
        }
    }
    return p[static_cast<std::size_t>(n)];
}

}  // namespace detail

/// Characteristic polynomial det(tI - m), coefficients in ascending degree;
/// the last coefficient is 1. Auto selects Faddeev-LeVerrier in
/// characteristic 0 and Hessenberg reduction otherwise.
template <typename S>
std::vector<S> char_poly(const Matrix<S>& m, CharPolyMethod method = CharPolyMethod::Auto) {
    if (m.rows() != m.cols())
        throw ShapeError("char_poly: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    const auto p = FieldTraits<S>::characteristic();
    if (method == CharPolyMethod::Auto)
        method = p == 0 ? CharPolyMethod::FaddeevLeVerrier : CharPolyMethod::Hessenberg;
    if (method == CharPolyMethod::FaddeevLeVerrier) {
        if (p != 0 && p <= static_cast<std::uint64_t>(m.rows()))
            throw UnsupportedFieldError("Faddeev-LeVerrier needs characteristic 0 or > " + std::to_string(m.rows()) +
                                        ", got " + std::to_string(p));
        return detail::char_poly_faddeev(m);
    }
    return detail::char_poly_hessenberg(m);
}

/// Horner evaluation of an ascending-coefficient polynomial at a square matrix.
template <typename S>
Matrix<S> poly_eval(const std::vector<S>& coeffs, const Matrix<S>& m) {
    Matrix<S> acc = zero_matrix<S>(m.rows(), m.cols());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = mat_mul(acc, m);
        for (Index i = 0; i < m.rows(); ++i) acc(i, i) += *it;
    }
    return acc;
}

}  // namespace affsim
