#pragma once

#include "epsum/rational_function.hpp"

#include <optional>
#include <vector>

namespace epsum {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline bool is_zero_value(const Rational& q) { return q == 0; }
inline bool is_zero_value(const RationalFunction& f) { return f.is_zero(); }

inline std::size_t size_of(const Rational& q) { return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2); }
inline std::size_t size_of(const RationalFunction& f) { return f.num().terms().size() + f.den().terms().size(); }

/// Row echelon reduction in place; returns pivot columns. Rows of rhs follow the row operations.
template <class T, class V>
std::vector<std::size_t> reduce_rows(Matrix<T>& a, std::vector<V>* rhs)
{
    std::vector<std::size_t> pivots;
    std::size_t rows = a.size(), row = 0;
    std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t best = rows;
        for (std::size_t r = row; r < rows; ++r) {
            if (is_zero_value(a[r][col])) continue;
            if (best == rows || size_of(a[r][col]) < size_of(a[best][col])) best = r;
        }
        if (best == rows) continue;
        std::swap(a[row], a[best]);
        if (rhs) std::swap((*rhs)[row], (*rhs)[best]);
        T inv = T(1) / a[row][col];
        for (std::size_t c = col; c < cols; ++c) a[row][c] *= inv;
        if (rhs) (*rhs)[row] = (*rhs)[row] * inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || is_zero_value(a[r][col])) continue;
            T f = a[r][col];
            for (std::size_t c = col; c < cols; ++c)
                if (!is_zero_value(a[row][c])) a[r][c] -= f * a[row][c];
            if (rhs) (*rhs)[r] = (*rhs)[r] - (*rhs)[row] * f;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Some solution of a x = b (free variables set to zero), or nothing if inconsistent.
template <class T, class V>
std::optional<std::vector<V>> solve_linear(Matrix<T> a, std::vector<V> b, const V& zero)
{
    std::size_t cols = a.empty() ? 0 : a[0].size();
    auto pivots = reduce_rows(a, &b);
    for (std::size_t r = pivots.size(); r < b.size(); ++r)
        if (!(b[r] == zero)) return std::nullopt;
    std::vector<V> x(cols, zero);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
    return x;
}

/// Basis of {x : a x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a, std::size_t cols)
{
    auto pivots = reduce_rows<T, T>(a, nullptr);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(cols, T(0));
        v[free] = T(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a)
{
    std::size_t n = a.size();
    Matrix<T> aug(n, std::vector<T>(2 * n, T(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = T(1);
    }
    auto pivots = reduce_rows<T, T>(aug, nullptr);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<T> inv(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

template <class T>
std::size_t rank(Matrix<T> a)
{
    return reduce_rows<T, T>(a, nullptr).size();
}

}  // namespace epsum
