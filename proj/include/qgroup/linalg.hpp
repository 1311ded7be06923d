#pragma once

#include "qgroup/exactnum.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qgroup {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline bool is_zero_elem(const RatFunc& x) { return x.is_zero(); }
inline bool is_zero_elem(const mpq_class& x) { return sgn(x) == 0; }

/// Integers modulo the Mersenne prime 2^61 - 1; used to evaluate Laurent
/// polynomials at a random point for fast rank probing.
struct ModP {
    static constexpr uint64_t P = (uint64_t{1} << 61) - 1;
    uint64_t x = 0;

    ModP() = default;
    explicit ModP(uint64_t a) : x(a % P) {}
    static ModP from_mpz(const mpz_class& z);

    friend ModP operator+(ModP a, ModP b) {
        uint64_t s = a.x + b.x;
        if (s >= P) s -= P;
        ModP r;
        r.x = s;
        return r;
    }
    friend ModP operator-(ModP a, ModP b) {
        ModP r;
        r.x = a.x >= b.x ? a.x - b.x : a.x + P - b.x;
        return r;
    }
    friend ModP operator*(ModP a, ModP b) {
        unsigned __int128 m = static_cast<unsigned __int128>(a.x) * b.x;
        uint64_t lo = static_cast<uint64_t>(m & P), hi = static_cast<uint64_t>(m >> 61);
        uint64_t s = lo + hi;
        if (s >= P) s -= P;
        ModP r;
        r.x = s;
        return r;
    }
    ModP& operator+=(ModP o) { return *this = *this + o; }
    ModP& operator-=(ModP o) { return *this = *this - o; }
    ModP& operator*=(ModP o) { return *this = *this * o; }
    ModP pow(uint64_t e) const;
    ModP inverse() const { return pow(P - 2); }
    ModP operator-() const { return ModP() - *this; }
    friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
    ModP& operator/=(ModP o) { return *this = *this / o; }
    friend bool operator==(ModP a, ModP b) { return a.x == b.x; }
};

inline bool is_zero_elem(ModP x) { return x.x == 0; }

/// Value of a Laurent polynomial at v = point (point must be nonzero).
ModP eval_mod(const IntPoly& p, ModP point);

/// In-place reduced row echelon form over a field. Returns the pivot
/// columns; row k of the result has its leading 1 in column pivots[k].
template <class T>
std::vector<size_t> rref(Matrix<T>& m) {
    std::vector<size_t> pivots;
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = rows;
        for (size_t i = r; i < rows; ++i)
            if (!is_zero_elem(m[i][c])) {
                p = i;
                break;
            }
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        T inv = T(1) / m[r][c];
        for (size_t j = c; j < cols; ++j)
            if (!is_zero_elem(m[r][j])) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero_elem(m[i][c])) continue;
            T f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                if (!is_zero_elem(m[r][j])) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
size_t rank(Matrix<T> m) {
    return rref(m).size();
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column,
/// with a 1 in that column.
template <class T>
std::vector<std::vector<T>> kernel(Matrix<T> m, size_t cols) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<T>> out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> x(cols, T(0));
        x[f] = T(1);
        for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = T(0) - m[k][f];
        out.push_back(std::move(x));
    }
    return out;
}

/// Solve a x = b for square nonsingular a; nullopt when a is singular.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
    const size_t n = a.size();
    Matrix<T> aug(n, std::vector<T>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve: matrix is not square");
        for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n] = b[i];
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || (n && pivots.back() >= n)) return std::nullopt;
    std::vector<T> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

/// Fraction-free Gauss-Jordan over Z[v, v^-1]: for square a and any b,
/// returns det(a) and the numerators det(a) * a^-1 * b (all exact).
/// Throws std::domain_error if a is singular.
struct BareissResult {
    IntPoly det;
    Matrix<IntPoly> numer;
};
BareissResult bareiss_solve(const Matrix<IntPoly>& a, const Matrix<IntPoly>& b);

}  // namespace qgroup
