#include "qgroup/linalg.hpp"

namespace qgroup {

ModP ModP::from_mpz(const mpz_class& z) {
    return ModP(mpz_fdiv_ui(z.get_mpz_t(), P));
}

ModP ModP::pow(uint64_t e) const {
    ModP result(1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

ModP eval_mod(const IntPoly& p, ModP point) {
    if (p.is_zero()) return ModP();
    ModP acc;
    // Horner from the top, then scale by point^low.
    for (int e = p.high(); e >= p.low(); --e) acc = acc * point + ModP::from_mpz(p.coeff(e));
    int low = p.low();
    ModP scale = low >= 0 ? point.pow(static_cast<uint64_t>(low))
                          : point.inverse().pow(static_cast<uint64_t>(-low));
    return acc * scale;
}

BareissResult bareiss_solve(const Matrix<IntPoly>& a, const Matrix<IntPoly>& b) {
    const size_t n = a.size();
    const size_t m = n ? b[0].size() : 0;
    Matrix<IntPoly> w(n, std::vector<IntPoly>(n + m));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) w[i][j] = a[i][j];
        for (size_t j = 0; j < m; ++j) w[i][n + j] = b[i][j];
    }
    IntPoly prev(1);
    bool negate = false;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && w[p][k].is_zero()) ++p;
        if (p == n) throw std::domain_error("bareiss_solve: singular matrix");
        if (p != k) {
            std::swap(w[p], w[k]);
            negate = !negate;
        }
        const IntPoly piv = w[k][k];
        for (size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const IntPoly f = w[i][k];
            for (size_t j = 0; j < n + m; ++j) {
                if (j == k) continue;
                IntPoly t = piv * w[i][j];
                if (!f.is_zero() && !w[k][j].is_zero()) t -= f * w[k][j];
                w[i][j] = t.div_exact(prev);
            }
            w[i][k] = IntPoly();
        }
        prev = piv;
    }
    // Every diagonal entry now equals the last pivot, which is +-det(a).
    BareissResult out;
    out.det = negate ? -prev : prev;
    out.numer.assign(n, std::vector<IntPoly>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) out.numer[i][j] = negate ? -w[i][n + j] : w[i][n + j];
    return out;
}

}  // namespace qgroup
