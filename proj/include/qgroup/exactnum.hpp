#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qgroup {

/// Laurent polynomial with arbitrary-precision integer coefficients,
/// an element of Z[v, v^-1].
///
/// Stored densely: coeffs_[k] is the coefficient of v^(low_ + k). The
/// zero polynomial has no coefficients; otherwise the first and last
/// stored coefficients are nonzero.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(long c);  // NOLINT(google-explicit-constructor)
    explicit IntPoly(const mpz_class& c);

    static IntPoly monomial(const mpz_class& c, int exponent);
    static IntPoly from_terms(const std::map<int, mpz_class>& terms);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return coeffs_.size() == 1; }
    bool is_constant() const { return is_zero() || (coeffs_.size() == 1 && low_ == 0); }

    /// Lowest / highest exponent carrying a nonzero coefficient. Zero for the zero polynomial.
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    mpz_class coeff(int exponent) const;
    const mpz_class& leading() const { return coeffs_.back(); }
    const mpz_class& trailing() const { return coeffs_.front(); }
    std::map<int, mpz_class> terms() const;

    /// Positive gcd of the coefficients (0 for the zero polynomial).
    mpz_class content() const;

    IntPoly shifted(int k) const;
    /// Substitute v -> v^-1.
    IntPoly bar() const;
    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly& operator*=(const mpz_class& c);

    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(IntPoly a, const mpz_class& c) { return a *= c; }

    /// Exact division by an integer; throws if some coefficient is not divisible.
    IntPoly div_exact(const mpz_class& c) const;
    /// Exact division by a polynomial; throws if the division leaves a remainder.
    IntPoly div_exact(const IntPoly& d) const;

    /// gcd in Q[v, v^-1], normalized to a primitive polynomial with low()==0
    /// and positive leading coefficient. gcd(0, 0) is 0.
    static IntPoly primitive_gcd(const IntPoly& a, const IntPoly& b);

    mpq_class eval(const mpq_class& x) const;

    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;
    friend std::strong_ordering operator<=>(const IntPoly& a, const IntPoly& b);

    /// Descending exponents, e.g. "v^2 + 1 + v^-2", "-3*v^-1".
    std::string to_string() const;

private:
    void trim();

    int low_ = 0;
    std::vector<mpz_class> coeffs_;
};

/// An element of Q(v), kept as a canonical reduced fraction.
///
/// Canonical form: numerator and denominator share no common factor in
/// Z[v, v^-1] (neither a polynomial factor nor an integer one), the
/// denominator is an ordinary polynomial with nonzero constant term, and its
/// leading coefficient is positive. Equal values are therefore structurally
/// equal.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFunc(const IntPoly& p);             // NOLINT(google-explicit-constructor)

    /// Canonical representative of n/d. Throws std::domain_error if d == 0.
    static RatFunc make(const IntPoly& n, const IntPoly& d);
    /// c * v^k
    static RatFunc v_pow(int k, long c = 1);
    static RatFunc rational(const mpq_class& q);

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(int e) const;
    /// Substitute v -> v^-1.
    RatFunc bar() const { return make(num_.bar(), den_.bar()); }

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);

    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) = default;
    friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b);

    /// Substitute a rational value for v. Throws std::domain_error if the
    /// denominator vanishes there.
    mpq_class eval(const mpq_class& x) const;

    /// "v + v^-1", "(v^2 + 1)/(v - 1)", "1/2".
    std::string to_string() const;
    /// Accepts the output grammar of to_string plus + - * / ^ and parentheses.
    static RatFunc parse(std::string_view text);

private:
    RatFunc(IntPoly n, IntPoly d, int) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize();

    IntPoly num_;
    IntPoly den_;
};

/// Render c * monomial for use inside a sum: "th1", "-th1", "2*v*th1",
/// "(v + v^-1)*th1". An empty monomial renders the coefficient alone.
std::string format_term(const RatFunc& c, const std::string& monomial);
/// Join rendered terms with " + " / " - "; an empty list renders as "0".
std::string join_terms(const std::vector<std::string>& terms);

/// [n]_v = (v^n - v^-n) / (v - v^-1)
RatFunc qint(int n);
/// [1]_v [2]_v ... [n]_v. Throws std::domain_error for negative n.
RatFunc qfact(int n);
/// Gaussian binomial [n k]_v = prod_{j<k} [n-j]_v / [k]_v!, defined for every
/// integer n. Zero for k > n >= 0; throws std::domain_error for k < 0.
RatFunc qbinom(int n, int k);

}  // namespace qgroup
