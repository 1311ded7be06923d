#include "qgroup/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qgroup {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(long c) {
    if (c != 0) coeffs_.emplace_back(c);
}

IntPoly::IntPoly(const mpz_class& c) {
    if (c != 0) coeffs_.push_back(c);
}

IntPoly IntPoly::monomial(const mpz_class& c, int exponent) {
    IntPoly p(c);
    if (!p.is_zero()) p.low_ = exponent;
    return p;
}

IntPoly IntPoly::from_terms(const std::map<int, mpz_class>& terms) {
    IntPoly p;
    if (terms.empty()) return p;
    p.low_ = terms.begin()->first;
    p.coeffs_.assign(static_cast<size_t>(terms.rbegin()->first - p.low_ + 1), mpz_class(0));
    for (const auto& [e, c] : terms) p.coeffs_[static_cast<size_t>(e - p.low_)] += c;
    p.trim();
    return p;
}

void IntPoly::trim() {
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    size_t end = coeffs_.size();
    while (coeffs_[end - 1] == 0) --end;
    coeffs_.resize(end);
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        low_ += static_cast<int>(lead);
    }
}

bool IntPoly::is_one() const { return coeffs_.size() == 1 && low_ == 0 && coeffs_[0] == 1; }

mpz_class IntPoly::coeff(int exponent) const {
    if (is_zero() || exponent < low_ || exponent > high()) return 0;
    return coeffs_[static_cast<size_t>(exponent - low_)];
}

std::map<int, mpz_class> IntPoly::terms() const {
    std::map<int, mpz_class> out;
    for (size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) out.emplace(low_ + static_cast<int>(k), coeffs_[k]);
    return out;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& c : coeffs_) {
        if (c == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::shifted(int k) const {
    IntPoly p = *this;
    if (!p.is_zero()) p.low_ += k;
    return p;
}

IntPoly IntPoly::operator-() const {
    IntPoly p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    if (lo < low_) {
        coeffs_.insert(coeffs_.begin(), static_cast<size_t>(low_ - lo), mpz_class(0));
        low_ = lo;
    }
    if (static_cast<int>(coeffs_.size()) < hi - lo + 1) coeffs_.resize(static_cast<size_t>(hi - lo + 1));
    for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[static_cast<size_t>(o.low_ - lo) + k] += o.coeffs_[k];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) { return *this += -o; }

IntPoly& IntPoly::operator*=(const mpz_class& c) {
    if (c == 0) {
        coeffs_.clear();
        low_ = 0;
        return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
}

namespace {

mpz_class from_i128(__int128 x) {
    if (x >= INT64_MIN && x <= INT64_MAX) return mpz_class(static_cast<long>(x));
    const bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

// Schoolbook product in 128-bit arithmetic when no partial sum can overflow.
std::optional<std::vector<mpz_class>> small_product(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<long> x(a.size()), y(b.size());
    unsigned long mx = 0, my = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i].fits_slong_p() || mpz_sizeinbase(a[i].get_mpz_t(), 2) > 60) return std::nullopt;
        x[i] = a[i].get_si();
        mx = std::max(mx, static_cast<unsigned long>(x[i] < 0 ? -x[i] : x[i]));
    }
    for (size_t j = 0; j < b.size(); ++j) {
        if (!b[j].fits_slong_p() || mpz_sizeinbase(b[j].get_mpz_t(), 2) > 60) return std::nullopt;
        y[j] = b[j].get_si();
        my = std::max(my, static_cast<unsigned long>(y[j] < 0 ? -y[j] : y[j]));
    }
    const unsigned __int128 bound = static_cast<unsigned __int128>(mx) * my * std::min(a.size(), b.size());
    if (bound >> 126) return std::nullopt;
    std::vector<__int128> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) acc[i + j] += static_cast<__int128>(x[i]) * y[j];
    }
    std::vector<mpz_class> out;
    out.reserve(acc.size());
    for (__int128 c : acc) out.push_back(from_i128(c));
    return out;
}

}  // namespace

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.low_ = a.low_ + b.low_;
    if (auto fast = small_product(a.coeffs_, b.coeffs_)) {
        p.coeffs_ = std::move(*fast);
        p.trim();
        return p;
    }
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(p.coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    p.trim();
    return p;
}

IntPoly IntPoly::bar() const {
    IntPoly p;
    p.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    p.low_ = is_zero() ? 0 : -high();
    return p;
}

IntPoly IntPoly::div_exact(const mpz_class& c) const {
    if (c == 0) throw std::domain_error("IntPoly: division by zero");
    IntPoly p = *this;
    for (auto& x : p.coeffs_) {
        if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
            throw std::domain_error("IntPoly: inexact integer division");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return p;
}

IntPoly IntPoly::div_exact(const IntPoly& d) const {
    if (d.is_zero()) throw std::domain_error("IntPoly: division by zero polynomial");
    if (is_zero()) return {};
    if (d.is_monomial()) return div_exact(d.coeffs_[0]).shifted(-d.low_);
    // Long division from the top, working on the dense coefficient arrays.
    std::vector<mpz_class> rem = coeffs_;
    const size_t dn = d.coeffs_.size();
    if (rem.size() < dn) throw std::domain_error("IntPoly: inexact polynomial division");
    std::vector<mpz_class> quot(rem.size() - dn + 1);
    for (size_t k = quot.size(); k-- > 0;) {
        mpz_class& top = rem[k + dn - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), d.coeffs_.back().get_mpz_t()))
            throw std::domain_error("IntPoly: inexact polynomial division");
        mpz_divexact(quot[k].get_mpz_t(), top.get_mpz_t(), d.coeffs_.back().get_mpz_t());
        for (size_t j = 0; j < dn; ++j)
            mpz_submul(rem[k + j].get_mpz_t(), quot[k].get_mpz_t(), d.coeffs_[j].get_mpz_t());
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("IntPoly: inexact polynomial division");
    IntPoly q;
    q.coeffs_ = std::move(quot);
    q.low_ = low_ - d.low_;
    q.trim();
    return q;
}

namespace {

// Dense ordinary polynomial helpers for the gcd (index = degree).
using Dense = std::vector<mpz_class>;

void make_primitive(Dense& p) {
    mpz_class g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Pseudo-remainder of a by b (deg a >= deg b, b nonzero).
Dense pseudo_rem(Dense a, const Dense& b) {
    const size_t db = b.size() - 1;
    const mpz_class& lb = b.back();
    while (a.size() >= b.size()) {
        const mpz_class la = a.back();
        const size_t shift = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (size_t j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

}  // namespace

IntPoly IntPoly::primitive_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero() || b.is_zero()) {
        IntPoly g = a.is_zero() ? b : a;
        g = g.div_exact(g.content()).shifted(-g.low_);
        if (g.leading() < 0) g = -g;
        return g;
    }
    if (a.coeffs_.size() == 1 || b.coeffs_.size() == 1) return IntPoly(1);
    Dense x = a.coeffs_, y = b.coeffs_;
    make_primitive(x);
    make_primitive(y);
    if (x.size() < y.size()) std::swap(x, y);
    while (y.size() > 1) {
        Dense r = pseudo_rem(x, y);
        if (r.empty()) break;
        // strip factors of v so the remainder stays an ordinary polynomial
        size_t lead = 0;
        while (r[lead] == 0) ++lead;
        r.erase(r.begin(), r.begin() + static_cast<long>(lead));
        make_primitive(r);
        x = std::move(y);
        y = std::move(r);
    }
    IntPoly g;
    if (y.size() == 1) return IntPoly(1);
    g.coeffs_ = std::move(y);
    g.trim();
    g.low_ = 0;
    if (g.leading() < 0) g = -g;
    return g;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
    if (is_zero()) return 0;
    if (x == 0 && low_ < 0) throw std::domain_error("IntPoly: evaluation of negative power at 0");
    mpq_class acc = 0;
    for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + mpq_class(coeffs_[k]);
    // acc = sum c_k x^k; multiply by x^low
    mpq_class scale = 1;
    mpq_class base = low_ >= 0 ? x : mpq_class(1) / x;
    for (int e = 0; e < std::abs(low_); ++e) scale *= base;
    return acc * scale;
}

std::strong_ordering operator<=>(const IntPoly& a, const IntPoly& b) {
    if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
    if (auto c = a.low_ <=> b.low_; c != 0) return c;
    for (size_t k = a.coeffs_.size(); k-- > 0;) {
        const int s = cmp(a.coeffs_[k], b.coeffs_[k]);
        if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (size_t k = coeffs_.size(); k-- > 0;) {
        const mpz_class& c = coeffs_[k];
        if (c == 0) continue;
        const int e = low_ + static_cast<int>(k);
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (e == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += "v";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const IntPoly& p) : num_(p), den_(1) {}

RatFunc RatFunc::make(const IntPoly& n, const IntPoly& d) {
    if (d.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    RatFunc r(n, d, 0);
    r.normalize();
    return r;
}

RatFunc RatFunc::v_pow(int k, long c) { return RatFunc(IntPoly::monomial(c, k)); }

RatFunc RatFunc::rational(const mpq_class& q) {
    return make(IntPoly(q.get_num()), IntPoly(q.get_den()));
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = IntPoly(1);
        return;
    }
    // Move powers of v so the denominator is an ordinary polynomial with nonzero constant term.
    if (den_.low() != 0) {
        const int s = -den_.low();
        num_ = num_.shifted(s);
        den_ = den_.shifted(s);
    }
    if (!den_.is_constant()) {
        IntPoly g = IntPoly::primitive_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.div_exact(g);
            den_ = den_.div_exact(g);
        }
    }
    mpz_class cn = num_.content(), cd = den_.content();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (den_.leading() < 0) g = -g;
    if (g != 1) {
        num_ = num_.div_exact(g);
        den_ = den_.div_exact(g);
    }
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, 0); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return make(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc result(1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (!den_.is_one()) normalize();
        else if (num_.is_zero()) den_ = IntPoly(1);
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = RatFunc();
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    if (o.num_.is_monomial() && o.den_.is_one()) {
        // c v^k: only the integer content can cancel
        num_ = (num_ * o.num_.trailing()).shifted(o.num_.low());
        normalize();
        return *this;
    }
    // Cross-cancel before multiplying to keep the gcds small.
    IntPoly g1 = IntPoly::primitive_gcd(num_, o.den_);
    IntPoly g2 = IntPoly::primitive_gcd(o.num_, den_);
    IntPoly n1 = g1.is_one() ? num_ : num_.div_exact(g1);
    IntPoly d2 = g1.is_one() ? o.den_ : o.den_.div_exact(g1);
    IntPoly n2 = g2.is_one() ? o.num_ : o.num_.div_exact(g2);
    IntPoly d1 = g2.is_one() ? den_ : den_.div_exact(g2);
    num_ = n1 * n2;
    den_ = d1 * d2;
    normalize();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
    if (auto c = a.den_ <=> b.den_; c != 0) return c;
    return a.num_ <=> b.num_;
}

mpq_class RatFunc::eval(const mpq_class& x) const {
    mpq_class d = den_.eval(x);
    if (d == 0) throw std::domain_error("RatFunc: denominator vanishes at evaluation point");
    return num_.eval(x) / d;
}

std::string RatFunc::to_string() const {
    if (den_.is_one()) return num_.to_string();
    auto wrap = [](const IntPoly& p) {
        std::string s = p.to_string();
        return p.terms().size() > 1 ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
}

namespace {

class ScalarParser {
public:
    explicit ScalarParser(std::string_view s) : s_(s) {}

    RatFunc parse_all() {
        RatFunc r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("RatFunc parse error at " + std::to_string(pos_) + ": " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        long v = std::stol(std::string(s_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }
    RatFunc expr() {
        RatFunc acc;
        bool neg = false;
        skip();
        if (eat('-')) neg = true;
        else eat('+');
        acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }
    RatFunc term() {
        RatFunc acc = factor();
        while (true) {
            if (eat('*')) acc *= factor();
            else if (eat('/')) acc /= factor();
            else break;
        }
        return acc;
    }
    RatFunc factor() {
        RatFunc base = primary();
        if (eat('^')) {
            bool paren = eat('(');
            long e = integer();
            if (paren && !eat(')')) fail("expected ')'");
            base = base.pow(static_cast<int>(e));
        }
        return base;
    }
    RatFunc primary() {
        skip();
        if (eat('(')) {
            RatFunc r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (eat('v')) return RatFunc::v_pow(1);
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFunc(IntPoly(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        fail("expected number, 'v' or '('");
    }

    std::string_view s_;
    size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return ScalarParser(text).parse_all(); }

std::string format_term(const RatFunc& c, const std::string& monomial) {
    if (monomial.empty() || monomial == "1") return c.to_string();
    if (c.is_one()) return monomial;
    if (!c.is_zero() && c.num().leading() < 0) return "-" + format_term(-c, monomial);
    std::string s = c.to_string();
    if (s.find(' ') != std::string::npos) s = "(" + s + ")";
    return s + "*" + monomial;
}

std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out = terms[0];
    for (size_t k = 1; k < terms.size(); ++k) {
        if (!terms[k].empty() && terms[k][0] == '-') out += " - " + terms[k].substr(1);
        else out += " + " + terms[k];
    }
    return out;
}

// ---------------------------------------------------------------- quantum numbers

RatFunc qint(int n) {
    if (n == 0) return {};
    if (n < 0) return -qint(-n);
    std::map<int, mpz_class> t;
    for (int k = 0; k < n; ++k) t[n - 1 - 2 * k] = 1;
    return RatFunc(IntPoly::from_terms(t));
}

RatFunc qfact(int n) {
    if (n < 0) throw std::domain_error("qfact: negative argument");
    RatFunc r(1);
    for (int k = 2; k <= n; ++k) r *= qint(k);
    return r;
}

RatFunc qbinom(int n, int k) {
    if (k < 0) throw std::domain_error("qbinom: negative k");
    if (n >= 0 && k > n) return {};
    RatFunc num(1);
    for (int j = 0; j < k; ++j) num *= qint(n - j);
    return num / qfact(k);
}

}  // namespace qgroup
