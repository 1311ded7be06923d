#include "qgroup/cli.hpp"

#include <chrono>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace qgroup {

ParseError::ParseError(const std::string& msg, size_t position)
    : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + msg), position_(position) {}

// ---------------------------------------------------------------- parser

namespace {

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool at_end() {
        skip();
        return p_ >= s_.size();
    }
    char peek() {
        skip();
        return p_ < s_.size() ? s_[p_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++p_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
    long integer() {
        skip();
        size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (start == p_) fail("expected an integer");
        if (p_ - start > 9) fail("integer too large");
        return std::stol(std::string(s_.substr(start, p_ - start)));
    }
    long signed_integer() {
        bool neg = accept('-');
        if (!neg) accept('+');
        long n = integer();
        return neg ? -n : n;
    }
    std::string word() {
        skip();
        size_t start = p_;
        while (p_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[p_]))) ++p_;
        return std::string(s_.substr(start, p_ - start));
    }
    size_t pos() const { return p_; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, p_); }

private:
    std::string_view s_;
    size_t p_ = 0;
};

// A parsed value: a scalar until a generator is involved.
template <class Elem>
struct Val {
    std::optional<RatFunc> scalar;
    Elem elem;
};

template <class Ops>
class Parser {
public:
    using Elem = typename Ops::Elem;
    using V = Val<Elem>;

    Parser(Lexer& lx, const Ops& ops) : lx_(lx), ops_(ops) {}

    Elem parse_all() {
        Elem e = to_elem(expr());
        if (!lx_.at_end()) lx_.fail("unexpected input");
        return e;
    }
    Elem parse_nested() { return to_elem(expr()); }
    RatFunc parse_scalar_all() {
        V x = expr();
        if (!lx_.at_end()) lx_.fail("unexpected input");
        if (!x.scalar) lx_.fail("expected a scalar");
        return *x.scalar;
    }

private:
    Elem to_elem(const V& x) const {
        if (!x.scalar) return x.elem;
        Elem e = ops_.one();
        e *= *x.scalar;
        return e;
    }
    V add(V a, V b, bool minus) {
        if (minus) b = neg(std::move(b));
        if (a.scalar && b.scalar) return V{*a.scalar + *b.scalar, {}};
        return V{std::nullopt, to_elem(a) + to_elem(b)};
    }
    V neg(V a) {
        if (a.scalar) return V{-*a.scalar, {}};
        return V{std::nullopt, a.elem * RatFunc(-1)};
    }
    V mul(V a, V b) {
        if (a.scalar && b.scalar) return V{*a.scalar * *b.scalar, {}};
        if (a.scalar) return V{std::nullopt, b.elem * *a.scalar};
        if (b.scalar) return V{std::nullopt, a.elem * *b.scalar};
        return V{std::nullopt, ops_.mul(a.elem, b.elem)};
    }
    V power(V a, long n, bool divided) {
        if (n < 0) {
            if (!a.scalar || divided) lx_.fail("negative exponent on a non-scalar");
            if (a.scalar->is_zero()) lx_.fail("zero to a negative power");
            return V{a.scalar->pow(static_cast<int>(n)), {}};
        }
        if (n > 64) lx_.fail("exponent too large");
        V r{RatFunc(1), {}};
        for (long k = 0; k < n; ++k) r = mul(r, a);
        if (divided) r = mul(r, V{qfact(static_cast<int>(n)).inverse(), {}});
        return r;
    }

    V expr() {
        V a = term();
        while (true) {
            if (lx_.accept('+')) a = add(a, term(), false);
            else if (lx_.accept('-')) a = add(a, term(), true);
            else return a;
        }
    }
    V term() {
        V a = unary();
        while (true) {
            if (lx_.accept('*')) {
                a = mul(a, unary());
            } else if (lx_.peek() == '/') {
                size_t at = lx_.pos();
                lx_.accept('/');
                V b = unary();
                if (!b.scalar) throw ParseError("division by a non-scalar", at);
                if (b.scalar->is_zero()) throw ParseError("division by zero", at);
                a = mul(a, V{b.scalar->inverse(), {}});
            } else {
                return a;
            }
        }
    }
    V unary() {
        if (lx_.accept('-')) return neg(unary());
        if (lx_.accept('+')) return unary();
        return pow_expr();
    }
    V pow_expr() {
        V a = atom();
        while (lx_.accept('^')) {
            if (lx_.accept('(')) {
                long n = lx_.integer();
                lx_.expect(')');
                a = power(a, n, true);
            } else {
                a = power(a, lx_.signed_integer(), false);
            }
        }
        return a;
    }
    V atom() {
        if (lx_.peek_digit()) return V{RatFunc(lx_.integer()), {}};
        if (lx_.accept('(')) {
            V a = expr();
            lx_.expect(')');
            return a;
        }
        const size_t at = lx_.pos();
        std::string w = lx_.word();
        if (w.empty()) lx_.fail("expected a term");
        if (w == "v") return V{RatFunc::v_pow(1), {}};
        return V{std::nullopt, ops_.generator(w, lx_, at)};
    }

    Lexer& lx_;
    const Ops& ops_;
};

int vertex_index(Lexer& lx, size_t rank, size_t at) {
    long i = lx.integer();
    if (i < 1 || static_cast<size_t>(i) > rank)
        throw ParseError("unknown generator index " + std::to_string(i) + " (rank " + std::to_string(rank) + ")", at);
    return static_cast<int>(i - 1);
}

Coweight coweight_args(Lexer& lx, size_t rank, size_t at) {
    lx.expect('(');
    std::vector<int> c;
    if (!lx.accept(')')) {
        do c.push_back(static_cast<int>(lx.signed_integer()));
        while (lx.accept(','));
        lx.expect(')');
    }
    if (c.size() != rank) throw ParseError("coweight needs " + std::to_string(rank) + " entries", at);
    return Coweight(c);
}

[[noreturn]] void unknown(const std::string& w, size_t at) { throw ParseError("unknown generator '" + w + "'", at); }

struct FreeOps {
    using Elem = FreeElement;
    size_t rank;
    Elem one() const { return FreeElement(Word{}); }
    Elem mul(const Elem& a, const Elem& b) const { return free_mul(a, b); }
    Elem generator(const std::string& w, Lexer& lx, size_t at) const {
        if (w != "th") unknown(w, at);
        return theta(vertex_index(lx, rank, at));
    }
};

struct ScalarOps {
    using Elem = FreeElement;
    Elem one() const { return FreeElement(Word{}); }
    Elem mul(const Elem& a, const Elem& b) const { return free_mul(a, b); }
    Elem generator(const std::string& w, Lexer&, size_t at) const { unknown(w, at); }
};

FElement nested_f(const FAlgebra& f, Lexer& lx) {
    lx.expect('(');
    FreeOps ops{f.rank()};
    Parser<FreeOps> p(lx, ops);
    FreeElement x = p.parse_nested();
    lx.expect(')');
    return f.normal_form(x);
}

struct UOps {
    using Elem = UElement;
    const UAlgebra& u;
    Elem one() const { return u.one(); }
    Elem mul(const Elem& a, const Elem& b) const { return u.mul(a, b); }
    Elem generator(const std::string& w, Lexer& lx, size_t at) const {
        if (w == "E") return u.E(vertex_index(lx, u.rank(), at));
        if (w == "F") return u.F(vertex_index(lx, u.rank(), at));
        if (w == "K") return u.K(coweight_args(lx, u.rank(), at));
        unknown(w, at);
    }
};

struct HalfOps {
    using Elem = HalfElement;
    const DrinfeldDouble& d;
    Half s;
    Elem one() const { return d.k(Coweight::zero(d.rank())); }
    Elem mul(const Elem& a, const Elem& b) const { return d.half_mul(s, a, b); }
    Elem generator(const std::string& w, Lexer& lx, size_t at) const {
        if (w == "k" || w == "K") return d.k(coweight_args(lx, d.rank(), at));
        if ((w == "p" && s == Half::plus) || (w == "m" && s == Half::minus))
            return d.half(nested_f(d.f(), lx), Coweight::zero(d.rank()));
        unknown(w, at);
    }
};

struct DoubleOps {
    using Elem = DoubleElement;
    const DrinfeldDouble& d;
    Elem one() const { return d.one(); }
    Elem mul(const Elem& a, const Elem& b) const { return d.double_mul(a, b); }
    Elem generator(const std::string& w, Lexer& lx, size_t at) const {
        const Coweight z = Coweight::zero(d.rank());
        if (w == "k" || w == "K") return d.from_plus(d.k(coweight_args(lx, d.rank(), at)));
        if (w == "p") return d.from_plus(d.half(nested_f(d.f(), lx), z));
        if (w == "m") return d.from_minus(d.half(nested_f(d.f(), lx), z));
        unknown(w, at);
    }
};

template <class Ops>
typename Ops::Elem run(std::string_view src, const Ops& ops) {
    Lexer lx(src);
    Parser<Ops> p(lx, ops);
    return p.parse_all();
}

}  // namespace

FreeElement parse_free(std::string_view src, size_t rank) { return run(src, FreeOps{rank}); }
FElement parse_f(const FAlgebra& f, std::string_view src) { return f.normal_form(parse_free(src, f.rank())); }
UElement parse_u(const UAlgebra& u, std::string_view src) { return run(src, UOps{u}); }
HalfElement parse_half(const DrinfeldDouble& d, Half s, std::string_view src) { return run(src, HalfOps{d, s}); }
DoubleElement parse_double(const DrinfeldDouble& d, std::string_view src) { return run(src, DoubleOps{d}); }

RatFunc parse_scalar(std::string_view src) {
    Lexer lx(src);
    ScalarOps ops;
    Parser<ScalarOps> p(lx, ops);
    return p.parse_scalar_all();
}

// ---------------------------------------------------------------- JSON

namespace {

std::string mu_string(const Coweight& mu) { return mu.is_zero() ? "0" : mu.to_string(); }

json ukey_json(const UKey& k) {
    json j;
    j["F"] = k.minus.to_string("F");
    j["K"] = mu_string(k.mu);
    j["E"] = k.plus.to_string("E");
    return j;
}

}  // namespace

json to_json(const FElement& x) {
    json terms = json::array();
    for (const auto& [w, c] : x) terms.push_back({{"word", w.to_string("th")}, {"c", c.to_string()}});
    return {{"terms", terms}};
}

json to_json(const UElement& x) {
    json terms = json::array();
    for (const auto& [k, c] : x) {
        json t = ukey_json(k);
        t["c"] = c.to_string();
        terms.push_back(t);
    }
    return {{"terms", terms}};
}

json to_json(const UTensor& x) {
    json terms = json::array();
    for (const auto& [p, c] : x) terms.push_back({{"left", ukey_json(p.first)}, {"right", ukey_json(p.second)}, {"c", c.to_string()}});
    return {{"terms", terms}};
}

json to_json(const DoubleElement& x) {
    json terms = json::array();
    for (const auto& [k, c] : x)
        terms.push_back({{"m", k.minus.to_string("th")}, {"k", mu_string(k.mu)}, {"p", k.plus.to_string("th")}, {"c", c.to_string()}});
    return {{"terms", terms}};
}

json to_json(Half s, const HalfElement& x) {
    json terms = json::array();
    for (const auto& [k, c] : x)
        terms.push_back({{"k", mu_string(k.mu)}, {s == Half::plus ? "p" : "m", k.word.to_string("th")}, {"c", c.to_string()}});
    return {{"terms", terms}};
}

json coordinates_json(const FAlgebra& f, const FElement& x) {
    std::map<DimVec, bool> weights;
    for (const auto& [w, c] : x) weights[w.weight(f.rank())] = true;
    json out = json::array();
    for (const auto& [nu, unused] : weights) {
        const auto wb = f.weight_basis(nu);
        json basis = json::array(), coords = json::array();
        for (size_t s = 0; s < wb->dim(); ++s) basis.push_back(wb->basis_word(s).to_string("th"));
        for (const auto& c : f.coordinates(x, nu)) coords.push_back(c.to_string());
        out.push_back({{"weight", nu.to_string()}, {"basis", basis}, {"coordinates", coords}});
    }
    return out;
}

std::string point_hex(const HallOracle& h, const std::vector<uint8_t>& point) {
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (uint8_t e : point) {
        if (h.q() > 16) s += hex[e >> 4];
        s += hex[e & 15];
    }
    return s;
}

json class_json(const HallOracle& h, const ClassInfo& c) {
    json mats = json::array();
    const auto& arrows = h.quiver().arrows();
    const auto& labels = h.quiver().labels();
    for (size_t a = 0; a < arrows.size(); ++a) {
        const auto& m = c.rep.mats[a];
        mats.push_back({{"arrow", labels[static_cast<size_t>(arrows[a].source)] + "->" + labels[static_cast<size_t>(arrows[a].target)]},
                        {"rows", m.rows},
                        {"cols", m.cols},
                        {"hex", point_hex(h, m.a)}});
    }
    return {{"class", h.class_name(c.cls)}, {"dim", c.cls.dim.to_string()}, {"orbit", c.orbit_size}, {"matrices", mats}};
}

std::string export_json(const json& body) {
    json out;
    out["schema"] = kSchema;
    for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
    return out.dump(2);
}

IsoClass parse_class(const HallOracle& h, std::string_view spec) {
    const size_t colon = spec.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("class spec must look like (1,1):1");
    const DimVec dim = DimVec::parse(spec.substr(0, colon));
    const std::string_view hex = spec.substr(colon + 1);
    const size_t width = h.q() > 16 ? 2 : 1;
    QuiverRep x = QuiverRep::zero(h.quiver(), dim);
    size_t n = 0;
    for (const auto& m : x.mats) n += m.a.size();
    if (hex.size() != n * width) throw std::invalid_argument("class spec needs " + std::to_string(n * width) + " hex digits");
    size_t p = 0;
    for (auto& m : x.mats)
        for (auto& e : m.a) {
            int v = std::stoi(std::string(hex.substr(p, width)), nullptr, 16);
            if (v >= h.q()) throw std::invalid_argument("entry out of range for F_" + std::to_string(h.q()));
            e = static_cast<uint8_t>(v);
            p += width;
        }
    return h.classify(x);
}

// ---------------------------------------------------------------- suites

bool SuiteReport::ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == "fail"; });
}

json SuiteReport::to_json() const {
    json arr = json::array();
    for (const auto& c : checks) {
        json j{{"check", c.check}, {"status", c.status}, {"millis", c.millis}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(j);
    }
    return {{"suite", suite}, {"ok", ok()}, {"checks", arr}};
}

std::string SuiteReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << c.status << "  " << c.check << "  (" << c.millis << " ms)";
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
    }
    size_t fails = 0, skips = 0;
    for (const auto& c : checks) {
        fails += c.status == "fail";
        skips += c.status == "skipped";
    }
    os << suite << ": " << checks.size() << " checks, " << fails << " failed, " << skips << " skipped\n";
    return os.str();
}

Session::Session(const Quiver& q, SessionOptions opts) : datum_(CartanDatum::load(q)), opts_(opts) {}

Session Session::load(const std::string& quiver_or_file, SessionOptions opts) {
    std::ifstream in(quiver_or_file);
    if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        return Session(Quiver::from_json(ss.str()), opts);
    }
    return Session(Quiver::parse_shorthand(quiver_or_file), opts);
}

std::shared_ptr<const FAlgebra> Session::f() const {
    if (!f_) f_ = std::make_shared<FAlgebra>(datum_);
    return f_;
}

std::shared_ptr<const UAlgebra> Session::u() const {
    if (!u_) u_ = std::make_shared<UAlgebra>(f());
    return u_;
}

std::shared_ptr<const Braid> Session::braid() const {
    if (!braid_) braid_ = std::make_shared<Braid>(u());
    return braid_;
}

std::shared_ptr<const DrinfeldDouble> Session::dbl() const {
    if (!dbl_) dbl_ = std::const_pointer_cast<DrinfeldDouble>(DrinfeldDouble::calibrated(f()));
    return dbl_;
}

const std::vector<std::string>& Session::suite_names() {
    static const std::vector<std::string> names = {"verify-f", "verify-u", "verify-ti", "verify-braid", "verify-hall", "verify-double", "verify-all"};
    return names;
}

SuiteReport Session::run_suite(const std::string& name) const {
    SuiteReport rep{name, {}};
    for (auto& [check, fn] : suite_checks(name)) {
        CheckResult r{check, "pass", 0, ""};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            if (!fn()) r.status = "fail";
        } catch (const BudgetExceeded& e) {
            r.status = "skipped";
            r.detail = e.what();
        } catch (const std::exception& e) {
            r.status = "fail";
            r.detail = e.what();
        }
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        rep.checks.push_back(std::move(r));
    }
    return rep;
}

namespace {

std::vector<DimVec> weights_up_to(size_t n, int total) {
    std::vector<DimVec> out;
    std::vector<int> cur(n, 0);
    std::function<void(size_t, int)> rec = [&](size_t k, int left) {
        if (k == n) {
            out.emplace_back(cur);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            cur[k] = c;
            rec(k + 1, left - c);
        }
    };
    rec(0, total);
    std::sort(out.begin(), out.end(), [](const DimVec& a, const DimVec& b) { return a.total() != b.total() ? a.total() < b.total() : a < b; });
    return out;
}

std::vector<DimVec> box(const DimVec& bound) {
    std::vector<DimVec> out{DimVec::zero(bound.size())};
    for (size_t k = 0; k < bound.size(); ++k) {
        std::vector<DimVec> next;
        for (const auto& d : out)
            for (int c = 0; c <= bound[k]; ++c) {
                DimVec e = d;
                e[k] = c;
                next.push_back(e);
            }
        out = next;
    }
    return out;
}

FreeElement free_serre(const CartanDatum& d, int i, int j, bool divided) {
    const int n = 1 - d.a(static_cast<size_t>(i), static_cast<size_t>(j));
    FreeElement out;
    for (int k = 0; k <= n; ++k) {
        RatFunc c = k % 2 ? RatFunc(-1) : RatFunc(1);
        if (divided) c *= (qfact(k) * qfact(n - k)).inverse();
        else c *= qbinom(n, k);
        out.add_scaled(free_mul(free_mul(free_pow(theta(i), k), theta(j)), free_pow(theta(i), n - k)), c);
    }
    return out;
}

UElement word_in_u(const UAlgebra& u, const FreeElement& x, bool plus) {
    UElement out;
    for (const auto& [w, c] : x) {
        UElement acc = u.one();
        for (size_t p = 0; p < w.size(); ++p) acc = u.mul(acc, plus ? u.E(w[p]) : u.F(w[p]));
        out.add_scaled(acc, c);
    }
    return out;
}

std::vector<UElement> u_generators(const UAlgebra& u) {
    std::vector<UElement> g;
    for (int i = 0; i < static_cast<int>(u.rank()); ++i) {
        g.push_back(u.E(i));
        g.push_back(u.F(i));
        g.push_back(u.Kh(i, 1));
    }
    return g;
}

std::string pair_name(const std::string& what, int i, int j) {
    return what + " " + std::to_string(i + 1) + "," + std::to_string(j + 1);
}

}  // namespace

std::vector<Session::Check> Session::suite_checks(const std::string& name) const {
    std::vector<Check> out;
    const auto n = static_cast<int>(datum_.rank());
    auto append = [&](const std::string& s) {
        auto more = suite_checks(s);
        out.insert(out.end(), more.begin(), more.end());
    };
    if (name == "verify-all") {
        for (const auto& s : suite_names())
            if (s != "verify-all") append(s);
        return out;
    }
    if (name == "verify-f") {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                out.emplace_back(pair_name("f serre", i, j), [this, i, j] { return f()->normal_form(free_serre(datum_, i, j, true)).is_zero(); });
            }
        for (int i = 0; i < n; ++i)
            out.emplace_back("f decomposition " + std::to_string(i + 1), [this, i] {
                for (const auto& nu : weights_up_to(datum_.rank(), 3)) {
                    if (!f()->dim_decomposition_check(i, nu)) return false;
                    const auto wb = f()->weight_basis(nu);
                    for (size_t s = 0; s < wb->dim(); ++s) {
                        const FElement x(wb->basis_word(s));
                        FElement back;
                        for (const auto& [t, xt] : f()->i_decompose(i, x)) {
                            if (!f()->i_r_component(i, Side::left, xt).is_zero()) return false;
                            back += f()->f_mul(f()->theta_divided(i, t), xt);
                        }
                        if (!(back == x)) return false;
                    }
                }
                return true;
            });
        out.emplace_back("f orientation independence", [this] {
            auto products = [](const FAlgebra& fa) {
                std::vector<FElement> r;
                for (const auto& a : weights_up_to(fa.rank(), 2))
                    for (const auto& b : weights_up_to(fa.rank(), 3 - a.total())) {
                        const auto wa = fa.weight_basis(a), wb = fa.weight_basis(b);
                        for (size_t x = 0; x < wa->dim(); ++x)
                            for (size_t y = 0; y < wb->dim(); ++y)
                                r.push_back(fa.f_mul(FElement(wa->basis_word(x)), FElement(wb->basis_word(y))));
                    }
                return r;
            };
            const auto base = products(*f());
            for (const auto& q : quiver().all_orientations())
                if (products(FAlgebra(CartanDatum::load(q))) != base) return false;
            return true;
        });
        return out;
    }
    if (name == "verify-u") {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                out.emplace_back(pair_name("u serre", i, j), [this, i, j] {
                    const FreeElement s = free_serre(datum_, i, j, false);
                    return word_in_u(*u(), s, true).is_zero() && word_in_u(*u(), s, false).is_zero();
                });
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.emplace_back(pair_name("u commutator E_iF_j", i, j), [this, i, j] {
                    const UAlgebra& U = *u();
                    UElement lhs = U.mul(U.E(i), U.F(j)) - U.mul(U.F(j), U.E(i));
                    UElement rhs;
                    if (i == j) rhs = (U.Kh(i, 1) - U.Kh(i, -1)) * (RatFunc::v_pow(1) - RatFunc::v_pow(-1)).inverse();
                    return lhs == rhs;
                });
        out.emplace_back("u hopf axioms", [this] {
            const UAlgebra& U = *u();
            const auto g = u_generators(U);
            std::vector<UElement> xs = g;
            for (const auto& a : g)
                for (const auto& b : g) xs.push_back(U.mul(a, b));
            for (const auto& x : xs)
                if (!U.hopf_axiom_check(x).ok()) return false;
            return true;
        });
        return out;
    }
    if (name == "verify-ti") {
        for (int i = 0; i < n; ++i) {
            out.emplace_back("ti inverse " + std::to_string(i + 1), [this, i] { return braid()->certify_inverse(i); });
            out.emplace_back("ti homomorphism " + std::to_string(i + 1), [this, i] {
                const UAlgebra& U = *u();
                const auto g = u_generators(U);
                for (const auto& a : g)
                    for (const auto& b : g)
                        if (!(braid()->ti_apply(i, U.mul(a, b)) == U.mul(braid()->ti_apply(i, a), braid()->ti_apply(i, b)))) return false;
                return true;
            });
            out.emplace_back("ti _if crosscheck " + std::to_string(i + 1), [this, i] {
                for (const auto& nu : weights_up_to(datum_.rank(), 2))
                    if (!braid()->if_membership_crosscheck(i, nu)) return false;
                return true;
            });
            out.emplace_back("ti decomposition route " + std::to_string(i + 1), [this, i] {
                const UAlgebra& U = *u();
                auto xs = u_generators(U);
                const auto g = xs;
                for (const auto& a : g)
                    for (const auto& b : g) xs.push_back(U.mul(a, b));
                for (const auto& x : xs)
                    if (!(braid()->t_tilde_apply(i, x) == braid()->ti_apply(i, x))) return false;
                return true;
            });
        }
        return out;
    }
    if (name == "verify-braid") {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const int a = datum_.a(static_cast<size_t>(i), static_cast<size_t>(j));
                if (a != 0 && a != -1) continue;
                out.emplace_back(pair_name("braid relation", i, j), [this, i, j] { return braid()->braid_verify(i, j); });
            }
        return out;
    }
    if (name == "verify-hall") {
        const int q = opts_.q;
        DimVec bound = DimVec::zero(datum_.rank());
        for (size_t k = 0; k < bound.size(); ++k) bound[k] = datum_.rank() <= 2 ? 2 : (k + 1 < bound.size() ? 2 : 1);
        for (const auto& d : box(bound)) {
            out.emplace_back("hall orbits " + d.to_string(), [this, q, d] {
                HallOracle h = hall(q);
                mpz_class total = 0;
                for (const auto& c : h.iso_classes(d)) {
                    const mpz_class s = static_cast<unsigned long>(c.orbit_size);
                    if (h.group_order(d) % s != 0) return false;
                    total += s;
                }
                return total == mpz_class(static_cast<unsigned long>(h.point_count(d)));
            });
            for (int i = 0; i < n; ++i) {
                if (!quiver().is_sink(i) && !quiver().is_source(i)) continue;
                out.emplace_back("hall strata " + d.to_string() + " at " + std::to_string(i + 1), [this, q, d, i] {
                    HallOracle h = hall(q);
                    uint64_t sum = 0;
                    for (auto c : h.stratum_counts(d, i)) sum += c;
                    return sum == h.point_count(d);
                });
                out.emplace_back("hall bgp " + d.to_string() + " at " + std::to_string(i + 1), [this, q, d, i] {
                    HallOracle src = hall(q), dst(quiver().sigma(i), q, opts_.budget);
                    return bgp_bijection_check(src, dst, i, d).ok();
                });
            }
        }
        out.emplace_back("hall twist calibration", [this] {
            TwistCalibration cal = calibrate_twist(quiver(), 4);
            for (const auto& [t, pass] : cal.candidates)
                if (t == kFrozenTwist) return pass && cal.chosen == kFrozenTwist;
            return false;
        });
        DimVec cbound = DimVec::zero(datum_.rank());
        for (size_t k = 0; k < cbound.size(); ++k) cbound[k] = datum_.rank() <= 2 ? 2 : 1;
        for (const auto& a : box(cbound)) {
            if (a.is_zero()) continue;
            for (const auto& b : box(cbound - a)) {
                if (b.is_zero()) continue;
                out.emplace_back("hall compare " + a.to_string() + "*" + b.to_string(), [this, a, b] {
                    HallOracle h(quiver(), 4, opts_.budget);
                    return specialize_compare(h, *f(), a, b).ok();
                });
            }
        }
        return out;
    }
    if (name == "verify-double") {
        out.emplace_back("double calibration", [this] {
            const auto cal = DrinfeldDouble::calibrate_pairing(f());
            return cal.consistent;
        });
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.emplace_back(pair_name("double cross relation", i, j), [this, i, j] {
                    const auto& D = *dbl();
                    const DoubleElement e = D.from_plus(D.theta(i)), fj = D.from_minus(D.theta(j));
                    DoubleElement lhs = D.double_mul(e, fj) - D.double_mul(fj, e), rhs;
                    if (i == j) {
                        const Coweight h = Coweight::h(D.rank(), i);
                        const RatFunc c = (RatFunc::v_pow(1) - RatFunc::v_pow(-1)).inverse();
                        rhs.add(DoubleKey{{}, h, {}}, c);
                        rhs.add(DoubleKey{{}, -h, {}}, -c);
                    }
                    return lhs == rhs;
                });
        out.emplace_back("double iso_lambda homomorphism", [this] {
            const auto& D = *dbl();
            const UAlgebra& U = *u();
            std::vector<DoubleElement> g;
            for (int i = 0; i < static_cast<int>(D.rank()); ++i) {
                g.push_back(D.from_plus(D.theta(i)));
                g.push_back(D.from_minus(D.theta(i)));
                g.push_back(D.from_plus(D.k(Coweight::h(D.rank(), i))));
            }
            for (const auto& a : g)
                for (const auto& b : g)
                    if (!(D.iso_lambda(U, D.double_mul(a, b)) == U.mul(D.iso_lambda(U, a), D.iso_lambda(U, b)))) return false;
            return true;
        });
        out.emplace_back("double hopf structure matches U", [this] {
            const auto& D = *dbl();
            const UAlgebra& U = *u();
            for (int i = 0; i < static_cast<int>(D.rank()); ++i)
                for (Half s : {Half::plus, Half::minus}) {
                    const HalfElement x = D.theta(i);
                    const DoubleElement dx = s == Half::plus ? D.from_plus(x) : D.from_minus(x);
                    if (!(D.iso_lambda(U, s == Half::plus ? D.from_plus(D.half_antipode(s, x)) : D.from_minus(D.half_antipode(s, x))) ==
                          U.antipode(D.iso_lambda(U, dx))))
                        return false;
                    UTensor t;
                    for (const auto& [p, c] : D.half_delta(s, x)) {
                        auto lift = [&](const HalfKey& k) {
                            return D.iso_lambda(U, s == Half::plus ? D.from_plus(HalfElement(k)) : D.from_minus(HalfElement(k)));
                        };
                        for (const auto& [a, ca] : lift(p.first))
                            for (const auto& [b, cb] : lift(p.second)) t.add({a, b}, c * ca * cb);
                    }
                    if (!(t == U.delta(D.iso_lambda(U, dx)))) return false;
                }
            return true;
        });
        return out;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace qgroup
