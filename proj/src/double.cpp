#include "qgroup/double.hpp"

#include <array>
#include <stdexcept>

namespace qgroup {

namespace {

std::string half_key_string(Half s, const HalfKey& k) {
    std::vector<std::string> parts;
    if (!k.mu.is_zero()) parts.push_back("k" + k.mu.to_string());
    if (!k.word.empty()) parts.push_back(std::string(s == Half::plus ? "p(" : "m(") + k.word.to_string("th") + ")");
    if (parts.empty()) return "1";
    return parts.size() == 1 ? parts[0] : parts[0] + "*" + parts[1];
}

}  // namespace

DrinfeldDouble::DrinfeldDouble(std::shared_ptr<const FAlgebra> f, RatFunc constant)
    : f_(std::move(f)), c_(std::move(constant)) {}

PairingCalibration DrinfeldDouble::calibrate_pairing(std::shared_ptr<const FAlgebra> f) {
    DrinfeldDouble unit(f, RatFunc(1));
    const size_t n = f->rank();
    const RatFunc scale = (RatFunc::v_pow(1) - RatFunc::v_pow(-1)).inverse();
    PairingCalibration out;
    out.consistent = true;
    for (int i = 0; i < static_cast<int>(n); ++i) {
        const Word w = Word::letter(i);
        DoubleElement correction = unit.cross(w, w);
        correction.add(DoubleKey{w, Coweight::zero(n), w}, -1);
        DoubleElement target;
        target.add(DoubleKey{{}, Coweight::h(n, i), {}}, scale);
        target.add(DoubleKey{{}, -Coweight::h(n, i), {}}, -scale);
        const RatFunc probe = correction.coeff(DoubleKey{{}, Coweight::h(n, i), {}});
        if (probe.is_zero()) {
            out.consistent = false;
            out.constants.emplace_back();
            continue;
        }
        const RatFunc c = target.coeff(DoubleKey{{}, Coweight::h(n, i), {}}) / probe;
        if (correction * c != target) out.consistent = false;
        out.constants.push_back(c);
    }
    for (const auto& c : out.constants)
        if (c != out.constants.front()) out.consistent = false;
    return out;
}

std::shared_ptr<DrinfeldDouble> DrinfeldDouble::calibrated(std::shared_ptr<const FAlgebra> f) {
    PairingCalibration cal = calibrate_pairing(f);
    if (!cal.consistent || cal.constants.empty())
        throw std::logic_error("calibrate_pairing: no consistent pairing constant");
    return std::make_shared<DrinfeldDouble>(std::move(f), cal.constants.front());
}

int DrinfeldDouble::coweight_form(const Coweight& a, const Coweight& b) const {
    return datum().alpha(DimVec(a.v), b);
}

HalfElement DrinfeldDouble::theta(int i) const {
    f_->check_vertex(i);
    return HalfElement(HalfKey{Coweight::zero(rank()), Word::letter(i)});
}

HalfElement DrinfeldDouble::k(const Coweight& mu) const {
    if (mu.size() != rank()) throw std::invalid_argument("k: coweight has wrong rank");
    return HalfElement(HalfKey{mu, {}});
}

HalfElement DrinfeldDouble::half(const FElement& x, const Coweight& mu) const {
    HalfElement out;
    for (const auto& [w, c] : x) out.add(HalfKey{mu, w}, c);
    return out;
}

HalfElement DrinfeldDouble::half_mul(Half s, const HalfElement& a, const HalfElement& b) const {
    const CartanDatum& d = datum();
    const size_t n = rank();
    HalfElement out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            // x k_mu = v^{-+alpha_x(mu)} k_mu x on the plus (minus) side
            const int e = d.alpha(ka.word.weight(n), kb.mu);
            const RatFunc c = ca * cb * RatFunc::v_pow(s == Half::plus ? -e : e);
            const Coweight mu = ka.mu + kb.mu;
            for (const auto& [w, cw] : f_->normal_form(ka.word.concat(kb.word))) out.add(HalfKey{mu, w}, c * cw);
        }
    return out;
}

DrinfeldDouble::FTensor DrinfeldDouble::f_coproduct(const Word& w) const {
    {
        std::lock_guard lock(mutex_);
        auto it = coproduct_memo_.find(w);
        if (it != coproduct_memo_.end()) return it->second;
    }
    FTensor out;
    for (const auto& [p, c] : coproduct_word(datum(), w))
        for (const auto& [x, cx] : f_->normal_form(p.first))
            for (const auto& [y, cy] : f_->normal_form(p.second)) out.add({x, y}, c * cx * cy);
    std::lock_guard lock(mutex_);
    coproduct_memo_.emplace(w, out);
    return out;
}

HalfTensor DrinfeldDouble::half_delta(Half s, const HalfElement& a) const {
    const CartanDatum& d = datum();
    const size_t n = rank();
    HalfTensor out;
    for (const auto& [key, ca] : a)
        for (const auto& [p, c] : f_coproduct(key.word)) {
            const DimVec w1 = p.first.weight(n), w2 = p.second.weight(n);
            const RatFunc coef = ca * c * RatFunc::v_pow(-d.sym_form(w1, w2));
            const Coweight mu2 = Coweight::from_root(w2);
            if (s == Half::plus) {
                // k_mu x' k_{nu''} (x) k_mu x''
                out.add({HalfKey{key.mu + mu2, p.first}, HalfKey{key.mu, p.second}}, coef);
            } else {
                // k_mu y'' (x) k_{mu - nu''} y'
                out.add({HalfKey{key.mu, p.second}, HalfKey{key.mu - mu2, p.first}}, coef);
            }
        }
    return out;
}

FElement DrinfeldDouble::antipode_core(const Word& w) const {
    {
        std::lock_guard lock(mutex_);
        auto it = antipode_memo_.find(w);
        if (it != antipode_memo_.end()) return it->second;
    }
    // A(x) = -x - sum A(x') x'' over coproduct terms with both factors nonzero
    FElement out = -FElement(w);
    if (!w.empty()) {
        for (const auto& [p, c] : f_coproduct(w)) {
            if (p.first.empty() || p.second.empty()) continue;
            out -= f_->f_mul(antipode_core(p.first), FElement(p.second)) * c;
        }
    } else {
        out = f_->one();
    }
    std::lock_guard lock(mutex_);
    antipode_memo_.emplace(w, out);
    return out;
}

HalfElement DrinfeldDouble::half_antipode(Half s, const HalfElement& a) const {
    const CartanDatum& d = datum();
    const size_t n = rank();
    HalfElement out;
    for (const auto& [key, ca] : a) {
        const DimVec nu = key.word.weight(n);
        const Coweight knu = Coweight::from_root(nu);
        if (s == Half::plus) {
            // k_{-nu} A(x) k_{-mu} = v^{nu(mu)} k_{-nu-mu} A(x)
            const RatFunc c = ca * RatFunc::v_pow(d.alpha(nu, key.mu));
            for (const auto& [w, cw] : antipode_core(key.word)) out.add(HalfKey{-knu - key.mu, w}, c * cw);
        } else {
            // S(y^-) = z^- k_nu with z = barrev A(barrev y); then z k_{nu-mu} = v^{nu(nu-mu)} k_{nu-mu} z
            FreeElement rev;
            for (const auto& [w, cw] : f_->normal_form(key.word.reversed())) rev.add(w, cw);
            FElement core;
            for (const auto& [w, cw] : rev) core.add_scaled(antipode_core(w), cw);
            FreeElement back;
            for (const auto& [w, cw] : core) back.add(w.reversed(), cw.bar());
            const RatFunc c = ca * RatFunc::v_pow(d.alpha(nu, knu - key.mu));
            for (const auto& [w, cw] : f_->normal_form(back)) out.add(HalfKey{knu - key.mu, w}, c * cw);
        }
    }
    return out;
}

RatFunc DrinfeldDouble::half_counit(const HalfElement& a) const {
    RatFunc acc;
    for (const auto& [key, c] : a)
        if (key.word.empty()) acc += c;
    return acc;
}

HalfElement DrinfeldDouble::tensor_contract(Half s, const HalfTensor& t) const {
    HalfElement out;
    for (const auto& [p, c] : t) out.add_scaled(half_mul(s, HalfElement(p.first), HalfElement(p.second)), c);
    return out;
}

RatFunc DrinfeldDouble::bracket(const Word& x, const Word& y) const {
    return f_->form_evaluator().form(x, y, c_);
}

RatFunc DrinfeldDouble::pairing_phi(const HalfElement& plus, const HalfElement& minus) const {
    const CartanDatum& d = datum();
    const size_t n = rank();
    RatFunc acc;
    for (const auto& [a, ca] : plus)
        for (const auto& [b, cb] : minus) {
            const DimVec nu = a.word.weight(n), nu2 = b.word.weight(n);
            if (nu != nu2) continue;
            const RatFunc br = bracket(a.word, b.word);
            if (br.is_zero()) continue;
            const int e = -coweight_form(a.mu, b.mu) - d.alpha(nu, b.mu) + d.alpha(nu2, a.mu);
            acc += ca * cb * RatFunc::v_pow(e) * br;
        }
    return acc;
}

DoubleElement DrinfeldDouble::one() const { return DoubleElement(DoubleKey{{}, Coweight::zero(rank()), {}}); }

DoubleElement DrinfeldDouble::from_plus(const HalfElement& x) const {
    DoubleElement out;
    for (const auto& [k, c] : x) out.add(DoubleKey{{}, k.mu, k.word}, c);
    return out;
}

DoubleElement DrinfeldDouble::from_minus(const HalfElement& y) const {
    const CartanDatum& d = datum();
    DoubleElement out;
    for (const auto& [k, c] : y)
        out.add(DoubleKey{k.word, k.mu, {}}, c * RatFunc::v_pow(-d.alpha(k.word.weight(rank()), k.mu)));
    return out;
}

DoubleElement DrinfeldDouble::cross(const Word& x, const Word& y) const {
    const size_t n = rank();
    if (x.empty() || y.empty()) return DoubleElement(DoubleKey{y, Coweight::zero(n), x});
    auto memo_key = std::make_pair(x, y);
    {
        std::lock_guard lock(mutex_);
        auto it = cross_memo_.find(memo_key);
        if (it != cross_memo_.end()) return it->second;
    }
    const CartanDatum& d = datum();
    // a b = sum phi(a1, b1) phi(a3, S(b3)) b2 a2 for a = x^+, b = y^-
    auto threefold = [&](Half s, const Word& w) {
        std::vector<std::pair<std::array<HalfKey, 3>, RatFunc>> out;
        for (const auto& [p, c] : half_delta(s, HalfElement(HalfKey{Coweight::zero(n), w})))
            for (const auto& [q, cq] : half_delta(s, HalfElement(p.first)))
                out.push_back({{q.first, q.second, p.second}, c * cq});
        return out;
    };
    const auto ax = threefold(Half::plus, x), by = threefold(Half::minus, y);
    DoubleElement out;
    for (const auto& [a, ca] : ax)
        for (const auto& [b, cb] : by) {
            if (a[0].word.weight(n) != b[0].word.weight(n) || a[2].word.weight(n) != b[2].word.weight(n)) continue;
            const RatFunc p1 = pairing_phi(HalfElement(a[0]), HalfElement(b[0]));
            if (p1.is_zero()) continue;
            const RatFunc p3 = pairing_phi(HalfElement(a[2]), half_antipode(Half::minus, HalfElement(b[2])));
            if (p3.is_zero()) continue;
            // k_beta y2 k_alpha x2 = v^{-alpha_{y2}(beta)} y2 k_{beta+alpha} x2
            const int e = -d.alpha(b[1].word.weight(n), b[1].mu);
            out.add(DoubleKey{b[1].word, b[1].mu + a[1].mu, a[1].word}, ca * cb * p1 * p3 * RatFunc::v_pow(e));
        }
    std::lock_guard lock(mutex_);
    cross_memo_.emplace(memo_key, out);
    return out;
}

DoubleElement DrinfeldDouble::mul_keys(const DoubleKey& a, const DoubleKey& b) const {
    const CartanDatum& d = datum();
    const size_t n = rank();
    DoubleElement out;
    for (const auto& [k, c] : cross(a.plus, b.minus)) {
        const int e = -d.alpha(k.minus.weight(n), a.mu) - d.alpha(k.plus.weight(n), b.mu);
        const Coweight mu = a.mu + k.mu + b.mu;
        const FElement fm = f_->normal_form(a.minus.concat(k.minus));
        const FElement fp = f_->normal_form(k.plus.concat(b.plus));
        const RatFunc coef = c * RatFunc::v_pow(e);
        for (const auto& [y, cy] : fm)
            for (const auto& [x, cx] : fp) out.add(DoubleKey{y, mu, x}, coef * cy * cx);
    }
    return out;
}

DoubleElement DrinfeldDouble::double_mul(const DoubleElement& x, const DoubleElement& y) const {
    DoubleElement out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add_scaled(mul_keys(a, b), ca * cb);
    return out;
}

UElement DrinfeldDouble::iso_lambda(const UAlgebra& u, const DoubleElement& x) const {
    UElement out;
    for (const auto& [k, c] : x) {
        UElement img = u.mul(u.mul(u.embed_minus(FElement(k.minus)), u.K(k.mu)), u.embed_plus(FElement(k.plus)));
        out.add_scaled(img, c);
    }
    return out;
}

std::string DrinfeldDouble::to_string(Half s, const HalfElement& x) const {
    std::vector<std::string> terms;
    for (const auto& [k, c] : x) terms.push_back(format_term(c, half_key_string(s, k)));
    return join_terms(terms);
}

std::string DrinfeldDouble::to_string(const DoubleElement& x) const {
    std::vector<std::string> terms;
    for (const auto& [k, c] : x) {
        std::vector<std::string> parts;
        if (!k.minus.empty()) parts.push_back("m(" + k.minus.to_string("th") + ")");
        if (!k.mu.is_zero()) parts.push_back("k" + k.mu.to_string());
        if (!k.plus.empty()) parts.push_back("p(" + k.plus.to_string("th") + ")");
        std::string mono = parts.empty() ? "1" : parts[0];
        for (size_t p = 1; p < parts.size(); ++p) mono += "*" + parts[p];
        terms.push_back(format_term(c, mono));
    }
    return join_terms(terms);
}

}  // namespace qgroup
