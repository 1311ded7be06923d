#include "qgroup/uq.hpp"

#include <stdexcept>

namespace qgroup {

namespace {

// (v - v^-1)^-1
RatFunc inv_v_minus_vinv() { return (RatFunc::v_pow(1) - RatFunc::v_pow(-1)).inverse(); }

}  // namespace

UAlgebra::UAlgebra(std::shared_ptr<const FAlgebra> f) : f_(std::move(f)) {}

UElement UAlgebra::one() const { return UElement(UKey{{}, {}, Coweight::zero(rank())}); }

UElement UAlgebra::E(int i) const {
    f_->check_vertex(i);
    return UElement(UKey{{}, Word::letter(i), Coweight::zero(rank())});
}

UElement UAlgebra::F(int i) const {
    f_->check_vertex(i);
    return UElement(UKey{Word::letter(i), {}, Coweight::zero(rank())});
}

UElement UAlgebra::K(const Coweight& mu) const {
    if (mu.size() != rank()) throw std::invalid_argument("K: coweight has wrong rank");
    return UElement(UKey{{}, {}, mu});
}

UElement UAlgebra::Kh(int i, int sign) const {
    f_->check_vertex(i);
    return K(sign * Coweight::h(rank(), i));
}

UElement UAlgebra::E_div(int i, int n) const { return embed_plus(f_->theta_divided(i, n)); }
UElement UAlgebra::F_div(int i, int n) const { return embed_minus(f_->theta_divided(i, n)); }

UElement UAlgebra::embed_plus(const FElement& x) const {
    UElement out;
    for (const auto& [w, c] : x) out.add(UKey{{}, w, Coweight::zero(rank())}, c);
    return out;
}

UElement UAlgebra::embed_minus(const FElement& x) const {
    UElement out;
    for (const auto& [w, c] : x) out.add(UKey{w, {}, Coweight::zero(rank())}, c);
    return out;
}

UElement UAlgebra::straighten(const Word& b, const Word& c) const {
    const size_t n = rank();
    if (b.empty() || c.empty()) {
        UElement out;
        FElement fm = c.empty() ? f_->one() : f_->normal_form(c);
        FElement fp = b.empty() ? f_->one() : f_->normal_form(b);
        for (const auto& [x, cx] : fm)
            for (const auto& [y, cy] : fp) out.add(UKey{x, y, Coweight::zero(n)}, cx * cy);
        return out;
    }
    auto memo_key = std::make_pair(b.key(), c.key());
    {
        std::lock_guard lock(mutex_);
        auto it = straighten_memo_.find(memo_key);
        if (it != straighten_memo_.end()) return it->second;
    }
    const CartanDatum& d = datum();
    const int i = b[b.size() - 1];
    const Word head = b.prefix(b.size() - 1);
    const Word tail = Word::letter(i);
    UElement out;

    // E_head F_c E_i
    for (const auto& [k, coef] : straighten(head, c)) {
        for (const auto& [y, cy] : f_->normal_form(k.plus.concat(tail)))
            out.add(UKey{k.minus, y, k.mu}, coef * cy);
    }
    // E_head F_{c \ k} (v^{-s} K_i - v^{s} K_{-i}) / (v - v^-1), s = (e_i, |c_{>k}|)
    const RatFunc scale = inv_v_minus_vinv();
    const Coweight hi = Coweight::h(n, i);
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] != i) continue;
        int s = 0;
        for (size_t l = k + 1; l < c.size(); ++l) s += d.a(static_cast<size_t>(i), static_cast<size_t>(c[l]));
        for (const auto& [key, coef] : straighten(head, c.erase(k))) {
            const DimVec wy = key.plus.weight(n);
            // E_y K_{+-h_i} = v^{-+ alpha_y(h_i)} K_{+-h_i} E_y
            const int ay = d.alpha(wy, hi);
            out.add(UKey{key.minus, key.plus, key.mu + hi}, coef * scale * RatFunc::v_pow(-s - ay));
            out.add(UKey{key.minus, key.plus, key.mu - hi}, -(coef * scale * RatFunc::v_pow(s + ay)));
        }
    }
    std::lock_guard lock(mutex_);
    straighten_memo_.emplace(memo_key, out);
    return out;
}

UElement UAlgebra::mul_keys(const UKey& a, const UKey& b) const {
    const size_t n = rank();
    const bool trivial_a = a.plus.empty() && a.minus.empty() && a.mu.is_zero();
    const bool trivial_b = b.plus.empty() && b.minus.empty() && b.mu.is_zero();
    if (trivial_a) return UElement(b);
    if (trivial_b) return UElement(a);
    auto memo_key = std::make_pair(a, b);
    {
        std::lock_guard lock(mutex_);
        auto it = mul_memo_.find(memo_key);
        if (it != mul_memo_.end()) return it->second;
    }
    const CartanDatum& d = datum();
    UElement out;
    for (const auto& [k, coef] : straighten(a.plus, b.minus)) {
        // F_a K_mu F_x K_rho E_y K_lambda E_d
        const int e = -d.alpha(k.minus.weight(n), a.mu) - d.alpha(k.plus.weight(n), b.mu);
        const Coweight mu = a.mu + k.mu + b.mu;
        const FElement fm = f_->normal_form(a.minus.concat(k.minus));
        const FElement fp = f_->normal_form(k.plus.concat(b.plus));
        const RatFunc c = coef * RatFunc::v_pow(e);
        for (const auto& [x, cx] : fm)
            for (const auto& [y, cy] : fp) out.add(UKey{x, y, mu}, c * cx * cy);
    }
    std::lock_guard lock(mutex_);
    mul_memo_.emplace(memo_key, out);
    return out;
}

UElement UAlgebra::mul(const UElement& x, const UElement& y) const {
    UElement out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add_scaled(mul_keys(a, b), ca * cb);
    return out;
}

UElement UAlgebra::pow(const UElement& x, int n) const {
    if (n < 0) throw std::domain_error("pow: negative exponent");
    UElement r = one();
    for (int k = 0; k < n; ++k) r = mul(r, x);
    return r;
}

UTensor UAlgebra::tensor_mul(const UTensor& a, const UTensor& b) const {
    UTensor out;
    for (const auto& [p, ca] : a)
        for (const auto& [q, cb] : b) {
            UElement l = mul_keys(p.first, q.first);
            if (l.is_zero()) continue;
            UElement r = mul_keys(p.second, q.second);
            const RatFunc c = ca * cb;
            for (const auto& [kl, cl] : l)
                for (const auto& [kr, cr] : r) out.add({kl, kr}, c * cl * cr);
        }
    return out;
}

UTensor UAlgebra::delta_key(const UKey& k) const {
    {
        std::lock_guard lock(mutex_);
        auto it = delta_memo_.find(k);
        if (it != delta_memo_.end()) return it->second;
    }
    const size_t n = rank();
    const UKey unit{{}, {}, Coweight::zero(n)};
    UTensor acc({unit, unit});
    for (size_t p = 0; p < k.minus.size(); ++p) {
        const int i = k.minus[p];
        const UKey fi{Word::letter(i), {}, Coweight::zero(n)};
        UTensor g;
        g.add({fi, UKey{{}, {}, -Coweight::h(n, i)}}, 1);
        g.add({unit, fi}, 1);
        acc = tensor_mul(acc, g);
    }
    if (!k.mu.is_zero()) acc = tensor_mul(acc, UTensor({UKey{{}, {}, k.mu}, UKey{{}, {}, k.mu}}));
    for (size_t p = 0; p < k.plus.size(); ++p) {
        const int i = k.plus[p];
        const UKey ei{{}, Word::letter(i), Coweight::zero(n)};
        UTensor g;
        g.add({ei, unit}, 1);
        g.add({UKey{{}, {}, Coweight::h(n, i)}, ei}, 1);
        acc = tensor_mul(acc, g);
    }
    std::lock_guard lock(mutex_);
    delta_memo_.emplace(k, acc);
    return acc;
}

UTensor UAlgebra::delta(const UElement& x) const {
    UTensor out;
    for (const auto& [k, c] : x) out.add_scaled(delta_key(k), c);
    return out;
}

UElement UAlgebra::antipode_key(const UKey& k) const {
    // S is an antihomomorphism: S(F_a K_mu E_b) = S(E_b) S(K_mu) S(F_a).
    UElement acc = one();
    for (size_t p = k.plus.size(); p-- > 0;) {
        const int i = k.plus[p];
        acc = mul(acc, mul(Kh(i, -1), E(i)) * RatFunc(-1));
    }
    acc = mul(acc, K(-k.mu));
    for (size_t p = k.minus.size(); p-- > 0;) {
        const int i = k.minus[p];
        acc = mul(acc, mul(F(i), Kh(i, 1)) * RatFunc(-1));
    }
    return acc;
}

UElement UAlgebra::antipode(const UElement& x) const {
    UElement out;
    for (const auto& [k, c] : x) out.add_scaled(antipode_key(k), c);
    return out;
}

RatFunc UAlgebra::counit(const UElement& x) const {
    RatFunc acc;
    for (const auto& [k, c] : x)
        if (k.minus.empty() && k.plus.empty()) acc += c;
    return acc;
}

UTensor3 UAlgebra::delta_left(const UTensor& t) const {
    UTensor3 out;
    for (const auto& [p, c] : t)
        for (const auto& [q, cq] : delta_key(p.first)) out.add({q.first, q.second, p.second}, c * cq);
    return out;
}

UTensor3 UAlgebra::delta_right(const UTensor& t) const {
    UTensor3 out;
    for (const auto& [p, c] : t)
        for (const auto& [q, cq] : delta_key(p.second)) out.add({p.first, q.first, q.second}, c * cq);
    return out;
}

HopfReport UAlgebra::hopf_axiom_check(const UElement& x) const {
    HopfReport r;
    const UTensor dx = delta(x);
    r.coassociative = delta_left(dx) == delta_right(dx);
    const UElement target = one() * counit(x);
    UElement left, right;
    for (const auto& [p, c] : dx) {
        left.add_scaled(mul(antipode_key(p.first), UElement(p.second)), c);
        right.add_scaled(mul(UElement(p.first), antipode_key(p.second)), c);
    }
    r.antipode_left = left == target;
    r.antipode_right = right == target;
    return r;
}

std::string UAlgebra::key_string(const UKey& k) {
    std::vector<std::string> parts;
    if (!k.minus.empty()) parts.push_back(k.minus.to_string("F"));
    if (!k.mu.is_zero()) {
        std::string s = "K(";
        for (size_t i = 0; i < k.mu.size(); ++i) s += (i ? "," : "") + std::to_string(k.mu[i]);
        parts.push_back(s + ")");
    }
    if (!k.plus.empty()) parts.push_back(k.plus.to_string("E"));
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (size_t p = 1; p < parts.size(); ++p) out += "*" + parts[p];
    return out;
}

std::string UAlgebra::to_string(const UElement& x) const {
    std::vector<std::string> terms;
    for (const auto& [k, c] : x) terms.push_back(format_term(c, key_string(k)));
    return join_terms(terms);
}

std::string UAlgebra::to_string(const UTensor& t) const {
    std::vector<std::string> terms;
    for (const auto& [p, c] : t)
        terms.push_back(format_term(c, "(" + key_string(p.first) + " (x) " + key_string(p.second) + ")"));
    return join_terms(terms);
}

UGrading grading(const UKey& k, size_t rank) { return {k.minus.weight(rank), k.mu, k.plus.weight(rank)}; }

}  // namespace qgroup
