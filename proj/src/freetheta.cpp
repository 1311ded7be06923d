#include "qgroup/freetheta.hpp"

namespace qgroup {

FreeElement theta(int i) { return FreeElement(Word::letter(i)); }

FreeElement free_mul(const FreeElement& x, const FreeElement& y) {
    FreeElement out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add(a.concat(b), ca * cb);
    return out;
}

FreeElement free_pow(const FreeElement& x, int n) {
    if (n < 0) throw std::domain_error("free_pow: negative exponent");
    FreeElement r(Word{});
    for (int k = 0; k < n; ++k) r = free_mul(r, x);
    return r;
}

TensorElement twisted_tensor_mul(const CartanDatum& d, const TensorElement& a, const TensorElement& b) {
    const size_t n = d.rank();
    TensorElement out;
    for (const auto& [p, ca] : a) {
        const DimVec wy = p.second.weight(n);
        for (const auto& [q, cb] : b) {
            const int e = d.sym_form(wy, q.first.weight(n));
            out.add({p.first.concat(q.first), p.second.concat(q.second)}, ca * cb * RatFunc::v_pow(e));
        }
    }
    return out;
}

TensorElement coproduct_word(const CartanDatum& d, const Word& w) {
    const size_t len = w.size();
    if (len > 20) throw std::length_error("coproduct_word: word too long");
    TensorElement out;
    for (uint32_t mask = 0; mask < (uint32_t{1} << len); ++mask) {
        std::vector<int> left, right;
        int e = 0;
        for (size_t l = 0; l < len; ++l) {
            if (mask >> l & 1) {
                for (size_t k = 0; k < l; ++k)
                    if (!(mask >> k & 1)) e += d.a(static_cast<size_t>(w[k]), static_cast<size_t>(w[l]));
                left.push_back(w[l]);
            } else {
                right.push_back(w[l]);
            }
        }
        out.add({Word(left), Word(right)}, RatFunc::v_pow(e));
    }
    return out;
}

TensorElement coproduct_r(const CartanDatum& d, const FreeElement& x) {
    TensorElement out;
    for (const auto& [w, c] : x) out.add_scaled(coproduct_word(d, w), c);
    return out;
}

RatFunc default_generator_constant() {
    // (1 - v^-2)^-1 = v^2 / (v^2 - 1)
    return RatFunc::make(IntPoly::monomial(1, 2), IntPoly::monomial(1, 2) - IntPoly(1));
}

IntPoly FormEvaluator::normalized(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return {};
    if (a.empty()) return IntPoly(1);
    const size_t n = datum_.rank();
    if (a.weight(n) != b.weight(n)) return {};
    if (a.size() == 1) return IntPoly(1);
    auto key = std::make_pair(a.key(), b.key());
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    IntPoly val = compute(a, b);
    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), val);
    return val;
}

// (a, theta_i z) = sum_{k : a_k = i} v^{(|a_<k|, e_i)} (a \ k, z)
IntPoly FormEvaluator::compute(const Word& a, const Word& b) const {
    const int i = b[0];
    const Word z = b.suffix_from(1);
    IntPoly acc;
    int e = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k] == i) {
            IntPoly sub = normalized(a.erase(k), z);
            if (!sub.is_zero()) acc += sub.shifted(e);
        }
        e += datum_.a(static_cast<size_t>(a[k]), static_cast<size_t>(i));
    }
    return acc;
}

RatFunc FormEvaluator::form(const Word& a, const Word& b, const RatFunc& c) const {
    IntPoly p = normalized(a, b);
    if (p.is_zero()) return {};
    return RatFunc(p) * c.pow(static_cast<int>(a.size()));
}

RatFunc FormEvaluator::form(const FreeElement& x, const FreeElement& y, const RatFunc& c) const {
    RatFunc acc;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            RatFunc f = form(a, b, c);
            if (!f.is_zero()) acc += ca * cb * f;
        }
    return acc;
}

RatFunc lusztig_form(const CartanDatum& d, const FreeElement& x, const FreeElement& y, const RatFunc& c) {
    return FormEvaluator(d).form(x, y, c);
}

std::optional<DimVec> homogeneous_weight(const FreeElement& x, size_t rank) {
    std::optional<DimVec> w;
    for (const auto& [word, c] : x) {
        DimVec d = word.weight(rank);
        if (w && *w != d) return std::nullopt;
        w = d;
    }
    return w;
}

std::string to_string(const FreeElement& x, const std::string& symbol) {
    std::vector<std::string> terms;
    for (const auto& [w, c] : x) terms.push_back(format_term(c, w.to_string(symbol)));
    return join_terms(terms);
}

std::string to_string(const TensorElement& t, const std::string& symbol) {
    std::vector<std::string> terms;
    for (const auto& [p, c] : t)
        terms.push_back(format_term(c, "(" + p.first.to_string(symbol) + " (x) " + p.second.to_string(symbol) + ")"));
    return join_terms(terms);
}

}  // namespace qgroup
