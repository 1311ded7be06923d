#include "qgroup/braid.hpp"

#include <functional>
#include <stdexcept>

namespace qgroup {

Braid::Braid(std::shared_ptr<const UAlgebra> u) : u_(std::move(u)) {}

UElement Braid::generator_image(int i, Gen g, int j, const Coweight& mu, bool inverse) const {
    const UAlgebra& U = *u_;
    const CartanDatum& d = U.datum();
    U.f().check_vertex(i);
    if (g == Gen::K) return U.K(d.reflect(i, mu));
    U.f().check_vertex(j);
    if (j == i) {
        if (g == Gen::E)
            return inverse ? -U.mul(U.Kh(i, -1), U.F(i)) : -U.mul(U.F(i), U.Kh(i, 1));
        return inverse ? -U.mul(U.E(i), U.Kh(i, 1)) : -U.mul(U.Kh(i, -1), U.E(i));
    }
    const int m = -d.a(static_cast<size_t>(i), static_cast<size_t>(j));
    UElement out;
    for (int r = 0; r <= m; ++r) {
        const int s = m - r;
        RatFunc c = RatFunc::v_pow(g == Gen::E ? -r : r, r % 2 ? -1 : 1);
        UElement term;
        if (g == Gen::E) {
            // forward: E_i^(s) E_j E_i^(r); inverse: E_i^(r) E_j E_i^(s)
            term = inverse ? U.mul(U.mul(U.E_div(i, r), U.E(j)), U.E_div(i, s))
                           : U.mul(U.mul(U.E_div(i, s), U.E(j)), U.E_div(i, r));
        } else {
            // forward: F_i^(r) F_j F_i^(s); inverse: F_i^(s) F_j F_i^(r)
            term = inverse ? U.mul(U.mul(U.F_div(i, s), U.F(j)), U.F_div(i, r))
                           : U.mul(U.mul(U.F_div(i, r), U.F(j)), U.F_div(i, s));
        }
        out.add_scaled(term, c);
    }
    return out;
}

UElement Braid::word_image(int i, const Word& w, bool minus, bool inverse) const {
    if (w.empty()) return u_->one();
    auto key = std::make_tuple(i, minus, inverse, w.key());
    {
        std::lock_guard lock(mutex_);
        auto it = word_memo_.find(key);
        if (it != word_memo_.end()) return it->second;
    }
    const int last = w[w.size() - 1];
    UElement img = u_->mul(word_image(i, w.prefix(w.size() - 1), minus, inverse),
                           generator_image(i, minus ? Gen::F : Gen::E, last, Coweight(), inverse));
    std::lock_guard lock(mutex_);
    word_memo_.emplace(key, img);
    return img;
}

UElement Braid::apply(int i, const UElement& x, bool inverse) const {
    u_->f().check_vertex(i);
    UElement out;
    for (const auto& [k, c] : x) {
        UElement img = word_image(i, k.minus, true, inverse);
        if (!k.mu.is_zero()) img = u_->mul(img, u_->K(u_->datum().reflect(i, k.mu)));
        img = u_->mul(img, word_image(i, k.plus, false, inverse));
        out.add_scaled(img, c);
    }
    return out;
}

UElement Braid::ti_apply(int i, const UElement& x) const { return apply(i, x, false); }

UElement Braid::ti_inverse_apply(int i, const UElement& x) const {
    bool known;
    {
        std::lock_guard lock(mutex_);
        known = certified_.count(i) > 0;
    }
    if (!known) {
        if (!certify_inverse(i)) throw std::logic_error("T_i^-1 table failed certification");
        std::lock_guard lock(mutex_);
        certified_.insert(i);
    }
    return apply(i, x, true);
}

bool Braid::certify_inverse(int i) const {
    const UAlgebra& U = *u_;
    std::vector<UElement> gens;
    for (int j = 0; j < static_cast<int>(U.rank()); ++j) {
        gens.push_back(U.E(j));
        gens.push_back(U.F(j));
        gens.push_back(U.Kh(j, 1));
    }
    for (const auto& g : gens) {
        if (apply(i, apply(i, g, true), false) != g) return false;
        if (apply(i, apply(i, g, false), true) != g) return false;
    }
    return true;
}

std::optional<FElement> Braid::plus_part(const UElement& x) {
    FElement out;
    for (const auto& [k, c] : x) {
        if (!k.minus.empty() || !k.mu.is_zero()) return std::nullopt;
        out.add(k.plus, c);
    }
    return out;
}

UElement non_plus_part(const UElement& x) {
    UElement out;
    for (const auto& [k, c] : x)
        if (!k.minus.empty() || !k.mu.is_zero()) out.add(k, c);
    return out;
}

FElement Braid::ti_restricted(int i, const FElement& x) const {
    auto p = plus_part(ti_apply(i, u_->embed_plus(x)));
    if (!p) throw std::domain_error("T_i(x^+) is not in U^+: x is not in _if");
    return *p;
}

FElement Braid::ti_inverse_restricted(int i, const FElement& x) const {
    auto p = plus_part(ti_inverse_apply(i, u_->embed_plus(x)));
    if (!p) throw std::domain_error("T_i^-1(x^+) is not in U^+: x is not in ^if");
    return *p;
}

bool Braid::if_membership_crosscheck(int i, const DimVec& nu) const {
    const FAlgebra& F = f();
    auto wb = F.weight_basis(nu);
    const size_t n = wb->dim();
    for (bool inverse : {false, true}) {
        // rows indexed by non-plus keys, one column per basis element
        std::map<UKey, std::vector<RatFunc>> rows;
        for (size_t s = 0; s < n; ++s) {
            UElement img = apply(i, u_->embed_plus(FElement(wb->basis_word(s))), inverse);
            for (const auto& [k, c] : non_plus_part(img)) {
                auto& row = rows[k];
                row.resize(n);
                row[s] = c;
            }
        }
        Matrix<RatFunc> M;
        for (auto& [k, row] : rows) M.push_back(row);
        const size_t image_dim = n - rank(M);
        auto kern = F.sub_if_basis(i, nu, inverse ? Side::right : Side::left);
        if (kern.size() != image_dim) return false;
        for (const auto& x : kern)
            if (!non_plus_part(apply(i, u_->embed_plus(x), inverse)).is_zero()) return false;
    }
    return true;
}

FElement Braid::barrev(const FElement& x) const {
    FreeElement rev;
    for (const auto& [w, c] : x) rev.add(w.reversed(), c.bar());
    return f().normal_form(rev);
}

UElement Braid::psi(const UElement& x) const {
    const UAlgebra& U = *u_;
    UElement out;
    for (const auto& [k, c] : x) {
        UElement img = U.embed_minus(f().normal_form(k.plus.reversed()));
        img = U.mul(img, U.K(-k.mu));
        img = U.mul(img, U.embed_plus(f().normal_form(k.minus.reversed())));
        out.add_scaled(img, c.bar());
    }
    return out;
}

UElement Braid::t_tilde_apply(int i, const UElement& x) const {
    const UAlgebra& U = *u_;
    const FAlgebra& F = f();
    const CartanDatum& d = U.datum();
    UElement out;
    for (const auto& [k, c] : x) {
        // F-part: y = sum_t theta_i^(t) y_t; y_t^- = psi(z^+) with z = barrev(y_t) in _if
        UElement minus;
        if (k.minus.empty()) {
            minus = U.one();
        } else {
            for (const auto& [t, yt] : F.i_decompose(i, FElement(k.minus), Side::left)) {
                UElement head = U.pow(generator_image(i, Gen::F, i, Coweight(), false), t) * qfact(t).inverse();
                UElement tail = psi(U.embed_plus(ti_restricted(i, barrev(yt))));
                minus += U.mul(head, tail);
            }
        }
        UElement plus;
        if (k.plus.empty()) {
            plus = U.one();
        } else {
            for (const auto& [t, yt] : F.i_decompose(i, FElement(k.plus), Side::left)) {
                UElement head = U.pow(generator_image(i, Gen::E, i, Coweight(), false), t) * qfact(t).inverse();
                plus += U.mul(head, U.embed_plus(ti_restricted(i, yt)));
            }
        }
        UElement img = U.mul(U.mul(minus, U.K(d.reflect(i, k.mu))), plus);
        out.add_scaled(img, c);
    }
    return out;
}

TwistReport Braid::calibrate_twist(int i, const std::vector<FElement>& samples) const {
    const UAlgebra& U = *u_;
    const FAlgebra& F = f();
    const CartanDatum& d = U.datum();
    const size_t n = U.rank();
    TwistReport rep;
    for (const auto& y : samples) {
        if (y.is_zero()) continue;
        const DimVec nu = weight_of(y, n);
        for (const auto& [t, yt] : F.i_decompose(i, y, Side::left)) {
            for (bool minus_side : {true, false}) {
                UElement exact, candidate;
                const FElement ty = ti_restricted(i, yt);
                if (minus_side) {
                    exact = U.mul(ti_apply(i, U.F_div(i, t)), ti_apply(i, U.embed_minus(yt)));
                    candidate = U.mul(U.mul(U.K(-t * Coweight::h(n, i)), U.E_div(i, t)), U.embed_minus(ty));
                } else {
                    exact = U.mul(ti_apply(i, U.E_div(i, t)), ti_apply(i, U.embed_plus(yt)));
                    candidate = U.mul(U.mul(U.K(t * Coweight::h(n, i)), U.F_div(i, t)), U.embed_plus(ty));
                }
                TwistObservation ob;
                ob.side = minus_side ? "minus" : "plus";
                ob.sample = to_string(y);
                ob.weight = nu;
                ob.r = t;
                const auto& [key, cb] = *candidate.begin();
                RatFunc s = exact.coeff(key) / cb;
                ob.scalar = !s.is_zero() && candidate * s == exact && s.is_laurent() && s.num().is_monomial() &&
                            (s.num().leading() == 1 || s.num().leading() == -1);
                if (ob.scalar) {
                    ob.sign = s.num().leading() > 0 ? 1 : -1;
                    ob.exponent = s.num().low();
                } else {
                    rep.consistent = false;
                }
                rep.observations.push_back(ob);
            }
        }
    }
    const Quiver& q = d.quiver();
    struct Cand {
        std::string name;
        std::function<int(const DimVec&, const DimVec&)> f;
    };
    std::vector<Cand> cands = {
        {"euler(nu,ri)", [&](const DimVec& a, const DimVec& b) { return euler_form(a, b, q); }},
        {"euler(ri,nu)", [&](const DimVec& a, const DimVec& b) { return euler_form(b, a, q); }},
        {"-euler(nu,ri)", [&](const DimVec& a, const DimVec& b) { return -euler_form(a, b, q); }},
        {"-euler(ri,nu)", [&](const DimVec& a, const DimVec& b) { return -euler_form(b, a, q); }},
        {"(nu,ri)", [&](const DimVec& a, const DimVec& b) { return d.sym_form(a, b); }},
        {"-(nu,ri)", [&](const DimVec& a, const DimVec& b) { return -d.sym_form(a, b); }},
        {"0", [](const DimVec&, const DimVec&) { return 0; }},
        {"(ri,ri)/2+r", [&](const DimVec&, const DimVec& b) { return d.sym_form(b, b) / 2 + b[static_cast<size_t>(i)]; }},
        {"(ri,ri)/2+r-(nu,i)",
         [&](const DimVec& a, const DimVec& b) {
             return d.sym_form(b, b) / 2 + b[static_cast<size_t>(i)] - d.sym_form(a, DimVec::unit(n, i));
         }},
    };
    for (const char* side : {"minus", "plus"}) {
        for (const auto& cand : cands) {
            TwistCandidate tc{std::string(side) + ": " + cand.name, true};
            for (const auto& ob : rep.observations) {
                if (ob.side != side) continue;
                const DimVec ri = ob.r * DimVec::unit(n, i);
                if (!ob.scalar || ob.exponent != cand.f(ob.weight, ri)) tc.matches = false;
            }
            rep.candidates.push_back(tc);
        }
    }
    return rep;
}

bool Braid::braid_verify(int i, int j) const {
    const UAlgebra& U = *u_;
    const CartanDatum& d = U.datum();
    U.f().check_vertex(i);
    U.f().check_vertex(j);
    if (i == j) throw std::invalid_argument("braid_verify: i and j must differ");
    const int aij = d.a(static_cast<size_t>(i), static_cast<size_t>(j));
    if (aij != 0 && aij != -1) throw std::invalid_argument("braid_verify: only a_ij in {0, -1} is supported");
    auto word = [&](const std::vector<int>& seq, const UElement& x) {
        UElement y = x;
        for (size_t k = seq.size(); k-- > 0;) y = ti_apply(seq[k], y);
        return y;
    };
    const std::vector<int> lhs = aij == -1 ? std::vector<int>{i, j, i} : std::vector<int>{i, j};
    const std::vector<int> rhs = aij == -1 ? std::vector<int>{j, i, j} : std::vector<int>{j, i};
    std::vector<UElement> tests;
    for (int k = 0; k < static_cast<int>(U.rank()); ++k) {
        tests.push_back(U.E(k));
        tests.push_back(U.F(k));
        tests.push_back(U.Kh(k, 1));
    }
    for (int k = 0; k < static_cast<int>(U.rank()); ++k)
        for (int l = 0; l < static_cast<int>(U.rank()); ++l) tests.push_back(U.mul(U.E(k), U.F(l)));
    for (const auto& x : tests)
        if (word(lhs, x) != word(rhs, x)) return false;
    return true;
}

}  // namespace qgroup
