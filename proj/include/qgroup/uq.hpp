#pragma once

#include "qgroup/falg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace qgroup {

/// Triangular basis monomial F_minus K_mu E_plus, with minus/plus basis
/// words of f.
struct UKey {
    Word minus;
    Word plus;
    Coweight mu;

    friend auto operator<=>(const UKey&, const UKey&) = default;
    friend bool operator==(const UKey&, const UKey&) = default;
};

using UElement = LinComb<UKey>;
using UTensor = LinComb<std::pair<UKey, UKey>>;
using UTensor3 = LinComb<std::tuple<UKey, UKey, UKey>>;

struct HopfReport {
    bool coassociative = false;
    bool antipode_left = false;
    bool antipode_right = false;
    bool ok() const { return coassociative && antipode_left && antipode_right; }
};

/// The quantum group U over Q(v) in F K E normal form.
class UAlgebra {
public:
    explicit UAlgebra(std::shared_ptr<const FAlgebra> f);

    const FAlgebra& f() const { return *f_; }
    std::shared_ptr<const FAlgebra> f_ptr() const { return f_; }
    const CartanDatum& datum() const { return f_->datum(); }
    size_t rank() const { return datum().rank(); }

    UElement one() const;
    UElement E(int i) const;
    UElement F(int i) const;
    UElement K(const Coweight& mu) const;
    /// K_{sign * h_i}
    UElement Kh(int i, int sign = 1) const;
    UElement E_div(int i, int n) const;
    UElement F_div(int i, int n) const;
    UElement embed_plus(const FElement& x) const;
    UElement embed_minus(const FElement& x) const;

    UElement mul(const UElement& x, const UElement& y) const;
    UElement mul_keys(const UKey& a, const UKey& b) const;
    UElement pow(const UElement& x, int n) const;
    /// Normal form of E_b F_c for arbitrary words b, c.
    UElement straighten(const Word& b, const Word& c) const;

    UTensor delta(const UElement& x) const;
    UElement antipode(const UElement& x) const;
    RatFunc counit(const UElement& x) const;

    UTensor tensor_mul(const UTensor& a, const UTensor& b) const;
    UTensor3 delta_left(const UTensor& t) const;   // (Delta (x) id)
    UTensor3 delta_right(const UTensor& t) const;  // (id (x) Delta)
    HopfReport hopf_axiom_check(const UElement& x) const;

    /// Extend a map on generators multiplicatively; each key is lifted to its
    /// F letters, then K_mu, then its E letters.
    template <class Hom>
    UElement apply_hom(const UElement& x, Hom&& gen_image) const;

    std::string to_string(const UElement& x) const;
    std::string to_string(const UTensor& t) const;
    static std::string key_string(const UKey& k);

private:
    UTensor delta_key(const UKey& k) const;
    UElement antipode_key(const UKey& k) const;

    std::shared_ptr<const FAlgebra> f_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::string, std::string>, UElement> straighten_memo_;
    mutable std::map<std::pair<UKey, UKey>, UElement> mul_memo_;
    mutable std::map<UKey, UTensor> delta_memo_;
};

/// Kinds of generators for homomorphisms defined on generators.
enum class Gen { E, F, K };

template <class Hom>
UElement UAlgebra::apply_hom(const UElement& x, Hom&& gen_image) const {
    UElement out;
    for (const auto& [k, c] : x) {
        UElement acc = one();
        for (size_t p = 0; p < k.minus.size(); ++p) acc = mul(acc, gen_image(Gen::F, k.minus[p], Coweight()));
        if (!k.mu.is_zero()) acc = mul(acc, gen_image(Gen::K, -1, k.mu));
        for (size_t p = 0; p < k.plus.size(); ++p) acc = mul(acc, gen_image(Gen::E, k.plus[p], Coweight()));
        out.add_scaled(acc, c);
    }
    return out;
}

/// Weight data (nu^-, mu, nu^+) of a key.
struct UGrading {
    DimVec minus;
    Coweight mu;
    DimVec plus;
    friend bool operator==(const UGrading&, const UGrading&) = default;
};
UGrading grading(const UKey& k, size_t rank);

}  // namespace qgroup
