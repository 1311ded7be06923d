#pragma once

#include "qgroup/cartan.hpp"
#include "qgroup/lincomb.hpp"
#include "qgroup/word.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <utility>

namespace qgroup {

using FreeElement = LinComb<Word>;
using WordPair = std::pair<Word, Word>;
using TensorElement = LinComb<WordPair>;

FreeElement theta(int i);
FreeElement free_mul(const FreeElement& x, const FreeElement& y);
/// x^n in the free algebra.
FreeElement free_pow(const FreeElement& x, int n);

/// Twisted product (x (x) y)(x' (x) y') = v^{(|y|,|x'|)} xx' (x) yy'.
TensorElement twisted_tensor_mul(const CartanDatum& d, const TensorElement& a, const TensorElement& b);

/// r(w) for a single word: sum over subsets S of positions of
/// v^e w_S (x) w_{not S}, where e collects (e_{w_k}, e_{w_l}) for k < l,
/// k not in S, l in S.
TensorElement coproduct_word(const CartanDatum& d, const Word& w);
TensorElement coproduct_r(const CartanDatum& d, const FreeElement& x);

/// (1 - v^-2)^-1, the usual value of (theta_i, theta_i).
RatFunc default_generator_constant();

/// Memoized evaluation of the bilinear form on words with (theta_i, theta_i) = 1.
/// The form with a general constant c is c^{|w|} times this value.
class FormEvaluator {
public:
    explicit FormEvaluator(CartanDatum d) : datum_(std::move(d)) {}

    const CartanDatum& datum() const { return datum_; }

    /// Normalized value on a pair of words (a Laurent polynomial).
    IntPoly normalized(const Word& a, const Word& b) const;
    RatFunc form(const Word& a, const Word& b, const RatFunc& c) const;
    RatFunc form(const FreeElement& x, const FreeElement& y, const RatFunc& c) const;

private:
    IntPoly compute(const Word& a, const Word& b) const;

    CartanDatum datum_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<std::string, std::string>, IntPoly> memo_;
};

RatFunc lusztig_form(const CartanDatum& d, const FreeElement& x, const FreeElement& y,
                     const RatFunc& c = default_generator_constant());

/// Weight of a homogeneous free element; nullopt for zero or mixed weights.
std::optional<DimVec> homogeneous_weight(const FreeElement& x, size_t rank);

std::string to_string(const FreeElement& x, const std::string& symbol = "th");
std::string to_string(const TensorElement& t, const std::string& symbol = "th");

}  // namespace qgroup
