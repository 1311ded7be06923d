#pragma once

#include "qgroup/freetheta.hpp"
#include "qgroup/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace qgroup {

/// Presentation of the weight space f_nu by the radical of the form.
struct WeightBasis {
    DimVec weight;
    /// Every word of weight nu, lexicographically increasing.
    std::vector<Word> words;
    /// Positions in `words` of the lexicographically greedy basis.
    std::vector<size_t> selected;
    /// Normalized Gram matrix on selected x selected ((theta_i, theta_i) = 1).
    Matrix<IntPoly> gram;
    /// proj[w][s]: coordinate of words[w] on basis element s.
    std::vector<std::vector<RatFunc>> proj;
    std::map<Word, size_t> index;

    size_t dim() const { return selected.size(); }
    const Word& basis_word(size_t s) const { return words[selected[s]]; }
};

/// Elements of f, written on the selected basis words of each weight.
using FElement = LinComb<Word>;

enum class Side { left, right };

/// Lusztig's algebra f of a Cartan datum, computed weight by weight.
/// Expensive results are cached; all methods are safe to call concurrently.
class FAlgebra {
public:
    explicit FAlgebra(CartanDatum d, RatFunc generator_constant = default_generator_constant());

    const CartanDatum& datum() const { return form_.datum(); }
    size_t rank() const { return datum().rank(); }
    const FormEvaluator& form_evaluator() const { return form_; }
    const RatFunc& generator_constant() const { return c_; }

    std::shared_ptr<const WeightBasis> weight_basis(const DimVec& nu) const;
    size_t dim(const DimVec& nu) const { return weight_basis(nu)->dim(); }

    FElement normal_form(const Word& w) const;
    FElement normal_form(const FreeElement& x) const;
    FElement f_mul(const FElement& x, const FElement& y) const;
    FElement theta_divided(int i, int n) const;
    FElement one() const { return FElement(Word{}); }

    /// The form on f, with (theta_i, theta_i) = generator_constant().
    RatFunc form(const FElement& x, const FElement& y) const;

    /// Coordinates of the weight-nu part of x on the basis of f_nu.
    std::vector<RatFunc> coordinates(const FElement& x, const DimVec& nu) const;
    FElement from_coordinates(const DimVec& nu, const std::vector<RatFunc>& c) const;

    /// Left: coefficient of theta_i (x) (.) in r(x). Right: of (.) (x) theta_i.
    FElement i_r_component(int i, Side side, const FElement& x) const;
    /// Kernel of i_r_component on f_nu; left gives (_if)_nu, right gives (^if)_nu.
    std::vector<FElement> sub_if_basis(int i, const DimVec& nu, Side side) const;
    /// x = sum_t theta_i^(t) x_t (left) or sum_t x_t theta_i^(t) (right), with x_t
    /// in the matching kernel. Only nonzero parts are returned, t increasing.
    std::vector<std::pair<int, FElement>> i_decompose(int i, const FElement& x, Side side = Side::left) const;
    bool dim_decomposition_check(int i, const DimVec& nu) const;

    void check_vertex(int i) const;

private:
    std::shared_ptr<const WeightBasis> build(const DimVec& nu) const;

    FormEvaluator form_;
    RatFunc c_;
    mutable std::mutex mutex_;
    mutable std::map<DimVec, std::shared_ptr<const WeightBasis>> bases_;
    mutable std::map<std::tuple<int, DimVec, int>, std::vector<FElement>> kernels_;
};

/// Weight of a nonzero homogeneous element; throws otherwise.
DimVec weight_of(const FElement& x, size_t rank);

}  // namespace qgroup
