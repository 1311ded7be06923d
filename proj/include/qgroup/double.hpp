#pragma once

#include "qgroup/uq.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace qgroup {

enum class Half { plus, minus };

/// k_mu [w], with w a basis word of f. On the minus side the torus factor is
/// also written on the left.
struct HalfKey {
    Coweight mu;
    Word word;
    friend auto operator<=>(const HalfKey&, const HalfKey&) = default;
    friend bool operator==(const HalfKey&, const HalfKey&) = default;
};

using HalfElement = LinComb<HalfKey>;
using HalfTensor = LinComb<std::pair<HalfKey, HalfKey>>;

/// Triangular monomial y^- k_mu x^+ of the quotient DK.
struct DoubleKey {
    Word minus;
    Coweight mu;
    Word plus;
    friend auto operator<=>(const DoubleKey&, const DoubleKey&) = default;
    friend bool operator==(const DoubleKey&, const DoubleKey&) = default;
};

using DoubleElement = LinComb<DoubleKey>;

struct PairingCalibration {
    std::vector<RatFunc> constants;  // one per vertex
    bool consistent = false;         // every vertex gave the same exact value
};

/// The half algebras K^+ and K^-, the skew pairing between them and the
/// quotient DK of their Drinfeld double, built without reference to U.
class DrinfeldDouble {
public:
    /// `constant` is the pairing value on (theta_i^+, theta_i^-).
    DrinfeldDouble(std::shared_ptr<const FAlgebra> f, RatFunc constant);
    /// Runs calibrate_pairing and freezes the result; throws if inconsistent.
    static std::shared_ptr<DrinfeldDouble> calibrated(std::shared_ptr<const FAlgebra> f);
    /// Solves for the constant that turns the (theta_i^+, theta_i^-) cross
    /// relation into E_iF_i - F_iE_i = (K_i - K_-i)/(v - v^-1).
    static PairingCalibration calibrate_pairing(std::shared_ptr<const FAlgebra> f);

    const FAlgebra& f() const { return *f_; }
    const CartanDatum& datum() const { return f_->datum(); }
    size_t rank() const { return datum().rank(); }
    const RatFunc& constant() const { return c_; }

    HalfElement theta(int i) const;
    HalfElement k(const Coweight& mu) const;
    HalfElement half(const FElement& x, const Coweight& mu) const;

    HalfElement half_mul(Half s, const HalfElement& a, const HalfElement& b) const;
    HalfTensor half_delta(Half s, const HalfElement& a) const;
    HalfElement half_antipode(Half s, const HalfElement& a) const;
    RatFunc half_counit(const HalfElement& a) const;
    HalfElement tensor_contract(Half s, const HalfTensor& t) const;  // m(a (x) b)
    RatFunc pairing_phi(const HalfElement& plus, const HalfElement& minus) const;

    DoubleElement from_plus(const HalfElement& x) const;
    DoubleElement from_minus(const HalfElement& y) const;
    DoubleElement one() const;
    DoubleElement double_mul(const DoubleElement& x, const DoubleElement& y) const;
    UElement iso_lambda(const UAlgebra& u, const DoubleElement& x) const;

    std::string to_string(Half s, const HalfElement& x) const;
    std::string to_string(const DoubleElement& x) const;

private:
    using FTensor = LinComb<std::pair<Word, Word>>;
    /// Normal form of r(w) for a basis word w.
    FTensor f_coproduct(const Word& w) const;
    /// The plus-side antipode on f: S(x^+) = k_{-nu} A(x)^+.
    FElement antipode_core(const Word& w) const;
    /// Normal form of x^+ y^- for basis words x, y.
    DoubleElement cross(const Word& x, const Word& y) const;
    DoubleElement mul_keys(const DoubleKey& a, const DoubleKey& b) const;
    RatFunc bracket(const Word& x, const Word& y) const;
    int coweight_form(const Coweight& a, const Coweight& b) const;

    std::shared_ptr<const FAlgebra> f_;
    RatFunc c_;
    mutable std::mutex mutex_;
    mutable std::map<Word, FTensor> coproduct_memo_;
    mutable std::map<Word, FElement> antipode_memo_;
    mutable std::map<std::pair<Word, Word>, DoubleElement> cross_memo_;
};

}  // namespace qgroup
