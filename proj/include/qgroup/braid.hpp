#pragma once

#include "qgroup/uq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace qgroup {

/// One candidate exponent for the twist v^<nu, r i>.
struct TwistCandidate {
    std::string name;
    bool matches = true;
};

struct TwistObservation {
    std::string side;  // "minus" or "plus"
    std::string sample;
    DimVec weight;
    int r = 0;
    bool scalar = false;  // the two routes differ by a scalar +-v^e
    int sign = 1;
    int exponent = 0;
};

struct TwistReport {
    std::vector<TwistObservation> observations;
    std::vector<TwistCandidate> candidates;
    /// Every observation is a signed power of v.
    bool consistent = true;
};

/// Lusztig's symmetries T_i and their inverses acting on U.
class Braid {
public:
    explicit Braid(std::shared_ptr<const UAlgebra> u);

    const UAlgebra& u() const { return *u_; }
    const FAlgebra& f() const { return u_->f(); }

    /// Image of a generator under T_i (inverse = false) or T_i^-1.
    UElement generator_image(int i, Gen g, int j, const Coweight& mu, bool inverse) const;
    UElement ti_apply(int i, const UElement& x) const;
    /// Throws std::logic_error if the inverse table fails certification.
    UElement ti_inverse_apply(int i, const UElement& x) const;
    /// T_i T_i^-1 = T_i^-1 T_i = id on E_j, F_j, K_{h_j}.
    bool certify_inverse(int i) const;

    /// T_i on _if, landing in ^if. Throws std::domain_error when the image
    /// leaves U^+ (x was not in _if).
    FElement ti_restricted(int i, const FElement& x) const;
    /// T_i^-1 on ^if, landing in _if.
    FElement ti_inverse_restricted(int i, const FElement& x) const;
    bool if_membership_crosscheck(int i, const DimVec& nu) const;

    /// T_i computed through the decompositions f = sum theta_i^(t) _if.
    UElement t_tilde_apply(int i, const UElement& x) const;
    TwistReport calibrate_twist(int i, const std::vector<FElement>& samples) const;

    /// Braid relation between T_i and T_j on all generators (and a few
    /// products). Throws std::invalid_argument unless a_ij is 0 or -1.
    bool braid_verify(int i, int j) const;

    /// The antilinear antiautomorphism E_i <-> F_i, K_mu -> K_-mu, v -> v^-1.
    UElement psi(const UElement& x) const;
    /// Reverse every word and apply v -> v^-1 to the coefficients.
    FElement barrev(const FElement& x) const;

private:
    UElement apply(int i, const UElement& x, bool inverse) const;
    UElement word_image(int i, const Word& w, bool minus, bool inverse) const;
    static std::optional<FElement> plus_part(const UElement& x);

    std::shared_ptr<const UAlgebra> u_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<int, bool, bool, std::string>, UElement> word_memo_;
    mutable std::set<int> certified_;
};

/// Non-plus part of an element: the terms with F letters or a nontrivial K.
UElement non_plus_part(const UElement& x);

}  // namespace qgroup
