#pragma once

#include "qgroup/exactnum.hpp"

#include <functional>
#include <map>
#include <utility>

namespace qgroup {

/// A finite Q(v)-linear combination of basis keys. Zero coefficients are
/// never stored, so two combinations are equal iff their maps are equal.
template <class Key, class Compare = std::less<Key>>
class LinComb {
public:
    using map_type = std::map<Key, RatFunc, Compare>;
    using const_iterator = typename map_type::const_iterator;

    LinComb() = default;
    LinComb(const Key& k, RatFunc c = RatFunc(1)) { add(k, std::move(c)); }  // NOLINT

    void add(const Key& k, const RatFunc& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// this += c * other
    void add_scaled(const LinComb& other, const RatFunc& c) {
        if (c.is_zero()) return;
        for (const auto& [k, x] : other.terms_) add(k, c.is_one() ? x : x * c);
    }

    LinComb& operator+=(const LinComb& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    LinComb& operator*=(const RatFunc& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        if (c.is_one()) return *this;
        for (auto& [k, x] : terms_) x *= c;
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(LinComb a, const RatFunc& c) { return a *= c; }
    friend LinComb operator*(const RatFunc& c, LinComb a) { return a *= c; }
    LinComb operator-() const { return *this * RatFunc(-1); }

    RatFunc coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? RatFunc() : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const map_type& terms() const { return terms_; }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }

    /// Apply a linear map given on keys.
    template <class F>
    auto map_linear(F&& f) const {
        using Out = std::invoke_result_t<F, const Key&>;
        Out out;
        for (const auto& [k, c] : terms_) out.add_scaled(f(k), c);
        return out;
    }

    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

private:
    map_type terms_;
};

}  // namespace qgroup
