#pragma once

#include "qgroup/cartan.hpp"

#include <compare>
#include <string>
#include <vector>

namespace qgroup {

/// A word in the generators theta_i: a sequence of vertex indices.
/// Ordered by length, then lexicographically in the vertex order.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> letters);
    static Word letter(int i) { return Word(std::string(1, static_cast<char>(i))); }

    size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](size_t k) const { return static_cast<unsigned char>(letters_[k]); }
    std::vector<int> letters() const;

    DimVec weight(size_t rank) const;
    Word concat(const Word& o) const { return Word(letters_ + o.letters_); }
    Word erase(size_t k) const;
    Word reversed() const;
    Word prefix(size_t k) const { return Word(letters_.substr(0, k)); }
    Word suffix_from(size_t k) const { return Word(letters_.substr(k)); }
    /// Raw key suitable for hashing.
    const std::string& key() const { return letters_; }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
        return a.letters_.compare(b.letters_) <=> 0;
    }

    /// Generator symbols joined by '*', e.g. word(1,2) with symbol "th" -> "th1*th2"
    /// (1-based indices); the empty word prints as "1".
    std::string to_string(const std::string& symbol) const;

    /// All words of weight nu, lexicographically increasing.
    static std::vector<Word> all_of_weight(const DimVec& nu);

private:
    explicit Word(std::string raw) : letters_(std::move(raw)) {}
    std::string letters_;
};

}  // namespace qgroup
