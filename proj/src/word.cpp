#include "qgroup/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgroup {

Word::Word(std::vector<int> letters) {
    letters_.reserve(letters.size());
    for (int i : letters) {
        if (i < 0 || i > 255) throw std::out_of_range("Word: vertex index out of range");
        letters_.push_back(static_cast<char>(i));
    }
}

std::vector<int> Word::letters() const {
    std::vector<int> out(size());
    for (size_t k = 0; k < size(); ++k) out[k] = (*this)[k];
    return out;
}

DimVec Word::weight(size_t rank) const {
    DimVec d = DimVec::zero(rank);
    for (size_t k = 0; k < size(); ++k) d[static_cast<size_t>((*this)[k])] += 1;
    return d;
}

Word Word::erase(size_t k) const {
    std::string s = letters_;
    s.erase(k, 1);
    return Word(std::move(s));
}

Word Word::reversed() const { return Word(std::string(letters_.rbegin(), letters_.rend())); }

std::string Word::to_string(const std::string& symbol) const {
    if (empty()) return "1";
    std::string out;
    for (size_t k = 0; k < size(); ++k) {
        if (k) out += "*";
        out += symbol + std::to_string((*this)[k] + 1);
    }
    return out;
}

std::vector<Word> Word::all_of_weight(const DimVec& nu) {
    if (!nu.is_dimvec()) return {};
    std::string s;
    for (size_t i = 0; i < nu.size(); ++i) s.append(static_cast<size_t>(nu[i]), static_cast<char>(i));
    std::vector<Word> out;
    do {
        out.push_back(Word(s));
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
}

}  // namespace qgroup
