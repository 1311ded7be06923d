#include "qgroup/freetheta.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace qgroup;
using testsupport::R;

namespace {
Word w(std::vector<int> v) { return Word(std::move(v)); }
TensorElement tp(const Word& a, const Word& b, RatFunc c = 1) { return TensorElement({a, b}, c); }
}  // namespace

TEST_CASE("free_mul") {
    CHECK(free_mul(theta(0), theta(1)) == FreeElement(w({0, 1})));
    FreeElement x = theta(0) + theta(1) * R("v");
    CHECK(free_mul(FreeElement(Word{}), x) == x);
    FreeElement y = free_mul(theta(0) + theta(1), theta(0));
    CHECK(y == FreeElement(w({0, 0})) + FreeElement(w({1, 0})));
}

TEST_CASE("twisted tensor product") {
    auto d = CartanDatum::type_a(2);
    CHECK(twisted_tensor_mul(d, tp({}, w({0})), tp(w({1}), {})) == tp(w({1}), w({0}), R("v^-1")));
    CHECK(twisted_tensor_mul(d, tp(w({0}), {}), tp({}, w({1}))) == tp(w({0}), w({1})));
    CHECK(twisted_tensor_mul(d, tp({}, w({0})), tp(w({0}), {})) == tp(w({0}), w({0}), R("v^2")));
}

TEST_CASE("coproduct examples") {
    auto d = CartanDatum::type_a(2);
    CHECK(coproduct_r(d, theta(0)) == tp(w({0}), {}) + tp({}, w({0})));
    CHECK(coproduct_r(d, FreeElement(Word{})) == tp({}, {}));
    // oracle: expand r(th1) r(th2) with the twisted product
    TensorElement r1 = tp(w({0}), {}) + tp({}, w({0})), r2 = tp(w({1}), {}) + tp({}, w({1}));
    TensorElement expect = tp(w({0, 1}), {}) + tp(w({0}), w({1})) + tp(w({1}), w({0}), R("v^-1")) + tp({}, w({0, 1}));
    CHECK(twisted_tensor_mul(d, r1, r2) == expect);
    CHECK(coproduct_r(d, FreeElement(w({0, 1}))) == expect);
}

TEST_CASE("coproduct is a homomorphism and respects grading") {
    for (size_t n : {2u, 3u}) {
        auto d = CartanDatum::type_a(n);
        std::mt19937 rng(static_cast<unsigned>(n));
        std::uniform_int_distribution<int> letter(0, static_cast<int>(n) - 1), len(0, 5);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<int> a(static_cast<size_t>(len(rng))), b;
            for (auto& x : a) x = letter(rng);
            int split = a.empty() ? 0 : std::uniform_int_distribution<int>(0, static_cast<int>(a.size()))(rng);
            b.assign(a.begin() + split, a.end());
            a.resize(static_cast<size_t>(split));
            Word x(a), y(b);
            CHECK(coproduct_word(d, x.concat(y)) ==
                  twisted_tensor_mul(d, coproduct_word(d, x), coproduct_word(d, y)));
            DimVec nu = x.concat(y).weight(n);
            for (const auto& [p, c] : coproduct_word(d, x.concat(y)))
                CHECK(p.first.weight(n) + p.second.weight(n) == nu);
        }
    }
}

TEST_CASE("lusztig form examples") {
    auto d = CartanDatum::type_a(2);
    RatFunc c = default_generator_constant();
    CHECK(c == R("1/(1 - v^-2)"));
    CHECK(lusztig_form(d, theta(0), theta(1)).is_zero());
    CHECK(lusztig_form(d, theta(0), theta(0)) == c);
    CHECK(lusztig_form(d, FreeElement(w({0, 1})), FreeElement(w({0, 1}))) == c * c);
    CHECK(lusztig_form(d, FreeElement(w({0, 1})), FreeElement(w({1, 0}))) == R("v^-1") * c * c);
    CHECK(lusztig_form(d, FreeElement(Word{}), FreeElement(Word{})) == RatFunc(1));
}

TEST_CASE("form is symmetric and satisfies the coproduct adjunction") {
    for (size_t n : {2u, 3u}) {
        auto d = CartanDatum::type_a(n);
        FormEvaluator fe(d);
        RatFunc c = default_generator_constant();
        // all words of total length <= 4 grouped by weight
        std::vector<DimVec> weights;
        std::function<void(DimVec, size_t, int)> gen = [&](DimVec cur, size_t pos, int left) {
            if (pos == n) {
                weights.push_back(cur);
                return;
            }
            for (int k = 0; k <= left; ++k) {
                cur[pos] = k;
                gen(cur, pos + 1, left - k);
            }
        };
        gen(DimVec::zero(n), 0, 4);
        for (const auto& nu : weights) {
            auto words = Word::all_of_weight(nu);
            for (const auto& a : words)
                for (const auto& b : words) {
                    CHECK(fe.form(a, b, c) == fe.form(b, a, c));
                    // (a, y z) = (r(a), y (x) z) with y the first letter of b
                    if (b.empty()) continue;
                    Word y = b.prefix(1), z = b.suffix_from(1);
                    RatFunc acc;
                    for (const auto& [p, coef] : coproduct_word(d, a))
                        acc += coef * fe.form(p.first, y, c) * fe.form(p.second, z, c);
                    CHECK(acc == fe.form(a, b, c));
                }
        }
        CHECK(fe.form(w({0}), w({1}), c).is_zero());
    }
}

TEST_CASE("printing") {
    CHECK(to_string(FreeElement(w({0, 1})) * R("v + v^-1") - theta(1)) == "-th2 + (v + v^-1)*th1*th2");
    CHECK(to_string(FreeElement()) == "0");
}
