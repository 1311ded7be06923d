#include "qgroup/double.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace qgroup;
using testsupport::R;

namespace {

struct Fixture {
    std::shared_ptr<FAlgebra> f;
    std::shared_ptr<DrinfeldDouble> D;
    std::shared_ptr<UAlgebra> U;

    explicit Fixture(const char* quiver)
        : f(std::make_shared<FAlgebra>(CartanDatum::load(Quiver::parse_shorthand(quiver)))),
          D(DrinfeldDouble::calibrated(f)),
          U(std::make_shared<UAlgebra>(f)) {}

    size_t n() const { return f->rank(); }
    HalfElement word(std::vector<int> w, Coweight mu = {}) const {
        if (mu.size() == 0) mu = Coweight::zero(n());
        return D->half(f->normal_form(Word(std::move(w))), mu);
    }
    UElement lam(Half s, const HalfElement& x) const {
        return D->iso_lambda(*U, s == Half::plus ? D->from_plus(x) : D->from_minus(x));
    }
    UTensor lam(Half s, const HalfTensor& t) const {
        UTensor out;
        for (const auto& [p, c] : t)
            for (const auto& [a, ca] : lam(s, HalfElement(p.first)))
                for (const auto& [b, cb] : lam(s, HalfElement(p.second))) out.add({a, b}, c * ca * cb);
        return out;
    }
    std::vector<HalfElement> samples() const {
        std::vector<HalfElement> out;
        std::vector<Coweight> mus = {Coweight::zero(n()), Coweight::h(n(), 0) - 2 * Coweight::h(n(), 1)};
        for (const auto& mu : mus)
            for (const auto& w : std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}, {1, 0}, {0, 0}, {0, 0, 1}})
                out.push_back(word(w, mu));
        return out;
    }
};

RatFunc calibrated_constant() { return -(R("v") - R("v^-1")).inverse(); }

}  // namespace

TEST_CASE("half multiplication") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    const Coweight h1 = Coweight::h(2, 0);
    for (Half s : {Half::plus, Half::minus}) {
        HalfElement x = D.half_mul(s, D.half_mul(s, D.k(h1), D.theta(0)), D.k(-h1));
        CHECK(x == D.theta(0) * (s == Half::plus ? R("v^2") : R("v^-2")));
        CHECK(D.half_mul(s, D.k(Coweight({1, 2})), D.k(Coweight({-3, 1}))) == D.k(Coweight({-2, 3})));
    }
    CHECK(D.half_mul(Half::minus, D.theta(0), D.theta(1)) == fx.word({0, 1}));
    CHECK(D.to_string(Half::plus, D.half_mul(Half::plus, D.k(h1), D.theta(1))) == "k(1,0)*p(th2)");
}

TEST_CASE("half coproduct") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    const size_t n = 2;
    Coweight mu({2, -1});
    CHECK(D.half_delta(Half::plus, D.k(mu)) == HalfTensor({HalfKey{mu, {}}, HalfKey{mu, {}}}));
    for (int i = 0; i < 2; ++i) {
        const Word w = Word::letter(i);
        const Coweight z = Coweight::zero(n), h = Coweight::h(n, i);
        HalfTensor plus, minus;
        plus.add({HalfKey{z, w}, HalfKey{z, {}}}, 1);
        plus.add({HalfKey{h, {}}, HalfKey{z, w}}, 1);
        minus.add({HalfKey{z, w}, HalfKey{-h, {}}}, 1);
        minus.add({HalfKey{z, {}}, HalfKey{z, w}}, 1);
        CHECK(D.half_delta(Half::plus, D.theta(i)) == plus);
        CHECK(D.half_delta(Half::minus, D.theta(i)) == minus);
    }
    for (Half s : {Half::plus, Half::minus})
        for (const auto& x : fx.samples()) CHECK(fx.lam(s, D.half_delta(s, x)) == fx.U->delta(fx.lam(s, x)));
}

TEST_CASE("half coproduct is coassociative") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    using Triple = LinComb<std::tuple<HalfKey, HalfKey, HalfKey>>;
    for (Half s : {Half::plus, Half::minus})
        for (const auto& x : fx.samples()) {
            Triple left, right;
            for (const auto& [p, c] : D.half_delta(s, x)) {
                for (const auto& [q, cq] : D.half_delta(s, HalfElement(p.first)))
                    left.add({q.first, q.second, p.second}, c * cq);
                for (const auto& [q, cq] : D.half_delta(s, HalfElement(p.second)))
                    right.add({p.first, q.first, q.second}, c * cq);
            }
            CHECK(left == right);
        }
}

TEST_CASE("half antipode") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    for (int i = 0; i < 2; ++i)
        CHECK(D.half_antipode(Half::plus, D.theta(i)) == -HalfElement(HalfKey{-Coweight::h(2, i), Word::letter(i)}));
    CHECK(D.half_antipode(Half::minus, D.k(Coweight({1, -3}))) == D.k(Coweight({-1, 3})));
    CHECK(D.half_antipode(Half::plus, D.k(Coweight({1, -3}))) == D.k(Coweight({-1, 3})));
    // (th1 th2)^+ -> v^{a12} k_{-nu} (th2 th1)^+
    CHECK(D.half_antipode(Half::plus, fx.word({0, 1})) ==
          D.half(fx.f->normal_form(Word(std::vector<int>{1, 0})), Coweight({-1, -1})) * R("v^-1"));
    for (Half s : {Half::plus, Half::minus})
        for (const auto& x : fx.samples()) {
            CHECK(fx.lam(s, D.half_antipode(s, x)) == fx.U->antipode(fx.lam(s, x)));
            // m (S (x) id) Delta = epsilon
            HalfTensor t;
            for (const auto& [p, c] : D.half_delta(s, x))
                for (const auto& [k, ck] : D.half_antipode(s, HalfElement(p.first))) t.add({k, p.second}, c * ck);
            HalfElement unit = D.k(Coweight::zero(2));
            CHECK(D.tensor_contract(s, t) == unit * D.half_counit(x));
        }
}

TEST_CASE("pairing values") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    CHECK(D.pairing_phi(D.theta(0), D.theta(1)).is_zero());
    CHECK(D.pairing_phi(D.theta(1), D.theta(0)).is_zero());
    Coweight a({1, 0}), b({1, 1});
    // (a, b) = sum a_i a_ij b_j = 2 - 1 = 1
    CHECK(D.pairing_phi(D.k(a), D.k(b)) == R("v^-1"));
    for (int i = 0; i < 2; ++i) CHECK(D.pairing_phi(D.theta(i), D.theta(i)) == D.constant());
    CHECK(D.constant() == calibrated_constant());
}

TEST_CASE("pairing is a skew-Hopf pairing") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    auto all = fx.samples();
    for (const auto& a : all)
        for (const auto& b : all)
            for (const auto& c : all) {
                if (a.begin()->first.word.size() + b.begin()->first.word.size() > 3) continue;
                // phi(a a', b) = phi(a, b2) phi(a', b1)
                RatFunc lhs = D.pairing_phi(D.half_mul(Half::plus, a, b), c);
                RatFunc rhs;
                for (const auto& [p, cp] : D.half_delta(Half::minus, c))
                    rhs += cp * D.pairing_phi(a, HalfElement(p.second)) * D.pairing_phi(b, HalfElement(p.first));
                CHECK(lhs == rhs);
                // phi(a, b b') = phi(a1, b) phi(a2, b')
                lhs = D.pairing_phi(c, D.half_mul(Half::minus, a, b));
                rhs = RatFunc();
                for (const auto& [p, cp] : D.half_delta(Half::plus, c))
                    rhs += cp * D.pairing_phi(HalfElement(p.first), a) * D.pairing_phi(HalfElement(p.second), b);
                CHECK(lhs == rhs);
            }
    for (const auto& a : all)
        for (const auto& b : all)
            CHECK(D.pairing_phi(D.half_antipode(Half::plus, a), D.half_antipode(Half::minus, b)) ==
                  D.pairing_phi(a, b));
}

TEST_CASE("pairing calibration") {
    for (const char* q : {"1->2", "1->2,2->3", "2->1"}) {
        auto f = std::make_shared<FAlgebra>(CartanDatum::load(Quiver::parse_shorthand(q)));
        PairingCalibration cal = DrinfeldDouble::calibrate_pairing(f);
        CHECK(cal.consistent);
        REQUIRE(cal.constants.size() == f->rank());
        for (const auto& c : cal.constants) CHECK(c == calibrated_constant());
    }
    Fixture fx("1->2");
    auto& D = *fx.D;
    DoubleElement e1 = D.from_plus(D.theta(0)), f2 = D.from_minus(D.theta(1));
    CHECK(D.double_mul(e1, f2) == D.double_mul(f2, e1));
}

TEST_CASE("double multiplication examples") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    const size_t n = 2;
    for (int i = 0; i < 2; ++i) {
        DoubleElement e = D.from_plus(D.theta(i)), f = D.from_minus(D.theta(i));
        DoubleElement expect = D.double_mul(f, e);
        expect.add(DoubleKey{{}, Coweight::h(n, i), {}}, R("1/(v - v^-1)"));
        expect.add(DoubleKey{{}, -Coweight::h(n, i), {}}, -R("1/(v - v^-1)"));
        CHECK(D.double_mul(e, f) == expect);
        Coweight mu({2, -1});
        DoubleElement k = D.from_plus(D.k(mu));
        CHECK(D.double_mul(k, e) == D.double_mul(e, k) * RatFunc::v_pow(fx.f->datum().alpha(i, mu)));
    }
    DoubleElement x = D.double_mul(D.from_minus(fx.word({1, 0})), D.from_plus(fx.word({0})));
    CHECK(D.double_mul(D.one(), x) == x);
    CHECK(D.double_mul(x, D.one()) == x);
    CHECK(D.to_string(D.double_mul(D.from_plus(D.theta(0)), D.from_minus(D.theta(0)))) ==
          "-(v/(v^2 - 1))*k(-1,0) + (v/(v^2 - 1))*k(1,0) + m(th1)*p(th1)");
}

TEST_CASE("iso_lambda") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    auto& U = *fx.U;
    CHECK(D.iso_lambda(U, D.from_plus(D.theta(0))) == U.E(0));
    Coweight mu({3, -2});
    CHECK(D.iso_lambda(U, D.from_plus(D.k(mu))) == U.K(mu));
    CHECK(D.iso_lambda(U, D.from_minus(D.k(mu))) == U.K(mu));
    DoubleElement x(DoubleKey{Word::letter(0), Coweight::h(2, 1), Word::letter(1)});
    CHECK(D.iso_lambda(U, x) == U.mul(U.mul(U.F(0), U.Kh(1)), U.E(1)));
}

TEST_CASE("iso_lambda is a homomorphism") {
    for (const char* q : {"1->2", "1->2,2->3"}) {
        Fixture fx(q);
        auto& D = *fx.D;
        auto& U = *fx.U;
        const size_t n = fx.n();
        std::vector<DoubleElement> gens;
        for (int i = 0; i < static_cast<int>(n); ++i) {
            gens.push_back(D.from_plus(D.theta(i)));
            gens.push_back(D.from_minus(D.theta(i)));
            gens.push_back(D.from_plus(D.k(Coweight::h(n, i))));
            gens.push_back(D.from_minus(D.k(-Coweight::h(n, i))));
        }
        std::vector<DoubleElement> deg2;
        for (const auto& a : gens)
            for (const auto& b : gens) {
                DoubleElement ab = D.double_mul(a, b);
                CHECK(D.iso_lambda(U, ab) == U.mul(D.iso_lambda(U, a), D.iso_lambda(U, b)));
                deg2.push_back(ab);
            }
        for (size_t k = 0; k < deg2.size(); k += 5)
            for (const auto& g : gens) {
                CHECK(D.iso_lambda(U, D.double_mul(g, deg2[k])) == U.mul(D.iso_lambda(U, g), D.iso_lambda(U, deg2[k])));
                CHECK(D.iso_lambda(U, D.double_mul(deg2[k], g)) == U.mul(D.iso_lambda(U, deg2[k]), D.iso_lambda(U, g)));
            }
    }
}

TEST_CASE("single torus") {
    Fixture fx("1->2");
    auto& D = *fx.D;
    Coweight mu({1, -1});
    CHECK(D.from_plus(D.k(mu)) == D.from_minus(D.k(mu)));
    for (const auto& x : fx.samples()) {
        DoubleElement y = D.from_minus(x);
        CHECK(D.double_mul(D.from_plus(D.k(mu)), y) == D.double_mul(D.from_minus(D.k(mu)), y));
        CHECK(D.double_mul(y, D.from_plus(D.k(mu))) == D.double_mul(y, D.from_minus(D.k(mu))));
    }
}
