#pragma once

#include "qgroup/exactnum.hpp"

#include <random>

namespace testsupport {

inline qgroup::RatFunc R(const char* s) { return qgroup::RatFunc::parse(s); }

inline qgroup::IntPoly random_poly(std::mt19937& rng, int max_terms = 4, int span = 3, int coeff = 5) {
    std::uniform_int_distribution<int> nterms(0, max_terms), ex(-span, span), co(-coeff, coeff);
    std::map<int, mpz_class> t;
    for (int k = nterms(rng); k > 0; --k) t[ex(rng)] += co(rng);
    return qgroup::IntPoly::from_terms(t);
}

inline qgroup::RatFunc random_ratfunc(std::mt19937& rng) {
    qgroup::IntPoly d;
    while (d.is_zero()) d = random_poly(rng, 3, 2, 4);
    return qgroup::RatFunc::make(random_poly(rng), d);
}

}  // namespace testsupport
