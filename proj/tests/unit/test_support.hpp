#pragma once

#include <random>
#include <vector>

#include "terracini/linalg.hpp"

namespace terracini::testing {

inline Integer rand_int(std::mt19937_64& rng, long lo, long hi) {
    return Integer(lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)));
}

inline IntegerMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_int(rng, lo, hi);
    return m;
}

// The 6x7 matrix printed for the degree-8 surface at the points (1,1) and (t,t),
// written out entry by entry.
inline RationalMatrix degree8_displayed_matrix(const Rational& t) {
    Rational t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return RationalMatrix{
        {1, 1, 1, 1, 1, 1, 1},
        {3, 2, 2, 2, 1, 1, 0},
        {0, 3, 2, 1, 2, 1, 1},
        {t3, t5, t4, t3, t3, t2, t},
        {3 * t2, 2 * t4, 2 * t3, 2 * t2, t2, t, 0},
        {0, 3 * t4, 2 * t3, t2, 2 * t2, t, 1},
    };
}

inline RatVector degree8_kernel_vector(const Rational& t) {
    Rational t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return {t5 - t4 - 2 * t3, -t4 + t3, -t5 + t4, 2 * t2 + t - 1, -t3 + t2, -t2 + t};
}

}  // namespace terracini::testing
