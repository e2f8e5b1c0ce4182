#ifndef MONIC_NEWTON_HPP
#define MONIC_NEWTON_HPP

#include <vector>

#include "monic/scalar.hpp"

namespace monic {

// Elementary symmetric e_1..e_d from power sums p_1..p_d via Newton's
// identities p_m = e_1 p_{m-1} - e_2 p_{m-2} + ... + (-1)^{m-1} m e_m.
template <class F>
std::vector<F> newton_power_to_elementary(const std::vector<F>& power_sums) {
    const std::size_t d = power_sums.size();
    std::vector<F> e(d);
    for (std::size_t m = 1; m <= d; ++m) {
        F acc = power_sums[m - 1];
        F sign(1);
        for (std::size_t i = 1; i < m; ++i) {
            sign = -sign;
            acc = acc + sign * e[i - 1] * power_sums[m - i - 1];
        }
        // acc = (-1)^{m-1} m e_m
        F em = acc / F(static_cast<int>(m));
        if (m % 2 == 0) em = -em;
        e[m - 1] = em;
    }
    return e;
}

// Power sums p_1..p_d back from elementary symmetric functions (same identities).
template <class F>
std::vector<F> newton_elementary_to_power(const std::vector<F>& elem) {
    const std::size_t d = elem.size();
    std::vector<F> p(d);
    for (std::size_t m = 1; m <= d; ++m) {
        F acc(0);
        F sign(-1);
        for (std::size_t i = 1; i < m; ++i) {
            sign = -sign;
            acc = acc + sign * elem[i - 1] * p[m - i - 1];
        }
        F last = elem[m - 1] * F(static_cast<int>(m));
        if (m % 2 == 0) last = -last;
        p[m - 1] = acc + last;
    }
    return p;
}

}  // namespace monic

#endif
