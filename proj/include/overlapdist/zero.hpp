#pragma once

#include "overlapdist/series.hpp"

#include <vector>

namespace ovd {

// Exact counts u(n) of unbordered (bifix-free) words over s letters:
//   u(1) = s, u(2) = s^2 - s,
//   u(2n) = s^2 u(2n-2) - u(n), u(2n+1) = s u(2n).
// Arbitrary precision; comfortable up to n_max ~ 10^4.
std::vector<Int> unbordered_counts(int n_max, unsigned s); // index 1..n_max

struct ZeroSequence {
    std::vector<Rat> values;  // index 1..n_max: P(S_n = 0)
    std::string producer;     // recursion | enumeration
    const Rat& at(int n) const { return values[n]; }
};

// P(S_n = 0) for all n <= n_max via the even-step recursion
//   P(S_{2m} = 0) = P(S_{2m-2} = 0) - sum_{w in {S_m = 0}} P(w)^2
// plus the odd/even equality. Uniform alphabets run on integer counts; other
// alphabets enumerate the subtracted level masses within the budget.
ZeroSequence zero_sequence(const Theta& theta, int n_max, Budget& budget,
                           int threads = 1);

Rat zero_probability(const Theta& theta, int n, Budget& budget, int threads = 1);

// lim_n P(S_n = 0) = 1 - m_2 - sum_{i>=2} sum_{w in {S_i=0}} P(w)^2,
// strictly above (1 - p_1)(1 - m_2).
TruncatedSeries limit_zero(const Theta& theta, const SeriesOptions& opt, Budget& budget);

Rat zero_limit_lower_bound(const Theta& theta); // (1 - p_1)(1 - m_2)

} // namespace ovd
