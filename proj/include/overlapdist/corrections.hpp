#pragma once

#include "overlapdist/enumerate.hpp"

#include <map>
#include <utility>

namespace ovd {

// Closed-form route to the distribution of S_n:
//
//   P(S_n >= k) = m_2^k + a(k,n)        (k >= 1, n >= 2k)
//   P(S_n  = k) = m_2^k - b(k,n)
//
// with, writing h = floor(n/2) and lo = max(h, k+1),
//
//   a(k,n) = P( U_{j=lo}^{n-1} R_n(j) \ U_{j=k}^{lo-1} R_n(j) )
//          + sum_{i=k+1}^{h-1} P( R_{2i}(i) \ U_{j=k}^{i-1} R_{2i}(j) )
//   b(k,n) = P( U_{j=lo}^{n-1} R_n(j) ∩ R_n(k) \ U_{j=k+1}^{lo-1} R_n(j) )
//          + sum_{i=k+1}^{h-1} P( R_{2i}(i) ∩ R_{2i}(k) \ U_{j=k+1}^{i-1} R_{2i}(j) ).
//
// The window clamp lo and the i-sum cutoff h-1 are the variant that agrees
// with exhaustive enumeration on every cell (checked in the test suite);
// they differ from the printed displays exactly at the degenerate lengths
// n in {2k, 2k+1} and in the b-sum's upper limit.
class CorrectionEngine {
public:
    CorrectionEngine(const Theta& theta, Mode mode, Budget& budget, int threads = 1)
        : theta_(theta), mode_(mode), budget_(budget), threads_(threads) {}

    Rat a(int k, int n);
    Rat b(int k, int n);

    Rat formula_cdf_tail(int k, int n); // m_2^k + a(k,n)
    Rat formula_pmf(int k, int n);      // m_2^k - b(k,n); rejects k < 1, n < 2k

    const MaskTable& table(int n);

private:
    const Theta& theta_;
    Mode mode_;
    Budget& budget_;
    int threads_;
    std::map<int, MaskTable> tables_;
};

// One-shot pair (a_{k,n}, b_{k,n}).
std::pair<Rat, Rat> finite_corrections(const Theta& theta, int k, int n, Budget& budget,
                                       int threads = 1);

} // namespace ovd
