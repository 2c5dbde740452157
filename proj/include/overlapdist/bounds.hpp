#pragma once

#include "overlapdist/corrections.hpp"
#include "overlapdist/series.hpp"

#include <string>
#include <vector>

namespace ovd {

// Convergence-rate envelope for the pmf, valid for n >= 4k:
//   |P(S_n=k) - lim P(S_n=k)| <= C m_2^{n/2} (m_3 / m_2^{3/2})^k,
// C = 2 m_2 / (m_2 - rho^2).
double convergence_rate_C(const Theta& theta);
double pmf_gap_bound(const Theta& theta, int n, int k); // rejects n < 4k

// Cdf analogue. The one-line closed form with factor
// m_2^{3/2}/(m_3 - m_2^{3/2}) is negative whenever m_3 < m_2^{3/2} (which the
// power-mean inequality forces), so the usable bound is the pmf envelope
// summed over j >= k; both numbers are reported.
struct CdfGapBound {
    double value = 0;             // summed form: C m2^{n/2} r^k / (1-r)
    double stated_factor = 0;     // m2^{3/2} / (m3 - m2^{3/2}), sign and all
    bool stated_factor_degenerate = false;
};
CdfGapBound cdf_gap_bound(const Theta& theta, int n, int k);

// ---------------------------------------------------------- correction bounds

struct BoundRecord {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double slack = 0; // rhs - lhs
    bool pass = false;
    std::string note;
};

// The four closed-form caps on a_{k,n}, b_{k,n}, a_k, b_k:
//   a_{k,n} <= (m2^{k+1} - m2^n) / (1-m2)
//   b_{k,n} <= m4^{k+1}/(1-m2) + (2 m2^{n/2+1}/(m2-rho^2)) (m3/m2^{3/2})^k
//   a_k     <= m2^{k+1}/(1-m2)
//   b_k     <= m4^{k+1}/(1-m2)
// plus the two-letter and uniform specializations when they apply. Limit
// lhs values are partial sums plus their tail bounds, so a pass is rigorous.
std::vector<BoundRecord> correction_bound_records(const Theta& theta, int k, int n,
                                                  CorrectionEngine& engine,
                                                  Budget& budget, int threads = 1);

// Limit-side caps; the lhs is partial sum + tail bound so a pass is a proof.
// Callers pass the precomputed series so a whole grid shares them per k.
std::vector<BoundRecord> limit_correction_bound_records(const Theta& theta, int k,
                                                        const TruncatedSeries& cdf_series,
                                                        const TruncatedSeries& pmf_series);

// ------------------------------------------------------------- leading term

// Which of m_2^k and a_k leads? The sandwich
//   m2^{k+1}/(1-m2) - A(k) <= a_k <= m2^{k+1}/(1-m2),
//   A(k) = m4^k/(1-m4) (m4 + 1/(1-m2)),
// decides: for m2 < 1/2 the upper bound certifies m2^k > a_k outright; at
// m2 == 1/2 the bound is refined with a few exact series terms; for
// m2 > 1/2 there is a crossover index past which a_k > m2^k.
struct LeadingTermRow {
    int k = 0;
    Rat lower;          // max(0, sandwich lower bound)
    Rat upper;          // sandwich upper bound (possibly refined)
    Rat geometric_term; // m2^k
    bool certified_geometric_leading = false; // m2^k > a_k proven
    bool certified_correction_leading = false; // a_k > m2^k proven
};

struct LeadingTermReport {
    std::vector<LeadingTermRow> rows; // k = 1..k_max
    bool m2_at_most_half = false;
    bool a1_below_m2 = false;          // certified via a_1 < p_1 (1 - m_2)
    int crossover_k = -1;              // smallest k with sandwich lower > m2^k
    double crossover_formula_two_letter = -1; // informational closed form
};

LeadingTermReport leading_term_analysis(const Theta& theta, int k_max, Budget& budget,
                                        int threads = 1);

// ------------------------------------------------------------------ gap grid

struct GapGridCell {
    int n = 0, k = 0;
    double measured = 0; // |P(S_n=k) - limit| + limit tail bound
    double bound = 0;
    double ratio = 0;
    bool pass = false;
};

struct GapGridReport {
    std::vector<GapGridCell> cells;
    double max_ratio = 0;
    bool all_pass = true;
};

// Grid n <= n_max, 1 <= k <= n/4 (the envelope's regime).
GapGridReport pmf_gap_grid(const Theta& theta, int n_max, Budget& budget,
                           int threads = 1, double series_tol = 1e-7);

} // namespace ovd
