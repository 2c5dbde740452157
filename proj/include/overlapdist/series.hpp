#pragma once

#include "overlapdist/enumerate.hpp"

#include <optional>
#include <string>

namespace ovd {

// A truncated series value with a certificate: the reported tail bound is a
// closed-form geometric majorant of everything left out, never an empirical
// stagnation guess. extra_error propagates the alphabet-truncation mass for
// cut countable alphabets (zero for finite ones).
struct TruncatedSeries {
    double value = 0;
    std::optional<Rat> value_exact;
    int k = 0;
    int last_index = 0;   // largest series index i included
    int terms_used = 0;   // number of series terms accumulated
    Rat tail_bound = 0;
    std::string bound_source;
    Rat extra_error = 0;
    bool tol_met = true;

    double tail_bound_d() const { return to_double(tail_bound); }
};

struct SeriesOptions {
    double tol = 1e-9;
    int extra_terms = 0;        // keep going this many terms past the tol index
    Mode mode = Mode::Float;    // uniform alphabets are upgraded to exact counting
    int threads = 1;
};

// lim_n P(S_n >= k) = m_2^k + sum_{i>k} sum_{w in C^i: S_i(w) <= k-1} P(w)^2.
TruncatedSeries limit_cdf_tail(const Theta& theta, int k, const SeriesOptions& opt,
                               Budget& budget);

// lim_n P(S_n = k) = m_2^k - sum_{i>k} D_2(i,k).
TruncatedSeries limit_pmf(const Theta& theta, int k, const SeriesOptions& opt,
                          Budget& budget);

// Rigorous caps used for the truncation indices (exposed for tests):
// every cdf-series term is <= m2^i; every pmf-series term is <= m2^i and,
// once i >= 2k, <= m4^k m2^{i-2k}.
Rat cdf_series_tail_bound(const Theta& theta, int k, int last_index);
Rat pmf_series_tail_bound(const Theta& theta, int k, int last_index);

} // namespace ovd
