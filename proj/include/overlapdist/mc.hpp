#pragma once

#include "overlapdist/enumerate.hpp"

#include <cstdint>
#include <vector>

namespace ovd {

// Counter-based sample streams: stream i is keyed by (seed, i), so the
// letters of sample i never depend on how samples are scheduled across
// threads. Identical (seed, n, samples, theta) runs are bit-identical.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next_u64();
    double next_unit(); // [0, 1)

private:
    std::uint64_t state_;
};

struct McConfig {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct McResult {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts; // k = 0..n-1
    std::vector<double> pmf;           // counts / N
    std::vector<double> stderrs;       // sqrt(phat (1-phat) / N)
    double seconds = 0;
};

// Draws letters by inverse CDF. Geometric sources sample the untruncated
// law (letters past the stored truncation are legal sample values).
std::uint32_t sample_letter(const Theta& theta, double u);

McResult sample_distribution(const Theta& theta, const McConfig& cfg);

// P(S_{n+1} = S_n + 1) with S_n and S_{n+1} read off nested prefixes of one
// word, i.e. P(T_{n+1} = T_n): the step-coupling probability. The exact
// value equals sum_w P(w) p_{x_{n+1-T_n(w)}}; it is 1/s for uniform(s) and
// lies in [min_a p_a, rho] always, but is not m_2 in general.
Rat step_coupling_exact(const Theta& theta, int n, Budget& budget, int threads = 1);

struct CouplingSample {
    double value = 0;
    double stderr_ = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};
CouplingSample step_coupling_sampled(const Theta& theta, const McConfig& cfg);

} // namespace ovd
