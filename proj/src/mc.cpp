#include "overlapdist/mc.hpp"
#include "overlapdist/detail/dfs.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace ovd {

namespace {

inline std::uint64_t splitmix_step(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
    // fold the sample index into the key so stream i is a fixed function of
    // (seed, i), independent of scheduling
    std::uint64_t key = index + 0x632BE59BD9B4E019ull;
    key = splitmix_step(key);
    state_ = seed ^ key;
    (void)splitmix_step(state_);
}

std::uint64_t SampleStream::next_u64() { return splitmix_step(state_); }

double SampleStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t sample_letter(const Theta& theta, double u) {
    if (theta.source() == ThetaSource::Geometric) {
        // untruncated inverse CDF: P(letter > a) = r^(a+1)
        const double r = to_double(theta.geometric_r());
        if (u <= 0) return 0;
        double L = std::log1p(-u) / std::log(r);
        double a = std::ceil(L - 1.0);
        if (a < 0) a = 0;
        if (a > 1e9) a = 1e9;
        return static_cast<std::uint32_t>(a);
    }
    const auto& p = theta.probs_d();
    double acc = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return static_cast<std::uint32_t>(i);
    }
    return static_cast<std::uint32_t>(p.size() - 1);
}

namespace {

// S_n of a freshly sampled word, reusing scratch buffers.
int sampled_overlap(const Theta& theta, SampleStream& stream, int n,
                    std::vector<std::uint32_t>& w, std::vector<int>& pi) {
    w.resize(n);
    pi.resize(n);
    for (int i = 0; i < n; ++i) w[i] = sample_letter(theta, stream.next_unit());
    pi[0] = 0;
    for (int i = 1; i < n; ++i) {
        int j = pi[i - 1];
        while (j > 0 && w[i] != w[j]) j = pi[j - 1];
        if (w[i] == w[j]) ++j;
        pi[i] = j;
    }
    return pi[n - 1];
}

constexpr std::uint64_t kBlock = 65536;

} // namespace

McResult sample_distribution(const Theta& theta, const McConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
    if (cfg.samples < 1) throw std::invalid_argument("need at least one sample");
    auto t0 = std::chrono::steady_clock::now();

    const std::uint64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
    const int threads = detail::resolve_threads(cfg.threads);

    std::vector<std::vector<std::uint64_t>> parts(
        blocks, std::vector<std::uint64_t>(cfg.n, 0));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        std::vector<std::uint32_t> w;
        std::vector<int> pi;
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) break;
            const std::uint64_t lo = b * kBlock;
            const std::uint64_t hi = std::min(cfg.samples, lo + kBlock);
            auto& counts = parts[b];
            for (std::uint64_t i = lo; i < hi; ++i) {
                SampleStream stream(cfg.seed, i);
                ++counts[sampled_overlap(theta, stream, cfg.n, w, pi)];
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers =
        static_cast<int>(std::min<std::uint64_t>(threads, blocks));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    McResult res;
    res.n = cfg.n;
    res.samples = cfg.samples;
    res.seed = cfg.seed;
    res.counts.assign(cfg.n, 0);
    for (const auto& part : parts)
        for (int k = 0; k < cfg.n; ++k) res.counts[k] += part[k];
    res.pmf.resize(cfg.n);
    res.stderrs.resize(cfg.n);
    const double N = static_cast<double>(cfg.samples);
    for (int k = 0; k < cfg.n; ++k) {
        const double phat = static_cast<double>(res.counts[k]) / N;
        res.pmf[k] = phat;
        res.stderrs[k] = std::sqrt(phat * (1.0 - phat) / N);
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

namespace {

struct CouplingAccExact {
    Int hits = 0;
    void leaf(const detail::LeafContext& c) {
        const int m = static_cast<int>(c.pi.size()); // word length n+1
        if (c.pi[m - 1] == c.pi[m - 2] + 1) hits += *c.product;
    }
    void merge(CouplingAccExact&& o) { hits += o.hits; }
};

} // namespace

Rat step_coupling_exact(const Theta& theta, int n, Budget& budget, int threads) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    CouplingAccExact acc;
    detail::enumerate_words(theta, n + 1, Mode::Exact, budget, acc, threads);
    return Rat(acc.hits, int_pow(theta.denominator(), static_cast<unsigned>(n) + 1));
}

CouplingSample step_coupling_sampled(const Theta& theta, const McConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
    if (cfg.samples < 1) throw std::invalid_argument("need at least one sample");
    const std::uint64_t blocks = (cfg.samples + kBlock - 1) / kBlock;
    const int threads = detail::resolve_threads(cfg.threads);

    std::vector<std::uint64_t> parts(blocks, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        std::vector<std::uint32_t> w;
        std::vector<int> pi;
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) break;
            const std::uint64_t lo = b * kBlock;
            const std::uint64_t hi = std::min(cfg.samples, lo + kBlock);
            std::uint64_t hits = 0;
            for (std::uint64_t i = lo; i < hi; ++i) {
                SampleStream stream(cfg.seed, i);
                (void)sampled_overlap(theta, stream, cfg.n + 1, w, pi);
                if (pi[cfg.n] == pi[cfg.n - 1] + 1) ++hits;
            }
            parts[b] = hits;
        }
    };
    std::vector<std::thread> pool;
    const int workers =
        static_cast<int>(std::min<std::uint64_t>(threads, blocks));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::uint64_t hits = 0;
    for (auto h : parts) hits += h;
    CouplingSample out;
    out.samples = cfg.samples;
    out.seed = cfg.seed;
    const double N = static_cast<double>(cfg.samples);
    out.value = static_cast<double>(hits) / N;
    out.stderr_ = std::sqrt(out.value * (1.0 - out.value) / N);
    return out;
}

} // namespace ovd
