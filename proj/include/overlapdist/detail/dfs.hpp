#pragma once

#include "overlapdist/enumerate.hpp"

#include <atomic>
#include <thread>

namespace ovd::detail {

int resolve_threads(int requested);

inline std::uint32_t border_mask_from_pi_impl(const std::vector<int>& pi) {
    std::uint32_t mask = 0;
    int j = pi.empty() ? 0 : pi.back();
    while (j > 0) {
        mask |= (1u << (j - 1));
        j = pi[j - 1];
    }
    return mask;
}

template <typename Acc>
void run_block(const Theta& theta, int n, Mode mode,
               const std::vector<std::uint32_t>& prefix, Acc& acc) {
    const unsigned t = theta.size();
    const bool exact = (mode == Mode::Exact);
    std::vector<std::uint32_t> w(n);
    std::vector<int> pi(n);
    std::vector<Int> prod;
    std::vector<double> prod_d;
    if (exact) {
        prod.resize(n + 1);
        prod[0] = 1;
    } else {
        prod_d.resize(n + 1);
        prod_d[0] = 1.0;
    }
    const auto& num = theta.numerators();
    const auto& pd = theta.probs_d();

    auto push = [&](int d, std::uint32_t c) {
        w[d] = c;
        if (d == 0) {
            pi[0] = 0;
        } else {
            int j = pi[d - 1];
            while (j > 0 && c != w[j]) j = pi[j - 1];
            if (c == w[j]) ++j;
            pi[d] = j;
        }
        if (exact)
            prod[d + 1] = prod[d] * num[c];
        else
            prod_d[d + 1] = prod_d[d] * pd[c];
    };

    for (std::size_t i = 0; i < prefix.size(); ++i)
        push(static_cast<int>(i), prefix[i]);

    auto rec = [&](auto&& self, int d) -> void {
        if (d == n) {
            LeafContext ctx{w, pi, exact ? &prod[n] : nullptr,
                            exact ? 0.0 : prod_d[n]};
            acc.leaf(ctx);
            return;
        }
        for (std::uint32_t c = 0; c < t; ++c) {
            push(d, c);
            self(self, d + 1);
        }
    };
    rec(rec, static_cast<int>(prefix.size()));
}

template <typename Acc>
void enumerate_words(const Theta& theta, int n, Mode mode, Budget& budget, Acc& acc,
                     int threads) {
    if (n < 1) throw std::invalid_argument("enumerate_words: n must be >= 1");
    const unsigned t = theta.size();
    budget.charge(t, n);

    threads = resolve_threads(threads);
    // Partition by fixed-length prefixes and merge in prefix order: results
    // are identical for every thread count, floats included.
    double total = std::pow(static_cast<double>(t), n);
    if (threads <= 1 || total < 65536.0) {
        run_block(theta, n, mode, {}, acc);
        return;
    }
    int p = 1;
    std::uint64_t tasks = t;
    while (p < n && tasks < static_cast<std::uint64_t>(4 * threads) && tasks * t <= 4096)
        tasks *= t, ++p;

    std::vector<Acc> parts(tasks, acc); // acc is still empty here
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::uint64_t idx = next.fetch_add(1);
            if (idx >= tasks) break;
            std::vector<std::uint32_t> prefix(p);
            std::uint64_t v = idx;
            for (int q = p - 1; q >= 0; --q) {
                prefix[q] = static_cast<std::uint32_t>(v % t);
                v /= t;
            }
            run_block(theta, n, mode, prefix, parts[idx]);
        }
    };
    std::vector<std::thread> pool;
    int workers = static_cast<int>(std::min<std::uint64_t>(threads, tasks));
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& part : parts) acc.merge(std::move(part));
}

} // namespace ovd::detail
