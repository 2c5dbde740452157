#pragma once

// Definition-level oracles for the tests: straight quadratic scans and
// explicit word iteration, independent of the library's prefix-function and
// DFS machinery.

#include "overlapdist/border.hpp"
#include "overlapdist/rational.hpp"
#include "overlapdist/theta.hpp"

#include <vector>

namespace ovd::testing {

inline int naive_first_return(const Word& w) {
    const int n = static_cast<int>(w.size());
    for (int k = 1; k < n; ++k) {
        bool match = true;
        for (int i = 0; i + k < n; ++i)
            if (w[i] != w[i + k]) {
                match = false;
                break;
            }
        if (match) return k;
    }
    return n;
}

inline std::vector<int> naive_border_set(const Word& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> out;
    for (int k = 1; k < n; ++k) {
        bool match = true;
        for (int i = 0; i < k; ++i)
            if (w[i] != w[n - k + i]) {
                match = false;
                break;
            }
        if (match) out.push_back(k);
    }
    return out;
}

inline int naive_max_overlap(const Word& w) {
    auto b = naive_border_set(w);
    return b.empty() ? 0 : b.back();
}

template <typename Fn>
void for_all_words(unsigned t, int n, Fn&& fn) {
    Word w(n, 0);
    for (;;) {
        fn(const_cast<const Word&>(w));
        int d = n - 1;
        while (d >= 0 && w[d] == t - 1) w[d--] = 0;
        if (d < 0) return;
        ++w[d];
    }
}

inline Rat word_prob(const Theta& theta, const Word& w) {
    Rat p = 1;
    for (auto c : w) p *= theta.prob(c);
    return p;
}

} // namespace ovd::testing
