#pragma once

#include "overlapdist/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ovd {

// Exhaustive enumeration over |alphabet|^n words is the honest feasibility
// boundary of the exact engine; every operation that walks the word tree
// charges its word count here first.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(Int required, std::uint64_t limit, int n, unsigned alphabet)
        : std::runtime_error("enumeration budget exceeded: |C|^n = " +
                             required.str() + " words (alphabet " +
                             std::to_string(alphabet) + ", n = " + std::to_string(n) +
                             ") over budget " + std::to_string(limit)),
          required_words(std::move(required)), limit_words(limit) {}

    Int required_words;
    std::uint64_t limit_words;
};

struct Budget {
    static constexpr std::uint64_t kDefaultWords = 100'000'000;

    std::uint64_t max_words = kDefaultWords;
    std::uint64_t used_words = 0;

    // Default budget, honoring the OVERLAPDIST_BUDGET environment override.
    static Budget from_env();

    std::uint64_t remaining() const {
        return used_words >= max_words ? 0 : max_words - used_words;
    }

    // Charges t^n words or throws.
    void charge(unsigned alphabet, int n);

    // Non-throwing probe used by the series loops to degrade gracefully.
    bool affordable(unsigned alphabet, int n) const;
};

} // namespace ovd
