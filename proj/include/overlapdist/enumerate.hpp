#pragma once

#include "overlapdist/border.hpp"
#include "overlapdist/budget.hpp"
#include "overlapdist/theta.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ovd {

enum class Mode { Exact, Float };

// ------------------------------------------------------------------ events

// Predicate over the border set of an n-word, encoded as bitmasks with bit
// j-1 standing for "has a border of length j":
//   keep w  iff  contain subset borders(w)
//           and  (if intersect is armed) borders(w) meets intersect
//           and  borders(w) misses avoid.
// An armed empty intersect mask selects nothing (a union over no indices is
// the empty set).
struct BorderEvent {
    std::uint32_t contain = 0;
    bool use_intersect = false;
    std::uint32_t intersect = 0;
    std::uint32_t avoid = 0;

    static std::uint32_t range_mask(int lo, int hi); // borders lo..hi inclusive
};

// Masses of all border-set classes of C^n: one exhaustive enumeration
// answers every set-algebra query over the R_n(j).
class MaskTable {
public:
    MaskTable(const Theta& theta, int n, Mode mode, Budget& budget, int threads = 1);

    int n() const { return n_; }
    Mode mode() const { return mode_; }

    Rat event_mass(const BorderEvent& ev) const;      // exact mode
    double event_mass_d(const BorderEvent& ev) const; // works in both modes

    Rat cdf_tail(int k) const;   // P(S_n >= k), exact mode
    Rat pmf(int k) const;        // P(S_n = k), exact mode

    const std::unordered_map<std::uint32_t, Rat>& masses() const { return exact_; }

private:
    int n_;
    Mode mode_;
    std::unordered_map<std::uint32_t, Rat> exact_;
    std::unordered_map<std::uint32_t, double> approx_;
};

// ------------------------------------------------------------- level masses

// One length-i row of level masses: everything needed to evaluate
// D_q(i,k) = sum_{w in C^i, S_i(w) = k} P(w)^q for any q >= 1.
class LevelRow {
public:
    LevelRow() = default;
    LevelRow(const Theta& theta, int i, Mode mode, Budget& budget, int threads = 1);

    int length() const { return i_; }
    Rat dq(int k, unsigned q) const;       // exact mode
    double dq_d(int k, unsigned q) const;  // both modes (float caches q <= 4)

private:
    int i_ = 0;
    Mode mode_ = Mode::Exact;
    const Theta* theta_ = nullptr;
    bool uniform_counts_ = false;
    std::vector<std::uint64_t> counts_;                      // uniform fast path
    std::vector<std::map<Int, std::uint64_t>> products_;     // general exact
    std::vector<std::array<double, 4>> float_sums_;          // float, q = 1..4
};

struct LevelMasses {
    // rows[i] built for 1 <= i <= i_max (index 0 unused)
    std::vector<LevelRow> rows;
    Rat dq(int i, int k, unsigned q) const { return rows[i].dq(k, q); }
    double dq_d(int i, int k, unsigned q) const { return rows[i].dq_d(k, q); }
};

LevelMasses level_masses(const Theta& theta, int i_max, Mode mode, Budget& budget,
                         int threads = 1);

// ------------------------------------------------------------- distribution

struct DistTable {
    int n = 0;
    Mode mode = Mode::Exact;
    std::string producer; // enumeration | formula | montecarlo
    std::vector<Rat> pmf_exact;  // k = 0..n-1 (exact mode)
    std::vector<double> pmf;     // always populated

    Rat cdf_tail(int k) const;      // P(S_n >= k), exact mode
    double cdf_tail_d(int k) const;
};

DistTable enumerate_distribution(const Theta& theta, int n, Mode mode, Budget& budget,
                                 int threads = 1);

// P(union_{j in J} R_n(j)); empty J gives 0.
Rat union_prob(const Theta& theta, int n, const std::vector<int>& J, Budget& budget,
               int threads = 1);

// One-shot event query (builds a throwaway mask table).
Rat border_event_prob(const Theta& theta, int n, const BorderEvent& ev, Budget& budget,
                      int threads = 1);

// ------------------------------------------------------ low-level DFS kernel

namespace detail {

// Depth-first walk of C^n carrying the prefix function incrementally; the
// visitor sees each leaf exactly once. Partitioned by fixed-length prefixes
// and merged in prefix order, so results do not depend on the thread count.
struct LeafContext {
    const std::vector<std::uint32_t>& word;
    const std::vector<int>& pi;
    const Int* product;     // exact numerator product (null in float mode)
    double weight;          // float product (unset in exact mode)
};

// Acc must provide: void leaf(const LeafContext&); void merge(Acc&& other).
template <typename Acc>
void enumerate_words(const Theta& theta, int n, Mode mode, Budget& budget, Acc& acc,
                     int threads);

std::uint32_t border_mask_from_pi(const std::vector<int>& pi);

} // namespace detail

} // namespace ovd
