#include "overlapdist/enumerate.hpp"
#include "overlapdist/detail/dfs.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace ovd {

// ------------------------------------------------------------------- budget

Budget Budget::from_env() {
    Budget b;
    if (const char* env = std::getenv("OVERLAPDIST_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) b.max_words = v;
    }
    return b;
}

void Budget::charge(unsigned alphabet, int n) {
    Int required = int_pow(alphabet, static_cast<unsigned>(n));
    if (required > remaining())
        throw BudgetExceeded(required, max_words, n, alphabet);
    used_words += required.convert_to<std::uint64_t>();
}

bool Budget::affordable(unsigned alphabet, int n) const {
    return int_pow(alphabet, static_cast<unsigned>(n)) <= remaining();
}

namespace detail {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

std::uint32_t border_mask_from_pi(const std::vector<int>& pi) {
    return border_mask_from_pi_impl(pi);
}

} // namespace detail

// ------------------------------------------------------------------- events

std::uint32_t BorderEvent::range_mask(int lo, int hi) {
    std::uint32_t m = 0;
    for (int j = std::max(lo, 1); j <= hi; ++j) m |= (1u << (j - 1));
    return m;
}

namespace {

bool mask_matches(std::uint32_t borders, const BorderEvent& ev) {
    if ((borders & ev.contain) != ev.contain) return false;
    if (ev.use_intersect && (borders & ev.intersect) == 0) return false;
    if (borders & ev.avoid) return false;
    return true;
}

struct MaskAccExact {
    std::unordered_map<std::uint32_t, Int> sums;
    void leaf(const detail::LeafContext& c) {
        sums[detail::border_mask_from_pi_impl(c.pi)] += *c.product;
    }
    void merge(MaskAccExact&& o) {
        for (auto& [m, v] : o.sums) sums[m] += v;
    }
};

struct MaskAccFloat {
    std::unordered_map<std::uint32_t, double> sums;
    void leaf(const detail::LeafContext& c) {
        sums[detail::border_mask_from_pi_impl(c.pi)] += c.weight;
    }
    void merge(MaskAccFloat&& o) {
        for (auto& [m, v] : o.sums) sums[m] += v;
    }
};

struct LevelAccUniform {
    std::vector<std::uint64_t> counts;
    void leaf(const detail::LeafContext& c) { ++counts[c.pi.back()]; }
    void merge(LevelAccUniform&& o) {
        for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += o.counts[k];
    }
};

struct LevelAccExact {
    std::vector<std::map<Int, std::uint64_t>> products;
    void leaf(const detail::LeafContext& c) { ++products[c.pi.back()][*c.product]; }
    void merge(LevelAccExact&& o) {
        for (std::size_t k = 0; k < products.size(); ++k)
            for (auto& [p, cnt] : o.products[k]) products[k][p] += cnt;
    }
};

struct LevelAccFloat {
    std::vector<std::array<double, 4>> sums;
    void leaf(const detail::LeafContext& c) {
        auto& row = sums[c.pi.back()];
        double w = c.weight;
        row[0] += w;
        w *= c.weight;
        row[1] += w;
        w *= c.weight;
        row[2] += w;
        w *= c.weight;
        row[3] += w;
    }
    void merge(LevelAccFloat&& o) {
        for (std::size_t k = 0; k < sums.size(); ++k)
            for (int q = 0; q < 4; ++q) sums[k][q] += o.sums[k][q];
    }
};

} // namespace

// ---------------------------------------------------------------- MaskTable

MaskTable::MaskTable(const Theta& theta, int n, Mode mode, Budget& budget, int threads)
    : n_(n), mode_(mode) {
    if (n < 1 || n > 31)
        throw std::invalid_argument("mask tables support 1 <= n <= 31");
    if (mode == Mode::Exact) {
        MaskAccExact acc;
        detail::enumerate_words(theta, n, mode, budget, acc, threads);
        Int den = int_pow(theta.denominator(), static_cast<unsigned>(n));
        for (auto& [m, v] : acc.sums) exact_.emplace(m, Rat(v, den));
    } else {
        MaskAccFloat acc;
        detail::enumerate_words(theta, n, mode, budget, acc, threads);
        approx_ = std::move(acc.sums);
    }
}

Rat MaskTable::event_mass(const BorderEvent& ev) const {
    if (mode_ != Mode::Exact)
        throw std::logic_error("event_mass requires an exact-mode table");
    Rat total = 0;
    for (const auto& [m, mass] : exact_)
        if (mask_matches(m, ev)) total += mass;
    return total;
}

double MaskTable::event_mass_d(const BorderEvent& ev) const {
    if (mode_ == Mode::Exact) return to_double(event_mass(ev));
    double total = 0;
    for (const auto& [m, mass] : approx_)
        if (mask_matches(m, ev)) total += mass;
    return total;
}

Rat MaskTable::cdf_tail(int k) const {
    BorderEvent ev;
    ev.use_intersect = true;
    ev.intersect = BorderEvent::range_mask(k, n_ - 1);
    return event_mass(ev);
}

Rat MaskTable::pmf(int k) const {
    if (k == 0) {
        BorderEvent ev;
        ev.avoid = BorderEvent::range_mask(1, n_ - 1);
        return event_mass(ev);
    }
    BorderEvent ev;
    ev.contain = BorderEvent::range_mask(k, k);
    ev.avoid = BorderEvent::range_mask(k + 1, n_ - 1);
    return event_mass(ev);
}

// ----------------------------------------------------------------- LevelRow

LevelRow::LevelRow(const Theta& theta, int i, Mode mode, Budget& budget, int threads)
    : i_(i), mode_(mode), theta_(&theta) {
    if (i < 1) throw std::invalid_argument("level row needs i >= 1");
    if (mode == Mode::Exact && theta.is_uniform()) {
        uniform_counts_ = true;
        LevelAccUniform acc;
        acc.counts.assign(i, 0);
        detail::enumerate_words(theta, i, mode, budget, acc, threads);
        counts_ = std::move(acc.counts);
    } else if (mode == Mode::Exact) {
        LevelAccExact acc;
        acc.products.resize(i);
        detail::enumerate_words(theta, i, mode, budget, acc, threads);
        products_ = std::move(acc.products);
    } else {
        LevelAccFloat acc;
        acc.sums.assign(i, {0, 0, 0, 0});
        detail::enumerate_words(theta, i, mode, budget, acc, threads);
        float_sums_ = std::move(acc.sums);
    }
}

Rat LevelRow::dq(int k, unsigned q) const {
    if (mode_ != Mode::Exact)
        throw std::logic_error("dq requires an exact-mode level row");
    if (k < 0 || k >= i_) return 0;
    if (uniform_counts_) {
        // every word has P = s^-i
        Int den = int_pow(theta_->size(), static_cast<unsigned>(i_) * q);
        return Rat(Int(counts_[k]), den);
    }
    Int num = 0;
    for (const auto& [prod, cnt] : products_[k]) num += int_pow(prod, q) * cnt;
    Int den = int_pow(theta_->denominator(), static_cast<unsigned>(i_) * q);
    return Rat(num, den);
}

double LevelRow::dq_d(int k, unsigned q) const {
    if (mode_ == Mode::Exact) return to_double(dq(k, q));
    if (k < 0 || k >= i_) return 0;
    if (q < 1 || q > 4)
        throw std::invalid_argument("float level rows cache q in 1..4");
    return float_sums_[k][q - 1];
}

LevelMasses level_masses(const Theta& theta, int i_max, Mode mode, Budget& budget,
                         int threads) {
    LevelMasses lm;
    lm.rows.resize(i_max + 1);
    for (int i = 1; i <= i_max; ++i)
        lm.rows[i] = LevelRow(theta, i, mode, budget, threads);
    return lm;
}

// ---------------------------------------------------------------- DistTable

Rat DistTable::cdf_tail(int k) const {
    if (pmf_exact.empty())
        throw std::logic_error("cdf_tail requires an exact-mode table");
    Rat total = 0;
    for (int j = std::max(k, 0); j < n; ++j) total += pmf_exact[j];
    return total;
}

double DistTable::cdf_tail_d(int k) const {
    double total = 0;
    for (int j = std::max(k, 0); j < n; ++j) total += pmf[j];
    return total;
}

DistTable enumerate_distribution(const Theta& theta, int n, Mode mode, Budget& budget,
                                 int threads) {
    DistTable d;
    d.n = n;
    d.mode = mode;
    d.producer = "enumeration";
    LevelRow row(theta, n, mode, budget, threads);
    d.pmf.resize(n);
    if (mode == Mode::Exact) {
        d.pmf_exact.resize(n);
        for (int k = 0; k < n; ++k) {
            d.pmf_exact[k] = row.dq(k, 1);
            d.pmf[k] = to_double(d.pmf_exact[k]);
        }
    } else {
        for (int k = 0; k < n; ++k) d.pmf[k] = row.dq_d(k, 1);
    }
    return d;
}

Rat union_prob(const Theta& theta, int n, const std::vector<int>& J, Budget& budget,
               int threads) {
    BorderEvent ev;
    ev.use_intersect = true;
    for (int j : J) {
        if (j < 1 || j > n - 1)
            throw std::invalid_argument("union index out of [1, n-1]");
        ev.intersect |= (1u << (j - 1));
    }
    MaskTable table(theta, n, Mode::Exact, budget, threads);
    return table.event_mass(ev);
}

Rat border_event_prob(const Theta& theta, int n, const BorderEvent& ev, Budget& budget,
                      int threads) {
    MaskTable table(theta, n, Mode::Exact, budget, threads);
    return table.event_mass(ev);
}

} // namespace ovd
