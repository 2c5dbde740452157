#include "overlapdist/corrections.hpp"

namespace ovd {

const MaskTable& CorrectionEngine::table(int n) {
    auto it = tables_.find(n);
    if (it == tables_.end())
        it = tables_.emplace(n, MaskTable(theta_, n, mode_, budget_, threads_)).first;
    return it->second;
}

Rat CorrectionEngine::a(int k, int n) {
    if (k < 1 || n < 2 * k)
        throw std::invalid_argument("a(k,n) needs k >= 1 and n >= 2k");
    const int h = n / 2;
    const int lo = std::max(h, k + 1);

    BorderEvent first;
    first.use_intersect = true;
    first.intersect = BorderEvent::range_mask(lo, n - 1);
    first.avoid = BorderEvent::range_mask(k, lo - 1);
    Rat total = table(n).event_mass(first);

    for (int i = k + 1; i <= h - 1; ++i) {
        BorderEvent term;
        term.contain = BorderEvent::range_mask(i, i);
        term.avoid = BorderEvent::range_mask(k, i - 1);
        total += table(2 * i).event_mass(term);
    }
    return total;
}

Rat CorrectionEngine::b(int k, int n) {
    if (k < 1 || n < 2 * k)
        throw std::invalid_argument("b(k,n) needs k >= 1 and n >= 2k");
    const int h = n / 2;
    const int lo = std::max(h, k + 1);

    BorderEvent first;
    first.use_intersect = true;
    first.intersect = BorderEvent::range_mask(lo, n - 1);
    first.contain = BorderEvent::range_mask(k, k);
    first.avoid = BorderEvent::range_mask(k + 1, lo - 1);
    Rat total = table(n).event_mass(first);

    for (int i = k + 1; i <= h - 1; ++i) {
        BorderEvent term;
        term.contain = BorderEvent::range_mask(i, i) | BorderEvent::range_mask(k, k);
        term.avoid = BorderEvent::range_mask(k + 1, i - 1);
        total += table(2 * i).event_mass(term);
    }
    return total;
}

Rat CorrectionEngine::formula_cdf_tail(int k, int n) {
    return rat_pow(theta_.moment(2), static_cast<unsigned>(k)) + a(k, n);
}

Rat CorrectionEngine::formula_pmf(int k, int n) {
    if (k < 1)
        throw std::invalid_argument("formula_pmf covers k >= 1; use the zero-word "
                                    "routines for k = 0");
    if (n < 2 * k) throw std::invalid_argument("formula_pmf needs n >= 2k");
    return rat_pow(theta_.moment(2), static_cast<unsigned>(k)) - b(k, n);
}

std::pair<Rat, Rat> finite_corrections(const Theta& theta, int k, int n, Budget& budget,
                                       int threads) {
    CorrectionEngine engine(theta, Mode::Exact, budget, threads);
    return {engine.a(k, n), engine.b(k, n)};
}

} // namespace ovd
