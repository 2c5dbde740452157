#include "overlapdist/series.hpp"
#include "overlapdist/zero.hpp"

#include <cmath>

namespace ovd {

Rat cdf_series_tail_bound(const Theta& theta, int /*k*/, int last_index) {
    const Rat m2 = theta.moment(2);
    return rat_pow(m2, static_cast<unsigned>(last_index + 1)) / (1 - m2);
}

Rat pmf_series_tail_bound(const Theta& theta, int k, int last_index) {
    const Rat m2 = theta.moment(2);
    const Rat m4 = theta.moment(4);
    // D_2(i,k) <= m2^i always, and <= m4^k m2^{i-2k} once i >= 2k.
    if (last_index + 1 >= 2 * k)
        return rat_pow(m4, static_cast<unsigned>(k)) *
               rat_pow(m2, static_cast<unsigned>(last_index + 1 - 2 * k)) / (1 - m2);
    Rat head = (rat_pow(m2, static_cast<unsigned>(last_index + 1)) -
                rat_pow(m2, static_cast<unsigned>(2 * k))) /
               (1 - m2);
    return head + rat_pow(m4, static_cast<unsigned>(k)) / (1 - m2);
}

namespace {

Rat truncation_error(const Theta& theta, int k, int last_index) {
    if (theta.tail_mass() == 0) return 0;
    // crude union-bound propagation of the alphabet truncation: each length-i
    // term can move by at most i * tail_mass, the m2^k head by k * tail_mass
    Int tri = Int(last_index) * (last_index + 1) / 2;
    return theta.tail_mass() * Rat(tri + k + 1, 1);
}

struct SeriesLoop {
    const Theta& theta;
    int k;
    const SeriesOptions& opt;
    Budget& budget;
    bool exact;
    int first_index;

    Rat partial = 0;
    double partial_d = 0;
    int last = 0;
    int terms = 0;
    bool tol_met = true;

    // term(i) returns false when the budget refuses the enumeration
    template <typename TermFn, typename TailFn>
    void run(TermFn&& term, TailFn&& tail) {
        const Rat tol(opt.tol);
        last = first_index - 1;
        bool met = tail(last) <= tol;
        int extra = opt.extra_terms;
        while (last < 100000) {
            if (met && extra <= 0) break;
            Rat t_exact;
            double t_d = 0;
            if (!term(last + 1, t_exact, t_d)) {
                tol_met = met;
                break;
            }
            ++last;
            ++terms;
            if (exact)
                partial += t_exact;
            else
                partial_d += t_d;
            if (!met)
                met = tail(last) <= tol;
            else
                --extra;
        }
        if (!met) tol_met = false;
    }
};

} // namespace

TruncatedSeries limit_cdf_tail(const Theta& theta, int k, const SeriesOptions& opt,
                               Budget& budget) {
    if (k < 1) throw std::invalid_argument("limit_cdf_tail needs k >= 1");
    if (!(opt.tol > 0)) throw std::invalid_argument("tolerance must be positive");
    const bool uniform = theta.is_uniform();
    const Mode mode = uniform ? Mode::Exact : opt.mode;
    const bool exact = (mode == Mode::Exact);
    const unsigned t = theta.size();

    std::vector<Int> ucache; // uniform k == 1 shortcut: term_i = u(i) / s^{2i}
    SeriesLoop loop{theta, k, opt, budget, exact, k + 1};
    auto term = [&](int i, Rat& out, double& out_d) -> bool {
        if (uniform && k == 1) {
            if (static_cast<int>(ucache.size()) <= i)
                ucache = unbordered_counts(std::max(i, 64), t);
            out = Rat(ucache[i], int_pow(t, 2u * i));
            return true;
        }
        if (!budget.affordable(t, i)) return false;
        LevelRow row(theta, i, mode, budget, opt.threads);
        if (exact) {
            out = 0;
            for (int j = 0; j < k; ++j) out += row.dq(j, 2);
        } else {
            out_d = 0;
            for (int j = 0; j < k; ++j) out_d += row.dq_d(j, 2);
        }
        return true;
    };
    loop.run(term, [&](int last) { return cdf_series_tail_bound(theta, k, last); });

    TruncatedSeries s;
    s.k = k;
    const Rat m2k = rat_pow(theta.moment(2), static_cast<unsigned>(k));
    if (exact) {
        s.value_exact = m2k + loop.partial;
        s.value = to_double(*s.value_exact);
    } else {
        s.value = to_double(m2k) + loop.partial_d;
    }
    s.last_index = loop.last;
    s.terms_used = loop.terms;
    s.tail_bound = cdf_series_tail_bound(theta, k, loop.last);
    s.bound_source = "geometric cap: every term of index i is at most m2^i";
    s.extra_error = truncation_error(theta, k, loop.last);
    s.tol_met = loop.tol_met;
    return s;
}

TruncatedSeries limit_pmf(const Theta& theta, int k, const SeriesOptions& opt,
                          Budget& budget) {
    if (k < 1) throw std::invalid_argument("limit_pmf needs k >= 1");
    if (!(opt.tol > 0)) throw std::invalid_argument("tolerance must be positive");
    const bool uniform = theta.is_uniform();
    const Mode mode = uniform ? Mode::Exact : opt.mode;
    const bool exact = (mode == Mode::Exact);
    const unsigned t = theta.size();

    SeriesLoop loop{theta, k, opt, budget, exact, k + 1};
    auto term = [&](int i, Rat& out, double& out_d) -> bool {
        if (!budget.affordable(t, i)) return false;
        LevelRow row(theta, i, mode, budget, opt.threads);
        if (exact)
            out = row.dq(k, 2);
        else
            out_d = row.dq_d(k, 2);
        return true;
    };
    loop.run(term, [&](int last) { return pmf_series_tail_bound(theta, k, last); });

    TruncatedSeries s;
    s.k = k;
    const Rat m2k = rat_pow(theta.moment(2), static_cast<unsigned>(k));
    if (exact) {
        s.value_exact = m2k - loop.partial;
        s.value = to_double(*s.value_exact);
    } else {
        s.value = to_double(m2k) - loop.partial_d;
    }
    s.last_index = loop.last;
    s.terms_used = loop.terms;
    s.tail_bound = pmf_series_tail_bound(theta, k, loop.last);
    s.bound_source =
        "piecewise cap: terms at most m2^i, and m4^k m2^(i-2k) once i >= 2k";
    s.extra_error = truncation_error(theta, k, loop.last);
    s.tol_met = loop.tol_met;
    return s;
}

} // namespace ovd
