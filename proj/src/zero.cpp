#include "overlapdist/zero.hpp"

namespace ovd {

std::vector<Int> unbordered_counts(int n_max, unsigned s) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (s < 2) throw std::invalid_argument("alphabet size must be >= 2");
    std::vector<Int> u(n_max + 1);
    u[1] = s;
    if (n_max >= 2) u[2] = Int(s) * s - s;
    for (int n = 3; n <= n_max; ++n) {
        if (n % 2)
            u[n] = u[n - 1] * s;
        else
            u[n] = u[n - 2] * s * s - u[n / 2];
    }
    return u;
}

ZeroSequence zero_sequence(const Theta& theta, int n_max, Budget& budget, int threads) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    ZeroSequence seq;
    seq.values.assign(n_max + 1, Rat(0));
    seq.producer = "recursion";
    seq.values[1] = 1;
    if (n_max < 2) return seq;

    if (theta.is_uniform()) {
        const unsigned s = theta.size();
        auto u = unbordered_counts(n_max, s);
        for (int n = 2; n <= n_max; ++n)
            seq.values[n] = Rat(u[n], int_pow(s, static_cast<unsigned>(n)));
        return seq;
    }

    seq.values[2] = 1 - theta.moment(2);
    for (int n = 3; n <= n_max; ++n) {
        if (n % 2) {
            seq.values[n] = seq.values[n - 1];
        } else {
            LevelRow row(theta, n / 2, Mode::Exact, budget, threads);
            seq.values[n] = seq.values[n - 2] - row.dq(0, 2);
        }
    }
    return seq;
}

Rat zero_probability(const Theta& theta, int n, Budget& budget, int threads) {
    if (n == 1) return 1;
    return zero_sequence(theta, n, budget, threads).values[n];
}

TruncatedSeries limit_zero(const Theta& theta, const SeriesOptions& opt, Budget& budget) {
    if (!(opt.tol > 0)) throw std::invalid_argument("tolerance must be positive");
    const bool uniform = theta.is_uniform();
    const unsigned t = theta.size();
    const Rat m2 = theta.moment(2);
    const Rat tol(opt.tol);

    Rat partial = 0;
    std::vector<Int> ucache;
    int last = 1;
    int terms = 0;
    bool met = rat_pow(m2, static_cast<unsigned>(last + 1)) / (1 - m2) <= tol;
    int extra = opt.extra_terms;
    bool tol_met = true;
    while (last < 100000) {
        if (met && extra <= 0) break;
        const int i = last + 1;
        if (uniform) {
            if (static_cast<int>(ucache.size()) <= i)
                ucache = unbordered_counts(std::max(i, 64), t);
            partial += Rat(ucache[i], int_pow(t, 2u * i));
        } else {
            if (!budget.affordable(t, i)) {
                tol_met = met;
                break;
            }
            LevelRow row(theta, i, Mode::Exact, budget, opt.threads);
            partial += row.dq(0, 2);
        }
        last = i;
        ++terms;
        if (!met)
            met = rat_pow(m2, static_cast<unsigned>(last + 1)) / (1 - m2) <= tol;
        else
            --extra;
    }
    if (!met) tol_met = false;

    TruncatedSeries s;
    s.k = 0;
    s.value_exact = 1 - m2 - partial;
    s.value = to_double(*s.value_exact);
    s.last_index = last;
    s.terms_used = terms;
    s.tail_bound = rat_pow(m2, static_cast<unsigned>(last + 1)) / (1 - m2);
    s.bound_source = "geometric cap: every term of index i is at most m2^i";
    s.extra_error = theta.tail_mass() == 0
                        ? Rat(0)
                        : theta.tail_mass() * Rat(Int(last) * (last + 1) / 2 + 1, 1);
    s.tol_met = tol_met;
    return s;
}

Rat zero_limit_lower_bound(const Theta& theta) {
    return (1 - theta.rho()) * (1 - theta.moment(2));
}

} // namespace ovd
