#include "overlapdist/bounds.hpp"

#include <cmath>

namespace ovd {

double convergence_rate_C(const Theta& theta) {
    const double m2 = theta.moment_d(2);
    const double rho = to_double(theta.rho());
    return 2.0 * m2 / (m2 - rho * rho); // m2 > rho^2 since theta has >= 2 letters
}

namespace {

double contraction_ratio(const Theta& theta) {
    return theta.moment_d(3) / std::pow(theta.moment_d(2), 1.5);
}

} // namespace

double pmf_gap_bound(const Theta& theta, int n, int k) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    if (n < 4 * k) throw std::invalid_argument("gap bound needs n >= 4k");
    return convergence_rate_C(theta) * std::pow(theta.moment_d(2), n / 2.0) *
           std::pow(contraction_ratio(theta), k);
}

CdfGapBound cdf_gap_bound(const Theta& theta, int n, int k) {
    CdfGapBound out;
    const double r = contraction_ratio(theta);
    const double m2_32 = std::pow(theta.moment_d(2), 1.5);
    const double denom = theta.moment_d(3) - m2_32;
    out.stated_factor = m2_32 / denom;
    out.stated_factor_degenerate = !(denom > 0);
    out.value = pmf_gap_bound(theta, n, k) / (1.0 - r);
    return out;
}

namespace {

BoundRecord make_record(std::string name, double lhs, double rhs, std::string note = "") {
    BoundRecord rec;
    rec.name = std::move(name);
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.slack = rhs - lhs;
    rec.pass = lhs <= rhs + 1e-12;
    rec.note = std::move(note);
    return rec;
}

} // namespace

std::vector<BoundRecord> correction_bound_records(const Theta& theta, int k, int n,
                                                  CorrectionEngine& engine,
                                                  Budget& budget, int threads) {
    std::vector<BoundRecord> out;
    const Rat m2 = theta.moment(2);
    const Rat m4 = theta.moment(4);
    const double m2d = to_double(m2);
    const double rho = to_double(theta.rho());
    const double r = contraction_ratio(theta);

    const Rat akn = engine.a(k, n);
    const Rat bkn = engine.b(k, n);

    {
        Rat rhs = (rat_pow(m2, k + 1) - rat_pow(m2, n)) / (1 - m2);
        BoundRecord rec = make_record("finite cdf correction cap", to_double(akn),
                                      to_double(rhs));
        rec.pass = akn <= rhs; // both exact
        out.push_back(rec);
    }
    {
        double rhs = to_double(rat_pow(m4, k + 1) / (1 - m2)) +
                     2.0 * std::pow(m2d, n / 2.0 + 1) / (m2d - rho * rho) *
                         std::pow(r, k);
        out.push_back(make_record("finite pmf correction cap", to_double(bkn), rhs));
    }

    if (theta.size() == 2) {
        const Rat p2sq = theta.prob(1) * theta.prob(1);
        {
            Rat rhs = (rat_pow(m2, k + 1) + rat_pow(m2, n)) / (1 - m2);
            BoundRecord rec = make_record("two-letter finite cdf cap (plus form)",
                                          to_double(akn), to_double(rhs));
            rec.pass = akn <= rhs;
            out.push_back(rec);
        }
        {
            double rhs = to_double(rat_pow(m4, k + 1) / (1 - m2)) +
                         2.0 * std::pow(m2d, n + 1) / to_double(p2sq) * std::pow(r, k);
            out.push_back(make_record("two-letter finite pmf cap (m2^(n+1) form)",
                                      to_double(bkn), rhs));
        }
    }
    if (theta.is_uniform()) {
        const double s = theta.size();
        {
            double rhs = std::pow(s, n - k) / (std::pow(s, n) * (s - 1));
            out.push_back(
                make_record("uniform finite cdf cap", to_double(akn), rhs));
        }
        {
            double rhs = (std::pow(s, -(3.0 * k + 2)) +
                          2.0 * std::pow(s, -(n + k) / 2.0 + 1)) /
                         (s - 1);
            out.push_back(
                make_record("uniform finite pmf cap", to_double(bkn), rhs));
        }
    }
    (void)budget;
    (void)threads;
    return out;
}

// Limit-side records: the lhs is a rigorous upper estimate, partial sum plus
// its tail bound, so a pass certifies the inequality.
std::vector<BoundRecord> limit_correction_bound_records(const Theta& theta, int k,
                                                        const TruncatedSeries& cdf_series,
                                                        const TruncatedSeries& pmf_series) {
    std::vector<BoundRecord> out;
    const Rat m2 = theta.moment(2);
    const Rat m4 = theta.moment(4);
    const double m2k = to_double(rat_pow(m2, k));

    const double a_upper = (cdf_series.value - m2k) + cdf_series.tail_bound_d();
    const double b_upper = (m2k - pmf_series.value) + pmf_series.tail_bound_d();

    out.push_back(make_record("limit cdf correction cap", a_upper,
                              to_double(rat_pow(m2, k + 1) / (1 - m2)),
                              "lhs = partial sum + tail bound"));
    out.push_back(make_record("limit pmf correction cap", b_upper,
                              to_double(rat_pow(m4, k + 1) / (1 - m2)),
                              "lhs = partial sum + tail bound"));
    if (theta.is_uniform()) {
        const double s = theta.size();
        out.push_back(make_record("uniform limit cdf cap", a_upper,
                                  1.0 / (std::pow(s, k) * (s - 1))));
        out.push_back(make_record("uniform limit pmf cap", b_upper,
                                  std::pow(s, -(3.0 * k + 2)) / (s - 1)));
    }
    return out;
}

LeadingTermReport leading_term_analysis(const Theta& theta, int k_max, Budget& budget,
                                        int threads) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    LeadingTermReport rep;
    const Rat m2 = theta.moment(2);
    const Rat m4 = theta.moment(4);
    const Rat half(1, 2);
    rep.m2_at_most_half = (m2 <= half);
    // a_1 < p_1 (1 - m_2) comes from the strict zero-limit lower bound
    rep.a1_below_m2 = (theta.rho() * (1 - m2) < m2);

    auto upper_closed = [&](int k) { return rat_pow(m2, k + 1) / (1 - m2); };
    auto Ak = [&](int k) {
        return rat_pow(m4, k) / (1 - m4) * (m4 + 1 / (1 - m2));
    };

    for (int k = 1; k <= k_max; ++k) {
        LeadingTermRow row;
        row.k = k;
        row.geometric_term = rat_pow(m2, k);
        row.upper = upper_closed(k);
        Rat lower = row.upper - Ak(k);
        row.lower = lower < 0 ? Rat(0) : lower;

        if (m2 < half) {
            row.certified_geometric_leading = true; // upper = m2^k * m2/(1-m2) < m2^k
        } else if (m2 == half) {
            // at m2 = 1/2 the closed cap only gives equality; a few exact
            // series terms plus the geometric tail restore strictness
            const unsigned t = theta.size();
            Rat partial = 0;
            int last = k;
            for (int i = k + 1; i <= k + 4 && budget.affordable(t, i); ++i) {
                LevelRow lr(theta, i, Mode::Exact, budget, threads);
                Rat term = 0;
                for (int j = 0; j < k; ++j) term += lr.dq(j, 2);
                partial += term;
                last = i;
            }
            if (last > k) {
                Rat refined = partial + cdf_series_tail_bound(theta, k, last);
                if (refined < row.upper) row.upper = refined;
                row.certified_geometric_leading = (row.upper < row.geometric_term);
            }
        } else if (k == 1 && rep.a1_below_m2) {
            row.certified_geometric_leading = true;
        }
        row.certified_correction_leading = (row.lower > row.geometric_term);
        rep.rows.push_back(row);
    }

    if (m2 > half) {
        for (int k = 1; k <= std::max(k_max, 400); ++k) {
            if (upper_closed(k) - Ak(k) > rat_pow(m2, k)) {
                rep.crossover_k = k;
                break;
            }
        }
        if (theta.size() == 2) {
            const double m2d = to_double(m2), m4d = to_double(m4);
            rep.crossover_formula_two_letter =
                std::abs(std::log((1 - m4d) * (1 - m4d) / (2 * m2d - 1))) /
                std::abs(std::log(m4d / m2d));
        }
    }
    return rep;
}

GapGridReport pmf_gap_grid(const Theta& theta, int n_max, Budget& budget, int threads,
                           double series_tol) {
    GapGridReport rep;
    std::vector<DistTable> dists(n_max + 1);
    for (int n = 1; n <= n_max; ++n)
        dists[n] = enumerate_distribution(theta, n, Mode::Exact, budget, threads);

    SeriesOptions sopt;
    sopt.tol = series_tol;
    sopt.threads = threads;
    for (int k = 1; 4 * k <= n_max; ++k) {
        TruncatedSeries lim = limit_pmf(theta, k, sopt, budget);
        for (int n = 4 * k; n <= n_max; ++n) {
            GapGridCell cell;
            cell.n = n;
            cell.k = k;
            cell.measured = std::abs(dists[n].pmf[k] - lim.value) + lim.tail_bound_d();
            cell.bound = pmf_gap_bound(theta, n, k);
            cell.ratio = cell.measured / cell.bound;
            cell.pass = cell.measured <= cell.bound + 1e-12;
            rep.max_ratio = std::max(rep.max_ratio, cell.ratio);
            rep.all_pass = rep.all_pass && cell.pass;
            rep.cells.push_back(cell);
        }
    }
    return rep;
}

} // namespace ovd
