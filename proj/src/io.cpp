#include "overlapdist/io.hpp"

#include <fstream>
#include <sstream>

namespace ovd {

using nlohmann::json;

json theta_json(const Theta& theta) {
    json probs = json::array();
    json probs_exact = json::array();
    for (const auto& p : theta.probs()) {
        probs.push_back(to_double(p));
        probs_exact.push_back(rat_string(p));
    }
    return json{{"probs", probs},
                {"probs_exact", probs_exact},
                {"tail_mass", to_double(theta.tail_mass())},
                {"mode", theta.source_string()}};
}

json manifest_json(const Manifest& m) {
    json j{{"command", m.command},
           {"argv", m.argv},
           {"theta", m.theta},
           {"arithmetic", m.arithmetic},
           {"version", m.version}};
    if (m.has_seed) j["seed"] = m.seed;
    return j;
}

json dist_json(const DistTable& d, const Manifest& m) {
    json pmf = json::array();
    for (double p : d.pmf) pmf.push_back(p);
    json j{{"manifest", manifest_json(m)},
           {"n", d.n},
           {"mode", d.mode == Mode::Exact ? "exact-rational" : "float"},
           {"producer", d.producer},
           {"pmf", pmf}};
    if (!d.pmf_exact.empty()) {
        json exact = json::array();
        for (const auto& p : d.pmf_exact) exact.push_back(rat_string(p));
        j["pmf_exact"] = exact;
    }
    return j;
}

std::string dist_csv(const DistTable& d) {
    std::ostringstream os;
    os << "k,probability\n";
    os.precision(17);
    for (int k = 0; k < d.n; ++k) os << k << "," << d.pmf[k] << "\n";
    return os.str();
}

json series_json(const TruncatedSeries& s) {
    json j{{"k", s.k},
           {"value", s.value},
           {"terms_used", s.terms_used},
           {"last_index", s.last_index},
           {"tail_bound", s.tail_bound_d()},
           {"bound_source", s.bound_source},
           {"extra_error", to_double(s.extra_error)},
           {"tol_met", s.tol_met}};
    if (s.value_exact) j["value_exact"] = rat_string(*s.value_exact);
    return j;
}

json verify_json(const VerifyReport& r, const Manifest& m) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"id", c.id},
                              {"name", c.name},
                              {"pass", c.pass},
                              {"expected_to_fail", c.expected_to_fail},
                              {"details", c.details},
                              {"seconds", c.seconds}});
    return json{{"manifest", manifest_json(m)},
                {"level", r.level == VerifyLevel::Quick ? "quick" : "full"},
                {"all_pass", r.all_pass()},
                {"seconds", r.seconds},
                {"checks", checks}};
}

std::string verify_markdown(const VerifyReport& r) {
    std::ostringstream os;
    os << "# verify report (" << (r.level == VerifyLevel::Quick ? "quick" : "full")
       << ")\n\n";
    os << "| id | check | result | details |\n|---|---|---|---|\n";
    for (const auto& c : r.checks) {
        std::string result = c.pass ? "pass" : (c.expected_to_fail ? "fail (recorded conjecture)" : "FAIL");
        os << "| " << c.id << " | " << c.name << " | " << result << " | " << c.details
           << " |\n";
    }
    os << "\ntotal " << r.seconds << " s\n";
    return os.str();
}

json mc_json(const McResult& r, const Manifest& m) {
    json counts = json::array();
    json pmf = json::array();
    json se = json::array();
    for (int k = 0; k < r.n; ++k) {
        counts.push_back(r.counts[k]);
        pmf.push_back(r.pmf[k]);
        se.push_back(r.stderrs[k]);
    }
    return json{{"manifest", manifest_json(m)},
                {"n", r.n},
                {"mode", "float"},
                {"producer", "montecarlo"},
                {"samples", r.samples},
                {"seed", r.seed},
                {"counts", counts},
                {"pmf", pmf},
                {"stderr", se}};
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << contents;
}

} // namespace ovd
