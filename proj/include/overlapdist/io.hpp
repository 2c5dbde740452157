#pragma once

#include "overlapdist/bounds.hpp"
#include "overlapdist/enumerate.hpp"
#include "overlapdist/mc.hpp"
#include "overlapdist/series.hpp"
#include "overlapdist/theta.hpp"
#include "overlapdist/verify.hpp"
#include "overlapdist/zero.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ovd {

inline constexpr const char* kVersion = "0.1.0";

// Every artifact embeds its manifest; re-running the same manifest in exact
// mode reproduces the file byte for byte, so anything non-deterministic
// (wall clock) stays out of it and goes to the log instead.
struct Manifest {
    std::string command;
    std::vector<std::string> argv;
    nlohmann::json theta;
    std::string arithmetic; // exact | float
    bool has_seed = false;
    std::uint64_t seed = 0;
    std::string version = kVersion;
};

nlohmann::json theta_json(const Theta& theta);
nlohmann::json manifest_json(const Manifest& m);

nlohmann::json dist_json(const DistTable& d, const Manifest& m);
std::string dist_csv(const DistTable& d);

nlohmann::json series_json(const TruncatedSeries& s);
nlohmann::json verify_json(const VerifyReport& r, const Manifest& m);
std::string verify_markdown(const VerifyReport& r);

nlohmann::json mc_json(const McResult& r, const Manifest& m);

void write_text_file(const std::string& path, const std::string& contents);

} // namespace ovd
