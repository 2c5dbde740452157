#pragma once

#include "overlapdist/rational.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace ovd {

struct InvalidTheta : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class ThetaSource { Explicit, Uniform, Geometric };

// Letter distribution theta = (p_1 >= p_2 >= ...), all p in (0,1).
// Countable alphabets enter only through truncation: a geometric(r) law is
// cut at the smallest A with r^A <= eps and the dropped mass is carried
// around explicitly as tail_mass, so sum(probs) + tail_mass == 1 exactly.
class Theta {
public:
    static Theta explicit_probs(std::vector<Rat> probs);
    static Theta uniform(unsigned s);
    static Theta geometric(const Rat& r, const Rat& eps);

    Theta(const Theta& o);
    Theta& operator=(const Theta& o);
    Theta(Theta&& o) noexcept;
    Theta& operator=(Theta&& o) noexcept;
    ~Theta() = default;

    unsigned size() const { return static_cast<unsigned>(probs_.size()); }
    const std::vector<Rat>& probs() const { return probs_; }
    const std::vector<double>& probs_d() const { return probs_d_; }
    const Rat& prob(unsigned i) const { return probs_[i]; }
    const Rat& rho() const { return probs_[0]; }
    const Rat& tail_mass() const { return tail_mass_; }
    ThetaSource source() const { return source_; }
    std::string source_string() const;
    bool is_uniform() const;
    unsigned uniform_s() const { return uniform_s_; }
    const Rat& geometric_r() const { return geometric_r_; }

    // m_q = sum_a p_a^q over the stored (truncated) vector; cached.
    Rat moment(unsigned q) const;
    double moment_d(unsigned q) const { return to_double(moment(q)); }

    // Probabilities over a common denominator, the exact enumeration weights:
    // P(word) = prod(numerator[letter]) / denominator^n.
    const std::vector<Int>& numerators() const { return numerators_; }
    const Int& denominator() const { return denominator_; }

    bool operator==(const Theta& o) const { return probs_ == o.probs_; }

private:
    Theta() = default;
    void finalize();

    std::vector<Rat> probs_;
    std::vector<double> probs_d_;
    Rat tail_mass_ = 0;
    ThetaSource source_ = ThetaSource::Explicit;
    unsigned uniform_s_ = 0;
    Rat geometric_r_ = 0;
    std::vector<Int> numerators_;
    Int denominator_ = 1;

    mutable std::map<unsigned, Rat> moment_cache_;
    mutable std::mutex cache_mutex_;
};

// Closed form for the untruncated geometric law: m_q = (1-r)^q / (1-r^q).
Rat geometric_moment(const Rat& r, unsigned q);

// CLI-style parse: "0.7,0.3" or "1/2,1/3,1/6".
Theta parse_theta_list(const std::string& csv);

} // namespace ovd
