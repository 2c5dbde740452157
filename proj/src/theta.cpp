#include "overlapdist/theta.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace ovd {

Rat parse_rational(std::string_view s) {
    auto fail = [&] {
        throw std::invalid_argument("cannot parse rational from '" + std::string(s) + "'");
    };
    if (s.empty()) fail();
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        Rat num = parse_rational(s.substr(0, slash));
        Rat den = parse_rational(s.substr(slash + 1));
        if (den == 0) fail();
        return num / den;
    }
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    Int mant = 0;
    long frac_digits = 0;
    long exponent = 0;
    bool any_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) fail();
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            ++i;
            bool eneg = false;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
            if (i >= s.size()) fail();
            long e = 0;
            for (; i < s.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
                e = e * 10 + (s[i] - '0');
                if (e > 100000) fail();
            }
            exponent = eneg ? -e : e;
            break;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            any_digit = true;
        } else {
            fail();
        }
    }
    if (!any_digit) fail();
    Rat r(mant, 1);
    long net = exponent - frac_digits;
    if (net > 0)
        r *= Rat(int_pow(10, static_cast<unsigned>(net)), 1);
    else if (net < 0)
        r /= Rat(int_pow(10, static_cast<unsigned>(-net)), 1);
    return neg ? -r : r;
}

std::string rat_string(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

// the moment-cache mutex is per-object state, not value state
Theta::Theta(const Theta& o)
    : probs_(o.probs_), probs_d_(o.probs_d_), tail_mass_(o.tail_mass_),
      source_(o.source_), uniform_s_(o.uniform_s_), geometric_r_(o.geometric_r_),
      numerators_(o.numerators_), denominator_(o.denominator_) {
    std::scoped_lock lock(o.cache_mutex_);
    moment_cache_ = o.moment_cache_;
}

Theta& Theta::operator=(const Theta& o) {
    if (this != &o) {
        Theta tmp(o);
        *this = std::move(tmp);
    }
    return *this;
}

Theta::Theta(Theta&& o) noexcept
    : probs_(std::move(o.probs_)), probs_d_(std::move(o.probs_d_)),
      tail_mass_(std::move(o.tail_mass_)), source_(o.source_),
      uniform_s_(o.uniform_s_), geometric_r_(std::move(o.geometric_r_)),
      numerators_(std::move(o.numerators_)), denominator_(std::move(o.denominator_)),
      moment_cache_(std::move(o.moment_cache_)) {}

Theta& Theta::operator=(Theta&& o) noexcept {
    probs_ = std::move(o.probs_);
    probs_d_ = std::move(o.probs_d_);
    tail_mass_ = std::move(o.tail_mass_);
    source_ = o.source_;
    uniform_s_ = o.uniform_s_;
    geometric_r_ = std::move(o.geometric_r_);
    numerators_ = std::move(o.numerators_);
    denominator_ = std::move(o.denominator_);
    moment_cache_ = std::move(o.moment_cache_);
    return *this;
}

void Theta::finalize() {
    if (probs_.size() < 2)
        throw InvalidTheta("theta needs at least 2 letters");
    for (const Rat& p : probs_)
        if (!(p > 0 && p < 1))
            throw InvalidTheta("letter probabilities must lie strictly in (0,1)");
    std::sort(probs_.begin(), probs_.end(), std::greater<Rat>());
    Rat sum = std::accumulate(probs_.begin(), probs_.end(), Rat(0));
    if (sum + tail_mass_ != 1)
        throw InvalidTheta("probabilities plus tail mass must sum to 1 exactly, got " +
                           rat_string(sum + tail_mass_));

    probs_d_.clear();
    for (const Rat& p : probs_) probs_d_.push_back(to_double(p));

    // common-denominator integer weights for exact enumeration
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int den = 1;
    for (const Rat& p : probs_) {
        Int d = denominator(p);
        den = den / boost::multiprecision::gcd(den, d) * d;
    }
    denominator_ = den;
    numerators_.clear();
    for (const Rat& p : probs_)
        numerators_.push_back(numerator(p) * (den / denominator(p)));
}

Theta Theta::explicit_probs(std::vector<Rat> probs) {
    Theta t;
    t.probs_ = std::move(probs);
    t.source_ = ThetaSource::Explicit;
    t.finalize();
    return t;
}

Theta Theta::uniform(unsigned s) {
    if (s < 2) throw InvalidTheta("uniform alphabet needs s >= 2");
    Theta t;
    t.probs_.assign(s, Rat(1, s));
    t.source_ = ThetaSource::Uniform;
    t.uniform_s_ = s;
    t.finalize();
    return t;
}

Theta Theta::geometric(const Rat& r, const Rat& eps) {
    if (!(r > 0 && r < 1)) throw InvalidTheta("geometric ratio must lie in (0,1)");
    if (!(eps > 0 && eps < 1)) throw InvalidTheta("truncation tolerance must lie in (0,1)");
    // smallest A with r^A <= eps; at least two letters stay
    int A = 1;
    Rat pow_r = r;
    while (pow_r > eps && A < 100000) {
        pow_r *= r;
        ++A;
    }
    A = std::max(A, 2);
    Theta t;
    Rat p = 1 - r;
    for (int i = 0; i < A; ++i) {
        t.probs_.push_back(p);
        p *= r;
    }
    t.tail_mass_ = rat_pow(r, static_cast<unsigned>(A));
    t.source_ = ThetaSource::Geometric;
    t.geometric_r_ = r;
    t.finalize();
    return t;
}

std::string Theta::source_string() const {
    switch (source_) {
        case ThetaSource::Uniform: return "uniform(" + std::to_string(uniform_s_) + ")";
        case ThetaSource::Geometric: return "geometric(" + rat_string(geometric_r_) + ")";
        default: return "explicit";
    }
}

bool Theta::is_uniform() const {
    for (const Rat& p : probs_)
        if (p != probs_[0]) return false;
    return tail_mass_ == 0;
}

Rat Theta::moment(unsigned q) const {
    if (q == 0) return Rat(static_cast<long>(probs_.size()));
    std::scoped_lock lock(cache_mutex_);
    auto it = moment_cache_.find(q);
    if (it != moment_cache_.end()) return it->second;
    Rat m = 0;
    for (const Rat& p : probs_) m += rat_pow(p, q);
    moment_cache_.emplace(q, m);
    return m;
}

Rat geometric_moment(const Rat& r, unsigned q) {
    Rat rq = rat_pow(r, q);
    return rat_pow(1 - r, q) / (1 - rq);
}

Theta parse_theta_list(const std::string& csv) {
    std::vector<Rat> probs;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) probs.push_back(parse_rational(item));
    }
    return Theta::explicit_probs(std::move(probs));
}

} // namespace ovd
