#include "overlapdist/border.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ovd {

std::vector<int> prefix_function(const Word& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> pi(n, 0);
    for (int i = 1; i < n; ++i) {
        int j = pi[i - 1];
        while (j > 0 && w[i] != w[j]) j = pi[j - 1];
        if (w[i] == w[j]) ++j;
        pi[i] = j;
    }
    return pi;
}

int max_overlap(const Word& w) {
    if (w.empty()) throw std::invalid_argument("empty word");
    return prefix_function(w).back();
}

int first_return(const Word& w) {
    return static_cast<int>(w.size()) - max_overlap(w);
}

std::vector<int> border_set(const Word& w) {
    std::vector<int> out;
    auto pi = prefix_function(w);
    int j = pi.empty() ? 0 : pi.back();
    while (j > 0) {
        out.push_back(j);
        j = pi[j - 1];
    }
    std::reverse(out.begin(), out.end());
    return out;
}

bool has_border(const Word& w, int k) {
    const int n = static_cast<int>(w.size());
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("border length must lie in [1, n-1]");
    for (int i = 0; i < k; ++i)
        if (w[i] != w[n - k + i]) return false;
    return true;
}

bool is_block_periodic(const Word& w, int j) {
    const int n = static_cast<int>(w.size());
    if (j < 1 || j > n - 1)
        throw std::invalid_argument("block length must lie in [1, n-1]");
    for (int i = j; i < n; ++i)
        if (w[i] != w[i - j]) return false;
    return true;
}

Word parse_word(std::string_view text, unsigned alphabet_size) {
    Word w;
    if (alphabet_size <= 26 && text.find(',') == std::string_view::npos) {
        for (char c : text) {
            if (c < 'a' || c >= static_cast<char>('a' + alphabet_size))
                throw std::invalid_argument("letter out of range: " + std::string(1, c));
            w.push_back(static_cast<std::uint32_t>(c - 'a'));
        }
        return w;
    }
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        unsigned long v = std::stoul(item);
        if (v >= alphabet_size)
            throw std::invalid_argument("letter index out of range: " + item);
        w.push_back(static_cast<std::uint32_t>(v));
    }
    return w;
}

std::string format_word(const Word& w, unsigned alphabet_size) {
    std::string out;
    if (alphabet_size <= 26) {
        for (auto c : w) out.push_back(static_cast<char>('a' + c));
        return out;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(w[i]);
    }
    return out;
}

} // namespace ovd
