#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ovd {

// A word is a sequence of 0-based letter indices.
using Word = std::vector<std::uint32_t>;

// Classic prefix function: pi[i] = length of the longest proper border of
// w[0..i]. pi[n-1] is the maximum self-overlap of the whole word.
std::vector<int> prefix_function(const Word& w);

// Smallest shift k >= 1 aligning the word with itself (n if none below n).
int first_return(const Word& w);

// n - first_return: length of the longest proper border (0 if unbordered).
int max_overlap(const Word& w);

// All proper border lengths, ascending, via the failure chain.
std::vector<int> border_set(const Word& w);

// Membership in R_n(k): prefix of length k equals suffix of length k.
// Requires 1 <= k <= n-1.
bool has_border(const Word& w, int k);

// Membership in B_n(j): the first j letters repeated to fill n (last block
// truncated). Requires 1 <= j <= n-1.  B_n(n-k) == R_n(k).
bool is_block_periodic(const Word& w, int j);

// Compact text form: 'a'..'z' for alphabets up to 26 letters, otherwise a
// comma-separated index list.
Word parse_word(std::string_view text, unsigned alphabet_size);
std::string format_word(const Word& w, unsigned alphabet_size);

} // namespace ovd
