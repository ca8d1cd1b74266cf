// Finite non-crossing perfect matchings of {1..2n}: validity checks,
// exhaustive enumeration, exact-uniform sampling, Catalan numbers.
#pragma once

#include <arcline/errors.hpp>
#include <arcline/types.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace arcline {

// Exact c_k via c_0 = 1, c_{k+1} = c_k * 2(2k+1) / (k+2).  Throws
// CatalanOverflow once the value leaves 64 bits (k > 36).
std::uint64_t catalan(std::uint32_t k);

enum class PairOrder { linear, cyclic };

// True iff no two pairs interleave in the given order.  Throws
// MalformedPairing unless m is a fixed-point-free involution.
bool is_noncrossing(const Pairing& m, PairOrder order = PairOrder::linear);

// Balanced parenthesis word <-> non-crossing matching (positions of one
// word letter pair with the matching stack discipline).
Pairing word_to_matching(const std::vector<Sign>& word);
std::vector<Sign> matching_to_word(const Pairing& m);

// Emits every non-crossing perfect matching of {1..2n} exactly once, in
// lexicographic order of the parenthesis word (+1 before -1).
void for_each_ncmatching(std::uint32_t n, const std::function<void(const Pairing&)>& fn);
std::vector<Pairing> enumerate_ncmatchings(std::uint32_t n);

// Exactly uniform over the catalan(n) matchings: a uniformly shuffled
// word of n opens and n closes is extended by one open, rotated to its
// unique dominating rotation (cycle lemma), and the leading open dropped.
class Rng;
Pairing sample_ncmatching(std::uint32_t n, Rng& rng);
Pairing sample_ncmatching(std::uint32_t n, std::uint64_t seed);

// Matching text format: 1-based comma-separated pairs, e.g. "1-4,2-3".
std::string pairing_to_text(const Pairing& m);
Pairing pairing_from_text(const std::string& text);

}  // namespace arcline
