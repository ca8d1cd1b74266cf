#include <arcline/noncrossing.hpp>
#include <arcline/rng.hpp>

#include <algorithm>
#include <cassert>
#include <charconv>
#include <limits>

namespace arcline {

std::uint64_t catalan(std::uint32_t k) {
    std::uint64_t c = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        // c * 2(2i+1) stays exact in 128 bits; the division is always exact.
        unsigned __int128 t = static_cast<unsigned __int128>(c) * (2ull * (2ull * i + 1));
        t /= (i + 2);
        if (t > std::numeric_limits<std::uint64_t>::max())
            throw CatalanOverflow("catalan(" + std::to_string(k) + ") exceeds 64 bits");
        c = static_cast<std::uint64_t>(t);
    }
    return c;
}

namespace {

void check_involution(const Pairing& m) {
    const std::int32_t n = static_cast<std::int32_t>(m.size());
    if (n % 2 != 0) throw MalformedPairing("pairing has odd size");
    for (std::int32_t i = 0; i < n; ++i) {
        std::int32_t p = m[static_cast<std::size_t>(i)];
        if (p < 0 || p >= n) throw MalformedPairing("partner index out of range");
        if (p == i) throw MalformedPairing("pairing has a fixed point");
        if (m[static_cast<std::size_t>(p)] != i) throw MalformedPairing("pairing is not an involution");
    }
}

}  // namespace

bool is_noncrossing(const Pairing& m, PairOrder order) {
    check_involution(m);
    // For fixed-point-free pairs, two chords interleave linearly iff they
    // interleave on the circle, so both orders reduce to the same stack test.
    (void)order;
    std::vector<std::int32_t> stack;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(m.size()); ++i) {
        if (m[static_cast<std::size_t>(i)] > i) {
            stack.push_back(i);
        } else {
            if (stack.empty() || stack.back() != m[static_cast<std::size_t>(i)]) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

Pairing word_to_matching(const std::vector<Sign>& word) {
    Pairing m(word.size(), -1);
    std::vector<std::int32_t> open;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(word.size()); ++i) {
        if (word[static_cast<std::size_t>(i)] == Sign::plus) {
            open.push_back(i);
        } else {
            if (open.empty()) throw MalformedPairing("word is not balanced");
            m[static_cast<std::size_t>(i)] = open.back();
            m[static_cast<std::size_t>(open.back())] = i;
            open.pop_back();
        }
    }
    if (!open.empty()) throw MalformedPairing("word is not balanced");
    return m;
}

std::vector<Sign> matching_to_word(const Pairing& m) {
    check_involution(m);
    std::vector<Sign> word(m.size(), Sign::minus);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(m.size()); ++i)
        if (m[static_cast<std::size_t>(i)] > i) word[static_cast<std::size_t>(i)] = Sign::plus;
    return word;
}

namespace {

void gen_words(std::vector<Sign>& word, std::uint32_t opens_left, std::uint32_t closes_left,
               std::uint32_t depth, const std::function<void(const Pairing&)>& fn) {
    if (opens_left == 0 && closes_left == 0) {
        fn(word_to_matching(word));
        return;
    }
    if (opens_left > 0) {
        word.push_back(Sign::plus);
        gen_words(word, opens_left - 1, closes_left, depth + 1, fn);
        word.pop_back();
    }
    if (depth > 0 && closes_left > 0) {
        word.push_back(Sign::minus);
        gen_words(word, opens_left, closes_left - 1, depth - 1, fn);
        word.pop_back();
    }
}

}  // namespace

void for_each_ncmatching(std::uint32_t n, const std::function<void(const Pairing&)>& fn) {
    std::vector<Sign> word;
    word.reserve(2 * n);
    if (n == 0) {
        fn(Pairing{});
        return;
    }
    gen_words(word, n, n, 0, fn);
}

std::vector<Pairing> enumerate_ncmatchings(std::uint32_t n) {
    std::vector<Pairing> out;
    out.reserve(static_cast<std::size_t>(catalan(n)));
    for_each_ncmatching(n, [&](const Pairing& m) { out.push_back(m); });
    return out;
}

Pairing sample_ncmatching(std::uint32_t n, Rng& rng) {
    if (n == 0) return Pairing{};
    // n opens, n closes, shuffled; then one extra open appended.
    std::vector<Sign> w;
    w.reserve(2 * n + 1);
    w.assign(n, Sign::plus);
    w.insert(w.end(), n, Sign::minus);
    fisher_yates_shuffle(w, rng);
    w.push_back(Sign::plus);

    // Cycle lemma: rotating to start just after the last prefix-sum
    // minimum makes every proper prefix sum positive.
    const std::size_t len = w.size();
    std::int64_t sum = 0, min_sum = std::numeric_limits<std::int64_t>::max();
    std::size_t cut = 0;
    for (std::size_t i = 0; i < len; ++i) {
        sum += sign_value(w[i]);
        if (sum <= min_sum) {
            min_sum = sum;
            cut = i + 1;
        }
    }
    std::vector<Sign> rotated;
    rotated.reserve(len);
    for (std::size_t i = 0; i < len; ++i) rotated.push_back(w[(cut + i) % len]);
    assert(rotated.front() == Sign::plus);
    rotated.erase(rotated.begin());  // drop the extra open
    return word_to_matching(rotated);
}

Pairing sample_ncmatching(std::uint32_t n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_ncmatching(n, rng);
}

std::string pairing_to_text(const Pairing& m) {
    std::string out;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(m.size()); ++i) {
        if (m[static_cast<std::size_t>(i)] <= i) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(i + 1);
        out += '-';
        out += std::to_string(m[static_cast<std::size_t>(i)] + 1);
    }
    return out;
}

Pairing pairing_from_text(const std::string& text) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::int64_t max_idx = 0;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p < end) {
        std::int64_t a = 0, b = 0;
        auto r1 = std::from_chars(p, end, a);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != '-')
            throw MalformedPairing("expected 'a-b' pair in \"" + text + "\"");
        auto r2 = std::from_chars(r1.ptr + 1, end, b);
        if (r2.ec != std::errc{}) throw MalformedPairing("expected 'a-b' pair in \"" + text + "\"");
        if (a < 1 || b < 1) throw MalformedPairing("pair indices are 1-based");
        pairs.emplace_back(a, b);
        max_idx = std::max({max_idx, a, b});
        p = r2.ptr;
        if (p < end) {
            if (*p != ',') throw MalformedPairing("expected ',' between pairs");
            ++p;
        }
    }
    Pairing m(static_cast<std::size_t>(max_idx), -1);
    for (auto [a, b] : pairs) {
        if (m[static_cast<std::size_t>(a - 1)] != -1 || m[static_cast<std::size_t>(b - 1)] != -1)
            throw MalformedPairing("index repeated in pairing text");
        m[static_cast<std::size_t>(a - 1)] = static_cast<std::int32_t>(b - 1);
        m[static_cast<std::size_t>(b - 1)] = static_cast<std::int32_t>(a - 1);
    }
    check_involution(m);
    return m;
}

}  // namespace arcline
