#include <arcline/noncrossing.hpp>
#include <arcline/rng.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "test_util.hpp"

using namespace arcline;
using namespace arcline::testutil;

namespace {

// Independent oracle: all fixed-point-free involutions of {0..2n-1} by
// direct recursion, filtered by the crossing definition itself.
void all_pairings(Pairing& m, std::vector<bool>& used, std::vector<Pairing>& out) {
    std::size_t first = 0;
    while (first < used.size() && used[first]) ++first;
    if (first == used.size()) {
        out.push_back(m);
        return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < used.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        m[first] = static_cast<std::int32_t>(j);
        m[j] = static_cast<std::int32_t>(first);
        all_pairings(m, used, out);
        used[j] = false;
    }
    used[first] = false;
}

bool crosses_by_definition(const Pairing& m) {
    const std::int32_t n = static_cast<std::int32_t>(m.size());
    for (std::int32_t a = 0; a < n; ++a)
        for (std::int32_t b = a + 1; b < n; ++b) {
            if (m[static_cast<std::size_t>(a)] <= a || m[static_cast<std::size_t>(b)] <= b)
                continue;
            // a < b < m[a] < m[b] is the interleaving pattern
            if (b < m[static_cast<std::size_t>(a)] &&
                m[static_cast<std::size_t>(a)] < m[static_cast<std::size_t>(b)])
                return true;
        }
    return false;
}

}  // namespace

TEST_CASE("catalan values and overflow") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(1) == 1);
    CHECK(catalan(5) == 42);
    CHECK(catalan(8) == 1430);
    CHECK(catalan(10) == 16796);
    CHECK(catalan(30) == 3814986502092304ull);
    CHECK_NOTHROW(catalan(36));
    CHECK_THROWS_AS(catalan(37), CatalanOverflow);
}

TEST_CASE("is_noncrossing basics") {
    CHECK_FALSE(is_noncrossing(Pairing{2, 3, 0, 1}, PairOrder::linear));  // {(1,3),(2,4)}
    CHECK(is_noncrossing(Pairing{3, 2, 1, 0}, PairOrder::linear));        // {(1,4),(2,3)}
    CHECK_FALSE(is_noncrossing(Pairing{2, 3, 0, 1}, PairOrder::cyclic));
    CHECK_THROWS_AS(is_noncrossing(Pairing{0, 1}), MalformedPairing);
    CHECK_THROWS_AS(is_noncrossing(Pairing{1, 0, 2}), MalformedPairing);
}

TEST_CASE("enumeration matches the brute-force filter oracle") {
    for (std::uint32_t n = 0; n <= 5; ++n) {
        std::vector<Pairing> enumerated = enumerate_ncmatchings(n);
        CHECK(enumerated.size() == catalan(n));

        Pairing m(2 * n, -1);
        std::vector<bool> used(2 * n, false);
        std::vector<Pairing> all;
        all_pairings(m, used, all);
        std::vector<Pairing> expected;
        for (const Pairing& p : all)
            if (!crosses_by_definition(p)) expected.push_back(p);

        std::set<Pairing> a(enumerated.begin(), enumerated.end());
        std::set<Pairing> b(expected.begin(), expected.end());
        CHECK(a == b);
        CHECK(a.size() == enumerated.size());  // no duplicates
    }
}

TEST_CASE("n=1 and n=3 enumeration details") {
    CHECK(enumerate_ncmatchings(1) == std::vector<Pairing>{Pairing{1, 0}});
    std::vector<Pairing> m3 = enumerate_ncmatchings(3);
    CHECK(m3.size() == 5);
    for (const Pairing& m : m3) CHECK(is_noncrossing(m));
}

TEST_CASE("n=8 streams catalan(8) matchings") {
    std::size_t count = 0;
    for_each_ncmatching(8, [&](const Pairing&) { ++count; });
    CHECK(count == 1430);
}

TEST_CASE("word bijection round trip") {
    Rng rng(404);
    for (int rep = 0; rep < 500; ++rep) {
        Pairing m = sample_ncmatching(1 + static_cast<std::uint32_t>(rng.below(12)), rng);
        std::vector<Sign> word = matching_to_word(m);
        CHECK(word_to_matching(word) == m);
    }
}

TEST_CASE("sampler is deterministic per seed and always non-crossing") {
    CHECK(sample_ncmatching(1, 123u) == Pairing{1, 0});
    CHECK(sample_ncmatching(6, 42u) == sample_ncmatching(6, 42u));
    Rng rng(11);
    for (int rep = 0; rep < 300; ++rep) {
        Pairing m = sample_ncmatching(1 + static_cast<std::uint32_t>(rng.below(20)), rng);
        CHECK(is_noncrossing(m));
    }
}

TEST_CASE("sampler is uniform (chi-square at n = 3 and 4)") {
    for (std::uint32_t n : {3u, 4u}) {
        std::vector<Pairing> all = enumerate_ncmatchings(n);
        std::map<Pairing, std::size_t> index;
        for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;

        const std::uint64_t samples = 100000;
        std::vector<std::uint64_t> counts(all.size(), 0);
        Rng rng(9000 + n);
        for (std::uint64_t s = 0; s < samples; ++s) ++counts[index.at(sample_ncmatching(n, rng))];

        if (n == 3) {
            for (std::uint64_t c : counts)
                CHECK(std::abs(static_cast<double>(c) / static_cast<double>(samples) - 0.2) <
                      0.01);
        }
        std::vector<double> expected(
            all.size(), static_cast<double>(samples) / static_cast<double>(all.size()));
        CHECK(chi_square(counts, expected) < chi2_crit_p001(all.size() - 1));
    }
}

TEST_CASE("pairing text format") {
    Pairing m{3, 2, 1, 0};
    CHECK(pairing_to_text(m) == "1-4,2-3");
    CHECK(pairing_from_text("1-4,2-3") == m);
    CHECK(pairing_from_text("") == Pairing{});
    CHECK_THROWS_AS(pairing_from_text("1-1"), MalformedPairing);
    CHECK_THROWS_AS(pairing_from_text("1-2,2-3"), MalformedPairing);
    CHECK_THROWS_AS(pairing_from_text("0-1"), MalformedPairing);
    CHECK_THROWS_AS(pairing_from_text("1-4"), MalformedPairing);  // holes
}
