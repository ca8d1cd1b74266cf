#include <arcline/core.hpp>
#include <arcline/noncrossing.hpp>
#include <arcline/rng.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>

#include "test_util.hpp"

using namespace arcline;
using namespace arcline::testutil;

namespace {

std::vector<Sign> signs_of(const std::vector<int>& v) {
    std::vector<Sign> out;
    for (int s : v) out.push_back(sign_from_int(s));
    return out;
}

}  // namespace

TEST_CASE("match_parentheses on an empty sequence") {
    MatchResult r = match_parentheses({}, Half::upper);
    CHECK(r.arcs.empty());
    CHECK(r.left_ends.empty());
    CHECK(r.right_ends.empty());
}

TEST_CASE("match_parentheses pairs forced nearest neighbours") {
    MatchResult r = match_parentheses(signs_of({1, -1}), Half::upper);
    REQUIRE(r.arcs.size() == 1);
    CHECK(r.arcs[0] == Arc{1, 2, Half::upper});
    CHECK(r.left_ends.empty());
    CHECK(r.right_ends.empty());
}

TEST_CASE("match_parentheses mixed arcs and ends") {
    // [+1,+1,-1,-1,-1,+1]: arcs {(2,3),(1,4)}, left end at 5, right end at 6
    MatchResult r = match_parentheses(signs_of({1, 1, -1, -1, -1, 1}), Half::lower);
    REQUIRE(r.arcs.size() == 2);
    CHECK(r.arcs[0] == Arc{2, 3, Half::lower});
    CHECK(r.arcs[1] == Arc{1, 4, Half::lower});
    REQUIRE(r.left_ends.size() == 1);
    CHECK(r.left_ends[0] == DanglingEnd{5, Half::lower, Direction::left});
    REQUIRE(r.right_ends.size() == 1);
    CHECK(r.right_ends[0] == DanglingEnd{6, Half::lower, Direction::right});
}

TEST_CASE("stack arcs are non-crossing and cover every site once") {
    Rng rng(20240811);
    for (int rep = 0; rep < 200; ++rep) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.below(1000));
        Window w = random_window(rng, n);
        std::vector<Sign> up;
        for (const SiteState& st : w.sites) up.push_back(st.upper);
        MatchResult r = match_parentheses(up, Half::upper, w.lo);

        // nesting or disjointness
        for (std::size_t i = 0; i < r.arcs.size(); ++i) {
            for (std::size_t j = i + 1; j < r.arcs.size(); ++j) {
                const Arc& a = r.arcs[i];
                const Arc& b = r.arcs[j];
                const bool disjoint = a.right < b.left || b.right < a.left;
                const bool a_in_b = b.left < a.left && a.right < b.right;
                const bool b_in_a = a.left < b.left && b.right < a.right;
                CHECK((disjoint || a_in_b || b_in_a));
            }
        }
        // degree exactly one per site in this half
        std::set<Site> seen;
        for (const Arc& a : r.arcs) {
            CHECK(seen.insert(a.left).second);
            CHECK(seen.insert(a.right).second);
            CHECK((a.right - a.left) % 2 == 1);
        }
        for (const DanglingEnd& e : r.left_ends) CHECK(seen.insert(e.site).second);
        for (const DanglingEnd& e : r.right_ends) CHECK(seen.insert(e.site).second);
        CHECK(seen.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("end_profile frozen examples") {
    CHECK(end_profile(window_from_signs({1, -1}, {1, -1})) == EndProfile{0, 0, 0, 0});

    // upper=[-1,-1,-1]: walk 0,-1,-2,-3, min -3
    Window w = window_from_signs({-1, -1, -1}, {1, 1, -1});
    EndProfile p = end_profile(w);
    CHECK(p.nl_up == 3);
    CHECK(p.nr_up == 0);

    CHECK(end_profile(window_from_signs({-1, 1}, {1, 1})) == EndProfile{1, 1, 0, 2});
}

TEST_CASE("closed-form and stack end counts agree on random windows") {
    Rng rng(7);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::int64_t n = static_cast<std::int64_t>(rng.below(400));
        Window w = random_window(rng, n);
        EndProfile closed = end_profile(w, ProfileMethod::closed_form);
        EndProfile stack = end_profile(w, ProfileMethod::stack);
        CHECK(closed == stack);
        CHECK((closed.nl_up + closed.nr_up) % 2 == n % 2);
        CHECK((closed.nl_dn + closed.nr_dn) % 2 == n % 2);
        CHECK(closed.total() % 2 == 0);
    }
}

TEST_CASE("walk range differs from exact end count only by O(1)") {
    // [+1,-1]: range is 1 but no end dangles
    std::vector<Sign> s = signs_of({1, -1});
    CHECK(sign_walk_range(s) == 1);
    Window w = window_from_signs({1, -1}, {1, -1});
    CHECK(end_profile(w).total() == 0);
}

TEST_CASE("decompose: short loop") {
    Window w = window_from_signs({1, -1}, {1, -1});
    // both halves arc (1,2): a single circle
    w = window_from_signs({1, -1}, {1, -1});
    Decomposition d = decompose(w);
    REQUIRE(d.internal_cycles.size() == 1);
    CHECK(d.internal_cycles[0] == std::vector<Site>{1, 2});
    CHECK(d.boundary_paths.empty());
    CHECK(d.sigma.empty());
}

TEST_CASE("decompose: one boundary path through an upper arc") {
    // sites ((+1,-1),(-1,+1)): upper arc (1,2), two lower ends
    Window w = window_from_signs({1, -1}, {-1, 1});
    Decomposition d = decompose(w);
    CHECK(d.internal_cycles.empty());
    REQUIRE(d.boundary_paths.size() == 1);
    REQUIRE(d.ends_in_cyclic_order.size() == 2);
    // lower-right end (site 2) is end 1, lower-left end (site 1) is end 2
    CHECK(d.ends_in_cyclic_order[0] == DanglingEnd{2, Half::lower, Direction::right});
    CHECK(d.ends_in_cyclic_order[1] == DanglingEnd{1, Half::lower, Direction::left});
    CHECK(d.sigma == Pairing{1, 0});
}

TEST_CASE("decompose: circle plus boundary path") {
    // N=4, upper=[+1,+1,-1,-1], lower=[-1,+1,-1,+1]
    Window w = window_from_signs({1, 1, -1, -1}, {-1, 1, -1, 1});
    Decomposition d = decompose(w);
    REQUIRE(d.internal_cycles.size() == 1);
    CHECK(d.internal_cycles[0] == std::vector<Site>{2, 3});
    REQUIRE(d.boundary_paths.size() == 1);
    const BoundaryPath& p = d.boundary_paths[0];
    CHECK(p.vertices.front() == 4);
    CHECK(p.vertices.back() == 1);
    CHECK(d.sigma == Pairing{1, 0});
}

TEST_CASE("every site appears exactly once across cycles and paths") {
    Rng rng(99);
    for (int rep = 0; rep < 300; ++rep) {
        const std::int64_t n = static_cast<std::int64_t>(rng.below(200));
        Window w = random_window(rng, n, -17);
        Decomposition d = decompose(w);
        std::set<Site> seen;
        for (const auto& cyc : d.internal_cycles)
            for (Site v : cyc) CHECK(seen.insert(v).second);
        for (const auto& path : d.boundary_paths)
            for (Site v : path.vertices) CHECK(seen.insert(v).second);
        CHECK(seen.size() == static_cast<std::size_t>(n));

        // sigma is a perfect matching on the ends and pairs each path's ends
        CHECK(d.sigma.size() == d.ends_in_cyclic_order.size());
        CHECK(d.boundary_paths.size() * 2 == d.sigma.size());
        for (const auto& path : d.boundary_paths) {
            CHECK(d.sigma[static_cast<std::size_t>(path.end_a)] == path.end_b);
            CHECK(d.sigma[static_cast<std::size_t>(path.end_b)] == path.end_a);
        }
    }
}

TEST_CASE("realised sigma is cyclically non-crossing — pins the end numbering") {
    Rng rng(2024);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::int64_t n = static_cast<std::int64_t>(rng.below(120));
        Window w = random_window(rng, n);
        Decomposition d = decompose(w);
        if (!d.sigma.empty()) CHECK(is_noncrossing(d.sigma, PairOrder::cyclic));
    }
}

TEST_CASE("translation covariance of profiles and decompositions") {
    Rng rng(5150);
    for (int rep = 0; rep < 100; ++rep) {
        const std::int64_t n = static_cast<std::int64_t>(rng.below(60));
        Window w = random_window(rng, n, 0);
        Window shifted = w;
        shifted.lo = w.lo + 1000;
        CHECK(end_profile(w) == end_profile(shifted));
        CHECK(decompose(w).sigma == decompose(shifted).sigma);
    }
}

TEST_CASE("window JSON round trip") {
    Rng rng(31);
    Window w = random_window(rng, 17, -4);
    Window back = window_from_json(window_to_json(w));
    CHECK(back == w);
    CHECK_THROWS_AS(window_from_json("{\"lo\":0,\"sites\":[[2,1]]}"), std::invalid_argument);
}

TEST_CASE("reflect mirrors ends") {
    Rng rng(77);
    for (int rep = 0; rep < 100; ++rep) {
        Window w = random_window(rng, static_cast<std::int64_t>(rng.below(50)));
        EndProfile p = end_profile(w);
        EndProfile q = end_profile(reflect(w));
        CHECK(q.nl_up == p.nr_up);
        CHECK(q.nr_up == p.nl_up);
        CHECK(q.nl_dn == p.nr_dn);
        CHECK(q.nr_dn == p.nl_dn);
    }
}
