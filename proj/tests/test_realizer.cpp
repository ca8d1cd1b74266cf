#include <arcline/core.hpp>
#include <arcline/noncrossing.hpp>
#include <arcline/realizer.hpp>
#include <arcline/rng.hpp>

#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"

using namespace arcline;
using namespace arcline::testutil;

namespace {

RealizeRequest make_request(std::int64_t n, EndProfile p, Pairing sigma, Site lo = 1) {
    RealizeRequest req;
    req.n = n;
    req.profile = p;
    req.sigma = std::move(sigma);
    req.lo = lo;
    return req;
}

// Random profile/sigma pair that satisfies the parity preconditions.
RealizeRequest random_request(Rng& rng, std::int64_t max_n) {
    while (true) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(max_n - 1));
        EndProfile p;
        p.nl_up = static_cast<std::int64_t>(rng.below(4));
        p.nr_up = static_cast<std::int64_t>(rng.below(4));
        p.nl_dn = static_cast<std::int64_t>(rng.below(4));
        p.nr_dn = static_cast<std::int64_t>(rng.below(4));
        if ((p.nl_up + p.nr_up) % 2 != n % 2) continue;
        if ((p.nl_dn + p.nr_dn) % 2 != n % 2) continue;
        if (p.total() > n) continue;
        Pairing sigma = sample_ncmatching(static_cast<std::uint32_t>(p.total() / 2), rng);
        return make_request(n, p, std::move(sigma));
    }
}

}  // namespace

TEST_CASE("realize: empty matching becomes short loops") {
    Window w = realize(make_request(2, EndProfile{0, 0, 0, 0}, {}));
    Decomposition d = decompose(w);
    CHECK(d.internal_cycles.size() == 1);
    CHECK(d.boundary_paths.empty());
    CHECK(end_profile(w).total() == 0);
}

TEST_CASE("realize: documented example round trips") {
    EndProfile p{2, 0, 1, 1};
    Pairing sigma{1, 0, 3, 2};  // {1-2, 3-4}
    Window w = realize(make_request(12, p, sigma));
    CHECK(w.size() == 12);
    CHECK(end_profile(w) == p);
    CHECK(decompose(w).sigma == sigma);
}

TEST_CASE("realize rejects bad requests") {
    // a+ + b+ even but N odd
    CHECK_THROWS_AS(realize(make_request(5, EndProfile{1, 1, 1, 1}, Pairing{1, 0, 3, 2})),
                    ParityViolation);
    // more ends than room
    CHECK_THROWS_AS(realize(make_request(2, EndProfile{2, 2, 0, 0}, Pairing{1, 0, 3, 2})),
                    InsufficientRoom);
    // crossing sigma
    CHECK_THROWS_AS(realize(make_request(6, EndProfile{2, 2, 1, 1}, Pairing{2, 3, 0, 1, 5, 4})),
                    CrossingSigma);
    // malformed sigma size
    CHECK_THROWS_AS(realize(make_request(6, EndProfile{2, 2, 1, 1}, Pairing{1, 0})),
                    std::invalid_argument);
}

TEST_CASE("realize: exhaustive roundtrip over all small profiles and matchings") {
    for (std::int64_t n_tot = 0; n_tot <= 6; n_tot += 2) {
        std::vector<Pairing> sigmas = enumerate_ncmatchings(static_cast<std::uint32_t>(n_tot / 2));
        for (std::int64_t a_up = 0; a_up <= n_tot; ++a_up)
            for (std::int64_t b_up = 0; a_up + b_up <= n_tot; ++b_up)
                for (std::int64_t b_dn = 0; a_up + b_up + b_dn <= n_tot; ++b_dn) {
                    const std::int64_t a_dn = n_tot - a_up - b_up - b_dn;
                    EndProfile p{a_up, b_up, a_dn, b_dn};
                    if ((a_up + b_up) % 2 != (a_dn + b_dn) % 2) {
                        // no N can satisfy both parity constraints
                        CHECK_THROWS_AS(realize(make_request(n_tot, p, sigmas[0])),
                                        ParityViolation);
                        CHECK_THROWS_AS(realize(make_request(n_tot + 1, p, sigmas[0])),
                                        ParityViolation);
                        continue;
                    }
                    std::int64_t n = n_tot;
                    if ((a_up + b_up) % 2 != n % 2) ++n;
                    for (std::int64_t extra : {std::int64_t{0}, std::int64_t{2}}) {
                        for (const Pairing& sigma : sigmas) {
                            Window w = realize(make_request(n + extra, p, sigma, -3));
                            CHECK(w.size() == n + extra);
                            CHECK(end_profile(w) == p);
                            CHECK(decompose(w).sigma == sigma);
                        }
                    }
                }
    }
}

TEST_CASE("realize: 1000 random requests round trip exactly") {
    Rng rng(181818);
    for (int rep = 0; rep < 1000; ++rep) {
        RealizeRequest req = random_request(rng, 40);
        Window w = realize(req);
        CHECK(w.size() == req.n);
        CHECK(end_profile(w) == req.profile);
        CHECK(decompose(w).sigma == req.sigma);
        for (const SiteState& st : w.sites) {
            CHECK((st.upper == Sign::plus || st.upper == Sign::minus));
            CHECK((st.lower == Sign::plus || st.lower == Sign::minus));
        }
    }
}

TEST_CASE("realize golden layout: three nested end bundles") {
    // Frozen layout of the trifurcation witness construction.
    EndProfile p{3, 0, 3, 0};
    Pairing sigma{5, 2, 1, 4, 3, 0};  // {1-6, 2-3, 4-5}
    Window w = realize(make_request(7, p, sigma, 0));
    Window expected = window_from_signs({-1, -1, -1, 1, -1, 1, -1},
                                        {-1, 1, -1, -1, -1, 1, -1}, 0);
    CHECK(w == expected);
}

TEST_CASE("rewire re-pairs ends and preserves the profile") {
    EndProfile p{2, 0, 1, 1};
    Pairing sigma{1, 0, 3, 2};
    Window w = realize(make_request(12, p, sigma));

    Window r = rewire(w, 0, 3);
    CHECK(end_profile(r) == p);
    CHECK(decompose(r).sigma == Pairing{3, 2, 1, 0});

    // one end strictly between on one side
    CHECK_THROWS_AS(rewire(w, 0, 2), OddGap);

    // stable under repetition
    Window r2 = rewire(r, 0, 3);
    CHECK(decompose(r2).sigma == decompose(r).sigma);
}

TEST_CASE("rewire property: random windows, random even-gap pairs") {
    Rng rng(5544);
    int done = 0;
    while (done < 300) {
        RealizeRequest req = random_request(rng, 30);
        const auto n_ends = static_cast<std::int32_t>(req.profile.total());
        if (n_ends < 2) continue;
        Window w = realize(req);
        const auto i = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(n_ends)));
        std::int32_t j = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(n_ends)));
        if (i == j) continue;
        if ((std::abs(i - j) - 1) % 2 != 0) {
            CHECK_THROWS_AS(rewire(w, i, j), OddGap);
        } else {
            Window r = rewire(w, i, j);
            CHECK(end_profile(r) == req.profile);
            Pairing sigma = decompose(r).sigma;
            CHECK(sigma[static_cast<std::size_t>(i)] == j);
            CHECK(is_noncrossing(sigma, PairOrder::cyclic));
        }
        ++done;
    }
}

TEST_CASE("finite energy: empty override set is the identity") {
    auto event = [](const Window& w) { return w.sites[0].upper == Sign::plus; };
    FiniteEnergyReport rep = verify_finite_energy(3, {}, [](const Window&) {
        return std::vector<SiteState>{};
    }, event);
    CHECK(rep.event_count == rep.modified_count);
    CHECK(rep.bound_ok);
}

TEST_CASE("finite energy: cylinder event with one overridden site") {
    const SiteState target{Sign::minus, Sign::plus};
    auto event = [&](const Window& w) { return w.at(3) == target; };
    auto phi = [](const Window&) {
        return std::vector<SiteState>{SiteState{Sign::plus, Sign::plus}};
    };
    FiniteEnergyReport rep = verify_finite_energy(4, {2}, phi, event);
    CHECK(rep.total == 256);
    CHECK(rep.event_count == 64);    // exactly 1/4 of configurations
    CHECK(rep.modified_count == 16); // site 2 pinned, site 3 pinned, two free
    CHECK(rep.bound_ok);
    CHECK(rep.p_event() == doctest::Approx(0.25));
    CHECK(rep.p_modified() == doctest::Approx(0.0625));
}

TEST_CASE("finite energy: full event achieves equality") {
    auto phi = [](const Window& w) {
        // depends on the configuration outside S
        const Sign s = w.at(1).upper;
        return std::vector<SiteState>{SiteState{s, s}, SiteState{Sign::minus, s}};
    };
    FiniteEnergyReport rep =
        verify_finite_energy(4, {2, 4}, phi, [](const Window&) { return true; });
    CHECK(rep.event_count == 256);
    CHECK(rep.modified_count == 16);  // exactly 4^(n-|S|)
    const double lhs = rep.p_modified();
    const double rhs = rep.p_event() / 16.0;  // 4^-|S| P(C)
    CHECK(lhs == doctest::Approx(rhs));
    CHECK(rep.bound_ok);
}

TEST_CASE("finite energy caps the enumeration") {
    CHECK_THROWS_AS(verify_finite_energy(11, {},
                                         [](const Window&) { return std::vector<SiteState>{}; },
                                         [](const Window&) { return true; }),
                    EnumerationTooLarge);
}

TEST_CASE("finite energy: masking hides the override sites from phi") {
    // phi echoes what it sees at site 2; the mask forces (+1,+1).
    auto phi = [](const Window& w) { return std::vector<SiteState>{w.at(2)}; };
    FiniteEnergyReport rep =
        verify_finite_energy(3, {2}, phi, [](const Window&) { return true; });
    // every modified configuration has site 2 = (+1,+1)
    CHECK(rep.modified_count == 16);
    CHECK(rep.bound_ok);
}
