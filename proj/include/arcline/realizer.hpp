// Constructive inverse problems: build a window realising a prescribed
// end profile and boundary matching, rewire which ends a window pairs,
// and verify the finite-energy bound by exhaustive enumeration.
#pragma once

#include <arcline/core.hpp>
#include <arcline/errors.hpp>
#include <arcline/types.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace arcline {

struct RealizeRequest {
    std::int64_t n = 0;       // window length
    EndProfile profile;       // target end counts
    Pairing sigma;            // boundary matching on profile.total() ends
    Site lo = 1;              // where the window starts
};

// Builds a window of length n with the requested end profile whose
// decomposition realises sigma under the cyclic end numbering.  Each
// sigma chord becomes a one- or two-site gadget (side-to-side paths use
// one site, every other chord two), placed left to right by peeling the
// chord diagram from the left edge of the window; leftover space is
// filled with length-two loops.
//
// Throws ParityViolation, InsufficientRoom or CrossingSigma when the
// request is infeasible.
Window realize(const RealizeRequest& req);

// Rebuilds `window` so that its end profile is unchanged but the
// realised matching pairs ends i and j (0-based cyclic indices); the
// remaining ends of each gap are paired by nearest-neighbour nesting.
// Requires both cyclic gaps between i and j to contain an even number of
// other ends (throws OddGap otherwise).
Window rewire(const Window& window, std::int32_t end_i, std::int32_t end_j);

// Assignment of fixed states to a set of sites.
struct LocalOverride {
    std::vector<Site> sites;          // the set S, ascending
    std::vector<SiteState> values;    // one per site of S
};

// Rule computing the override from the configuration outside S.  The
// window handed to the rule has the S-sites masked to (+1,+1), so the
// rule cannot depend on them.
using OverrideRule = std::function<std::vector<SiteState>(const Window&)>;
using EventPredicate = std::function<bool(const Window&)>;

struct FiniteEnergyReport {
    std::uint64_t event_count = 0;     // |C|
    std::uint64_t modified_count = 0;  // |C~| (distinct modified configurations)
    std::uint64_t total = 0;           // 4^N
    std::uint64_t s_size = 0;          // |S|
    bool bound_ok = false;             // |C~| * 4^|S| >= |C|, i.e. P(C~) >= 4^-|S| P(C)

    double p_event() const { return static_cast<double>(event_count) / static_cast<double>(total); }
    double p_modified() const {
        return static_cast<double>(modified_count) / static_cast<double>(total);
    }
};

// Exhaustively enumerates all 4^n windows on [1, n] with uniform weight
// and checks P(C~) >= 4^-|S| P(C) where C~ = {omega~ : omega in C} and
// omega~ equals phi(omega restricted outside S) on S and omega
// elsewhere.  All probabilities are exact dyadic rationals (integer
// counts over 4^n), so the comparison is exact.  n is capped (default 10)
// to keep 4^n enumerable.
FiniteEnergyReport verify_finite_energy(std::int64_t n, const std::vector<Site>& s_sites,
                                        const OverrideRule& phi, const EventPredicate& event,
                                        std::int64_t max_n = 10);

}  // namespace arcline
