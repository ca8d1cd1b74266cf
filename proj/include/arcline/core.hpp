// Deterministic combinatorics of finite windows: parenthesis matching,
// end profiles, component decomposition and the boundary matching a
// window realises on its dangling ends.
#pragma once

#include <arcline/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace arcline {

struct MatchResult {
    std::vector<Arc> arcs;                 // in closing order
    std::vector<DanglingEnd> left_ends;    // site ascending
    std::vector<DanglingEnd> right_ends;   // site ascending
};

// Stack pairing of a sign sequence: a -1 closes the nearest unclosed +1
// to its left.  Unmatched closers become left ends, unmatched openers
// right ends.  `lo` is the absolute site of the first sign.
MatchResult match_parentheses(const std::vector<Sign>& signs, Half half, Site lo = 1);

enum class ProfileMethod { stack, closed_form };

// Dangling-end counts of a window.  Both methods agree exactly; the
// closed form evaluates, per half, nL = -min_{0<=k<=N} S_k and
// nR = S_N - min_{0<=k<=N} S_k where S is the prefix sum of the signs.
EndProfile end_profile(const Window& window, ProfileMethod method = ProfileMethod::closed_form);

// max_{1<=k<=N} S_k - min_{1<=k<=N} S_k of the prefix-sum walk (0 for an
// empty window).  Differs from nL + nR by O(1); reported alongside end
// counts for diagnostics.
std::int64_t sign_walk_range(const std::vector<Sign>& signs);

struct BoundaryPath {
    std::vector<Site> vertices;  // walk order, from end_a's site to end_b's site
    std::int32_t end_a;          // cyclic end indices (0-based)
    std::int32_t end_b;
};

// Connected components of a window: internal cycles and end-to-end
// boundary paths, plus the non-crossing matching sigma the window
// realises on its cyclically ordered ends.
//
// Cyclic end numbering: upper-left ends by site ascending, then
// upper-right by site ascending, then lower-right by site descending,
// then lower-left by site descending.
struct Decomposition {
    std::vector<std::vector<Site>> internal_cycles;
    std::vector<BoundaryPath> boundary_paths;
    std::vector<DanglingEnd> ends_in_cyclic_order;
    Pairing sigma;  // involution on end indices
};

Decomposition decompose(const Window& window);

// Window JSON: {"lo": int, "sites": [[s_up, s_dn], ...]} with s in {1,-1}.
std::string window_to_json(const Window& w);
Window window_from_json(const std::string& text);

std::string decomposition_to_json(const Decomposition& d);

}  // namespace arcline
