// Basic domain types: signs, sites, windows, arcs, dangling ends.
//
// A configuration assigns to every site x of the integer line a pair of
// signs (upper, lower).  Within each half-plane, +1 opens a parenthesis
// and -1 closes one; pairing parentheses yields a planar perfect matching
// whose arcs live in that half-plane.  A Window is the restriction of a
// configuration to a finite integer interval.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcline {

using Site = std::int64_t;

enum class Sign : std::int8_t { minus = -1, plus = +1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }

inline Sign sign_from_int(int v) {
    if (v == 1) return Sign::plus;
    if (v == -1) return Sign::minus;
    throw std::invalid_argument("sign must be +1 or -1, got " + std::to_string(v));
}

enum class Half : std::uint8_t { upper, lower };

inline Half other(Half h) { return h == Half::upper ? Half::lower : Half::upper; }

enum class Direction : std::uint8_t { left, right };

struct SiteState {
    Sign upper;
    Sign lower;

    Sign sign(Half h) const { return h == Half::upper ? upper : lower; }
    bool operator==(const SiteState&) const = default;
};

// One arc of a half-plane matching.  left < right, the sign at `left` is
// +1 and at `right` is -1, and right - left is odd.
struct Arc {
    Site left;
    Site right;
    Half half;

    bool operator==(const Arc&) const = default;
    bool spans(Site x) const { return left < x && x < right; }
};

// A half-edge of a window site whose partner lies outside the window.
// A left end is an unmatched closer (-1), a right end an unmatched
// opener (+1).
struct DanglingEnd {
    Site site;
    Half half;
    Direction direction;

    bool operator==(const DanglingEnd&) const = default;
};

// Counts of dangling ends of a window, split by half and exit side.
struct EndProfile {
    std::int64_t nl_up = 0;
    std::int64_t nr_up = 0;
    std::int64_t nl_dn = 0;
    std::int64_t nr_dn = 0;

    std::int64_t total() const { return nl_up + nr_up + nl_dn + nr_dn; }
    bool operator==(const EndProfile&) const = default;
};

// Fixed-point-free involution of {0..m-1}, stored as partner indices.
using Pairing = std::vector<std::int32_t>;

// Restriction of a configuration to the interval [lo, lo + size - 1].
struct Window {
    Site lo = 1;
    std::vector<SiteState> sites;

    std::int64_t size() const { return static_cast<std::int64_t>(sites.size()); }
    Site hi() const { return lo + size() - 1; }
    bool contains(Site x) const { return x >= lo && x <= hi(); }

    const SiteState& at(Site x) const { return sites.at(static_cast<std::size_t>(x - lo)); }
    SiteState& at(Site x) { return sites.at(static_cast<std::size_t>(x - lo)); }

    bool operator==(const Window&) const = default;
};

// Mirror image: site x maps to -x, which swaps openers and closers.
inline Window reflect(const Window& w) {
    Window r;
    r.lo = -w.hi();
    r.sites.reserve(w.sites.size());
    for (auto it = w.sites.rbegin(); it != w.sites.rend(); ++it) {
        r.sites.push_back(SiteState{
            it->upper == Sign::plus ? Sign::minus : Sign::plus,
            it->lower == Sign::plus ? Sign::minus : Sign::plus});
    }
    return r;
}

}  // namespace arcline
