// Deterministic access to configurations on all of Z, and the budgeted
// walks over them: partner queries, cluster traces, straddling-cluster
// scans.
//
// Partners exist almost surely but searches have heavy-tailed cost, so
// every walk carries a Budget and reports Truncated instead of looping
// forever.  "Infinite" is everywhere operationalised as "did not close
// within budget"; results always carry the budget that produced them.
#pragma once

#include <arcline/types.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arcline {

// Site provider for the whole integer line.  Implementations must be
// pure: repeated queries at the same site return the same state.
class Environment {
  public:
    virtual ~Environment() = default;
    virtual SiteState site(Site x) const = 0;
};

// The i.i.d.-uniform configuration under a fixed seed.  site(x) reads
// two bits of splitmix64(seed + x * golden), so it is random-access and
// trivially safe for concurrent queries.  Parallel experiments should
// still use one seed per worker.
class LazyLine final : public Environment {
  public:
    explicit LazyLine(std::uint64_t seed) : seed_(seed) {}

    SiteState site(Site x) const override;
    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

// A frozen window extended to all of Z.  Outside the window, sites come
// from per-side fills: either a constant state or a cell tiled away from
// the boundary.
class WindowEnvironment final : public Environment {
  public:
    WindowEnvironment(Window window, SiteState left_fill, SiteState right_fill);
    WindowEnvironment(Window window, Window left_cell, Window right_cell);

    SiteState site(Site x) const override;
    const Window& window() const { return window_; }

  private:
    Window window_;
    std::vector<SiteState> left_cell_;   // tiled leftward from lo-1
    std::vector<SiteState> right_cell_;  // tiled rightward from hi+1
};

struct Budget {
    std::uint64_t max_steps = 0;       // walk steps (unit depends on the operation)
    std::int64_t max_halfwidth = 0;    // spatial bound around the query origin

    static Budget of(std::uint64_t steps, std::int64_t halfwidth) {
        return Budget{steps, halfwidth};
    }
};

// Result of a partner search: the matched site, or truncation evidence.
struct PartnerResult {
    std::optional<Site> partner;
    std::uint64_t steps_used = 0;  // sites examined

    bool truncated() const { return !partner.has_value(); }
};

// First-return search for the partner of (x, half).  max_steps bounds
// the number of sites examined; the scan also never leaves
// [x - max_halfwidth, x + max_halfwidth].
PartnerResult partner(const Environment& env, Site x, Half half, const Budget& budget);

enum class TraceStatus { closed_cycle, truncated };

// A walked connected component: a closed cycle, or the budget-limited
// portion of a path through the origin.  For closed cycles the vertex
// list repeats the origin at the end; for truncated traces it runs from
// the deepest backward vertex through the origin to the deepest forward
// vertex.  Edges join consecutive vertices and alternate halves.
struct ClusterTrace {
    Site origin = 0;
    std::vector<Site> vertices;
    std::vector<Arc> edges;
    TraceStatus status = TraceStatus::truncated;
    std::uint64_t steps_used = 0;  // arcs traversed

    std::int64_t site_count() const {
        auto n = static_cast<std::int64_t>(vertices.size());
        return status == TraceStatus::closed_cycle ? n - 1 : n;
    }
    bool contains(Site x) const;
    std::int64_t distance_to(Site x) const;  // min |x - v| over traced vertices
};

// Alternating partner walk from x, first through `first_half`, exploring
// backward as well when the forward walk does not close.  One step = one
// arc traversed; partner scans inside the walk are confined to
// [x - max_halfwidth, x + max_halfwidth].
ClusterTrace trace_cluster(const Environment& env, Site x, const Budget& budget,
                           Half first_half = Half::upper);

// First cluster straddling x in the given half: scans y = x+1, x+2, ...
// for the first y whose half-arc reaches z < x and whose cluster does
// not close within budget, and returns that cluster's trace (walked from
// y, starting through the straddling arc).  Returns nullopt if the scan
// exhausts the halfwidth window.
std::optional<ClusterTrace> straddling_cluster(const Environment& env, Site x, Half half,
                                               const Budget& budget);

// Trace JSON: {"seed": ..., "origin": ..., "status": "closed"|"truncated",
// "length": ..., "vertices": [...]}.  Vertices are omitted when the trace
// has more than `vertex_limit` sites (0 = always include).
std::string trace_to_json(const ClusterTrace& t, std::uint64_t seed,
                          std::uint64_t vertex_limit = 0);

// Materialise env over [lo, lo+n).
Window materialize(const Environment& env, Site lo, std::int64_t n);

}  // namespace arcline
