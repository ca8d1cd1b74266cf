// Quantitative observables: circle density (exact series and Monte
// Carlo), the arc-length law, boundary-end growth, trifurcation scans
// and closure-frequency reports.
#pragma once

#include <arcline/core.hpp>
#include <arcline/lazyline.hpp>
#include <arcline/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace arcline {

struct DensityEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t n_samples = 0;
    std::string method;            // "series" or "monte_carlo"
    std::uint64_t truncation = 0;  // series only: kmax
};

// Expected number of circles (length-2 clusters) covering a fixed
// vertex, summed over spans: sum_{k<=kmax} (2k+2) * (c_k 4^-(k+1))^2.
// Increases to 1/(2*pi); the tail beyond kmax is below 1/(8*pi*kmax).
DensityEstimate circle_density_series(std::uint64_t kmax);

double circle_density_tail_bound(std::uint64_t kmax);

// Coverage count on one window: vertices of [margin-interior] covered by
// circles whose two endpoints both lie inside the window.  Returns
// (covered slots, interior slots).
std::pair<std::uint64_t, std::uint64_t> circle_coverage(const Window& w, std::int64_t margin);

// Monte Carlo estimate across seeds: one window [0, window_len) per
// seed, boundary margin discarded.  stderr is across seeds.
DensityEstimate circle_density_mc(const std::vector<std::uint64_t>& seeds,
                                  std::int64_t window_len, std::int64_t margin = 1000,
                                  std::uint32_t workers = 1);

// P(|partner(x) - x| = 2k+1) = c_k * 2^-(2k+1).
double arc_length_pmf(std::uint64_t k);

// Empirical partner-distance distribution: queries at sites spaced
// `stride` apart under one seed, histogram over k (distance 2k+1), with
// truncated searches counted separately.
struct PartnerDistanceHistogram {
    std::vector<std::uint64_t> counts;  // index k
    std::uint64_t truncated = 0;
    std::uint64_t n_queries = 0;
};
PartnerDistanceHistogram partner_distance_histogram(std::uint64_t seed, std::uint64_t n_queries,
                                                    std::uint64_t k_max, std::int64_t stride = 32);

// Boundary-end growth: exact n_tot per (length, seed) plus the walk
// range diagnostic, aggregated per length.
struct BoundaryGrowthRow {
    std::int64_t window_len = 0;
    double mean_n_tot = 0.0;
    double mean_ratio = 0.0;  // n_tot / N
    std::int64_t min_n_tot = 0;
    std::int64_t max_n_tot = 0;
    double mean_walk_range = 0.0;  // max-min of the two sign walks, summed
};
std::vector<BoundaryGrowthRow> boundary_growth(const std::vector<std::int64_t>& window_lengths,
                                               const std::vector<std::uint64_t>& seeds,
                                               std::uint32_t workers = 1);

// Per-point audit of the trifurcation conditions.  "Infinite" is
// proxied by budget escape; distances use the traced vertex sets.
struct TrifurcationAudit {
    Site site = 0;
    bool pattern_ok = false;        // signs are (+1,+1) or (-1,-1)
    bool own_cluster_escapes = false;
    bool upper_straddler_found = false;
    bool lower_straddler_found = false;
    std::int64_t upper_distance = -1;  // min |site - v| over the straddler's trace
    std::int64_t lower_distance = -1;
    bool distances_ok = false;         // both <= 3
    bool all_distinct = false;         // the three traced supports are pairwise disjoint
    bool qualified = false;            // all of the above
};

struct TrifurcationReport {
    Site window_lo = 0;
    Site window_hi = 0;
    Budget budget;
    std::vector<Site> points;                 // qualifying sites
    std::vector<TrifurcationAudit> audit;     // one entry per qualifying site
    std::uint64_t escaping_cluster_count = 0; // escaping clusters meeting the window
    bool counting_bound_ok = true;            // #points <= 2 + escaping_cluster_count
};

// Scans [window_lo, window_hi] for trifurcation points: sites whose sign
// pair is (+1,+1) or (-1,-1), whose own cluster escapes the budget, and
// whose first upper and lower straddling clusters escape, lie within
// distance 3, and are distinct from each other and from the site's own
// cluster.  Also counts escaping clusters meeting the window (traced
// supports merged when they share sites) and evaluates the counting
// bound #points <= 2 + #escaping, which is reported, not asserted.
TrifurcationReport trifurcation_scan(const Environment& env, Site window_lo, Site window_hi,
                                     const Budget& budget);

std::string trifurcation_report_to_json(const TrifurcationReport& r);

// Exploratory closure statistics: fraction of truncated traces from
// origin 0 across seeds seed_base .. seed_base+n_seeds-1.
struct ClosureReport {
    std::uint64_t n_seeds = 0;
    std::uint64_t closed = 0;
    std::uint64_t truncated = 0;
    Budget budget;
    double truncated_fraction = 0.0;
    std::vector<std::int64_t> closed_lengths;  // cycle length per closed trace
};
ClosureReport closure_frequencies(std::uint64_t seed_base, std::uint64_t n_seeds,
                                  const Budget& budget, std::uint32_t workers = 1);

}  // namespace arcline
