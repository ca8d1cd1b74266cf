#include <arcline/stats.hpp>

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace arcline {

namespace {

void run_sharded(std::uint32_t workers, std::size_t jobs,
                 const std::function<void(std::size_t)>& job) {
    if (workers <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) job(i);
        return;
    }
    workers = std::min<std::uint32_t>(workers, static_cast<std::uint32_t>(jobs));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t s = 0; s < workers; ++s) {
        pool.emplace_back([&, s] {
            for (std::size_t i = s; i < jobs; i += workers) job(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n == 0) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)))};
}

}  // namespace

DensityEstimate circle_density_series(std::uint64_t kmax) {
    // a_k = c_k 4^-(k+1) with a_0 = 1/4, a_{k+1} = a_k (2k+1) / (2(k+2)).
    double a = 0.25;
    double sum = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        sum += static_cast<double>(2 * k + 2) * a * a;
        a *= static_cast<double>(2 * k + 1) / static_cast<double>(2 * (k + 2));
    }
    DensityEstimate est;
    est.value = sum;
    est.stderr_ = 0.0;
    est.n_samples = kmax + 1;
    est.method = "series";
    est.truncation = kmax;
    return est;
}

double circle_density_tail_bound(std::uint64_t kmax) {
    return 1.0 / (8.0 * std::numbers::pi * static_cast<double>(std::max<std::uint64_t>(kmax, 1)));
}

std::pair<std::uint64_t, std::uint64_t> circle_coverage(const Window& w, std::int64_t margin) {
    const std::int64_t n = w.size();
    if (margin < 0 || n <= 2 * margin)
        throw std::invalid_argument("window must be longer than twice the margin");

    // Relative partner indices per half, -1 for dangling.
    auto partners = [&](Half half) {
        std::vector<std::int64_t> p(static_cast<std::size_t>(n), -1);
        std::vector<std::int64_t> open;
        for (std::int64_t i = 0; i < n; ++i) {
            if (w.sites[static_cast<std::size_t>(i)].sign(half) == Sign::plus) {
                open.push_back(i);
            } else if (!open.empty()) {
                p[static_cast<std::size_t>(i)] = open.back();
                p[static_cast<std::size_t>(open.back())] = i;
                open.pop_back();
            }
        }
        return p;
    };
    const std::vector<std::int64_t> up = partners(Half::upper);
    const std::vector<std::int64_t> dn = partners(Half::lower);

    const std::int64_t int_lo = margin, int_hi = n - margin - 1;
    std::uint64_t covered = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t j = up[static_cast<std::size_t>(i)];
        if (j <= i || dn[static_cast<std::size_t>(i)] != j) continue;
        const std::int64_t a = std::max(i, int_lo);
        const std::int64_t b = std::min(j, int_hi);
        if (b >= a) covered += static_cast<std::uint64_t>(b - a + 1);
    }
    return {covered, static_cast<std::uint64_t>(int_hi - int_lo + 1)};
}

DensityEstimate circle_density_mc(const std::vector<std::uint64_t>& seeds,
                                  std::int64_t window_len, std::int64_t margin,
                                  std::uint32_t workers) {
    if (seeds.empty()) throw std::invalid_argument("at least one seed required");
    if (window_len < 2) throw std::invalid_argument("window_len must be >= 2");
    std::vector<double> densities(seeds.size(), 0.0);
    run_sharded(workers, seeds.size(), [&](std::size_t i) {
        LazyLine env(seeds[i]);
        Window w = materialize(env, 0, window_len);
        auto [covered, slots] = circle_coverage(w, margin);
        densities[i] = static_cast<double>(covered) / static_cast<double>(slots);
    });
    auto [mean, se] = mean_stderr(densities);
    DensityEstimate est;
    est.value = mean;
    est.stderr_ = se;
    est.n_samples = seeds.size();
    est.method = "monte_carlo";
    return est;
}

double arc_length_pmf(std::uint64_t k) {
    // c_k 2^-(2k+1) with the same ratio recurrence as the series terms.
    double p = 0.5;
    for (std::uint64_t i = 0; i < k; ++i)
        p *= static_cast<double>(2 * i + 1) / static_cast<double>(2 * (i + 2));
    return p;
}

PartnerDistanceHistogram partner_distance_histogram(std::uint64_t seed, std::uint64_t n_queries,
                                                    std::uint64_t k_max, std::int64_t stride) {
    PartnerDistanceHistogram h;
    h.counts.assign(k_max + 1, 0);
    h.n_queries = n_queries;
    LazyLine env(seed);
    const Budget budget{10000, 20000};
    for (std::uint64_t q = 0; q < n_queries; ++q) {
        const Site x = static_cast<Site>(q) * stride;
        PartnerResult pr = partner(env, x, Half::upper, budget);
        if (pr.truncated()) {
            ++h.truncated;
            continue;
        }
        const std::int64_t d = std::abs(*pr.partner - x);
        assert(d % 2 == 1);
        const std::uint64_t k = static_cast<std::uint64_t>((d - 1) / 2);
        if (k <= k_max) ++h.counts[k];
    }
    return h;
}

std::vector<BoundaryGrowthRow> boundary_growth(const std::vector<std::int64_t>& window_lengths,
                                               const std::vector<std::uint64_t>& seeds,
                                               std::uint32_t workers) {
    for (std::int64_t n : window_lengths)
        if (n < 1) throw std::invalid_argument("window lengths must be positive");
    if (seeds.empty()) throw std::invalid_argument("at least one seed required");

    struct Sample {
        std::int64_t n_tot;
        std::int64_t range;
    };
    std::vector<std::vector<Sample>> samples(window_lengths.size());
    for (auto& v : samples) v.resize(seeds.size());

    const std::size_t jobs = window_lengths.size() * seeds.size();
    run_sharded(workers, jobs, [&](std::size_t idx) {
        const std::size_t li = idx / seeds.size();
        const std::size_t si = idx % seeds.size();
        LazyLine env(seeds[si]);
        Window w = materialize(env, 0, window_lengths[li]);
        EndProfile p = end_profile(w, ProfileMethod::closed_form);
        std::vector<Sign> up, dn;
        up.reserve(w.sites.size());
        dn.reserve(w.sites.size());
        for (const SiteState& st : w.sites) {
            up.push_back(st.upper);
            dn.push_back(st.lower);
        }
        samples[li][si] = Sample{p.total(), sign_walk_range(up) + sign_walk_range(dn)};
    });

    std::vector<BoundaryGrowthRow> rows;
    rows.reserve(window_lengths.size());
    for (std::size_t li = 0; li < window_lengths.size(); ++li) {
        BoundaryGrowthRow r;
        r.window_len = window_lengths[li];
        r.min_n_tot = samples[li][0].n_tot;
        r.max_n_tot = samples[li][0].n_tot;
        double sum = 0.0, range_sum = 0.0;
        for (const Sample& s : samples[li]) {
            sum += static_cast<double>(s.n_tot);
            range_sum += static_cast<double>(s.range);
            r.min_n_tot = std::min(r.min_n_tot, s.n_tot);
            r.max_n_tot = std::max(r.max_n_tot, s.n_tot);
        }
        r.mean_n_tot = sum / static_cast<double>(seeds.size());
        r.mean_ratio = r.mean_n_tot / static_cast<double>(r.window_len);
        r.mean_walk_range = range_sum / static_cast<double>(seeds.size());
        rows.push_back(r);
    }
    return rows;
}

namespace {

// Traced clusters, merged when their supports overlap.
class ClusterRegistry {
  public:
    ClusterRegistry(const Environment& env, const Budget& budget, Site win_lo, Site win_hi)
        : env_(env), budget_(budget), win_lo_(win_lo), win_hi_(win_hi) {}

    std::int32_t ensure(Site x) {
        auto it = site_to_id_.find(x);
        if (it != site_to_id_.end()) return find(it->second);
        ClusterTrace t = trace_cluster(env_, x, budget_);
        const std::int32_t id = static_cast<std::int32_t>(parent_.size());
        parent_.push_back(id);
        escaping_.push_back(t.status == TraceStatus::truncated);
        meets_window_.push_back(false);
        support_.emplace_back();
        std::int32_t root = id;
        for (Site v : t.vertices) {
            auto [vit, inserted] = site_to_id_.try_emplace(v, root);
            if (!inserted) {
                root = merge(root, find(vit->second));
            } else {
                support_[static_cast<std::size_t>(root)].insert(v);
            }
            if (v >= win_lo_ && v <= win_hi_) meets_window_[static_cast<std::size_t>(root)] = true;
        }
        return find(root);
    }

    bool escaping(std::int32_t root) const { return escaping_[static_cast<std::size_t>(root)]; }

    // Exact distance from x to the traced support when it is <= 3, else -1.
    std::int64_t distance_within_3(std::int32_t root, Site x) const {
        const auto& sup = support_[static_cast<std::size_t>(root)];
        for (std::int64_t d = 0; d <= 3; ++d) {
            if (sup.count(x - d) || sup.count(x + d)) return d;
        }
        return -1;
    }

    std::uint64_t escaping_meeting_window() const {
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            if (parent_[i] == static_cast<std::int32_t>(i) && escaping_[i] && meets_window_[i])
                ++n;
        }
        return n;
    }

    std::int32_t find(std::int32_t v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }

  private:
    std::int32_t merge(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        auto& sa = support_[static_cast<std::size_t>(a)];
        auto& sb = support_[static_cast<std::size_t>(b)];
        if (sa.size() < sb.size()) std::swap(a, b);
        auto& big = support_[static_cast<std::size_t>(a)];
        auto& small = support_[static_cast<std::size_t>(b)];
        big.insert(small.begin(), small.end());
        small.clear();
        parent_[static_cast<std::size_t>(b)] = a;
        escaping_[static_cast<std::size_t>(a)] =
            escaping_[static_cast<std::size_t>(a)] || escaping_[static_cast<std::size_t>(b)];
        meets_window_[static_cast<std::size_t>(a)] =
            meets_window_[static_cast<std::size_t>(a)] || meets_window_[static_cast<std::size_t>(b)];
        return a;
    }

    const Environment& env_;
    Budget budget_;
    Site win_lo_, win_hi_;
    std::unordered_map<Site, std::int32_t> site_to_id_;
    std::vector<std::int32_t> parent_;
    std::vector<char> escaping_;
    std::vector<char> meets_window_;
    std::vector<std::unordered_set<Site>> support_;
};

}  // namespace

TrifurcationReport trifurcation_scan(const Environment& env, Site window_lo, Site window_hi,
                                     const Budget& budget) {
    if (window_lo > window_hi) throw std::invalid_argument("empty scan window");
    TrifurcationReport rep;
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    rep.budget = budget;

    const std::int64_t bound = budget.max_halfwidth;
    const Site region_lo = window_lo - bound;
    const Site region_hi = window_hi + bound;
    const std::int64_t region_n = region_hi - region_lo + 1;

    // Region-internal arcs per half (relative partner index, -1 outside).
    auto region_partners = [&](Half half) {
        std::vector<std::int64_t> p(static_cast<std::size_t>(region_n), -1);
        std::vector<std::int64_t> open;
        for (std::int64_t i = 0; i < region_n; ++i) {
            if (env.site(region_lo + i).sign(half) == Sign::plus) {
                open.push_back(i);
            } else if (!open.empty()) {
                p[static_cast<std::size_t>(i)] = open.back();
                p[static_cast<std::size_t>(open.back())] = i;
                open.pop_back();
            }
        }
        return p;
    };
    const std::vector<std::int64_t> region_up = region_partners(Half::upper);
    const std::vector<std::int64_t> region_dn = region_partners(Half::lower);

    ClusterRegistry registry(env, budget, window_lo, window_hi);

    // Sweep with per-half stacks of currently spanning arcs (z, y).
    // Iterating a stack from the top enumerates spanning arcs of the
    // current site by increasing right endpoint, which is exactly the
    // order of the straddling-cluster scan.
    struct Span {
        Site z, y;
    };
    std::vector<Span> stack_up, stack_dn;

    // First escaping straddler over x in scan order; candidates whose
    // right endpoint lies beyond x + bound are out of scan reach.
    auto first_escaping = [&](const std::vector<Span>& stack, Site x) -> std::int32_t {
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            if (it->z >= x) continue;
            if (it->y > x + bound) break;  // outer arcs only get wider
            std::int32_t root = registry.ensure(it->z);
            if (registry.escaping(root)) return root;
        }
        return -1;
    };

    for (Site x = region_lo; x <= region_hi; ++x) {
        const std::int64_t rel = x - region_lo;
        // Arcs closing here stop spanning.
        if (!stack_up.empty() && stack_up.back().y == x) stack_up.pop_back();
        if (!stack_dn.empty() && stack_dn.back().y == x) stack_dn.pop_back();

        if (x >= window_lo && x <= window_hi) {
            const SiteState st = env.site(x);
            const std::int32_t own = registry.ensure(x);
            if (st.upper == st.lower && registry.escaping(own)) {
                TrifurcationAudit a;
                a.site = x;
                a.pattern_ok = true;
                a.own_cluster_escapes = true;
                const std::int32_t up_root = first_escaping(stack_up, x);
                const std::int32_t dn_root = first_escaping(stack_dn, x);
                a.upper_straddler_found = up_root >= 0;
                a.lower_straddler_found = dn_root >= 0;
                if (up_root >= 0) a.upper_distance = registry.distance_within_3(up_root, x);
                if (dn_root >= 0) a.lower_distance = registry.distance_within_3(dn_root, x);
                a.distances_ok = a.upper_distance >= 0 && a.lower_distance >= 0;
                a.all_distinct = up_root >= 0 && dn_root >= 0 && up_root != dn_root &&
                                 up_root != own && dn_root != own;
                a.qualified = a.pattern_ok && a.own_cluster_escapes && a.upper_straddler_found &&
                              a.lower_straddler_found && a.distances_ok && a.all_distinct;
                if (a.qualified) {
                    rep.points.push_back(x);
                    rep.audit.push_back(a);
                }
            }
        }

        // Arcs opening here span sites strictly to the right.
        const std::int64_t uy = region_up[static_cast<std::size_t>(rel)];
        if (uy > rel) stack_up.push_back(Span{x, region_lo + uy});
        const std::int64_t dy = region_dn[static_cast<std::size_t>(rel)];
        if (dy > rel) stack_dn.push_back(Span{x, region_lo + dy});
    }

    rep.escaping_cluster_count = registry.escaping_meeting_window();
    rep.counting_bound_ok =
        static_cast<std::uint64_t>(rep.points.size()) <= 2 + rep.escaping_cluster_count;
    return rep;
}

std::string trifurcation_report_to_json(const TrifurcationReport& r) {
    nlohmann::ordered_json j;
    j["window"] = {r.window_lo, r.window_hi};
    j["budget"] = {{"max_steps", r.budget.max_steps}, {"max_halfwidth", r.budget.max_halfwidth}};
    j["points"] = r.points;
    auto audits = nlohmann::ordered_json::array();
    for (const TrifurcationAudit& a : r.audit) {
        audits.push_back({{"site", a.site},
                          {"pattern_ok", a.pattern_ok},
                          {"own_cluster_escapes", a.own_cluster_escapes},
                          {"upper_straddler_found", a.upper_straddler_found},
                          {"lower_straddler_found", a.lower_straddler_found},
                          {"upper_distance", a.upper_distance},
                          {"lower_distance", a.lower_distance},
                          {"distances_ok", a.distances_ok},
                          {"all_distinct", a.all_distinct},
                          {"qualified", a.qualified}});
    }
    j["audit"] = std::move(audits);
    j["escaping_cluster_count"] = r.escaping_cluster_count;
    j["counting_bound_ok"] = r.counting_bound_ok;
    return j.dump();
}

ClosureReport closure_frequencies(std::uint64_t seed_base, std::uint64_t n_seeds,
                                  const Budget& budget, std::uint32_t workers) {
    ClosureReport rep;
    rep.n_seeds = n_seeds;
    rep.budget = budget;
    std::vector<std::int64_t> lengths(n_seeds, -1);
    run_sharded(workers, n_seeds, [&](std::size_t i) {
        LazyLine env(seed_base + i);
        ClusterTrace t = trace_cluster(env, 0, budget);
        if (t.status == TraceStatus::closed_cycle) lengths[i] = t.site_count();
    });
    for (std::int64_t len : lengths) {
        if (len >= 0) {
            ++rep.closed;
            rep.closed_lengths.push_back(len);
        } else {
            ++rep.truncated;
        }
    }
    rep.truncated_fraction =
        n_seeds == 0 ? 0.0 : static_cast<double>(rep.truncated) / static_cast<double>(n_seeds);
    return rep;
}

}  // namespace arcline
