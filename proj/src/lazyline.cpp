#include <arcline/lazyline.hpp>
#include <arcline/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace arcline {

SiteState LazyLine::site(Site x) const {
    const std::uint64_t bits = site_bits(seed_, x);
    return SiteState{(bits & 1) ? Sign::plus : Sign::minus,
                     (bits & 2) ? Sign::plus : Sign::minus};
}

WindowEnvironment::WindowEnvironment(Window window, SiteState left_fill, SiteState right_fill)
    : window_(std::move(window)), left_cell_{left_fill}, right_cell_{right_fill} {}

WindowEnvironment::WindowEnvironment(Window window, Window left_cell, Window right_cell)
    : window_(std::move(window)),
      left_cell_(std::move(left_cell.sites)),
      right_cell_(std::move(right_cell.sites)) {
    if (left_cell_.empty() || right_cell_.empty())
        throw std::invalid_argument("fill cells must be nonempty");
}

SiteState WindowEnvironment::site(Site x) const {
    if (window_.contains(x)) return window_.at(x);
    if (x > window_.hi()) {
        const auto off = static_cast<std::uint64_t>(x - window_.hi() - 1);
        return right_cell_[off % right_cell_.size()];
    }
    // Cells tile leftward: the cell's last site sits at lo-1.
    const auto off = static_cast<std::uint64_t>(window_.lo - 1 - x);
    const std::size_t len = left_cell_.size();
    return left_cell_[len - 1 - off % len];
}

namespace {

// Shared first-return scan.  The scan never leaves [clamp_lo, clamp_hi]
// and examines at most max_steps sites.
PartnerResult scan_partner(const Environment& env, Site x, Half half, std::uint64_t max_steps,
                           Site clamp_lo, Site clamp_hi) {
    PartnerResult res;
    const Sign s = env.site(x).sign(half);
    const int dir = (s == Sign::plus) ? +1 : -1;
    std::int64_t depth = 1;
    Site y = x;
    while (true) {
        if (res.steps_used >= max_steps) return res;
        y += dir;
        if (y < clamp_lo || y > clamp_hi) return res;
        ++res.steps_used;
        const Sign sy = env.site(y).sign(half);
        // Walking right, an opener deepens; walking left, a closer does.
        depth += (sy == s) ? 1 : -1;
        if (depth == 0) {
            res.partner = y;
            return res;
        }
    }
}

}  // namespace

PartnerResult partner(const Environment& env, Site x, Half half, const Budget& budget) {
    return scan_partner(env, x, half, budget.max_steps, x - budget.max_halfwidth,
                        x + budget.max_halfwidth);
}

bool ClusterTrace::contains(Site x) const {
    return std::find(vertices.begin(), vertices.end(), x) != vertices.end();
}

std::int64_t ClusterTrace::distance_to(Site x) const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (Site v : vertices) best = std::min(best, std::abs(v - x));
    return best;
}

ClusterTrace trace_cluster(const Environment& env, Site x, const Budget& budget,
                           Half first_half) {
    ClusterTrace t;
    t.origin = x;
    const Site clamp_lo = x - budget.max_halfwidth;
    const Site clamp_hi = x + budget.max_halfwidth;

    std::vector<Site> forward{x};
    std::vector<Arc> fwd_edges;
    Half h = first_half;
    Site cur = x;
    bool closed = false;
    while (t.steps_used < budget.max_steps) {
        PartnerResult pr =
            scan_partner(env, cur, h, budget.max_steps, clamp_lo, clamp_hi);
        if (pr.truncated()) break;
        ++t.steps_used;
        Site next = *pr.partner;
        fwd_edges.push_back(Arc{std::min(cur, next), std::max(cur, next), h});
        forward.push_back(next);
        if (next == x) {
            closed = true;
            break;
        }
        cur = next;
        h = other(h);
    }

    if (closed) {
        t.status = TraceStatus::closed_cycle;
        t.vertices = std::move(forward);
        t.edges = std::move(fwd_edges);
        assert(t.vertices.size() % 2 == 1 && t.vertices.front() == t.vertices.back());
        return t;
    }

    // Not closed: also explore backward (through the other port of x)
    // with whatever budget remains.
    std::vector<Site> backward;
    std::vector<Arc> bwd_edges;
    h = other(first_half);
    cur = x;
    while (t.steps_used < budget.max_steps) {
        PartnerResult pr =
            scan_partner(env, cur, h, budget.max_steps, clamp_lo, clamp_hi);
        if (pr.truncated()) break;
        ++t.steps_used;
        Site next = *pr.partner;
        bwd_edges.push_back(Arc{std::min(cur, next), std::max(cur, next), h});
        backward.push_back(next);
        cur = next;
        h = other(h);
    }

    t.status = TraceStatus::truncated;
    t.vertices.reserve(backward.size() + forward.size());
    t.vertices.insert(t.vertices.end(), backward.rbegin(), backward.rend());
    t.vertices.insert(t.vertices.end(), forward.begin(), forward.end());
    t.edges.reserve(bwd_edges.size() + fwd_edges.size());
    t.edges.insert(t.edges.end(), bwd_edges.rbegin(), bwd_edges.rend());
    t.edges.insert(t.edges.end(), fwd_edges.begin(), fwd_edges.end());
    return t;
}

std::optional<ClusterTrace> straddling_cluster(const Environment& env, Site x, Half half,
                                               const Budget& budget) {
    for (Site y = x + 1; y <= x + budget.max_halfwidth; ++y) {
        if (env.site(y).sign(half) != Sign::minus) continue;  // partner would be right of y
        PartnerResult pr = partner(env, y, half, budget);
        if (pr.truncated() || *pr.partner >= x) continue;
        // {z, y} straddles x; check its cluster escapes.  Walking from y
        // through `half` first guarantees the straddling arc is traced.
        ClusterTrace t = trace_cluster(env, y, budget, half);
        if (t.status == TraceStatus::truncated) return t;
    }
    return std::nullopt;
}

std::string trace_to_json(const ClusterTrace& t, std::uint64_t seed, std::uint64_t vertex_limit) {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["origin"] = t.origin;
    j["status"] = t.status == TraceStatus::closed_cycle ? "closed" : "truncated";
    j["length"] = t.site_count();
    j["steps_used"] = t.steps_used;
    if (vertex_limit == 0 || t.vertices.size() <= vertex_limit) j["vertices"] = t.vertices;
    return j.dump();
}

Window materialize(const Environment& env, Site lo, std::int64_t n) {
    Window w;
    w.lo = lo;
    w.sites.reserve(static_cast<std::size_t>(n));
    for (Site x = lo; x < lo + n; ++x) w.sites.push_back(env.site(x));
    return w;
}

}  // namespace arcline
