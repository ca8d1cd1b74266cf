#include <arcline/core.hpp>

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <optional>

namespace arcline {

MatchResult match_parentheses(const std::vector<Sign>& signs, Half half, Site lo) {
    MatchResult out;
    std::vector<Site> open;  // sites of unclosed openers
    for (std::size_t i = 0; i < signs.size(); ++i) {
        const Site x = lo + static_cast<Site>(i);
        if (signs[i] == Sign::plus) {
            open.push_back(x);
        } else if (!open.empty()) {
            out.arcs.push_back(Arc{open.back(), x, half});
            open.pop_back();
        } else {
            out.left_ends.push_back(DanglingEnd{x, half, Direction::left});
        }
    }
    out.right_ends.reserve(open.size());
    for (Site x : open) out.right_ends.push_back(DanglingEnd{x, half, Direction::right});
    return out;
}

namespace {

// (nL, nR) for one half via the prefix-sum walk.
std::pair<std::int64_t, std::int64_t> closed_form_counts(const Window& w, Half half) {
    std::int64_t s = 0, min_s = 0;
    for (const SiteState& st : w.sites) {
        s += sign_value(st.sign(half));
        min_s = std::min(min_s, s);
    }
    return {-min_s, s - min_s};
}

std::vector<Sign> half_signs(const Window& w, Half half) {
    std::vector<Sign> out;
    out.reserve(w.sites.size());
    for (const SiteState& st : w.sites) out.push_back(st.sign(half));
    return out;
}

}  // namespace

EndProfile end_profile(const Window& window, ProfileMethod method) {
    EndProfile p;
    if (method == ProfileMethod::closed_form) {
        auto [lu, ru] = closed_form_counts(window, Half::upper);
        auto [ld, rd] = closed_form_counts(window, Half::lower);
        p.nl_up = lu;
        p.nr_up = ru;
        p.nl_dn = ld;
        p.nr_dn = rd;
    } else {
        MatchResult up = match_parentheses(half_signs(window, Half::upper), Half::upper, window.lo);
        MatchResult dn = match_parentheses(half_signs(window, Half::lower), Half::lower, window.lo);
        p.nl_up = static_cast<std::int64_t>(up.left_ends.size());
        p.nr_up = static_cast<std::int64_t>(up.right_ends.size());
        p.nl_dn = static_cast<std::int64_t>(dn.left_ends.size());
        p.nr_dn = static_cast<std::int64_t>(dn.right_ends.size());
    }
    return p;
}

std::int64_t sign_walk_range(const std::vector<Sign>& signs) {
    if (signs.empty()) return 0;
    std::int64_t s = 0;
    std::int64_t min_s = 0, max_s = 0;  // over k >= 1
    bool first = true;
    for (Sign g : signs) {
        s += sign_value(g);
        if (first) {
            min_s = max_s = s;
            first = false;
        } else {
            min_s = std::min(min_s, s);
            max_s = std::max(max_s, s);
        }
    }
    return max_s - min_s;
}

namespace {

// Per-site incidence in one half: either the partner site or a dangling
// end index (into the cyclic end numbering).
struct PortMap {
    std::vector<std::optional<Site>> partner;   // arc partner, if any
    std::vector<std::int32_t> end_index;        // -1 if the port is an arc
};

}  // namespace

Decomposition decompose(const Window& window) {
    Decomposition d;
    const std::int64_t n = window.size();
    const Site lo = window.lo;

    MatchResult up = match_parentheses(half_signs(window, Half::upper), Half::upper, lo);
    MatchResult dn = match_parentheses(half_signs(window, Half::lower), Half::lower, lo);

    // Cyclic numbering: UL ascending, UR ascending, LR descending, LL descending.
    d.ends_in_cyclic_order = up.left_ends;
    d.ends_in_cyclic_order.insert(d.ends_in_cyclic_order.end(), up.right_ends.begin(),
                                  up.right_ends.end());
    for (auto it = dn.right_ends.rbegin(); it != dn.right_ends.rend(); ++it)
        d.ends_in_cyclic_order.push_back(*it);
    for (auto it = dn.left_ends.rbegin(); it != dn.left_ends.rend(); ++it)
        d.ends_in_cyclic_order.push_back(*it);

    PortMap ports[2];
    for (PortMap& pm : ports) {
        pm.partner.assign(static_cast<std::size_t>(n), std::nullopt);
        pm.end_index.assign(static_cast<std::size_t>(n), -1);
    }
    auto idx = [lo](Site x) { return static_cast<std::size_t>(x - lo); };
    for (const Arc& a : up.arcs) {
        ports[0].partner[idx(a.left)] = a.right;
        ports[0].partner[idx(a.right)] = a.left;
    }
    for (const Arc& a : dn.arcs) {
        ports[1].partner[idx(a.left)] = a.right;
        ports[1].partner[idx(a.right)] = a.left;
    }
    for (std::size_t e = 0; e < d.ends_in_cyclic_order.size(); ++e) {
        const DanglingEnd& de = d.ends_in_cyclic_order[e];
        ports[de.half == Half::upper ? 0 : 1].end_index[idx(de.site)] =
            static_cast<std::int32_t>(e);
    }

    const std::size_t n_ends = d.ends_in_cyclic_order.size();
    d.sigma.assign(n_ends, -1);
    std::vector<bool> visited(static_cast<std::size_t>(n), false);

    // Boundary paths: walk from each end through alternating halves until
    // another end is reached.  Each path is discovered once.
    for (std::size_t e = 0; e < n_ends; ++e) {
        if (d.sigma[e] >= 0) continue;
        const DanglingEnd& start = d.ends_in_cyclic_order[e];
        BoundaryPath path;
        path.end_a = static_cast<std::int32_t>(e);
        Site x = start.site;
        Half h = other(start.half);  // leave via the opposite port
        path.vertices.push_back(x);
        visited[idx(x)] = true;
        while (true) {
            const PortMap& pm = ports[h == Half::upper ? 0 : 1];
            std::int32_t end_here = pm.end_index[idx(x)];
            if (end_here >= 0) {
                path.end_b = end_here;
                break;
            }
            x = *pm.partner[idx(x)];
            visited[idx(x)] = true;
            path.vertices.push_back(x);
            h = other(h);
        }
        d.sigma[e] = path.end_b;
        d.sigma[static_cast<std::size_t>(path.end_b)] = static_cast<std::int32_t>(e);
        d.boundary_paths.push_back(std::move(path));
    }

    // Remaining sites lie on internal cycles.
    for (Site x0 = lo; x0 < lo + n; ++x0) {
        if (visited[idx(x0)]) continue;
        std::vector<Site> cycle;
        Site x = x0;
        Half h = Half::upper;
        do {
            visited[idx(x)] = true;
            cycle.push_back(x);
            x = *ports[h == Half::upper ? 0 : 1].partner[idx(x)];
            h = other(h);
        } while (x != x0);
        assert(h == Half::upper && cycle.size() % 2 == 0);
        d.internal_cycles.push_back(std::move(cycle));
    }
    return d;
}

std::string window_to_json(const Window& w) {
    nlohmann::ordered_json j;
    j["lo"] = w.lo;
    auto sites = nlohmann::ordered_json::array();
    for (const SiteState& st : w.sites)
        sites.push_back({sign_value(st.upper), sign_value(st.lower)});
    j["sites"] = std::move(sites);
    return j.dump();
}

Window window_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Window w;
    w.lo = j.at("lo").get<Site>();
    for (const auto& pair : j.at("sites")) {
        if (pair.size() != 2) throw std::invalid_argument("site entry must be [up, dn]");
        w.sites.push_back(SiteState{sign_from_int(pair[0].get<int>()),
                                    sign_from_int(pair[1].get<int>())});
    }
    return w;
}

std::string decomposition_to_json(const Decomposition& d) {
    nlohmann::ordered_json j;
    j["internal_cycles"] = d.internal_cycles;
    auto paths = nlohmann::ordered_json::array();
    for (const BoundaryPath& p : d.boundary_paths) {
        // end indices reported 1-based, matching the sigma convention
        paths.push_back({{"vertices", p.vertices},
                         {"end_a", p.end_a + 1},
                         {"end_b", p.end_b + 1}});
    }
    j["boundary_paths"] = std::move(paths);
    auto ends = nlohmann::ordered_json::array();
    for (const DanglingEnd& e : d.ends_in_cyclic_order) {
        ends.push_back({{"site", e.site},
                        {"half", e.half == Half::upper ? "upper" : "lower"},
                        {"direction", e.direction == Direction::left ? "left" : "right"}});
    }
    j["ends_in_cyclic_order"] = std::move(ends);
    auto sigma = nlohmann::ordered_json::array();
    for (std::int32_t p : d.sigma) sigma.push_back(p + 1);
    j["sigma"] = std::move(sigma);
    return j.dump();
}

}  // namespace arcline
