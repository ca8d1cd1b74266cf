#include <arcline/realizer.hpp>

#include <arcline/noncrossing.hpp>

#include <algorithm>
#include <cassert>

namespace arcline {

namespace {

enum class EndGroup { ul, ur, lr, ll };

struct EndClassifier {
    std::int64_t a_up, b_up, b_dn;

    EndGroup group(std::int32_t idx) const {
        if (idx < a_up) return EndGroup::ul;
        if (idx < a_up + b_up) return EndGroup::ur;
        if (idx < a_up + b_up + b_dn) return EndGroup::lr;
        return EndGroup::ll;
    }
    bool is_upper(std::int32_t idx) const {
        EndGroup g = group(idx);
        return g == EndGroup::ul || g == EndGroup::ur;
    }
};

// Gadget sign tables.  For a chord between two upper ends, the left site
// hosts the smaller index and the pair is joined by a lower arc; for two
// lower ends the left site hosts the LARGER index (lower ends are
// numbered right to left) and the join is an upper arc.  Side-crossing
// chords collapse to a single site carrying both ends.
struct LayoutBuilder {
    const EndClassifier& cls;
    const Pairing& sigma;
    std::vector<SiteState> out;

    Sign upper_end_sign(std::int32_t idx) const {
        return cls.group(idx) == EndGroup::ul ? Sign::minus : Sign::plus;
    }
    Sign lower_end_sign(std::int32_t idx) const {
        return cls.group(idx) == EndGroup::ll ? Sign::minus : Sign::plus;
    }

    // Chords fully inside [lo, hi), peeled from the window's left edge:
    // upper chords from the lowest index, lower chords from the highest,
    // a side-crossing chord after the lower block that lies beyond it.
    void layout_range(std::int32_t lo, std::int32_t hi) {
        while (lo < hi) {
            if (cls.is_upper(lo)) {
                const std::int32_t j = sigma[static_cast<std::size_t>(lo)];
                assert(j > lo && j < hi);
                if (cls.is_upper(j)) {
                    out.push_back(SiteState{upper_end_sign(lo), Sign::plus});
                    layout_range(lo + 1, j);
                    out.push_back(SiteState{upper_end_sign(j), Sign::minus});
                    lo = j + 1;
                } else {
                    layout_range(j + 1, hi);
                    out.push_back(SiteState{upper_end_sign(lo), lower_end_sign(j)});
                    layout_range(lo + 1, j);
                    return;
                }
            } else {
                const std::int32_t i = sigma[static_cast<std::size_t>(hi - 1)];
                assert(i >= lo && i < hi - 1);
                out.push_back(SiteState{Sign::plus, lower_end_sign(hi - 1)});
                layout_range(i + 1, hi - 1);
                out.push_back(SiteState{Sign::minus, lower_end_sign(i)});
                hi = i;
            }
        }
    }
};

}  // namespace

Window realize(const RealizeRequest& req) {
    const EndProfile& p = req.profile;
    if (p.nl_up < 0 || p.nr_up < 0 || p.nl_dn < 0 || p.nr_dn < 0 || req.n < 0)
        throw std::invalid_argument("negative counts in realize request");
    if ((p.nl_up + p.nr_up) % 2 != req.n % 2)
        throw ParityViolation("upper end count and window length have different parity");
    if ((p.nl_dn + p.nr_dn) % 2 != req.n % 2)
        throw ParityViolation("lower end count and window length have different parity");
    const std::int64_t n_tot = p.total();
    if (n_tot > req.n) throw InsufficientRoom("window too short for requested ends");
    if (static_cast<std::int64_t>(req.sigma.size()) != n_tot)
        throw std::invalid_argument("sigma size does not match profile total");
    if (n_tot > 0 && !is_noncrossing(req.sigma, PairOrder::cyclic))
        throw CrossingSigma("sigma is not cyclically non-crossing");

    EndClassifier cls{p.nl_up, p.nr_up, p.nr_dn};
    LayoutBuilder builder{cls, req.sigma, {}};
    builder.out.reserve(static_cast<std::size_t>(req.n));
    builder.layout_range(0, static_cast<std::int32_t>(n_tot));

    Window w;
    w.lo = req.lo;
    w.sites = std::move(builder.out);
    assert((req.n - static_cast<std::int64_t>(w.sites.size())) % 2 == 0);
    while (static_cast<std::int64_t>(w.sites.size()) < req.n) {
        w.sites.push_back(SiteState{Sign::plus, Sign::plus});
        w.sites.push_back(SiteState{Sign::minus, Sign::minus});
    }

    // The construction is supposed to be exact; verify rather than trust.
    Decomposition d = decompose(w);
    if (end_profile(w) != p || d.sigma != req.sigma)
        throw std::logic_error("realize failed to reproduce the requested matching");
    return w;
}

Window rewire(const Window& window, std::int32_t end_i, std::int32_t end_j) {
    Decomposition d = decompose(window);
    const auto n_ends = static_cast<std::int32_t>(d.ends_in_cyclic_order.size());
    if (end_i < 0 || end_j < 0 || end_i >= n_ends || end_j >= n_ends || end_i == end_j)
        throw std::invalid_argument("rewire needs two distinct valid end indices");
    const std::int32_t a = std::min(end_i, end_j);
    const std::int32_t b = std::max(end_i, end_j);
    if ((b - a - 1) % 2 != 0)
        throw OddGap("ends are separated by an odd number of other ends");

    Pairing sigma(static_cast<std::size_t>(n_ends), -1);
    sigma[static_cast<std::size_t>(a)] = b;
    sigma[static_cast<std::size_t>(b)] = a;
    auto pair_adjacent = [&sigma](std::int32_t from, std::int32_t to) {
        for (std::int32_t k = from; k + 1 < to; k += 2) {
            sigma[static_cast<std::size_t>(k)] = k + 1;
            sigma[static_cast<std::size_t>(k + 1)] = k;
        }
    };
    pair_adjacent(a + 1, b);  // inner gap
    // Outer gap, wrapping past the cut: nearest-neighbour nesting pairs
    // b+1 with b+2, ..., and the wrap pair if the counts are odd on each
    // side of the cut.
    std::vector<std::int32_t> outer;
    for (std::int32_t k = b + 1; k < n_ends; ++k) outer.push_back(k);
    for (std::int32_t k = 0; k < a; ++k) outer.push_back(k);
    for (std::size_t t = 0; t + 1 < outer.size(); t += 2) {
        sigma[static_cast<std::size_t>(outer[t])] = outer[t + 1];
        sigma[static_cast<std::size_t>(outer[t + 1])] = outer[t];
    }

    RealizeRequest req;
    req.n = window.size();
    req.profile = end_profile(window);
    req.sigma = std::move(sigma);
    req.lo = window.lo;
    return realize(req);
}

namespace {

Window decode_window(std::uint64_t code, std::int64_t n) {
    Window w;
    w.lo = 1;
    w.sites.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        const unsigned digit = static_cast<unsigned>(code & 3u);
        code >>= 2;
        w.sites.push_back(SiteState{(digit & 1u) ? Sign::plus : Sign::minus,
                                    (digit & 2u) ? Sign::plus : Sign::minus});
    }
    return w;
}

std::uint64_t encode_window(const Window& w) {
    std::uint64_t code = 0;
    for (std::size_t k = w.sites.size(); k-- > 0;) {
        unsigned digit = (w.sites[k].upper == Sign::plus ? 1u : 0u) |
                         (w.sites[k].lower == Sign::plus ? 2u : 0u);
        code = (code << 2) | digit;
    }
    return code;
}

}  // namespace

FiniteEnergyReport verify_finite_energy(std::int64_t n, const std::vector<Site>& s_sites,
                                        const OverrideRule& phi, const EventPredicate& event,
                                        std::int64_t max_n) {
    if (n < 0 || n > max_n || n > 30)
        throw EnumerationTooLarge("4^n enumeration capped at n = " + std::to_string(max_n));
    for (std::size_t t = 0; t < s_sites.size(); ++t) {
        if (s_sites[t] < 1 || s_sites[t] > n)
            throw std::invalid_argument("override sites must lie in [1, n]");
        if (t > 0 && s_sites[t] <= s_sites[t - 1])
            throw std::invalid_argument("override sites must be strictly ascending");
    }

    FiniteEnergyReport rep;
    rep.total = 1ull << (2 * n);
    rep.s_size = s_sites.size();
    std::vector<bool> seen(rep.total, false);

    for (std::uint64_t code = 0; code < rep.total; ++code) {
        Window w = decode_window(code, n);
        if (!event(w)) continue;
        ++rep.event_count;

        Window masked = w;
        for (Site s : s_sites) masked.at(s) = SiteState{Sign::plus, Sign::plus};
        std::vector<SiteState> vals = phi(masked);
        if (vals.size() != s_sites.size())
            throw std::invalid_argument("override rule returned wrong number of sites");
        Window modified = w;
        for (std::size_t t = 0; t < s_sites.size(); ++t) modified.at(s_sites[t]) = vals[t];
        seen[encode_window(modified)] = true;
    }
    for (std::uint64_t code = 0; code < rep.total; ++code)
        if (seen[code]) ++rep.modified_count;

    // Exact comparison: |C~| / 4^n >= 4^-|S| |C| / 4^n.
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(rep.modified_count) << (2 * rep.s_size);
    rep.bound_ok = lhs >= rep.event_count;
    return rep;
}

}  // namespace arcline
