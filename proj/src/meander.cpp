#include <arcline/meander.hpp>

#include <arcline/rng.hpp>

#include <numeric>
#include <thread>
#include <vector>

namespace arcline {

namespace {

std::uint64_t cycles_of_composition(const Pairing& upper, const Pairing& lower) {
    const std::size_t m = upper.size();
    std::vector<bool> seen(m, false);
    std::uint64_t cycles = 0;
    for (std::size_t start = 0; start < m; ++start) {
        if (seen[start]) continue;
        ++cycles;
        std::size_t v = start;
        while (!seen[v]) {
            seen[v] = true;
            v = static_cast<std::size_t>(
                lower[static_cast<std::size_t>(upper[v])]);
        }
    }
    return cycles;
}

struct UnionFind {
    std::vector<std::int32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
};

std::uint64_t components_union_find(const Pairing& upper, const Pairing& lower) {
    const std::size_t m = upper.size();
    UnionFind uf(m);
    for (std::size_t v = 0; v < m; ++v) {
        uf.unite(static_cast<std::int32_t>(v), upper[v]);
        uf.unite(static_cast<std::int32_t>(v), lower[v]);
    }
    std::uint64_t roots = 0;
    for (std::size_t v = 0; v < m; ++v)
        if (uf.find(static_cast<std::int32_t>(v)) == static_cast<std::int32_t>(v)) ++roots;
    return roots;
}

}  // namespace

std::uint64_t component_count(const Pairing& upper, const Pairing& lower,
                              ComponentMethod method) {
    if (upper.size() != lower.size())
        throw SizeMismatch("matchings glue only at equal sizes");
    if (upper.empty()) return 0;
    if (method == ComponentMethod::permutation_cycles)
        return cycles_of_composition(upper, lower) / 2;
    return components_union_find(upper, lower);
}

MeanderDiagram glue(const Pairing& upper, const Pairing& lower, ComponentMethod method) {
    MeanderDiagram d;
    d.order = static_cast<std::uint32_t>(upper.size() / 2);
    d.upper = upper;
    d.lower = lower;
    d.component_count = component_count(upper, lower, method);
    d.connected = d.component_count == 1;
    return d;
}

std::uint64_t count_meanders(std::uint32_t order, ComponentMethod method,
                             std::uint32_t max_order, std::uint32_t workers) {
    if (order < 1) throw std::invalid_argument("meander order must be >= 1");
    if (order > max_order)
        throw EnumerationTooLarge("catalan(n)^2 pairs at order " + std::to_string(order) +
                                  "; raise the cap to force");
    const std::vector<Pairing> all = enumerate_ncmatchings(order);
    const std::size_t m = all.size();
    if (workers < 1) workers = 1;
    workers = std::min<std::uint32_t>(workers, static_cast<std::uint32_t>(m));

    std::vector<std::uint64_t> partial(workers, 0);
    auto run = [&](std::uint32_t shard) {
        std::uint64_t local = 0;
        for (std::size_t i = shard; i < m; i += workers)
            for (std::size_t j = 0; j < m; ++j)
                if (component_count(all[i], all[j], method) == 1) ++local;
        partial[shard] = local;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint32_t s = 0; s < workers; ++s) pool.emplace_back(run, s);
        for (auto& th : pool) th.join();
    }
    std::uint64_t total = 0;
    for (std::uint64_t c : partial) total += c;
    return total;
}

MeanderDiagram sample_meander(std::uint32_t order, std::uint64_t seed, std::uint64_t max_tries) {
    if (order < 1) throw std::invalid_argument("meander order must be >= 1");
    if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");
    Rng rng(seed);
    for (std::uint64_t t = 0; t < max_tries; ++t) {
        Pairing upper = sample_ncmatching(order, rng);
        Pairing lower = sample_ncmatching(order, rng);
        MeanderDiagram d = glue(upper, lower);
        if (d.connected) return d;
    }
    throw TriesExhausted("no meander found in " + std::to_string(max_tries) + " tries");
}

}  // namespace arcline
