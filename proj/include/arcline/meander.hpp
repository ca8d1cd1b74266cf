// Gluings of two non-crossing perfect matchings of 2n points: component
// counts, exhaustive meander counting, uniform sampling by rejection.
#pragma once

#include <arcline/errors.hpp>
#include <arcline/noncrossing.hpp>
#include <arcline/types.hpp>

#include <cstdint>

namespace arcline {

struct MeanderDiagram {
    std::uint32_t order = 0;  // n; both matchings cover 2n points
    Pairing upper;
    Pairing lower;
    std::uint64_t component_count = 0;
    bool connected = false;
};

enum class ComponentMethod { permutation_cycles, union_find };

// Components of the union multigraph; every vertex has one upper and one
// lower incidence, so components are alternating cycles.  The two
// methods are independent routes to the same number: cycle counting of
// the permutation lower∘upper (each component contributes two orbits),
// and plain union-find over the edges.
std::uint64_t component_count(const Pairing& upper, const Pairing& lower,
                              ComponentMethod method = ComponentMethod::permutation_cycles);

MeanderDiagram glue(const Pairing& upper, const Pairing& lower,
                    ComponentMethod method = ComponentMethod::permutation_cycles);

// Number of ordered pairs (upper, lower) of non-crossing matchings of 2n
// points whose gluing is connected.  Upper/lower roles are
// distinguished, which makes order n count the closed meandric numbers
// 1, 2, 8, 42, 262, 1828, ...  Enumeration cost is catalan(n)^2 pairs;
// orders above `max_order` are rejected unless explicitly raised.
std::uint64_t count_meanders(std::uint32_t order,
                             ComponentMethod method = ComponentMethod::permutation_cycles,
                             std::uint32_t max_order = 10, std::uint32_t workers = 1);

// Uniform over meanders of the given order: rejection-samples
// independent uniform matching pairs until the gluing is connected.
MeanderDiagram sample_meander(std::uint32_t order, std::uint64_t seed, std::uint64_t max_tries);

}  // namespace arcline
