#ifndef TSPLIT_LIFTING_HPP
#define TSPLIT_LIFTING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tsplit/partition.hpp"

namespace tsplit {

/// Find Y with x_i <= y_i <= x_i + c_i and sum(Y) = 2^W, minimizing lambda(Y).
struct LiftingInstance
{
    std::vector<std::int64_t> weights;     // X
    std::vector<std::int64_t> capacities;  // C
    int width = 0;

    int k() const { return static_cast<int>(weights.size()); }
};

using Lifting = std::vector<std::int64_t>;

std::int64_t excess(const LiftingInstance& inst);

/// Capacities in {0,1}: lift the excess bit-lex-largest liftable weights.
/// nullopt iff the instance is infeasible.
std::optional<Lifting> lift_cap01(const LiftingInstance& inst);

/// Capacities in {1,2,3}: three-phase schedule reducing to lift_cap01.
std::optional<Lifting> lift_cap123(const LiftingInstance& inst);

/// All weights zero, arbitrary capacities. The recursive variant exists to
/// cross-check the iterative one; both are optimal.
std::optional<Lifting> lift_one_sided(const std::vector<std::int64_t>& capacities, int width,
                                      bool recursive = false);

}  // namespace tsplit

#endif
