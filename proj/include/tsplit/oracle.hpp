#ifndef TSPLIT_ORACLE_HPP
#define TSPLIT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "tsplit/approximator.hpp"
#include "tsplit/lifting.hpp"

namespace tsplit {

struct OracleBudget
{
    std::uint64_t max_states = 50'000'000;
};

/// Enumerate every composition of 2^W into k non-negative parts; keep the
/// minimum-distance one among those with lambda <= n. Throws if the
/// composition count exceeds the budget.
ApproxResult brute_force_closest(const Partition& target, int n, DistanceKind kind,
                                 const OracleBudget& budget = {});
ApproxResult brute_force_closest(const RealPartition& target, int n, DistanceKind kind,
                                 const OracleBudget& budget = {});

/// Enumerate the whole box; nullopt iff no Y in the box sums to 2^W.
std::optional<Lifting> brute_force_lifting(const LiftingInstance& inst,
                                           const OracleBudget& budget = {});

/// Shortest move sequence to zero by BFS over bounded integer vectors, fully
/// independent of Bit Matcher. Guarded to W <= 3, k <= 3.
int brute_force_complexity(const Partition& p, const OracleBudget& budget = {});

/// Calls fn once per composition of total into k non-negative parts.
void enumerate_compositions(std::int64_t total, int k,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn);

}  // namespace tsplit

#endif
