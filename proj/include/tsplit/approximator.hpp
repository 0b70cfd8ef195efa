#ifndef TSPLIT_APPROXIMATOR_HPP
#define TSPLIT_APPROXIMATOR_HPP

#include <optional>

#include "tsplit/partition.hpp"
#include "tsplit/tcam.hpp"

namespace tsplit {

struct ApproxResult
{
    Partition approx;
    ErrorValue error;
    int rule_count = 0;
    TcamTable table;
    bool degenerate = false;  // witness assigns zero addresses to some target
};

/// Minimum-lambda partition with Linf distance strictly below e (open ball),
/// via the multiples-of-2^h lattice reduction to a {0,1} or {1,2,3} lifting.
/// nullopt = no realizable partition in the ball.
std::optional<Partition> bounded_error_linf(const Partition& target, const Rational& e);
std::optional<Partition> bounded_error_linf(const RealPartition& target, const Rational& e);

/// Same for the one-sided kinds, via capacities ceil(p_i+e)-1 resp.
/// ceil((e+1)p_i)-1 and the all-zero-weights lifting solver.
std::optional<Partition> bounded_error_one_sided(const Partition& target, const Rational& e,
                                                 DistanceKind kind);
std::optional<Partition> bounded_error_one_sided(const RealPartition& target, const Rational& e,
                                                 DistanceKind kind);

/// Best achievable distance with at most n rules, witness included.
ApproxResult closest(const Partition& target, int n, DistanceKind kind);
ApproxResult closest_real(const RealPartition& target, int n, DistanceKind kind);

/// Scale raw positive counts so they sum to 2^W exactly.
RealPartition normalize_to_width(const std::vector<std::int64_t>& raw, int width);

}  // namespace tsplit

#endif
