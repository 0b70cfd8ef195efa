#ifndef TSPLIT_PARTITION_HPP
#define TSPLIT_PARTITION_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "tsplit/rational.hpp"

namespace tsplit {

// Widths are capped so that every intermediate value (parts up to 2^W, one-sided
// capacities up to ~2^(W+1), Niagara residuals down to -2^W) fits in int64_t.
inline constexpr int kMaxWidth = 60;

inline std::int64_t pow2(int w) { return std::int64_t{1} << w; }

/// A split of the 2^W address space over k targets: non-negative parts summing to 2^W.
struct Partition
{
    std::vector<std::int64_t> parts;
    int width = 0;

    int k() const { return static_cast<int>(parts.size()); }
    bool operator==(const Partition&) const = default;
};

/// Same, but with exact rational parts (desired fractions rarely land on integers).
struct RealPartition
{
    std::vector<Rational> parts;
    int width = 0;

    int k() const { return static_cast<int>(parts.size()); }
    bool operator==(const RealPartition&) const = default;
    bool integer_valued() const;
    Partition to_partition() const;  // requires integer_valued()
};

enum class DistanceKind
{
    Linf,        // max |delta_i|
    LinfPlus,    // max positive delta_i (0 if none positive)
    LinfRelPlus, // max positive delta_i / p_i
    LinfRel,     // max |delta_i| / p_i  (measurable only, never optimized)
};

using ErrorValue = Rational;

const char* to_string(DistanceKind kind);

/// Throws std::invalid_argument if the invariants do not hold.
void validate(const Partition& p);
void validate(const RealPartition& p);

/// True iff at the lowest differing bit x has 0 and y has 1 (equal values: false).
bool bitlex_less(std::uint64_t x, std::uint64_t y);

ErrorValue distance(const Partition& candidate, const Partition& target, DistanceKind kind);
ErrorValue distance(const Partition& candidate, const RealPartition& target, DistanceKind kind);

/// Uniform over ordered partitions of 2^W into k strictly positive parts.
Partition sample_ordered_partition(int k, int width, std::mt19937_64& rng);

/// Text format: first line "W=<int> k=<int>", then k whitespace-separated values.
Partition parse_partition(std::istream& in);
RealPartition parse_real_partition(std::istream& in);  // accepts "a/b" entries
std::string format_partition(const Partition& p);
std::string format_partition(const RealPartition& p);

}  // namespace tsplit

#endif
