#ifndef TSPLIT_TCAM_HPP
#define TSPLIT_TCAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tsplit/sequence.hpp"

namespace tsplit {

/// Prefix of `length` bits (stored right-aligned: the prefix covers addresses
/// whose top `length` bits equal `bits`).
struct PrefixRule
{
    std::uint64_t bits = 0;
    int length = 0;
    int target = 0;

    bool operator==(const PrefixRule&) const = default;
};

/// Ordered rule list, first match wins; kept sorted by non-increasing prefix
/// length so first-match coincides with longest-prefix-match.
struct TcamTable
{
    std::vector<PrefixRule> rules;
    int width = 0;
    int targets = 0;
};

/// Greedy trie embedding of a sequence: the match-all rule goes to the bottom
/// transaction's sender; each [i ->_l j], largest levels first, carves a
/// length-(W-l) prefix for i out of the deepest rule of j with free space.
/// Throws if no host rule has capacity (cannot happen for Bit Matcher / Niagara
/// outputs).
TcamTable sequence_to_table(const TransactionSequence& seq, int k);

/// Address counts per target, computed arithmetically from rule nesting.
Partition table_induced_partition(const TcamTable& table);

/// Oracle: walk all 2^W addresses (guarded to W <= 20) and first-match each.
Partition enumerate_induced(const TcamTable& table);

void validate(const TcamTable& table);

/// One rule per line: "<bits><'*' padding to W> -> <target>". Round-trips.
std::string format_table(const TcamTable& table);
TcamTable parse_table(std::istream& in);

}  // namespace tsplit

#endif
