#ifndef TSPLIT_SEQUENCE_HPP
#define TSPLIT_SEQUENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "tsplit/partition.hpp"

namespace tsplit {

/// Transfer of 2^level addresses from sender to receiver (kBottom = the drain
/// behind the match-all rule; exactly one such transaction per sequence).
struct Transaction
{
    static constexpr int kBottom = -1;

    int sender = 0;
    int receiver = kBottom;
    int level = 0;

    bool is_bottom() const { return receiver == kBottom; }
    bool operator==(const Transaction&) const = default;
};

struct TransactionSequence
{
    std::vector<Transaction> transactions;
    int width = 0;

    int length() const { return static_cast<int>(transactions.size()); }
};

/// Net flow per index (sent minus received). Throws on negative flow or bad sum.
Partition induced_partition(const TransactionSequence& seq, int k);

/// Shortest sequence inducing P, built level by level by pairing set bits.
TransactionSequence bit_matcher(const Partition& p);

/// Niagara greedy construction; with stop_after set, gives up (nullopt) as soon
/// as the sequence would exceed stop_after transactions, deciding lambda(P) <= n
/// in O(k + n lg k).
std::optional<TransactionSequence> niagara(const Partition& p,
                                           std::optional<int> stop_after = std::nullopt);

/// lambda(P): the size of the smallest TCAM realizing P.
int complexity(const Partition& p);

/// True iff lambda(P) <= n, using whichever of early-stopping Niagara and
/// Bit Matcher is asymptotically cheaper for the given budget.
bool complexity_at_most(const Partition& p, int n);

/// Keeps the n largest-level transactions (ties: later-generated first; the
/// bottom transaction always survives) and returns the induced partition.
Partition truncate_to_widest(const TransactionSequence& seq, int n, int k);

/// Debug format: one "[i ->_l j]" per line, j printed as BOT for the drain.
std::string format_sequence(const TransactionSequence& seq);

}  // namespace tsplit

#endif
