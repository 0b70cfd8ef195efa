#include "tsplit/tcam.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tsplit {

namespace {

// Free space bookkeeping during synthesis: every rule owns the addresses of its
// subtree minus the subtrees carved out for later (longer) rules. Because
// transactions are processed in non-increasing level, carving the leftmost
// 2^l block out of a free block always leaves aligned blocks of size >= 2^l,
// so any future request fits entirely inside a single free block.
struct HostState
{
    std::map<std::int64_t, int> free_blocks;  // start address -> log2(size)
};

// Unique word per prefix: a leading 1 bit disambiguates lengths (bits < 2^length,
// length <= 60, so the key stays below 2^61).
std::uint64_t rule_key(int length, std::uint64_t bits)
{
    return (std::uint64_t{1} << length) | bits;
}

}  // namespace

TcamTable sequence_to_table(const TransactionSequence& seq, int k)
{
    const int w = seq.width;
    // Validates the sequence as a side effect; also gives us k sanity.
    induced_partition(seq, k);

    std::vector<int> order;
    for (int i = 0; i < seq.length(); ++i)
        if (!seq.transactions[i].is_bottom())
            order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return seq.transactions[a].level > seq.transactions[b].level;
    });

    TcamTable table;
    table.width = w;
    table.targets = k;
    std::vector<HostState> hosts;          // parallel to table.rules
    std::vector<std::vector<int>> by_target(k);

    auto add_rule = [&](std::uint64_t bits, int length, int target) {
        table.rules.push_back({bits, length, target});
        HostState hs;
        if (length < w)
            hs.free_blocks[static_cast<std::int64_t>(bits) << (w - length)] = w - length;
        else
            hs.free_blocks.clear();
        if (length == w)
            hs.free_blocks.clear();
        hosts.push_back(std::move(hs));
        by_target[target].push_back(static_cast<int>(table.rules.size()) - 1);
    };

    const Transaction* bottom = nullptr;
    for (const Transaction& t : seq.transactions)
        if (t.is_bottom())
            bottom = &t;
    add_rule(0, 0, bottom->sender);
    // The match-all rule's own 2^w free block (length < w branch above misses
    // the full-subtree granularity only when length == w, which can't happen
    // for the match-all rule unless w == 0).
    if (w == 0)
        hosts[0].free_blocks.clear();

    for (int idx : order) {
        const Transaction& t = seq.transactions[idx];
        const int level = t.level;
        const std::int64_t size = pow2(level);

        // Deepest existing rule of the receiver with a free block; free blocks
        // at this point all have size >= 2^level, so "has any free block" is
        // exactly "has spare capacity >= 2^level".
        int host = -1;
        for (int r : by_target[t.receiver]) {
            if (hosts[r].free_blocks.empty())
                continue;
            if (host < 0 || table.rules[r].length > table.rules[host].length)
                host = r;
        }
        if (host < 0)
            throw std::runtime_error("sequence_to_table: no host rule with spare capacity");

        // Leftmost free block, leftmost 2^level slice of it.
        auto it = hosts[host].free_blocks.begin();
        std::int64_t start = it->first;
        int logsize = it->second;
        assert(logsize >= level);
        hosts[host].free_blocks.erase(it);
        // Return the buddy decomposition of the remainder to the free list.
        std::int64_t cursor = start + size;
        for (int l = level; l < logsize; ++l) {
            hosts[host].free_blocks[cursor] = l;
            cursor += pow2(l);
        }
        add_rule(static_cast<std::uint64_t>(start) >> level, w - level, t.sender);
    }

    // Priority order: longest prefixes first (synthesis emitted widest first).
    std::stable_sort(table.rules.begin(), table.rules.end(),
                     [](const PrefixRule& a, const PrefixRule& b) { return a.length > b.length; });
    validate(table);
    return table;
}

void validate(const TcamTable& table)
{
    if (table.rules.empty())
        throw std::invalid_argument("table must contain at least the match-all rule");
    for (size_t i = 0; i < table.rules.size(); ++i) {
        const PrefixRule& r = table.rules[i];
        if (r.length < 0 || r.length > table.width)
            throw std::invalid_argument("rule length out of range");
        if (r.target < 0 || r.target >= table.targets)
            throw std::invalid_argument("rule target out of range");
        if (r.length < 64 && r.bits >= (std::uint64_t{1} << r.length))
            throw std::invalid_argument("rule bits wider than rule length");
        if (i > 0 && table.rules[i - 1].length < r.length)
            throw std::invalid_argument("rules must be sorted by non-increasing length");
    }
    std::unordered_set<std::uint64_t> seen;
    for (const PrefixRule& r : table.rules)
        if (!seen.insert(rule_key(r.length, r.bits)).second)
            throw std::invalid_argument("duplicate prefix");
    if (table.rules.back().length != 0)
        throw std::invalid_argument("last rule must be match-all");
}

Partition table_induced_partition(const TcamTable& table)
{
    validate(table);
    Partition p;
    p.width = table.width;
    p.parts.assign(table.targets, 0);

    // An address matches the longest rule covering it, so each rule keeps its
    // subtree minus the subtrees of rules whose nearest shorter enclosing rule
    // it is. Nearest ancestors come from a hash of all (length, bits) pairs.
    const auto& rules = table.rules;
    std::unordered_map<std::uint64_t, size_t> index;
    for (size_t i = 0; i < rules.size(); ++i)
        index.emplace(rule_key(rules[i].length, rules[i].bits), i);

    std::vector<std::int64_t> count(rules.size());
    for (size_t i = 0; i < rules.size(); ++i)
        count[i] = pow2(table.width - rules[i].length);
    for (size_t i = 0; i < rules.size(); ++i) {
        for (int l = rules[i].length - 1; l >= 0; --l) {
            auto it = index.find(rule_key(l, rules[i].bits >> (rules[i].length - l)));
            if (it != index.end()) {
                count[it->second] -= pow2(table.width - rules[i].length);
                break;
            }
        }
    }
    for (size_t i = 0; i < rules.size(); ++i) {
        if (count[i] <= 0)
            throw std::invalid_argument("redundant rule: matches no address");
        p.parts[rules[i].target] += count[i];
    }
    validate(p);
    return p;
}

Partition enumerate_induced(const TcamTable& table)
{
    validate(table);
    if (table.width > 20)
        throw std::invalid_argument("enumerate_induced guarded to W <= 20");
    Partition p;
    p.width = table.width;
    p.parts.assign(table.targets, 0);
    for (std::int64_t addr = 0; addr < pow2(table.width); ++addr) {
        for (const PrefixRule& r : table.rules) {
            if ((addr >> (table.width - r.length)) == static_cast<std::int64_t>(r.bits)) {
                ++p.parts[r.target];
                break;
            }
        }
    }
    validate(p);
    return p;
}

std::string format_table(const TcamTable& table)
{
    std::ostringstream out;
    for (const PrefixRule& r : table.rules) {
        for (int b = r.length - 1; b >= 0; --b)
            out << ((r.bits >> b) & 1);
        for (int b = r.length; b < table.width; ++b)
            out << '*';
        out << " -> " << r.target << "\n";
    }
    return out.str();
}

TcamTable parse_table(std::istream& in)
{
    TcamTable table;
    table.width = -1;
    int max_target = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string pattern, arrow;
        int target;
        if (!(ls >> pattern >> arrow >> target) || arrow != "->")
            throw std::invalid_argument("bad rule line: " + line);
        if (table.width < 0)
            table.width = static_cast<int>(pattern.size());
        else if (static_cast<int>(pattern.size()) != table.width)
            throw std::invalid_argument("inconsistent pattern widths");
        PrefixRule r;
        r.target = target;
        r.length = 0;
        r.bits = 0;
        bool in_stars = false;
        for (char c : pattern) {
            if (c == '*') {
                in_stars = true;
            } else if ((c == '0' || c == '1') && !in_stars) {
                r.bits = r.bits << 1 | (c == '1');
                ++r.length;
            } else {
                throw std::invalid_argument("bad pattern (wildcards must be a suffix): " + pattern);
            }
        }
        max_target = std::max(max_target, target);
        table.rules.push_back(r);
    }
    table.targets = max_target + 1;
    validate(table);
    return table;
}

}  // namespace tsplit
