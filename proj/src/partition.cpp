#include "tsplit/partition.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace tsplit {

namespace {

void check_width(int width)
{
    if (width < 1 || width > kMaxWidth)
        throw std::invalid_argument("width out of range [1, " + std::to_string(kMaxWidth) + "]");
}

void check_comparable(int ka, int wa, int kb, int wb)
{
    if (ka != kb || wa != wb)
        throw std::invalid_argument("distance requires equal k and W");
}

ErrorValue distance_impl(const std::vector<Rational>& cand, const std::vector<Rational>& target,
                         DistanceKind kind)
{
    Rational best = 0;
    for (size_t i = 0; i < cand.size(); ++i) {
        Rational delta = cand[i] - target[i];
        Rational v;
        switch (kind) {
        case DistanceKind::Linf:
            v = abs(delta);
            break;
        case DistanceKind::LinfPlus:
            v = delta > 0 ? delta : Rational(0);
            break;
        case DistanceKind::LinfRelPlus:
        case DistanceKind::LinfRel:
            if (target[i] == 0)
                throw std::invalid_argument("relative distance with zero target part");
            v = kind == DistanceKind::LinfRel ? Rational(abs(delta) / target[i])
                                              : (delta > 0 ? Rational(delta / target[i]) : Rational(0));
            break;
        }
        if (v > best)
            best = v;
    }
    return best;
}

std::vector<Rational> to_rationals(const Partition& p)
{
    return std::vector<Rational>(p.parts.begin(), p.parts.end());
}

}  // namespace

const char* to_string(DistanceKind kind)
{
    switch (kind) {
    case DistanceKind::Linf: return "linf";
    case DistanceKind::LinfPlus: return "linf+";
    case DistanceKind::LinfRelPlus: return "linfrel+";
    case DistanceKind::LinfRel: return "linfrel";
    }
    return "?";
}

bool RealPartition::integer_valued() const
{
    return std::all_of(parts.begin(), parts.end(), [](const Rational& q) { return is_integer(q); });
}

Partition RealPartition::to_partition() const
{
    Partition p;
    p.width = width;
    p.parts.reserve(parts.size());
    for (const Rational& q : parts)
        p.parts.push_back(to_int64(numerator(q)));
    return p;
}

void validate(const Partition& p)
{
    check_width(p.width);
    if (p.parts.empty())
        throw std::invalid_argument("partition needs at least one part");
    std::int64_t sum = 0;
    for (std::int64_t v : p.parts) {
        if (v < 0)
            throw std::invalid_argument("negative part");
        sum += v;
    }
    if (sum != pow2(p.width))
        throw std::invalid_argument("parts do not sum to 2^W");
}

void validate(const RealPartition& p)
{
    check_width(p.width);
    if (p.parts.empty())
        throw std::invalid_argument("partition needs at least one part");
    Rational sum = 0;
    for (const Rational& v : p.parts) {
        if (v < 0)
            throw std::invalid_argument("negative part");
        sum += v;
    }
    if (sum != pow2(p.width))
        throw std::invalid_argument("parts do not sum to 2^W");
}

bool bitlex_less(std::uint64_t x, std::uint64_t y)
{
    std::uint64_t diff = x ^ y;
    if (diff == 0)
        return false;
    std::uint64_t lowest = diff & (~diff + 1);
    return (x & lowest) == 0;
}

ErrorValue distance(const Partition& candidate, const Partition& target, DistanceKind kind)
{
    check_comparable(candidate.k(), candidate.width, target.k(), target.width);
    // All-integer fast path: the oracle sweeps call this in a tight loop, and
    // building Rational vectors per call dominates the runtime otherwise.
    const auto& c = candidate.parts;
    const auto& t = target.parts;
    if (kind == DistanceKind::Linf || kind == DistanceKind::LinfPlus) {
        std::int64_t best = 0;
        for (size_t i = 0; i < c.size(); ++i) {
            std::int64_t delta = c[i] - t[i];
            if (kind == DistanceKind::Linf && delta < 0)
                delta = -delta;
            if (delta > best)
                best = delta;
        }
        return ErrorValue(best);
    }
    // Relative kinds: keep the running maximum as a num/den pair and compare
    // by cross-multiplication in 128 bits.
    std::int64_t bn = 0, bd = 1;
    for (size_t i = 0; i < c.size(); ++i) {
        if (t[i] == 0)
            throw std::invalid_argument("relative distance with zero target part");
        std::int64_t delta = c[i] - t[i];
        if (kind == DistanceKind::LinfRel && delta < 0)
            delta = -delta;
        if (delta <= 0)
            continue;
        if (static_cast<__int128>(delta) * bd > static_cast<__int128>(bn) * t[i]) {
            bn = delta;
            bd = t[i];
        }
    }
    return Rational(bn, bd);
}

ErrorValue distance(const Partition& candidate, const RealPartition& target, DistanceKind kind)
{
    check_comparable(candidate.k(), candidate.width, target.k(), target.width);
    return distance_impl(to_rationals(candidate), target.parts, kind);
}

Partition sample_ordered_partition(int k, int width, std::mt19937_64& rng)
{
    check_width(width);
    const std::int64_t total = pow2(width);
    if (k < 1 || k > total)
        throw std::invalid_argument("k must be in [1, 2^W]");

    // Floyd's algorithm: k-1 distinct cut points in {1, ..., 2^W - 1}. The gaps
    // between consecutive cuts are exactly a uniform ordered partition into
    // positive parts.
    std::unordered_set<std::int64_t> cuts;
    for (std::int64_t j = total - k + 1; j <= total - 1; ++j) {
        std::uniform_int_distribution<std::int64_t> dist(1, j);
        std::int64_t t = dist(rng);
        if (!cuts.insert(t).second)
            cuts.insert(j);
    }
    std::vector<std::int64_t> sorted(cuts.begin(), cuts.end());
    sorted.push_back(total);
    std::sort(sorted.begin(), sorted.end());

    Partition p;
    p.width = width;
    std::int64_t prev = 0;
    for (std::int64_t c : sorted) {
        p.parts.push_back(c - prev);
        prev = c;
    }
    validate(p);
    return p;
}

namespace {

std::pair<int, int> parse_header(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("empty partition input");
    int width = -1, k = -1;
    std::istringstream hs(line);
    std::string tok;
    while (hs >> tok) {
        if (tok.rfind("W=", 0) == 0)
            width = std::stoi(tok.substr(2));
        else if (tok.rfind("k=", 0) == 0)
            k = std::stoi(tok.substr(2));
        else
            throw std::invalid_argument("bad header token: " + tok);
    }
    if (width < 0 || k < 0)
        throw std::invalid_argument("header must be 'W=<int> k=<int>'");
    return {width, k};
}

Rational parse_rational_token(const std::string& tok)
{
    auto slash = tok.find('/');
    if (slash == std::string::npos)
        return Rational(BigInt(tok));
    return Rational(BigInt(tok.substr(0, slash)), BigInt(tok.substr(slash + 1)));
}

}  // namespace

Partition parse_partition(std::istream& in)
{
    auto [width, k] = parse_header(in);
    Partition p;
    p.width = width;
    for (int i = 0; i < k; ++i) {
        std::int64_t v;
        if (!(in >> v))
            throw std::invalid_argument("expected " + std::to_string(k) + " integer parts");
        p.parts.push_back(v);
    }
    validate(p);
    return p;
}

RealPartition parse_real_partition(std::istream& in)
{
    auto [width, k] = parse_header(in);
    RealPartition p;
    p.width = width;
    for (int i = 0; i < k; ++i) {
        std::string tok;
        if (!(in >> tok))
            throw std::invalid_argument("expected " + std::to_string(k) + " parts");
        p.parts.push_back(parse_rational_token(tok));
    }
    validate(p);
    return p;
}

std::string format_partition(const Partition& p)
{
    std::ostringstream out;
    out << "W=" << p.width << " k=" << p.k() << "\n";
    for (int i = 0; i < p.k(); ++i)
        out << (i ? " " : "") << p.parts[i];
    out << "\n";
    return out.str();
}

std::string format_partition(const RealPartition& p)
{
    std::ostringstream out;
    out << "W=" << p.width << " k=" << p.k() << "\n";
    for (int i = 0; i < p.k(); ++i) {
        out << (i ? " " : "") << numerator(p.parts[i]);
        if (!is_integer(p.parts[i]))
            out << "/" << denominator(p.parts[i]);
    }
    out << "\n";
    return out.str();
}

}  // namespace tsplit
