#include "tsplit/approximator.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "tsplit/lifting.hpp"
#include "tsplit/sequence.hpp"

namespace tsplit {

namespace {

int floor_log2_int(std::int64_t v)
{
    assert(v >= 1);
    int h = 0;
    while (pow2(h + 1) <= v)
        ++h;
    return h;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if (q * b > a)
        --q;
    return q;
}

// Largest h with 2^h <= e, for rational e >= some positive value; h floored at 0.
int floor_log2_rational(const Rational& e)
{
    if (e < 1)
        return 0;
    int h = 0;
    while (Rational(pow2(h + 1)) <= e)
        ++h;
    return h;
}

struct Reduction
{
    LiftingInstance inst;
    int shift = 0;     // coordinates are multiples of 2^shift
    bool cap01 = true; // which solver the capacity profile demands
};

// Cardinality check: number of admissible multiples per
// coordinate must match e's sub-range (count = capacity + 1).
void check_cardinality(std::int64_t count, const Rational& e, int h)
{
    if (e == Rational(pow2(h)))
        assert(count >= 1 && count <= 2);
    else if (2 * e <= Rational(3 * pow2(h)))
        assert(count >= 2 && count <= 3);
    else
        assert(count >= 2 && count <= 4);
    (void)count;
    (void)e;
    (void)h;
}

std::optional<Partition> solve_reduction(const Reduction& red, int width)
{
    auto y = red.cap01 ? lift_cap01(red.inst) : lift_cap123(red.inst);
    if (!y)
        return std::nullopt;
    Partition out;
    out.width = width;
    for (std::int64_t v : *y)
        out.parts.push_back(v * pow2(red.shift));
    validate(out);
    return out;
}

// Integer-target, integer-radius fast path (the inner loop of the studies).
std::optional<Partition> linf_int(const Partition& target, std::int64_t e)
{
    const int w = target.width;
    e = std::min(e, pow2(w) + 1);  // any larger open ball contains all partitions
    int h = std::min(floor_log2_int(e), w);
    const std::int64_t step = pow2(h);

    Reduction red;
    red.shift = h;
    red.cap01 = (e == step);
    red.inst.width = w - h;
    for (std::int64_t p : target.parts) {
        std::int64_t x = (floor_div(p - e, step) + 1) * step;  // smallest multiple > p-e
        if (x < 0)
            x = 0;
        std::int64_t z = floor_div(p + e - 1, step) * step;  // largest multiple < p+e
        if (z < x)
            return std::nullopt;
        check_cardinality((z - x) / step + 1, Rational(e), h);
        red.inst.weights.push_back(x / step);
        red.inst.capacities.push_back((z - x) / step);
    }
    return solve_reduction(red, w);
}

std::optional<Partition> linf_rational(const std::vector<Rational>& parts, int w, Rational e)
{
    e = std::min(e, Rational(pow2(w) + 1));
    int h = std::min(floor_log2_rational(e), w);
    const std::int64_t step = pow2(h);

    Reduction red;
    red.shift = h;
    red.cap01 = (e <= step);  // e < 1 also lands on the unit lattice with 0/1 room
    red.inst.width = w - h;
    for (const Rational& p : parts) {
        BigInt xq = rational_floor((p - e) / step) + 1;
        if (xq < 0)
            xq = 0;
        BigInt zq = rational_ceil((p + e) / step) - 1;
        if (zq < xq)
            return std::nullopt;
        if (e >= 1)
            check_cardinality(to_int64(zq - xq) + 1, e, h);
        red.inst.weights.push_back(to_int64(xq));
        red.inst.capacities.push_back(to_int64(zq - xq));
    }
    return solve_reduction(red, w);
}

std::optional<Partition> one_sided_from_caps(std::vector<std::int64_t> caps, int w)
{
    auto y = lift_one_sided(caps, w);
    if (!y)
        return std::nullopt;
    Partition out;
    out.width = w;
    out.parts = std::move(*y);
    validate(out);
    return out;
}

std::vector<std::int64_t> one_sided_caps_rational(const std::vector<Rational>& parts, int w,
                                                  const Rational& e, DistanceKind kind)
{
    std::vector<std::int64_t> caps;
    for (const Rational& p : parts) {
        if (kind == DistanceKind::LinfRelPlus && p <= 0)
            throw std::invalid_argument("relative bound requires positive parts");
        BigInt c = kind == DistanceKind::LinfPlus ? rational_ceil(p + e) - 1
                                                  : rational_ceil((e + 1) * p) - 1;
        if (c < 0)
            c = 0;
        if (c > pow2(w))
            c = pow2(w);  // anything beyond a full allocation behaves the same
        caps.push_back(to_int64(c));
    }
    return caps;
}

ApproxResult finish(Partition witness, const ErrorValue& err)
{
    ApproxResult r;
    r.error = err;
    r.rule_count = complexity(witness);
    r.table = sequence_to_table(bit_matcher(witness), witness.k());
    r.degenerate =
        std::any_of(witness.parts.begin(), witness.parts.end(), [](std::int64_t v) { return v == 0; });
    r.approx = std::move(witness);
    return r;
}

using I128 = __int128;

// Closed-radius capacities floor((b/q + 1) * p) for the relative search; equals
// the open-ball formula at any radius infinitesimally above b/q.
std::vector<std::int64_t> rel_caps_closed_int(const std::vector<std::int64_t>& parts,
                                              std::int64_t b, std::int64_t q, int w)
{
    std::vector<std::int64_t> caps;
    for (std::int64_t p : parts) {
        I128 num = static_cast<I128>(b + q) * p;
        std::int64_t c = static_cast<std::int64_t>(num / q);
        caps.push_back(std::min(c, pow2(w)));
    }
    return caps;
}

}  // namespace

std::optional<Partition> bounded_error_linf(const Partition& target, const Rational& e)
{
    validate(target);
    if (e <= 0)
        throw std::invalid_argument("radius must be positive");
    if (is_integer(e) && e <= pow2(target.width) + 1)
        return linf_int(target, to_int64(numerator(e)));
    std::vector<Rational> parts(target.parts.begin(), target.parts.end());
    return linf_rational(parts, target.width, e);
}

std::optional<Partition> bounded_error_linf(const RealPartition& target, const Rational& e)
{
    validate(target);
    if (e <= 0)
        throw std::invalid_argument("radius must be positive");
    return linf_rational(target.parts, target.width, e);
}

std::optional<Partition> bounded_error_one_sided(const Partition& target, const Rational& e,
                                                 DistanceKind kind)
{
    validate(target);
    if (e <= 0)
        throw std::invalid_argument("radius must be positive");
    if (kind != DistanceKind::LinfPlus && kind != DistanceKind::LinfRelPlus)
        throw std::invalid_argument("one-sided bound needs a one-sided kind");
    std::vector<Rational> parts(target.parts.begin(), target.parts.end());
    return one_sided_from_caps(one_sided_caps_rational(parts, target.width, e, kind), target.width);
}

std::optional<Partition> bounded_error_one_sided(const RealPartition& target, const Rational& e,
                                                 DistanceKind kind)
{
    validate(target);
    if (e <= 0)
        throw std::invalid_argument("radius must be positive");
    if (kind != DistanceKind::LinfPlus && kind != DistanceKind::LinfRelPlus)
        throw std::invalid_argument("one-sided bound needs a one-sided kind");
    return one_sided_from_caps(one_sided_caps_rational(target.parts, target.width, e, kind),
                               target.width);
}

namespace {

// Smallest integer radius in [1, 2^W + 1] whose open ball holds a partition of
// complexity <= n; by ball monotonicity the witness's own distance is optimal.
template <typename Feasible>
std::pair<std::int64_t, Partition> search_integer_radius(std::int64_t hi, int n, Feasible feasible)
{
    std::int64_t lo = 1;
    std::int64_t max_infeasible = 0;
    std::optional<Partition> witness;
    std::int64_t witness_e = 0;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        auto cand = feasible(mid);
        if (cand && complexity_at_most(*cand, n)) {
            hi = mid;
            witness = std::move(cand);
            witness_e = mid;
        } else {
            max_infeasible = std::max(max_infeasible, mid);
            lo = mid + 1;
        }
    }
    if (!witness || witness_e != lo) {
        auto cand = feasible(lo);
        assert(cand && complexity_at_most(*cand, n));
        witness = std::move(cand);
        witness_e = lo;
    }
    assert(max_infeasible < witness_e);  // ball monotonicity held by the probes
    return {lo, std::move(*witness)};
}

ApproxResult closest_rel_int(const Partition& target, int n)
{
    const auto& p = target.parts;
    for (std::int64_t v : p)
        if (v <= 0)
            throw std::invalid_argument("relative distance requires positive parts");
    const int w = target.width;
    int j = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    const std::int64_t pj = p[j];

    auto feasible_closed = [&](std::int64_t b, std::int64_t q) -> std::optional<Partition> {
        auto cand = one_sided_from_caps(rel_caps_closed_int(p, b, q, w), w);
        if (cand && complexity_at_most(*cand, n))
            return cand;
        return std::nullopt;
    };

    // Phase 1: anchor radii b/pj - 1 at the largest weight; b = 2^W is always
    // feasible (full allocation to j).
    std::int64_t lo = pj, hi = pow2(w);
    std::optional<Partition> witness;
    Rational chosen;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (auto cand = feasible_closed(mid - pj, pj)) {
            hi = mid;
            witness = std::move(cand);
            chosen = Rational(mid - pj, pj);
        } else {
            lo = mid + 1;
        }
    }
    const std::int64_t a_star = lo;
    if (!witness || chosen != Rational(a_star - pj, pj)) {
        witness = feasible_closed(a_star - pj, pj);
        assert(witness);
        chosen = Rational(a_star - pj, pj);
    }

    // Phase 2: per-coordinate thresholds b/p_i - 1 inside ((a*-1)/pj-1, a*/pj-1].
    struct Cand
    {
        std::int64_t b, q;  // radius (b - q) / q... stored as b/q - 1
        bool operator<(const Cand& o) const
        {
            return static_cast<I128>(b) * o.q < static_cast<I128>(o.b) * q;
        }
        bool operator==(const Cand& o) const
        {
            return static_cast<I128>(b) * o.q == static_cast<I128>(o.b) * q;
        }
    };
    std::vector<Cand> cands;
    for (std::int64_t pi : p) {
        // b/pi in ((a*-1)/pj, a*/pj]
        std::int64_t b_hi = static_cast<std::int64_t>(static_cast<I128>(a_star) * pi / pj);
        for (std::int64_t b = b_hi;
             b > 0 && static_cast<I128>(b) * pj > static_cast<I128>(a_star - 1) * pi; --b) {
            if (b >= pi)  // radius must be non-negative
                cands.push_back({b, pi});
        }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    // Smallest feasible candidate; the anchor a*/pj is in the list and feasible.
    std::size_t clo = 0, chi = cands.size() - 1;
    while (clo < chi) {
        std::size_t mid = (clo + chi) / 2;
        if (auto cand = feasible_closed(cands[mid].b - cands[mid].q, cands[mid].q)) {
            chi = mid;
            witness = std::move(cand);
            chosen = Rational(cands[mid].b - cands[mid].q, cands[mid].q);
        } else {
            clo = mid + 1;
        }
    }
    if (chosen != Rational(cands[clo].b - cands[clo].q, cands[clo].q)) {
        if (auto cand = feasible_closed(cands[clo].b - cands[clo].q, cands[clo].q)) {
            witness = std::move(cand);
            chosen = Rational(cands[clo].b - cands[clo].q, cands[clo].q);
        }
    }

    ErrorValue err = distance(*witness, target, DistanceKind::LinfRelPlus);
    assert(err <= chosen);
    return finish(std::move(*witness), err);
}

}  // namespace

ApproxResult closest(const Partition& target, int n, DistanceKind kind)
{
    validate(target);
    if (n < 1)
        throw std::invalid_argument("rule budget must be at least 1");
    if (complexity_at_most(target, n))
        return finish(target, 0);

    if (kind == DistanceKind::LinfRelPlus)
        return closest_rel_int(target, n);
    if (kind != DistanceKind::Linf && kind != DistanceKind::LinfPlus)
        throw std::invalid_argument("unsupported optimization kind");

    auto feasible = [&](std::int64_t e) -> std::optional<Partition> {
        if (kind == DistanceKind::Linf)
            return linf_int(target, e);
        // ceil(p + e) - 1 collapses to p + e - 1 for integers
        std::vector<std::int64_t> caps;
        for (std::int64_t p : target.parts)
            caps.push_back(std::min(p + e - 1, pow2(target.width)));
        return one_sided_from_caps(std::move(caps), target.width);
    };
    auto [e_star, witness] = search_integer_radius(pow2(target.width) + 1, n, feasible);
    ErrorValue err = distance(witness, target, kind);
    assert(err < e_star && (e_star == 1 || err >= e_star - 1));
    (void)e_star;
    return finish(std::move(witness), err);
}

namespace {

ApproxResult closest_real_two_sided(const RealPartition& target, int n, DistanceKind kind)
{
    const int w = target.width;
    auto open_feasible = [&](const Rational& e) -> std::optional<Partition> {
        std::optional<Partition> cand = kind == DistanceKind::Linf
            ? linf_rational(target.parts, w, e)
            : one_sided_from_caps(one_sided_caps_rational(target.parts, w, e, kind), w);
        if (cand && complexity_at_most(*cand, n))
            return cand;
        return std::nullopt;
    };

    // Integer phase: smallest a with a feasible open ball of radius a.
    std::int64_t lo = 1, hi = pow2(w) + 1;
    std::optional<Partition> witness;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (auto cand = open_feasible(Rational(mid))) {
            hi = mid;
            witness = std::move(cand);
        } else {
            lo = mid + 1;
        }
    }
    const std::int64_t a_star = lo;
    if (!witness) {
        witness = open_feasible(Rational(a_star));
        assert(witness);
    }

    // Achievable distances in [a*-1, a*): at most one up-deviation and (for
    // Linf) one down-deviation per coordinate.
    std::vector<Rational> cands;
    for (const Rational& p : target.parts) {
        BigInt yu = rational_ceil(p + (a_star - 1));
        Rational du = Rational(yu) - p;
        if (du > 0 && du < a_star)
            cands.push_back(du);
        if (kind == DistanceKind::Linf) {
            BigInt yd = rational_floor(p - a_star + 1);
            if (yd >= 0) {
                Rational dd = p - Rational(yd);
                if (dd > 0 && dd < a_star)
                    cands.push_back(dd);
            }
        }
    }
    cands.push_back(Rational(a_star));  // sentinel, known feasible
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    std::size_t clo = 0, chi = cands.size() - 1;
    Rational chosen = Rational(a_star);
    while (clo < chi) {
        std::size_t mid = (clo + chi) / 2;
        if (auto cand = open_feasible(cands[mid])) {
            chi = mid;
            witness = std::move(cand);
            chosen = cands[mid];
        } else {
            clo = mid + 1;
        }
    }
    if (chosen != cands[clo]) {
        if (auto cand = open_feasible(cands[clo])) {
            witness = std::move(cand);
        }
    }

    ErrorValue err = distance(*witness, target, kind);
    return finish(std::move(*witness), err);
}

ApproxResult closest_real_rel(const RealPartition& target, int n)
{
    const int w = target.width;
    for (const Rational& v : target.parts)
        if (v <= 0)
            throw std::invalid_argument("relative distance requires positive parts");
    int j = 0;
    for (int i = 1; i < target.k(); ++i)
        if (target.parts[i] > target.parts[j])
            j = i;
    const Rational pj = target.parts[j];

    auto feasible_closed = [&](const Rational& v) -> std::optional<Partition> {
        std::vector<std::int64_t> caps;
        for (const Rational& p : target.parts) {
            BigInt c = rational_floor((v + 1) * p);
            if (c < 0)
                c = 0;
            if (c > pow2(w))
                c = pow2(w);
            caps.push_back(to_int64(c));
        }
        auto cand = one_sided_from_caps(caps, w);
        if (cand && complexity_at_most(*cand, n))
            return cand;
        return std::nullopt;
    };

    std::int64_t lo = to_int64(rational_floor(pj)) + 1, hi = pow2(w);
    std::optional<Partition> witness;
    Rational chosen;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        Rational v = Rational(mid) / pj - 1;
        if (auto cand = feasible_closed(v)) {
            hi = mid;
            witness = std::move(cand);
            chosen = v;
        } else {
            lo = mid + 1;
        }
    }
    const std::int64_t a_star = lo;
    if (chosen != Rational(a_star) / pj - 1) {
        witness = feasible_closed(Rational(a_star) / pj - 1);
        assert(witness);
        chosen = Rational(a_star) / pj - 1;
    }

    std::vector<Rational> cands;
    for (const Rational& p : target.parts) {
        // b/p in ((a*-1)/pj, a*/pj]
        BigInt b = rational_floor(Rational(a_star) * p / pj);
        while (b > 0 && Rational(b) / p > Rational(a_star - 1) / pj) {
            Rational v = Rational(b) / p - 1;
            if (v > 0)
                cands.push_back(v);
            --b;
        }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    std::size_t clo = 0, chi = cands.size() - 1;
    while (clo < chi) {
        std::size_t mid = (clo + chi) / 2;
        if (auto cand = feasible_closed(cands[mid])) {
            chi = mid;
            witness = std::move(cand);
            chosen = cands[mid];
        } else {
            clo = mid + 1;
        }
    }
    if (chosen != cands[clo]) {
        if (auto cand = feasible_closed(cands[clo])) {
            witness = std::move(cand);
            chosen = cands[clo];
        }
    }

    ErrorValue err = distance(*witness, target, DistanceKind::LinfRelPlus);
    assert(err <= chosen);
    return finish(std::move(*witness), err);
}

}  // namespace

ApproxResult closest_real(const RealPartition& target, int n, DistanceKind kind)
{
    validate(target);
    if (n < 1)
        throw std::invalid_argument("rule budget must be at least 1");
    if (target.integer_valued())
        return closest(target.to_partition(), n, kind);
    if (kind == DistanceKind::LinfRelPlus)
        return closest_real_rel(target, n);
    if (kind != DistanceKind::Linf && kind != DistanceKind::LinfPlus)
        throw std::invalid_argument("unsupported optimization kind");
    return closest_real_two_sided(target, n, kind);
}

RealPartition normalize_to_width(const std::vector<std::int64_t>& raw, int width)
{
    if (width < 1 || width > kMaxWidth)
        throw std::invalid_argument("width out of range");
    if (raw.empty() || static_cast<std::int64_t>(raw.size()) > pow2(width))
        throw std::invalid_argument("need 1 <= k <= 2^W counts");
    BigInt total = 0;
    for (std::int64_t v : raw) {
        if (v <= 0)
            throw std::invalid_argument("counts must be positive");
        total += v;
    }
    RealPartition p;
    p.width = width;
    for (std::int64_t v : raw)
        p.parts.push_back(Rational(BigInt(v) * pow2(width), total));
    validate(p);
    return p;
}

}  // namespace tsplit
