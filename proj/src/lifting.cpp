#include "tsplit/lifting.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace tsplit {

namespace {

std::int64_t sum(const std::vector<std::int64_t>& v)
{
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

bool feasible(const LiftingInstance& inst)
{
    std::int64_t lo = sum(inst.weights);
    std::int64_t hi = lo + sum(inst.capacities);
    return lo <= pow2(inst.width) && pow2(inst.width) <= hi;
}

void check_instance(const LiftingInstance& inst)
{
    if (inst.weights.size() != inst.capacities.size())
        throw std::invalid_argument("weights/capacities size mismatch");
    if (inst.width < 0 || inst.width > kMaxWidth)
        throw std::invalid_argument("width out of range");
    for (size_t i = 0; i < inst.weights.size(); ++i)
        if (inst.weights[i] < 0 || inst.capacities[i] < 0)
            throw std::invalid_argument("negative weight or capacity");
}

}  // namespace

std::int64_t excess(const LiftingInstance& inst)
{
    check_instance(inst);
    return pow2(inst.width) - sum(inst.weights);
}

std::optional<Lifting> lift_cap01(const LiftingInstance& inst)
{
    check_instance(inst);
    for (std::int64_t c : inst.capacities)
        if (c > 1)
            throw std::invalid_argument("lift_cap01 requires capacities in {0,1}");
    if (!feasible(inst))
        return std::nullopt;

    std::int64_t need = excess(inst);
    std::vector<int> liftable;
    for (int i = 0; i < inst.k(); ++i)
        if (inst.capacities[i] == 1)
            liftable.push_back(i);
    // Lift the bit-lex-largest weights; equal values lowest index first.
    std::sort(liftable.begin(), liftable.end(), [&](int a, int b) {
        if (inst.weights[a] != inst.weights[b])
            return bitlex_less(static_cast<std::uint64_t>(inst.weights[b]),
                               static_cast<std::uint64_t>(inst.weights[a]));
        return a < b;
    });

    Lifting y = inst.weights;
    for (std::int64_t i = 0; i < need; ++i)
        y[liftable[i]] += 1;
    return y;
}

std::optional<Lifting> lift_cap123(const LiftingInstance& inst)
{
    check_instance(inst);
    for (std::int64_t c : inst.capacities)
        if (c < 1 || c > 3)
            throw std::invalid_argument("lift_cap123 requires capacities in {1,2,3}");
    if (!feasible(inst))
        return std::nullopt;

    const int k = inst.k();
    std::int64_t odd = 0;
    for (std::int64_t x : inst.weights)
        odd += x & 1;

    // Phase (i): the excess fits within one unit per odd weight.
    if (excess(inst) <= odd)
        return lift_cap01({inst.weights, std::vector<std::int64_t>(k, 1), inst.width});

    // Phase (ii): make everything even, then work at half resolution.
    LiftingInstance even = inst;
    std::int64_t wide = 0;  // entries that can still absorb 2 after evening
    for (int i = 0; i < k; ++i) {
        if (even.weights[i] & 1) {
            even.weights[i] += 1;
            even.capacities[i] -= 1;
        }
        if (even.capacities[i] >= 2)
            ++wide;
    }
    for (std::int64_t x : even.weights)
        assert((x & 1) == 0);

    if (excess(even) < 2 * wide) {
        LiftingInstance half;
        half.width = inst.width - 1;
        for (int i = 0; i < k; ++i) {
            half.weights.push_back(even.weights[i] / 2);
            half.capacities.push_back(even.capacities[i] / 2);
        }
        for (std::int64_t c : half.capacities)
            assert(c <= 1);
        auto y = lift_cap01(half);
        if (!y)
            return std::nullopt;
        for (std::int64_t& v : *y)
            v *= 2;
        return y;
    }

    // Phase (iii): pre-lift two units wherever possible, finish with 0/1 room.
    LiftingInstance rest = even;
    for (int i = 0; i < k; ++i) {
        if (rest.capacities[i] >= 2) {
            rest.weights[i] += 2;
            rest.capacities[i] -= 2;
        }
    }
    return lift_cap01(rest);
}

namespace {

std::optional<Lifting> one_sided_iterative(const std::vector<std::int64_t>& caps, int width)
{
    const int k = static_cast<int>(caps.size());
    for (int i = 0; i < k; ++i) {
        if (caps[i] >= pow2(width)) {
            Lifting y(k, 0);
            y[i] = pow2(width);
            return y;
        }
    }

    auto fits = [&](int m) {
        std::int64_t s = 0;
        for (std::int64_t c : caps)
            s += c >> m;
        return s <= pow2(width - m);
    };
    // Smallest m >= 1 with sum(C div 2^m) <= 2^(W-m); monotone in m, and m = W
    // always fits because no single capacity reaches 2^W.
    int lo = 1, hi = width;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (fits(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    const int m = lo;

    LiftingInstance reduced;
    reduced.width = width - (m - 1);
    for (std::int64_t c : caps) {
        std::int64_t d = 2 * (c >> m);
        std::int64_t cap = (c >> (m - 1)) - d;
        assert(cap == 0 || cap == 1);
        reduced.weights.push_back(d);
        reduced.capacities.push_back(cap);
    }
    auto y = lift_cap01(reduced);
    if (!y)
        return std::nullopt;
    for (std::int64_t& v : *y)
        v *= pow2(m - 1);
    return y;
}

std::optional<Lifting> one_sided_recursive(const std::vector<std::int64_t>& caps, int width)
{
    const int k = static_cast<int>(caps.size());
    for (int i = 0; i < k; ++i) {
        if (caps[i] >= pow2(width)) {
            Lifting y(k, 0);
            y[i] = pow2(width);
            return y;
        }
    }
    LiftingInstance inst;
    inst.width = width;
    std::int64_t dsum = 0;
    for (std::int64_t c : caps) {
        std::int64_t d = 2 * (c / 2);
        inst.weights.push_back(d);
        inst.capacities.push_back(c - d);
        dsum += d;
    }
    if (dsum <= pow2(width))
        return lift_cap01(inst);
    std::vector<std::int64_t> half;
    for (std::int64_t c : caps)
        half.push_back(c / 2);
    auto y = one_sided_recursive(half, width - 1);
    if (!y)
        return std::nullopt;
    for (std::int64_t& v : *y)
        v *= 2;
    return y;
}

}  // namespace

std::optional<Lifting> lift_one_sided(const std::vector<std::int64_t>& capacities, int width,
                                      bool recursive)
{
    if (width < 0 || width > kMaxWidth)
        throw std::invalid_argument("width out of range");
    for (std::int64_t c : capacities)
        if (c < 0)
            throw std::invalid_argument("negative capacity");
    std::int64_t total = sum(capacities);
    if (total < pow2(width))
        return std::nullopt;
    if (width == 0) {
        // Degenerate base: place the single unit on the first nonzero capacity.
        Lifting y(capacities.size(), 0);
        for (size_t i = 0; i < capacities.size(); ++i)
            if (capacities[i] >= 1) {
                y[i] = 1;
                return y;
            }
    }
    return recursive ? one_sided_recursive(capacities, width)
                     : one_sided_iterative(capacities, width);
}

}  // namespace tsplit
