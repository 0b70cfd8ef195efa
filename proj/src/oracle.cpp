#include "tsplit/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>

#include "tsplit/sequence.hpp"

namespace tsplit {

namespace {

std::uint64_t composition_count(std::int64_t total, int k)
{
    // C(total + k - 1, k - 1), saturating well past any sane budget.
    long double c = 1.0L;
    for (int i = 1; i <= k - 1; ++i)
        c = c * static_cast<long double>(total + i) / i;
    return c > 1e18L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(c);
}

template <typename Target>
ApproxResult brute_force_closest_impl(const Target& target, int n, DistanceKind kind,
                                      const OracleBudget& budget)
{
    validate(target);
    if (n < 1)
        throw std::invalid_argument("rule budget must be at least 1");
    const std::int64_t total = pow2(target.width);
    if (composition_count(total, target.k()) > budget.max_states)
        throw std::invalid_argument("brute_force_closest: budget exceeded");

    std::optional<Partition> best;
    ErrorValue best_err;
    Partition cand;
    cand.width = target.width;
    enumerate_compositions(total, target.k(), [&](const std::vector<std::int64_t>& parts) {
        cand.parts = parts;
        ErrorValue err = distance(cand, target, kind);
        if (best && err >= best_err)
            return;
        if (complexity(cand) <= n) {
            best = cand;
            best_err = err;
        }
    });
    // n >= 1 always admits a full allocation to one target.
    ApproxResult r;
    r.approx = std::move(*best);
    r.error = best_err;
    r.rule_count = complexity(r.approx);
    r.table = sequence_to_table(bit_matcher(r.approx), r.approx.k());
    r.degenerate = std::any_of(r.approx.parts.begin(), r.approx.parts.end(),
                               [](std::int64_t v) { return v == 0; });
    return r;
}

}  // namespace

void enumerate_compositions(std::int64_t total, int k,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn)
{
    std::vector<std::int64_t> parts(k, 0);
    parts[k - 1] = total;
    // Odometer over the first k-1 coordinates; the last takes the remainder.
    while (true) {
        fn(parts);
        int i = 0;
        for (; i < k - 1; ++i) {
            if (parts[k - 1] > 0) {
                ++parts[i];
                --parts[k - 1];
                break;
            }
            parts[k - 1] += parts[i];
            parts[i] = 0;
        }
        if (i == k - 1)
            return;
    }
}

ApproxResult brute_force_closest(const Partition& target, int n, DistanceKind kind,
                                 const OracleBudget& budget)
{
    return brute_force_closest_impl(target, n, kind, budget);
}

ApproxResult brute_force_closest(const RealPartition& target, int n, DistanceKind kind,
                                 const OracleBudget& budget)
{
    return brute_force_closest_impl(target, n, kind, budget);
}

std::optional<Lifting> brute_force_lifting(const LiftingInstance& inst, const OracleBudget& budget)
{
    if (inst.weights.size() != inst.capacities.size())
        throw std::invalid_argument("weights/capacities size mismatch");
    std::uint64_t states = 1;
    for (std::int64_t c : inst.capacities) {
        if (c < 0)
            throw std::invalid_argument("negative capacity");
        states *= static_cast<std::uint64_t>(c) + 1;
        if (states > budget.max_states)
            throw std::invalid_argument("brute_force_lifting: budget exceeded");
    }

    const int k = inst.k();
    std::optional<Lifting> best;
    int best_lambda = 0;
    std::vector<std::int64_t> y = inst.weights;
    Partition cand;
    cand.width = inst.width;

    // Odometer over per-coordinate offsets in [0, c_i].
    std::vector<std::int64_t> off(k, 0);
    while (true) {
        std::int64_t sum = 0;
        for (int i = 0; i < k; ++i)
            sum += inst.weights[i] + off[i];
        if (sum == pow2(inst.width)) {
            for (int i = 0; i < k; ++i)
                y[i] = inst.weights[i] + off[i];
            cand.parts = y;
            int lambda = complexity(cand);
            if (!best || lambda < best_lambda) {
                best = y;
                best_lambda = lambda;
            }
        }
        int i = 0;
        for (; i < k; ++i) {
            if (off[i] < inst.capacities[i]) {
                ++off[i];
                break;
            }
            off[i] = 0;
        }
        if (i == k)
            break;
    }
    return best;
}

int brute_force_complexity(const Partition& p, const OracleBudget& budget)
{
    validate(p);
    if (p.width > 3 || p.k() > 3)
        throw std::invalid_argument("brute_force_complexity guarded to W <= 3, k <= 3");
    (void)budget;

    const int w = p.width;
    const int k = p.k();
    const std::int64_t bound = pow2(w);  // coordinates stay within [-2^W, 2^W]

    // State: k coordinate values plus whether the one-off move to the drain
    // was taken. BFS explores single transfers of 2^l between coordinates.
    using State = std::vector<std::int64_t>;  // last entry: drain-used flag
    State start(p.parts.begin(), p.parts.end());
    start.push_back(0);
    State goal(k, 0);
    goal.push_back(1);

    std::map<State, int> dist;
    std::deque<State> queue;
    dist[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
        State cur = queue.front();
        queue.pop_front();
        int d = dist[cur];
        if (cur == goal)
            return d;
        for (int l = 0; l <= w; ++l) {
            const std::int64_t amount = pow2(l);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) {
                    if (i == j)
                        continue;
                    State next = cur;
                    next[i] -= amount;
                    next[j] += amount;
                    if (next[i] < -bound || next[j] > bound)
                        continue;
                    if (dist.emplace(next, d + 1).second)
                        queue.push_back(std::move(next));
                }
            }
        }
        if (cur[k] == 0) {
            for (int i = 0; i < k; ++i) {
                State next = cur;
                next[i] -= bound;
                next[k] = 1;
                if (next[i] >= -bound && dist.emplace(next, d + 1).second)
                    queue.push_back(std::move(next));
            }
        }
    }
    throw std::logic_error("brute_force_complexity: goal unreachable");
}

}  // namespace tsplit
