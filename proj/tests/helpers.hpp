#ifndef TSPLIT_TESTS_HELPERS_HPP
#define TSPLIT_TESTS_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "tsplit/oracle.hpp"
#include "tsplit/sequence.hpp"

namespace tsplit_tests {

using namespace tsplit;

inline Partition make(std::vector<std::int64_t> parts, int width)
{
    Partition p;
    p.parts = std::move(parts);
    p.width = width;
    return p;
}

inline RealPartition make_real(std::vector<Rational> parts, int width)
{
    RealPartition p;
    p.parts = std::move(parts);
    p.width = width;
    return p;
}

inline TransactionSequence make_seq(std::vector<Transaction> ts, int width)
{
    TransactionSequence s;
    s.transactions = std::move(ts);
    s.width = width;
    return s;
}

// Memoized lambda for vectors with small entries (values <= 31, k <= 4 packed
// into 5-bit lanes): turns exhaustive lifting sweeps into array lookups.
class LambdaCache
{
public:
    explicit LambdaCache(int width) : width_(width), table_(1u << 20, -1) {}

    int lambda(const std::vector<std::int64_t>& parts)
    {
        std::uint32_t key = 0;
        for (size_t i = 0; i < parts.size(); ++i)
            key |= static_cast<std::uint32_t>(parts[i]) << (5 * i);
        if (table_[key] < 0) {
            Partition p;
            p.parts = parts;
            p.width = width_;
            table_[key] = static_cast<std::int16_t>(complexity(p));
        }
        return table_[key];
    }

private:
    int width_;
    std::vector<std::int16_t> table_;
};

// Minimum lambda over all liftings of the instance, by direct box enumeration;
// -1 if no lifting exists. Independent of brute_force_lifting's pruning.
inline int min_lambda_by_enumeration(const LiftingInstance& inst, LambdaCache& cache)
{
    const int k = inst.k();
    std::vector<std::int64_t> off(k, 0);
    int best = -1;
    while (true) {
        std::int64_t sum = 0;
        for (int i = 0; i < k; ++i)
            sum += inst.weights[i] + off[i];
        if (sum == pow2(inst.width)) {
            std::vector<std::int64_t> y(k);
            for (int i = 0; i < k; ++i)
                y[i] = inst.weights[i] + off[i];
            int l = cache.lambda(y);
            if (best < 0 || l < best)
                best = l;
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
            return best;
    }
}

}  // namespace tsplit_tests

#endif
