#ifndef TSPLIT_EXPERIMENTS_HPP
#define TSPLIT_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsplit/partition.hpp"

namespace tsplit {

enum class Study
{
    ErrorVsN,
    ErrorVsK,
    ErrorVsW,
    FixedRatio,
    OnesidedRatio,
    NiagaraRatio,
    Degeneracy,
    RealData,
};

struct ExperimentConfig
{
    Study study = Study::ErrorVsN;
    int width = 32;
    std::vector<int> k_values = {10};
    std::vector<int> n_values;          // empty = study default
    std::vector<int> w_values;          // for ErrorVsW
    double ratio = 1.0;                 // n = ratio * k for FixedRatio
    int samples = 0;                    // 0 = study default (1000; NiagaraRatio 10000)
    std::uint64_t seed = 1;
    DistanceKind kind = DistanceKind::Linf;
    int threads = 0;                    // 0 = hardware concurrency
    std::string counts_file;            // RealData input
};

struct EmpiricalModelParams
{
    double a = 4.92, b = 2.24, c = 0.16, d = 0.91;
};

/// Mean optimal error over `samples` random partitions; one CSV block per
/// parameter point. Deterministic for a fixed seed regardless of thread count.
std::string run_study(const ExperimentConfig& cfg);

/// Fitted-curve prediction of the expected Linf error (descriptive, floating point).
double predict_error(int n, int k, int width, const EmpiricalModelParams& params = {});

/// Per-frame positive counts -> normalized real partitions -> error at rule
/// budgets floor(f * n*) for each fraction f.
std::string real_data_pipeline(std::istream& counts, int width,
                               const std::vector<double>& fractions, DistanceKind kind);

}  // namespace tsplit

#endif
