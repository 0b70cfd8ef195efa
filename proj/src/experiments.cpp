#include "tsplit/experiments.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tsplit/approximator.hpp"
#include "tsplit/sequence.hpp"

namespace tsplit {

namespace {

constexpr const char* kNegInf = "-inf";

double to_double(const Rational& q)
{
    return static_cast<double>(numerator(q)) / static_cast<double>(denominator(q));
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmt_lg(double v)
{
    return v > 0 ? fmt(std::log2(v)) : std::string(kNegInf);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 over seed ^ index: decorrelates per-sample streams while
    // keeping serial and parallel runs identical.
    std::uint64_t z = (seed ^ index) + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4949fb97f4a7cULL;
    return z ^ (z >> 31);
}

struct SampleStats
{
    double sum = 0, sumsq = 0;
    int zero = 0, count = 0;

    void add(double v)
    {
        sum += v;
        sumsq += v * v;
        if (v == 0)
            ++zero;
        ++count;
    }
    double mean() const { return count ? sum / count : 0; }
    double stddev() const
    {
        if (count < 2)
            return 0;
        double m = mean();
        return std::sqrt(std::max(0.0, sumsq / count - m * m));
    }
    double zero_fraction() const { return count ? static_cast<double>(zero) / count : 0; }
};

// Runs fn(sample_index, rng) for each sample, in deterministic order, spread
// over threads; results must be written into per-index slots by the caller.
void parallel_samples(int samples, int threads, std::uint64_t seed,
                      const std::function<void(int, std::mt19937_64&)>& fn)
{
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, samples));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int s = t; s < samples; s += threads) {
                std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
                fn(s, rng);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

int default_samples(const ExperimentConfig& cfg)
{
    if (cfg.samples > 0)
        return cfg.samples;
    return cfg.study == Study::NiagaraRatio ? 10000 : 1000;
}

std::vector<int> default_n_values(const ExperimentConfig& cfg)
{
    if (!cfg.n_values.empty())
        return cfg.n_values;
    std::vector<int> ns;
    for (int n = 5; n <= 60; n += 5)
        ns.push_back(n);
    return ns;
}

// Mean optimal error for one (W, k, n) point.
void error_point_rows(std::ostringstream& out, const ExperimentConfig& cfg, int width, int k, int n)
{
    const int samples = default_samples(cfg);
    std::vector<double> errs(samples);
    parallel_samples(samples, cfg.threads, cfg.seed, [&](int s, std::mt19937_64& rng) {
        Partition p = sample_ordered_partition(k, width, rng);
        ApproxResult r = closest(p, n, cfg.kind);
        assert(r.rule_count <= n);
        assert(distance(r.approx, p, cfg.kind) == r.error);
        errs[s] = to_double(r.error);
    });
    SampleStats st;
    for (double e : errs)
        st.add(e);
    out << width << "," << k << "," << n << "," << to_string(cfg.kind) << "," << fmt(st.mean())
        << "," << fmt(st.stddev()) << "," << fmt_lg(st.mean()) << "," << fmt(st.zero_fraction())
        << "\n";
}

}  // namespace

double predict_error(int n, int k, int width, const EmpiricalModelParams& params)
{
    if (n < 1 || k < 1)
        throw std::invalid_argument("n and k must be positive");
    double ratio = static_cast<double>(n) / k;
    return std::pow(2.0, width - params.a * ratio + params.b) *
           std::pow(static_cast<double>(k), -(params.c * ratio + params.d));
}

std::string run_study(const ExperimentConfig& cfg)
{
    std::ostringstream out;
    const int samples = default_samples(cfg);

    auto feasible_point = [&](int width, int k) { return width <= kMaxWidth && k <= pow2(std::min(width, 62)); };

    switch (cfg.study) {
    case Study::ErrorVsN:
    case Study::ErrorVsK:
    case Study::ErrorVsW:
    case Study::FixedRatio: {
        out << "W,k,n,kind,mean_error,std_error,lg_mean_error,zero_error_fraction\n";
        if (cfg.study == Study::ErrorVsN) {
            for (int k : cfg.k_values)
                for (int n : default_n_values(cfg)) {
                    if (!feasible_point(cfg.width, k)) {
                        out << cfg.width << "," << k << "," << n << ",error,,,,\n";
                        continue;
                    }
                    error_point_rows(out, cfg, cfg.width, k, n);
                }
        } else if (cfg.study == Study::ErrorVsK) {
            for (int n : default_n_values(cfg))
                for (int k : cfg.k_values) {
                    if (!feasible_point(cfg.width, k)) {
                        out << cfg.width << "," << k << "," << n << ",error,,,,\n";
                        continue;
                    }
                    error_point_rows(out, cfg, cfg.width, k, n);
                }
        } else if (cfg.study == Study::ErrorVsW) {
            std::vector<int> ws = cfg.w_values.empty() ? std::vector<int>{16, 24, 32, 40, 48}
                                                       : cfg.w_values;
            for (int w : ws)
                for (int k : cfg.k_values)
                    for (int n : default_n_values(cfg)) {
                        if (!feasible_point(w, k)) {
                            out << w << "," << k << "," << n << ",error,,,,\n";
                            continue;
                        }
                        error_point_rows(out, cfg, w, k, n);
                    }
        } else {  // FixedRatio: n tied to k
            for (int k : cfg.k_values) {
                int n = std::max(1, static_cast<int>(cfg.ratio * k));
                if (!feasible_point(cfg.width, k)) {
                    out << cfg.width << "," << k << "," << n << ",error,,,,\n";
                    continue;
                }
                error_point_rows(out, cfg, cfg.width, k, n);
            }
        }
        break;
    }
    case Study::OnesidedRatio: {
        out << "W,k,n,mean_linf_plus,mean_linf,ratio\n";
        for (int k : cfg.k_values)
            for (int n : default_n_values(cfg)) {
                std::vector<double> one(samples), two(samples);
                parallel_samples(samples, cfg.threads, cfg.seed, [&](int s, std::mt19937_64& rng) {
                    Partition p = sample_ordered_partition(k, cfg.width, rng);
                    one[s] = to_double(closest(p, n, DistanceKind::LinfPlus).error);
                    two[s] = to_double(closest(p, n, DistanceKind::Linf).error);
                });
                SampleStats so, st;
                for (int s = 0; s < samples; ++s) {
                    so.add(one[s]);
                    st.add(two[s]);
                }
                double ratio = st.mean() > 0 ? so.mean() / st.mean() : 1.0;
                out << cfg.width << "," << k << "," << n << "," << fmt(so.mean()) << ","
                    << fmt(st.mean()) << "," << fmt(ratio) << "\n";
            }
        break;
    }
    case Study::NiagaraRatio: {
        out << "W,k,n,mean_ratio,max_ratio,conjecture_violations\n";
        for (int k : cfg.k_values)
            for (int n : default_n_values(cfg)) {
                std::vector<double> ratios(samples);
                std::vector<int> violation(samples, 0);
                parallel_samples(samples, cfg.threads, cfg.seed, [&](int s, std::mt19937_64& rng) {
                    Partition p = sample_ordered_partition(k, cfg.width, rng);
                    ApproxResult opt = closest(p, n, DistanceKind::Linf);
                    auto seq = niagara(p);
                    Partition trunc =
                        truncate_to_widest(*seq, std::min(n, seq->length()), p.k());
                    double terr = to_double(distance(trunc, p, DistanceKind::Linf));
                    double oerr = to_double(opt.error);
                    ratios[s] = oerr > 0 ? terr / oerr : 1.0;
                    if (oerr > 0) {
                        // 2^h <= optimal < 2^(h+1); conjectured truncation bound 2^(h+1)
                        double bound = std::pow(2.0, std::floor(std::log2(oerr)) + 1);
                        if (terr >= bound)
                            violation[s] = 1;
                    }
                });
                SampleStats st;
                double mx = 0;
                int viols = 0;
                for (int s = 0; s < samples; ++s) {
                    st.add(ratios[s]);
                    mx = std::max(mx, ratios[s]);
                    viols += violation[s];
                }
                out << cfg.width << "," << k << "," << n << "," << fmt(st.mean()) << "," << fmt(mx)
                    << "," << viols << "\n";
            }
        break;
    }
    case Study::Degeneracy: {
        out << "W,k,n,kind,degenerate_fraction\n";
        for (int k : cfg.k_values)
            for (int n : default_n_values(cfg)) {
                std::vector<int> degen(samples, 0);
                parallel_samples(samples, cfg.threads, cfg.seed, [&](int s, std::mt19937_64& rng) {
                    Partition p = sample_ordered_partition(k, cfg.width, rng);
                    degen[s] = closest(p, n, cfg.kind).degenerate ? 1 : 0;
                });
                int d = 0;
                for (int v : degen)
                    d += v;
                out << cfg.width << "," << k << "," << n << "," << to_string(cfg.kind) << ","
                    << fmt(static_cast<double>(d) / samples) << "\n";
            }
        break;
    }
    case Study::RealData: {
        std::ifstream in(cfg.counts_file);
        if (!in)
            throw std::invalid_argument("cannot open counts file: " + cfg.counts_file);
        std::vector<double> fractions;
        for (int i = 1; i <= 10; ++i)
            fractions.push_back(i / 10.0);
        return real_data_pipeline(in, cfg.width, fractions, cfg.kind);
    }
    }
    return out.str();
}

std::string real_data_pipeline(std::istream& counts, int width,
                               const std::vector<double>& fractions, DistanceKind kind)
{
    std::ostringstream out;
    out << "frame,kind,fraction,n,lg_error_over_W\n";
    std::string line;
    int frame = 0;
    while (std::getline(counts, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::vector<std::int64_t> raw;
        std::int64_t v;
        bool ok = true;
        while (ls >> v) {
            if (v <= 0)
                ok = false;
            raw.push_back(v);
        }
        if (!ok || raw.empty() || !ls.eof()) {
            std::fprintf(stderr, "warning: skipping malformed counts row %d\n", frame);
            ++frame;
            continue;
        }
        RealPartition p = normalize_to_width(raw, width);
        // n* = rules needed to reach the minimum possible error at all.
        ApproxResult full = closest_real(p, width * p.k(), kind);
        int n_star = full.rule_count;
        for (double f : fractions) {
            int n = std::max(1, static_cast<int>(f * n_star));
            ApproxResult r = closest_real(p, n, kind);
            double err = to_double(r.error);
            out << frame << "," << to_string(kind) << "," << fmt(f) << "," << n << ",";
            if (err > 0)
                out << fmt(std::log2(err) / width);
            else
                out << kNegInf;
            out << "\n";
        }
        ++frame;
    }
    return out.str();
}

}  // namespace tsplit
