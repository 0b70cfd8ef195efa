#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "tsplit/approximator.hpp"
#include "tsplit/experiments.hpp"
#include "tsplit/oracle.hpp"
#include "tsplit/sequence.hpp"
#include "tsplit/tcam.hpp"

namespace {

using namespace tsplit;

DistanceKind parse_kind(const std::string& s)
{
    if (s == "linf")
        return DistanceKind::Linf;
    if (s == "linf+")
        return DistanceKind::LinfPlus;
    if (s == "linfrel+")
        return DistanceKind::LinfRelPlus;
    throw CLI::ValidationError("kind must be one of linf, linf+, linfrel+");
}

std::ifstream open_or_die(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("cannot open " + path);
    return in;
}

// Partitions with fractional parts route through the real-target solver.
ApproxResult solve_file(const std::string& path, int rules, DistanceKind kind)
{
    auto in = open_or_die(path);
    RealPartition p = parse_real_partition(in);
    return closest_real(p, rules, kind);
}

void print_result(const ApproxResult& r)
{
    std::cout << "error: " << r.error << "\n";
    std::cout << "rules: " << r.rule_count << "\n";
    if (r.degenerate)
        std::cout << "degenerate: some targets receive zero addresses\n";
    std::cout << "witness:\n" << format_partition(r.approx);
    std::cout << "table:\n" << format_table(r.table);
}

int run_oracle_check(int max_w, int max_k)
{
    long long checked = 0;
    for (int w = 1; w <= max_w; ++w) {
        for (int k = 1; k <= max_k; ++k) {
            Partition p;
            p.width = w;
            enumerate_compositions(pow2(w), k, [&](const std::vector<std::int64_t>& parts) {
                p.parts = parts;
                int lambda = complexity(p);
                for (int n = 1; n <= lambda; ++n) {
                    for (DistanceKind kind :
                         {DistanceKind::Linf, DistanceKind::LinfPlus, DistanceKind::LinfRelPlus}) {
                        if (kind == DistanceKind::LinfRelPlus &&
                            std::any_of(parts.begin(), parts.end(),
                                        [](std::int64_t v) { return v == 0; }))
                            continue;
                        ApproxResult fast = closest(p, n, kind);
                        ApproxResult slow = brute_force_closest(p, n, kind);
                        ++checked;
                        if (fast.error != slow.error) {
                            std::cout << "MISMATCH " << format_partition(p) << " n=" << n
                                      << " kind=" << to_string(kind) << " fast=" << fast.error
                                      << " brute=" << slow.error << "\n";
                            std::exit(1);
                        }
                    }
                }
            });
        }
    }
    std::cout << "oracle-check: " << checked << " cases agree\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"TCAM traffic-split rule compiler"};
    app.require_subcommand(1);

    std::string file, kind_str = "linf", study_str = "error-vs-n";
    int rules = 1, max_w = 4, max_k = 3, pn = 1, pk = 1, pw = 32;
    ExperimentConfig cfg;

    auto* c_complexity = app.add_subcommand("complexity", "lambda(P): smallest exact TCAM size");
    c_complexity->add_option("file", file, "partition file")->required();

    auto* c_approx = app.add_subcommand("approx", "closest realizable partition within a rule budget");
    c_approx->add_option("file", file, "partition file")->required();
    c_approx->add_option("--rules", rules, "rule budget n")->required();
    c_approx->add_option("--kind", kind_str, "linf|linf+|linfrel+");

    auto* c_synth = app.add_subcommand("synth", "exact rule table for a partition");
    c_synth->add_option("file", file, "partition file")->required();

    auto* c_study = app.add_subcommand("study", "experiment harness, CSV on stdout");
    c_study->add_option("--study", study_str,
                        "error-vs-n|error-vs-k|error-vs-w|fixed-ratio|onesided-ratio|"
                        "niagara-ratio|degeneracy|real-data");
    c_study->add_option("--w", cfg.width, "address width W");
    c_study->add_option("--k", cfg.k_values, "target counts");
    c_study->add_option("--n", cfg.n_values, "rule budgets");
    c_study->add_option("--w-values", cfg.w_values, "widths for error-vs-w");
    c_study->add_option("--ratio", cfg.ratio, "n/k for fixed-ratio");
    c_study->add_option("--samples", cfg.samples, "samples per point (default 1000/10000)");
    c_study->add_option("--seed", cfg.seed, "RNG seed");
    c_study->add_option("--kind", kind_str, "distance kind");
    c_study->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    c_study->add_option("--counts", cfg.counts_file, "counts file for real-data");

    auto* c_oracle = app.add_subcommand("oracle-check", "fast solvers vs brute force sweep");
    c_oracle->add_option("--max-w", max_w, "largest W");
    c_oracle->add_option("--max-k", max_k, "largest k");

    auto* c_predict = app.add_subcommand("predict", "empirical expected-error model");
    c_predict->add_option("--n", pn, "rules")->required();
    c_predict->add_option("--k", pk, "targets")->required();
    c_predict->add_option("--w", pw, "width");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_complexity) {
            auto in = open_or_die(file);
            std::cout << complexity(parse_partition(in)) << "\n";
        } else if (*c_approx) {
            print_result(solve_file(file, rules, parse_kind(kind_str)));
        } else if (*c_synth) {
            auto in = open_or_die(file);
            Partition p = parse_partition(in);
            std::cout << format_table(sequence_to_table(bit_matcher(p), p.k()));
        } else if (*c_study) {
            static const std::map<std::string, Study> studies = {
                {"error-vs-n", Study::ErrorVsN},     {"error-vs-k", Study::ErrorVsK},
                {"error-vs-w", Study::ErrorVsW},     {"fixed-ratio", Study::FixedRatio},
                {"onesided-ratio", Study::OnesidedRatio}, {"niagara-ratio", Study::NiagaraRatio},
                {"degeneracy", Study::Degeneracy},   {"real-data", Study::RealData}};
            auto it = studies.find(study_str);
            if (it == studies.end())
                throw CLI::ValidationError("unknown study: " + study_str);
            cfg.study = it->second;
            cfg.kind = parse_kind(kind_str);
            std::cout << run_study(cfg);
        } else if (*c_oracle) {
            return run_oracle_check(max_w, max_k);
        } else if (*c_predict) {
            std::cout << predict_error(pn, pk, pw) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
