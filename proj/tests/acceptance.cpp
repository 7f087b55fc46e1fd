// Acceptance suite: each check prints exactly one PASS/FAIL line with its
// measured numbers. Exit status 0 iff every check passes.
//
// The CLI checks need the path to the eda-bnsl binary:
//   acceptance --cli <path-to-eda-bnsl>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "edabn/asia.hpp"
#include "edabn/eda.hpp"
#include "edabn/harness.hpp"
#include "edabn/metrics.hpp"
#include "edabn/mutation.hpp"
#include "edabn/scoring.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int checks_passed = 0;
int checks_total = 0;

void report(int id, const char* label, bool pass, const std::string& detail) {
    ++checks_total;
    if (pass) ++checks_passed;
    std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, label, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

std::vector<edabn::AdjacencyMatrix> all_three_node_dags() {
    std::vector<edabn::AdjacencyMatrix> dags;
    for (int bits = 0; bits < 64; ++bits) {
        edabn::AdjacencyMatrix m(3);
        int b = bits;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                if (b & 1) m.set(i, j, true);
                b >>= 1;
            }
        if (edabn::is_acyclic(m)) dags.push_back(m);
    }
    return dags;
}

edabn::AdjacencyMatrix random_digraph(int n, double p, edabn::Rng& rng) {
    edabn::AdjacencyMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && rng.uniform01() < p) m.set(i, j, true);
    return m;
}

// --- check 1: the search finds the exhaustive optimum on a small instance ---

void check_small_instance_recovery() {
    const auto start = Clock::now();
    const auto net = edabn::BayesNetwork::create(
        edabn::AdjacencyMatrix::from_arcs(3, {{0, 1}, {1, 2}}), {2, 2, 2},
        {edabn::Cpt{{{0.7, 0.3}}}, edabn::Cpt{{{0.9, 0.1}, {0.2, 0.8}}},
         edabn::Cpt{{{0.8, 0.2}, {0.3, 0.7}}}});
    const auto data = edabn::forward_sample(net, 1000, 11);

    edabn::ScoreCache cache;
    edabn::FitnessFn fitness = [&](const edabn::AdjacencyMatrix& g) {
        return edabn::bde_score(data, g, 1.0, cache);
    };

    const auto dags = all_three_node_dags();
    double exhaustive_best = -1e300;
    for (const auto& dag : dags) exhaustive_best = std::max(exhaustive_best, fitness(dag));

    int successes = 0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
        edabn::EdaConfig config;
        config.population_size = 100;
        config.generations = 100;
        config.mutation = edabn::MutationKind::transpose;
        config.mutation_rate = 0.1;
        config.elitism = 1;
        config.seed = static_cast<std::uint64_t>(s);
        const auto result = edabn::run_eda(config, data, fitness);
        if (std::abs(*result.best.fitness - exhaustive_best) <= 1e-6) ++successes;
    }
    const double elapsed = seconds_since(start);
    report(1, "finds the exhaustive optimum among all 25 three-node structures",
           static_cast<int>(dags.size()) == 25 && successes >= 18 && elapsed < 30.0,
           fmt("%d/%d seeds within 1e-6 of the exhaustive best over %d DAGs (need >= 18), "
               "%.1f s (limit 30)",
               successes, seeds, static_cast<int>(dags.size()), elapsed));
}

// --- checks 2 and 3: transpose mutation raises precision, cuts reversals ---

void check_transpose_effect() {
    const auto start = Clock::now();
    const auto net = edabn::asia_fixture();
    const auto truth = net.structure();
    const auto data = edabn::forward_sample(net, 1000, edabn::derive_seed(1, {edabn::site::dataset}));

    edabn::ScoreCache cache;
    edabn::FitnessFn fitness = [&](const edabn::AdjacencyMatrix& g) {
        return edabn::bde_score(data, g, 1.0, cache);
    };

    struct Arm {
        edabn::Algorithm algo;
        bool transpose;
        std::vector<double> precisions;
        std::vector<edabn::ArcClassification> classifications;
    };
    std::vector<Arm> arms = {{edabn::Algorithm::univariate, false, {}, {}},
                             {edabn::Algorithm::univariate, true, {}, {}},
                             {edabn::Algorithm::pbil, false, {}, {}},
                             {edabn::Algorithm::pbil, true, {}, {}}};

    const int seeds = 10;
    for (std::size_t a = 0; a < arms.size(); ++a) {
        for (int s = 0; s < seeds; ++s) {
            edabn::EdaConfig config;
            config.algorithm = arms[a].algo;
            config.population_size = 50;
            config.generations = 200;
            config.pbil_learning_rate = 0.5;
            if (arms[a].transpose) {
                config.mutation = edabn::MutationKind::transpose;
                config.mutation_rate = 0.10;
            }
            config.seed = edabn::derive_seed(1, {0xACCE, a, static_cast<std::uint64_t>(s)});
            const auto result = edabn::run_eda(config, data, fitness);
            if (const auto p = edabn::precision(result.best.genome, truth))
                arms[a].precisions.push_back(*p);
            arms[a].classifications.push_back(edabn::classify_arcs(result.best.genome, truth));
        }
    }

    auto mean = [](const std::vector<double>& xs) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
    };
    const double umda_plain = mean(arms[0].precisions);
    const double umda_t = mean(arms[1].precisions);
    const double pbil_plain = mean(arms[2].precisions);
    const double pbil_t = mean(arms[3].precisions);
    const double elapsed = seconds_since(start);

    report(2, "transpose mutation raises mean structure precision",
           umda_t > umda_plain && pbil_t > pbil_plain && elapsed < 600.0,
           fmt("umda %.3f -> %.3f with transpose, pbil %.3f -> %.3f (10 seeds each), %.1f s "
               "(limit 600)",
               umda_plain, umda_t, pbil_plain, pbil_t, elapsed));

    std::vector<edabn::ArcClassification> plain_pool = arms[0].classifications;
    plain_pool.insert(plain_pool.end(), arms[2].classifications.begin(),
                      arms[2].classifications.end());
    std::vector<edabn::ArcClassification> transpose_pool = arms[1].classifications;
    transpose_pool.insert(transpose_pool.end(), arms[3].classifications.begin(),
                          arms[3].classifications.end());
    const auto plain = edabn::proportion_report(plain_pool);
    const auto transposed = edabn::proportion_report(transpose_pool);
    report(3, "transpose mutation lowers the reversed-arc share",
           transposed.reverse_pct < plain.reverse_pct,
           fmt("mean reversed share %.1f%% without mutation vs %.1f%% with transpose "
               "(%d + %d runs)",
               plain.reverse_pct, transposed.reverse_pct, plain.used, transposed.used));
}

// --- check 4: the score reproduces a hand-computable marginal likelihood ---

void check_score_unit_value() {
    edabn::Dataset d;
    d.n_vars = 1;
    d.cardinalities = {2};
    d.columns = {{0, 0, 1}};
    const double got = edabn::bde_family_score(edabn::family_counts(d, 0, {}), 1.0);
    const double want = std::log(1.0 / 16.0);
    const double diff = std::abs(got - want);
    report(4, "family score of a binary variable with records {0,0,1} equals ln(1/16)",
           diff < 1e-9, fmt("got %.15f, expected %.15f, |diff| = %.2e (limit 1e-9)", got, want, diff));
}

// --- check 5: mutation operator invariants over random matrices ---

void check_mutation_invariants() {
    const auto start = Clock::now();
    edabn::Rng rng(0xC5);
    int matrices = 0;
    bool ok = true;
    std::string why = "all invariants held";

    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(9));
        const auto m = random_digraph(n, 0.35, rng);
        ++matrices;
        for (int r10 = 0; r10 <= 10 && ok; ++r10) {
            const double rate = r10 / 10.0;
            const std::uint64_t seed = rng.next_u64();
            const auto t = edabn::transpose_mutation(m, rate, seed);
            if (t.arc_count() != m.arc_count()) {
                ok = false;
                why = "transpose changed the arc count";
                break;
            }
            if (edabn::transpose_mutation(t, rate, seed) != m) {
                ok = false;
                why = "transpose applied twice with one seed is not the identity";
                break;
            }
            const auto b = edabn::bitwise_mutation(m, rate, seed);
            if (edabn::bitwise_mutation(b, rate, seed) != m) {
                ok = false;
                why = "bitwise applied twice with one seed is not the identity";
                break;
            }
            if (!edabn::is_acyclic(edabn::repair_acyclic(t, seed)) ||
                !edabn::is_acyclic(edabn::repair_acyclic(b, seed))) {
                ok = false;
                why = "repair left a cycle";
                break;
            }
        }
        if (edabn::transpose_mutation(m, 0.0, 1) != m || edabn::bitwise_mutation(m, 0.0, 1) != m) {
            ok = false;
            why = "rate 0 is not the identity";
        }
        if (edabn::transpose_mutation(m, 1.0, 1) != m.transposed()) {
            ok = false;
            why = "rate 1 is not the full transpose";
        }
        const auto dag = edabn::repair_acyclic(m, rng.next_u64());
        if (!edabn::is_acyclic(edabn::transpose_mutation(dag, 1.0, 1))) {
            ok = false;
            why = "full transpose of a DAG is not a DAG";
        }
    }

    // the documented closure case: swapping pair {0,2} of the DAG
    // 0->1, 1->2, 0->2 yields the directed cycle 0->1->2->0
    bool closure_seen = false;
    if (ok) {
        const auto dag = edabn::AdjacencyMatrix::from_arcs(3, {{0, 1}, {1, 2}, {0, 2}});
        for (std::uint64_t seed = 0; seed < 500 && !closure_seen; ++seed) {
            const auto out = edabn::transpose_mutation(dag, 0.5, seed);
            if (out.at(2, 0) && out.at(0, 1) && out.at(1, 2)) {
                closure_seen = true;
                if (edabn::is_acyclic(out)) {
                    ok = false;
                    why = "expected the swapped 3-cycle to be cyclic";
                }
                const auto fixed = edabn::repair_acyclic(out, seed);
                if (!edabn::is_acyclic(fixed) || fixed.arc_count() != 2) {
                    ok = false;
                    why = "repair did not fix the closed 3-cycle by dropping one arc";
                }
            }
        }
        if (!closure_seen) {
            ok = false;
            why = "the 3-cycle closure case never occurred in 500 seeds";
        }
    }

    const double elapsed = seconds_since(start);
    report(5, "mutation invariants over random matrices",
           ok && elapsed < 5.0,
           fmt("%s; %d matrices x 11 rates, 3-cycle closure %s, %.2f s (limit 5)", why.c_str(),
               matrices, closure_seen ? "reproduced and repaired" : "missing", elapsed));
}

// --- checks 6 and 7: the CLI desk grid runs clean and deterministically ---

int run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check_cli_grid(const std::string& cli) {
    namespace fs = std::filesystem;
    const auto base = fs::temp_directory_path() / "edabn_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    const auto w1 = base / "w1";
    const auto w8 = base / "w8";

    const auto start = Clock::now();
    const int code1 = run_cli(cli, "run --seed 1 --workers 1 --no-timestamp --out " + w1.string());
    const double t1 = seconds_since(start);

    int failed_rows = 0, total_rows = 0;
    if (code1 == 0) {
        for (const auto& run : edabn::read_runs_csv((w1 / "runs.csv").string())) {
            ++total_rows;
            if (!run.ok) ++failed_rows;
        }
    }
    report(6, "full desk grid via the CLI finishes with zero failed runs",
           code1 == 0 && total_rows == 420 && failed_rows == 0,
           fmt("exit code %d, %d runs recorded, %d failed, %.1f s", code1, total_rows, failed_rows,
               t1));

    const int code8 = run_cli(cli, "run --seed 1 --workers 8 --no-timestamp --out " + w8.string());
    bool identical = code8 == 0;
    std::string differing = "none";
    for (const char* name : {"runs.csv", "precision.csv", "arcs.csv", "best.csv"}) {
        if (slurp(w1 / name) != slurp(w8 / name) || slurp(w1 / name).empty()) {
            identical = false;
            differing = name;
        }
    }
    report(7, "grid reports are byte-identical for 1 and 8 workers",
           identical, fmt("exit code %d, first differing file: %s", code8, differing.c_str()));
    fs::remove_all(base);
}

// --- check 8: the score is family-decomposable ---

void check_decomposability() {
    const auto net = edabn::asia_fixture();
    const auto data = edabn::forward_sample(net, 400, 88);
    edabn::Rng rng(0xDEC);
    double worst = 0.0;
    int pairs = 0;

    while (pairs < 100) {
        const auto a = edabn::repair_acyclic(random_digraph(8, 0.25, rng), rng.next_u64());
        // flip one incoming arc of one node, keeping the graph acyclic
        const int j = static_cast<int>(rng.below(8));
        int i = static_cast<int>(rng.below(8));
        if (i == j) continue;
        auto b = a;
        if (a.at(i, j)) {
            b.set(i, j, false);
        } else {
            if (edabn::has_path(a, j, i)) continue;  // adding i -> j would close a cycle
            b.set(i, j, true);
        }
        ++pairs;
        const double whole = edabn::bde_score(data, b, 1.0) - edabn::bde_score(data, a, 1.0);
        const double family =
            edabn::bde_family_score(edabn::family_counts(data, j, b.parents_of(j)), 1.0) -
            edabn::bde_family_score(edabn::family_counts(data, j, a.parents_of(j)), 1.0);
        worst = std::max(worst, std::abs(whole - family));
    }
    report(8, "score differences localize to the changed family",
           worst < 1e-9, fmt("%d structure pairs, worst |whole - family| = %.2e (limit 1e-9)",
                             pairs, worst));
}

// --- check 9: sampling and mutation frequencies match their parameters ---

void check_sampling_calibration() {
    const auto half = edabn::ProbabilityMatrix::uniform(8, 0.5);
    edabn::Rng rng(0x909);
    long arcs = 0;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) arcs += edabn::sample_cells(half, rng).arc_count();
    const double density = static_cast<double>(arcs) / (static_cast<double>(draws) * 56.0);

    auto extremes = edabn::ProbabilityMatrix::uniform(8, 0.0);
    extremes.set(0, 1, 1.0);
    extremes.set(7, 0, 1.0);
    bool exact = true;
    for (int t = 0; t < 1000; ++t) {
        const auto m = edabn::sample_cells(extremes, rng);
        if (!m.at(0, 1) || !m.at(7, 0) || m.arc_count() != 2) exact = false;
    }

    const edabn::AdjacencyMatrix empty(8);
    long flips = 0;
    for (int t = 0; t < draws; ++t)
        flips += edabn::bitwise_mutation(empty, 0.05, 0xF11D + static_cast<std::uint64_t>(t)).arc_count();
    const double mean_flips = static_cast<double>(flips) / draws;
    const double expected_flips = 56.0 * 0.05;

    const bool pass = std::abs(density - 0.5) < 0.02 && exact &&
                      std::abs(mean_flips - expected_flips) < 0.03 * expected_flips;
    report(9, "sampling and flip frequencies are calibrated",
           pass,
           fmt("cell density %.4f at p=0.5 (want 0.5 +- 0.02), extremes exact: %s, "
               "mean flips %.3f vs %.1f expected (tolerance 3%%)",
               density, exact ? "yes" : "no", mean_flips, expected_flips));
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int a = 1; a + 1 < argc; ++a)
        if (std::string(argv[a]) == "--cli") cli = argv[a + 1];

    check_small_instance_recovery();
    check_transpose_effect();
    check_score_unit_value();
    check_mutation_invariants();
    if (cli.empty()) {
        report(6, "full desk grid via the CLI finishes with zero failed runs", false,
               "no --cli path given");
        report(7, "grid reports are byte-identical for 1 and 8 workers", false,
               "no --cli path given");
    } else {
        check_cli_grid(cli);
    }
    check_decomposability();
    check_sampling_calibration();

    std::printf("ACCEPTANCE: %d/%d checks passed\n", checks_passed, checks_total);
    return checks_passed == checks_total ? 0 : 1;
}
