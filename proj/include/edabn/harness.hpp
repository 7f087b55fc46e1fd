#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "edabn/asia.hpp"
#include "edabn/bayes_network.hpp"
#include "edabn/eda.hpp"
#include "edabn/errors.hpp"
#include "edabn/metrics.hpp"
#include "edabn/network_io.hpp"
#include "edabn/random.hpp"
#include "edabn/scoring.hpp"

namespace edabn {

/// The experiment grid: cartesian product of algorithms x mutations x rates x
/// population sizes x PBIL learning rates, `repeats` seeded runs per cell.
/// Two dimensions collapse where they have no effect: mutation `none` keeps a
/// single rate-0 cell instead of one per rate, and non-PBIL algorithms keep a
/// single cell instead of one per learning rate.
struct ExperimentGrid {
    std::vector<Algorithm> algorithms = {Algorithm::univariate, Algorithm::pbil, Algorithm::mimic};
    std::vector<MutationKind> mutations = {MutationKind::none, MutationKind::bitwise,
                                           MutationKind::transpose};
    std::vector<double> rates = {0.0, 0.05, 0.10};
    std::vector<int> population_sizes = {25, 50};
    std::vector<double> pbil_rates = {0.5};
    int repeats = 10;
    int generations = 200;
    int data_size = 1000;
    double ess = 1.0;
    int elitism = 1;
    double selection_frac = 0.5;
    std::string network_path;  // empty = bundled Asia network
    std::uint64_t master_seed = 1;
    int workers = 0;  // 0 = hardware concurrency
    bool timestamp = true;

    static ExperimentGrid desk_profile() { return ExperimentGrid{}; }

    static ExperimentGrid paper_profile() {
        ExperimentGrid g;
        g.rates = {0.0, 0.01, 0.05, 0.10, 0.15, 0.20};
        g.population_sizes = {10, 25, 50, 75, 100};
        g.pbil_rates = {0.1, 0.3, 0.5, 0.7, 0.9};
        g.repeats = 30;
        g.generations = 400;
        return g;
    }

    void validate() const {
        if (algorithms.empty() || mutations.empty() || rates.empty() || population_sizes.empty() ||
            pbil_rates.empty())
            throw ConfigError("grid: every dimension list must be nonempty");
        if (repeats < 1) throw ConfigError("grid: repeats must be >= 1");
        if (generations < 1) throw ConfigError("grid: generations must be >= 1");
        if (data_size < 1) throw ConfigError("grid: data size must be >= 1");
        if (!(ess > 0.0)) throw ConfigError("grid: ess must be > 0");
        if (elitism < 0) throw ConfigError("grid: elitism must be >= 0");
        if (!(selection_frac > 0.0 && selection_frac <= 1.0))
            throw ConfigError("grid: selection fraction must be in (0,1]");
        for (double r : rates)
            if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("grid: rate out of [0,1]");
        for (double a : pbil_rates)
            if (!(a > 0.0 && a <= 1.0)) throw ConfigError("grid: pbil rate out of (0,1]");
        for (int d : population_sizes) {
            if (d < 1) throw ConfigError("grid: population size must be >= 1");
            if (elitism > d) throw ConfigError("grid: elitism exceeds population size");
        }
        if (workers < 0) throw ConfigError("grid: workers must be >= 1 (0 = auto)");
    }
};

/// One cell of the expanded grid. `rate` is meaningful only when mutation is
/// not `none` (reported as 0 otherwise); `pbil_rate` only for the PBIL
/// algorithm (reported empty otherwise).
struct GridCell {
    Algorithm algorithm = Algorithm::univariate;
    MutationKind mutation = MutationKind::none;
    double rate = 0.0;
    int pop_size = 0;
    double pbil_rate = 0.5;

    bool pbil_rate_used() const { return algorithm == Algorithm::pbil; }

    friend bool operator==(const GridCell& a, const GridCell& b) {
        return a.sort_key() == b.sort_key();
    }
    friend bool operator<(const GridCell& a, const GridCell& b) { return a.sort_key() < b.sort_key(); }

    std::tuple<std::string, std::string, double, int, double> sort_key() const {
        return {to_string(algorithm), to_string(mutation), rate, pop_size,
                pbil_rate_used() ? pbil_rate : -1.0};
    }
};

/// One executed (cell, repeat) run, the unit row of runs.csv.
struct RunRecord {
    GridCell cell;
    int repeat = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double best_bde = 0.0;
    ArcClassification cls;
    std::optional<double> precision;
    std::optional<double> skeleton_precision;
};

struct AggregateRow {
    GridCell cell;
    std::optional<double> mean_precision;
    double sd_precision = 0.0;
    std::optional<double> mean_skeleton_precision;
    double mean_correct_pct = 0.0;
    double mean_reverse_pct = 0.0;
    double mean_additional_pct = 0.0;
    double mean_best_bde = 0.0;
    int runs = 0;           // repeats minus failures
    int undefined_precision = 0;
    int failures = 0;
};

struct GridResult {
    std::vector<RunRecord> runs;
    std::vector<AggregateRow> rows;
};

inline std::vector<GridCell> expand_grid(const ExperimentGrid& grid) {
    std::vector<GridCell> cells;
    for (Algorithm algo : grid.algorithms) {
        const std::vector<double> a_list =
            algo == Algorithm::pbil ? grid.pbil_rates : std::vector<double>{grid.pbil_rates.front()};
        for (MutationKind mut : grid.mutations) {
            const std::vector<double> r_list =
                mut == MutationKind::none ? std::vector<double>{0.0} : grid.rates;
            for (double r : r_list)
                for (int d : grid.population_sizes)
                    for (double a : a_list) cells.push_back(GridCell{algo, mut, r, d, a});
        }
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells;
}

namespace detail {

inline std::uint64_t double_bits(double v) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    return bits;
}

inline std::string format_csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string sanitize_error(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return msg;
}

}  // namespace detail

/// Child seed of one (cell, repeat): a counter-style derivation folding the
/// cell coordinates and repeat index into the master seed. Per-implementation
/// deterministic; run_grid asserts all child seeds in a grid are distinct.
inline std::uint64_t child_seed(std::uint64_t master, const GridCell& cell, int repeat) {
    return derive_seed(master, {site::child_seed, static_cast<std::uint64_t>(cell.algorithm),
                                static_cast<std::uint64_t>(cell.mutation), detail::double_bits(cell.rate),
                                static_cast<std::uint64_t>(cell.pop_size),
                                detail::double_bits(cell.pbil_rate_used() ? cell.pbil_rate : 0.0),
                                static_cast<std::uint64_t>(repeat)});
}

/// Deterministic fold of run records into per-cell aggregates. Mean/sd of
/// precision cover the runs where precision is defined (sd is the sample
/// standard deviation, 0 when fewer than two values); arc proportions use
/// proportion_report's per-run normalization.
inline std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& runs) {
    std::map<std::tuple<std::string, std::string, double, int, double>, std::vector<const RunRecord*>>
        groups;
    for (const auto& run : runs) groups[run.cell.sort_key()].push_back(&run);

    std::vector<AggregateRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, members] : groups) {
        AggregateRow row;
        row.cell = members.front()->cell;
        std::vector<double> precisions, skeletons;
        std::vector<ArcClassification> classifications;
        double bde_sum = 0.0;
        for (const RunRecord* run : members) {
            if (!run->ok) {
                ++row.failures;
                continue;
            }
            ++row.runs;
            bde_sum += run->best_bde;
            classifications.push_back(run->cls);
            if (run->precision)
                precisions.push_back(*run->precision);
            else
                ++row.undefined_precision;
            if (run->skeleton_precision) skeletons.push_back(*run->skeleton_precision);
        }
        if (row.runs > 0) row.mean_best_bde = bde_sum / row.runs;
        if (!precisions.empty()) {
            double mean = 0.0;
            for (double p : precisions) mean += p;
            mean /= static_cast<double>(precisions.size());
            row.mean_precision = mean;
            if (precisions.size() > 1) {
                double ss = 0.0;
                for (double p : precisions) ss += (p - mean) * (p - mean);
                row.sd_precision = std::sqrt(ss / static_cast<double>(precisions.size() - 1));
            }
        }
        if (!skeletons.empty()) {
            double mean = 0.0;
            for (double p : skeletons) mean += p;
            row.mean_skeleton_precision = mean / static_cast<double>(skeletons.size());
        }
        if (!classifications.empty()) {
            const auto report = proportion_report(classifications);
            if (report.used > 0) {
                row.mean_correct_pct = report.correct_pct;
                row.mean_reverse_pct = report.reverse_pct;
                row.mean_additional_pct = report.additional_pct;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Execute every (cell, repeat) run of the grid on a bounded worker pool.
/// The dataset is sampled once from the truth network per (network,
/// data-size, master-seed) and shared; family scores are cached across runs.
/// Results land in slots indexed by job, so the output is identical for every
/// worker count and schedule. Per-run failures are recorded in the row and
/// never abort the grid.
inline GridResult run_grid(const ExperimentGrid& grid) {
    grid.validate();
    const BayesNetwork net =
        grid.network_path.empty() ? asia_fixture() : load_network(grid.network_path);
    const Dataset data = forward_sample(net, grid.data_size, derive_seed(grid.master_seed, {site::dataset}));

    const auto cells = expand_grid(grid);
    struct Job {
        GridCell cell;
        int repeat;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    jobs.reserve(cells.size() * static_cast<std::size_t>(grid.repeats));
    std::unordered_set<std::uint64_t> seed_set;
    for (const auto& cell : cells) {
        for (int rep = 0; rep < grid.repeats; ++rep) {
            const std::uint64_t seed = child_seed(grid.master_seed, cell, rep);
            if (!seed_set.insert(seed).second)
                throw std::logic_error("child seed collision across the grid");
            jobs.push_back(Job{cell, rep, seed});
        }
    }

    ScoreCache cache;
    const double ess = grid.ess;
    FitnessFn fitness = [&](const AdjacencyMatrix& genome) {
        return bde_score(data, genome, ess, cache);
    };

    GridResult result;
    result.runs.assign(jobs.size(), RunRecord{});

    auto execute = [&](const Job& job) {
        RunRecord record;
        record.cell = job.cell;
        record.repeat = job.repeat;
        record.seed = job.seed;
        try {
            EdaConfig config;
            config.algorithm = job.cell.algorithm;
            config.population_size = job.cell.pop_size;
            config.selection_size =
                std::max(1, static_cast<int>(job.cell.pop_size * grid.selection_frac));
            config.generations = grid.generations;
            config.mutation = job.cell.mutation;
            config.mutation_rate = job.cell.rate;
            config.pbil_learning_rate = job.cell.pbil_rate;
            config.elitism = grid.elitism;
            config.seed = job.seed;
            const RunResult run = run_eda(config, data, fitness);
            record.best_bde = *run.best.fitness;
            record.cls = classify_arcs(run.best.genome, net.structure());
            record.precision = precision(run.best.genome, net.structure());
            record.skeleton_precision = skeleton_precision(run.best.genome, net.structure());
            record.ok = true;
        } catch (const std::exception& e) {
            record.ok = false;
            record.error = detail::sanitize_error(e.what());
        }
        return record;
    };

    int workers = grid.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<int>(workers, static_cast<int>(jobs.size()));

    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) result.runs[j] = execute(jobs[j]);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();)
                result.runs[j] = execute(jobs[j]);
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    result.rows = aggregate(result.runs);
    return result;
}

namespace detail {

inline std::string csv_cell_prefix(const GridCell& cell) {
    std::string out = to_string(cell.algorithm);
    out += ',';
    out += to_string(cell.mutation);
    out += ',';
    out += format_csv_double(cell.rate);
    out += ',';
    out += std::to_string(cell.pop_size);
    out += ',';
    if (cell.pbil_rate_used()) out += format_csv_double(cell.pbil_rate);
    return out;
}

inline void write_header(std::ofstream& out, bool timestamp) {
    if (!timestamp) return;
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    out << "# generated " << buf << "\n";
}

}  // namespace detail

/// Write precision.csv, arcs.csv and runs.csv into `out_dir`. UTF-8, comma
/// separated, '.' decimal separator, one header row, rows sorted
/// lexicographically by cell identifiers. Doubles carry 17 significant digits
/// so runs.csv re-aggregates to the exact published aggregates. With
/// `timestamp` false the files are byte-stable across reruns.
inline void write_reports(const GridResult& result, const std::string& out_dir, bool timestamp) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    auto open = [&](const char* name) {
        std::ofstream out(fs::path(out_dir) / name);
        if (!out) throw IoError(std::string("cannot write ") + name + " in " + out_dir);
        detail::write_header(out, timestamp);
        return out;
    };

    {
        auto out = open("runs.csv");
        out << "algorithm,mutation,rate,pop_size,pbil_rate,repeat,seed,status,error,best_bde,"
               "arcs_inferred,correct,reverse,additional,missing,precision,skeleton_precision\n";
        auto sorted = result.runs;
        std::stable_sort(sorted.begin(), sorted.end(), [](const RunRecord& a, const RunRecord& b) {
            return std::tuple(a.cell.sort_key(), a.repeat) < std::tuple(b.cell.sort_key(), b.repeat);
        });
        for (const auto& run : sorted) {
            out << detail::csv_cell_prefix(run.cell) << ',' << run.repeat << ',' << run.seed << ',';
            if (!run.ok) {
                out << "failed," << run.error << ",,,,,,,,\n";
                continue;
            }
            out << "ok,," << detail::format_csv_double(run.best_bde) << ',' << run.cls.inferred_total()
                << ',' << run.cls.correct << ',' << run.cls.reverse << ',' << run.cls.additional << ','
                << run.cls.missing << ',';
            out << (run.precision ? detail::format_csv_double(*run.precision) : "undefined") << ',';
            out << (run.skeleton_precision ? detail::format_csv_double(*run.skeleton_precision)
                                           : "undefined")
                << "\n";
        }
    }
    {
        auto out = open("precision.csv");
        out << "algorithm,mutation,rate,pop_size,pbil_rate,mean_precision,sd_precision,"
               "mean_skeleton_precision,n_runs,n_undefined,n_failed\n";
        for (const auto& row : result.rows) {
            out << detail::csv_cell_prefix(row.cell) << ',';
            out << (row.mean_precision ? detail::format_csv_double(*row.mean_precision) : "undefined")
                << ',' << detail::format_csv_double(row.sd_precision) << ','
                << (row.mean_skeleton_precision
                        ? detail::format_csv_double(*row.mean_skeleton_precision)
                        : "undefined")
                << ',' << row.runs << ',' << row.undefined_precision << ',' << row.failures << "\n";
        }
    }
    {
        auto out = open("arcs.csv");
        out << "algorithm,mutation,rate,pop_size,pbil_rate,mean_correct_pct,mean_reverse_pct,"
               "mean_additional_pct,n_used,n_excluded,mean_best_bde\n";
        for (const auto& row : result.rows) {
            const int used = row.runs - row.undefined_precision;
            out << detail::csv_cell_prefix(row.cell) << ','
                << detail::format_csv_double(row.mean_correct_pct) << ','
                << detail::format_csv_double(row.mean_reverse_pct) << ','
                << detail::format_csv_double(row.mean_additional_pct) << ',' << used << ','
                << row.undefined_precision << ',' << detail::format_csv_double(row.mean_best_bde)
                << "\n";
        }
    }
    {
        // Best cell per (algorithm, mutation, rate): the max-over-(d, a)
        // reading of a per-row figure, alongside the per-cell means above.
        auto out = open("best.csv");
        out << "algorithm,mutation,rate,best_mean_precision,at_pop_size,at_pbil_rate\n";
        std::map<std::tuple<std::string, std::string, double>, const AggregateRow*> best;
        for (const auto& row : result.rows) {
            if (!row.mean_precision) continue;
            const auto key = std::tuple(std::string(to_string(row.cell.algorithm)),
                                        std::string(to_string(row.cell.mutation)), row.cell.rate);
            auto it = best.find(key);
            if (it == best.end() || *row.mean_precision > *it->second->mean_precision)
                best[key] = &row;
        }
        for (const auto& [key, row] : best) {
            out << std::get<0>(key) << ',' << std::get<1>(key) << ','
                << detail::format_csv_double(std::get<2>(key)) << ','
                << detail::format_csv_double(*row->mean_precision) << ',' << row->cell.pop_size << ',';
            if (row->cell.pbil_rate_used()) out << detail::format_csv_double(row->cell.pbil_rate);
            out << "\n";
        }
    }
}

/// Read runs.csv back into records (the inverse of write_reports's runs.csv),
/// so every aggregate is recomputable from the per-run file.
inline std::vector<RunRecord> read_runs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<RunRecord> runs;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;  // column order is fixed by write_reports
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 17) fields.emplace_back();
        RunRecord run;
        const std::string& algo = fields[0];
        run.cell.algorithm = algo == "pbil" ? Algorithm::pbil
                             : algo == "mimic" ? Algorithm::mimic
                                               : Algorithm::univariate;
        const std::string& mut = fields[1];
        run.cell.mutation = mut == "bitwise" ? MutationKind::bitwise
                            : mut == "transpose" ? MutationKind::transpose
                                                 : MutationKind::none;
        run.cell.rate = std::stod(fields[2]);
        run.cell.pop_size = std::stoi(fields[3]);
        run.cell.pbil_rate = fields[4].empty() ? 0.5 : std::stod(fields[4]);
        run.repeat = std::stoi(fields[5]);
        run.seed = std::stoull(fields[6]);
        run.ok = fields[7] == "ok";
        run.error = fields[8];
        if (run.ok) {
            run.best_bde = std::stod(fields[9]);
            run.cls.correct = std::stoi(fields[11]);
            run.cls.reverse = std::stoi(fields[12]);
            run.cls.additional = std::stoi(fields[13]);
            run.cls.missing = std::stoi(fields[14]);
            if (fields[15] != "undefined") run.precision = std::stod(fields[15]);
            if (fields[16] != "undefined") run.skeleton_precision = std::stod(fields[16]);
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

}  // namespace edabn
