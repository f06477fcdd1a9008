#include "qcd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "qcd/helstrom.hpp"

namespace qcd {

double entry_scale(ChannelFamily family) {
    return family == ChannelFamily::AmplitudeDamping ? std::numbers::pi / 2.0 : 1.0;
}

EtaPoint EtaPoint::from_entry(ChannelFamily family, double entry0, double entry1) {
    const double s = entry_scale(family);
    return {entry0 * s, entry1 * s, entry0, entry1};
}

GridSpec GridSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw ConfigError("grid must look like MIN:MAX:STEPS, got '" + text + "'");
    GridSpec g;
    try {
        std::size_t used = 0;
        g.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("");
        g.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("");
        g.steps = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ConfigError("grid must look like MIN:MAX:STEPS, got '" + text + "'");
    }
    return g;
}

std::string GridSpec::to_string() const {
    std::ostringstream os;
    os.precision(15);
    os << min << ':' << max << ':' << steps;
    return os.str();
}

std::vector<double> GridSpec::values() const {
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) v[static_cast<std::size_t>(i)] = min + (max - min) * i / (steps - 1);
    v.back() = max;
    return v;
}

OutputFormat parse_format(const std::string& name) {
    std::string key;
    for (char ch : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (key == "csv") return OutputFormat::Csv;
    if (key == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

std::string to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

void ExperimentConfig::validate() const {
    const double hi = eta_max(family);
    auto check_eta = [&](double eta, const char* what) {
        if (!(eta >= 0.0 && eta <= hi))
            throw ConfigError(std::string(what) + " = " + std::to_string(eta) + " outside the valid range of " +
                              std::string(to_string(family)));
    };
    if (!points.empty() && grid) throw ConfigError("give either explicit points or a grid, not both");
    for (const auto& p : points) {
        check_eta(p.eta0, "eta0");
        check_eta(p.eta1, "eta1");
        if (!(p.eta0 > p.eta1))
            throw ConfigError("every point needs eta0 > eta1 (got " + std::to_string(p.entry0) + ", " +
                              std::to_string(p.entry1) + ")");
    }
    if (grid) {
        if (grid->steps < 2) throw ConfigError("grid needs at least 2 steps");
        if (!(grid->min < grid->max)) throw ConfigError("grid needs MIN < MAX");
        const double s = entry_scale(family);
        check_eta(grid->min * s, "grid MIN");
        check_eta(grid->max * s, "grid MAX");
    }
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    if (strategies.empty()) throw ConfigError("at least one strategy is required");
    for (std::size_t i = 0; i < strategies.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (strategies[i] == strategies[j]) throw ConfigError("strategy listed twice");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    const auto& o = optimizer;
    if (!(o.ftol > 0) || !(o.xtol > 0) || o.max_evals_per_start < 1 || o.max_starts < 1 ||
        !(o.initial_step > 0 && o.initial_step <= 1) || o.max_restarts < 0)
        throw ConfigError("invalid optimizer settings");
}

std::vector<EtaPoint> ExperimentConfig::resolved_points() const {
    if (!points.empty()) return points;
    const GridSpec g = grid.value_or(GridSpec{});
    const auto values = g.values();
    std::vector<EtaPoint> out;
    for (double a : values)
        for (double b : values)
            if (a > b) out.push_back(EtaPoint::from_entry(family, a, b));
    return out;
}

void ResultRow::validate() const {
    if (!(p_succ >= 0.5 - 1e-12 && p_succ <= 1.0 + 1e-12))
        throw std::invalid_argument("ResultRow: p_succ " + std::to_string(p_succ) + " outside [0.5, 1]");
    if (n < 1) throw std::invalid_argument("ResultRow: n must be >= 1");
}

void DiffRow::validate() const {
    for (double p : {p_bayes, p_markov})
        if (!(p >= 0.5 - 1e-12 && p <= 1.0 + 1e-12))
            throw std::invalid_argument("DiffRow: success probability outside [0.5, 1]");
}

double round15(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

InputSchedule Optimum::schedule() const {
    if (mode == InputMode::Flat) return InputSchedule::flat(r);
    return InputSchedule::adaptive(kind, shots, r);
}

namespace {

// Grows an optimum's parameter vector by one shot in its own layout: the new
// shot reuses the input of the shot before it.
std::vector<double> extend_one_shot(const Optimum& o, int from_shots) {
    std::vector<double> r = o.r;
    if (o.mode == InputMode::Flat) {
        r.push_back(r.back());
    } else if (o.kind == StrategyKind::Bayesian) {
        const std::size_t first = (std::size_t{1} << from_shots) - 1;
        for (std::size_t i = first; i < 2 * first + 1; ++i) r.push_back(r[(i - 1) / 2]);
    } else {
        if (from_shots == 1) {
            r.push_back(r[0]);
            r.push_back(r[0]);
        } else {
            const std::size_t last = 1 + 2 * static_cast<std::size_t>(from_shots - 2);
            r.push_back(r[last]);
            r.push_back(r[last + 1]);
        }
    }
    return r;
}

// Converts a seed optimum into a start point for (kind, shots, mode); empty if
// the layouts are incompatible.
std::vector<double> seed_point(const Optimum& seed, StrategyKind kind, int shots, InputMode mode) {
    if (seed.shots > shots) return {};
    Optimum grown = seed;
    while (grown.shots < shots) {
        grown.r = extend_one_shot(grown, grown.shots);
        ++grown.shots;
    }
    if (mode == InputMode::Flat) return grown.mode == InputMode::Flat ? grown.r : std::vector<double>{};
    if (grown.mode == InputMode::Flat)
        return InputSchedule::adaptive_from_flat(kind, InputSchedule::flat(grown.r)).r;
    if (grown.kind == kind) return grown.r;
    if (grown.kind == StrategyKind::Markovian && kind == StrategyKind::Bayesian) {
        const InputSchedule markov = grown.schedule();
        std::vector<double> r(InputSchedule::adaptive_size(kind, shots));
        r[0] = markov.markovian_r(0, 0);
        for (std::size_t h = 1; h < r.size(); ++h) {
            int depth = 0;
            while ((std::size_t{2} << depth) - 1 <= h) ++depth;
            // Heap node h at depth >= 1 was reached with last outcome (h - 1) % 2.
            r[h] = markov.markovian_r(depth, static_cast<int>((h - 1) % 2));
        }
        return r;
    }
    return {};
}

}  // namespace

Optimum optimize_strategy(StrategyKind kind, const ChannelPair& pair, int shots, InputMode mode,
                          const OptConfig& cfg, const std::vector<const Optimum*>& seeds) {
    if (kind == StrategyKind::Global) mode = InputMode::Flat;
    const std::size_t dim = mode == InputMode::Flat ? static_cast<std::size_t>(shots)
                                                    : InputSchedule::adaptive_size(kind, shots);
    OptConfig local = cfg;
    for (const Optimum* s : seeds) {
        if (!s) continue;
        auto p = seed_point(*s, kind, shots, mode);
        if (p.size() == dim && std::find(local.extra_starts.begin(), local.extra_starts.end(), p) ==
                                   local.extra_starts.end())
            local.extra_starts.push_back(std::move(p));
    }

    const auto start = std::chrono::steady_clock::now();
    Objective f;
    if (mode == InputMode::Flat) {
        f = [&](std::span<const double> x) {
            return success_probability(kind, pair, InputSchedule::flat({x.begin(), x.end()}));
        };
    } else {
        f = [&](std::span<const double> x) {
            return success_probability(kind, pair, InputSchedule::adaptive(kind, shots, {x.begin(), x.end()}));
        };
    }
    const OptResult res = maximize(f, BoxDomain::unit(dim), local);
    Optimum out;
    out.kind = kind;
    out.mode = mode;
    out.shots = shots;
    out.p_succ = res.best_value;
    out.r = res.best_point;
    out.evaluations = res.evaluations;
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

namespace {

// Runs task(i) for i in [0, count) on `jobs` threads. The first exception is
// rethrown after all workers stop.
template <typename Task>
void parallel_for(std::size_t count, int jobs, Task task) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; !failed && (i = next++) < count;) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed = true;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

OptConfig optimizer_for(const ExperimentConfig& cfg) {
    OptConfig o = cfg.optimizer;
    o.seed = cfg.seed;
    return o;
}

InputMode effective_mode(StrategyKind kind, int shots, InputMode requested) {
    if (kind == StrategyKind::Global || requested == InputMode::Flat) return InputMode::Flat;
    return InputSchedule::adaptive_size(kind, shots) > kMaxAdaptiveParams ? InputMode::Flat : InputMode::Adaptive;
}

struct PointOutput {
    std::vector<ResultRow> rows;
    std::vector<std::string> warnings;
};

std::string point_label(ChannelFamily family, const EtaPoint& p) {
    std::ostringstream os;
    os.precision(6);
    os << to_string(family) << " (" << p.entry0 << ", " << p.entry1 << ")";
    return os.str();
}

PointOutput curve_point(const ExperimentConfig& cfg, const EtaPoint& point) {
    PointOutput out;
    const ChannelPair pair = ChannelPair::make(cfg.family, point.eta0, point.eta1);
    const OptConfig opt = optimizer_for(cfg);
    auto wanted = [&](StrategyKind k) {
        return std::find(cfg.strategies.begin(), cfg.strategies.end(), k) != cfg.strategies.end();
    };
    // Cheapest strategy first, so each optimum can seed the next one up.
    const StrategyKind order[] = {StrategyKind::Markovian, StrategyKind::Bayesian, StrategyKind::Global};
    std::optional<Optimum> prev[3], prev_flat[3];
    for (int n = 1; n <= cfg.n_max; ++n) {
        std::optional<Optimum> cur[3], cur_flat[3];
        for (int k = 0; k < 3; ++k) {
            const StrategyKind kind = order[k];
            if (!wanted(kind)) continue;
            const int cap = kind == StrategyKind::Global ? kGlobalMaxShots
                            : kind == StrategyKind::Bayesian ? kBayesianMaxShots
                                                             : cfg.n_max;
            if (n > cap) {
                out.warnings.push_back(std::string(to_string(kind)) + " strategy skipped at " +
                                       point_label(cfg.family, point) + ", n=" + std::to_string(n) +
                                       ": above its cap of " + std::to_string(cap) + " shots");
                continue;
            }
            const InputMode mode = effective_mode(kind, n, cfg.input_mode);
            if (mode != cfg.input_mode && kind != StrategyKind::Global)
                out.warnings.push_back(std::string(to_string(kind)) + " at n=" + std::to_string(n) +
                                       " would need more than " + std::to_string(kMaxAdaptiveParams) +
                                       " adaptive inputs; using flat inputs");
            std::vector<const Optimum*> seeds;
            if (prev[k]) seeds.push_back(&*prev[k]);
            for (int j = 0; j < k; ++j)
                if (cur[j]) seeds.push_back(&*cur[j]);
            if (mode == InputMode::Adaptive) {
                // The flat optimum lies inside the adaptive space; starting from
                // it keeps adaptive >= flat.
                std::vector<const Optimum*> flat_seeds;
                if (prev_flat[k]) flat_seeds.push_back(&*prev_flat[k]);
                for (int j = 0; j < k; ++j)
                    if (cur_flat[j]) flat_seeds.push_back(&*cur_flat[j]);
                cur_flat[k] = optimize_strategy(kind, pair, n, InputMode::Flat, opt, flat_seeds);
                seeds.push_back(&*cur_flat[k]);
            }
            cur[k] = optimize_strategy(kind, pair, n, mode, opt, seeds);
        }
        for (StrategyKind kind : cfg.strategies) {
            const int k = static_cast<int>(std::find(std::begin(order), std::end(order), kind) - std::begin(order));
            if (!cur[k]) continue;
            const Optimum& o = *cur[k];
            ResultRow row;
            row.family = cfg.family;
            row.eta0 = round15(point.eta0);
            row.eta1 = round15(point.eta1);
            row.n = n;
            row.strategy = kind;
            row.input_mode = o.mode;
            row.p_succ = round15(o.p_succ);
            for (double v : o.r) row.r.push_back(round15(v));
            row.evaluations = o.evaluations;
            row.wall_time_s = cfg.timing ? round15(o.wall_time_s) : 0.0;
            row.validate();
            out.rows.push_back(std::move(row));
        }
        for (int k = 0; k < 3; ++k) {
            if (cur[k]) prev[k] = std::move(cur[k]);
            if (cur_flat[k]) prev_flat[k] = std::move(cur_flat[k]);
        }
    }
    return out;
}

}  // namespace

std::vector<ResultRow> cmd_curve(const ExperimentConfig& cfg, WarningSink warn) {
    cfg.validate();
    const auto points = cfg.resolved_points();
    std::vector<PointOutput> outputs(points.size());
    parallel_for(points.size(), cfg.jobs, [&](std::size_t i) { outputs[i] = curve_point(cfg, points[i]); });
    std::vector<ResultRow> rows;
    for (auto& o : outputs) {
        if (warn)
            for (const auto& w : o.warnings) warn(w);
        rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    }
    return rows;
}

std::vector<DiffRow> cmd_sweep_diff(const ExperimentConfig& cfg, WarningSink warn) {
    cfg.validate();
    const auto points = cfg.resolved_points();
    const OptConfig opt = optimizer_for(cfg);
    const InputMode mode_b = effective_mode(StrategyKind::Bayesian, kSweepShots, cfg.input_mode);
    const InputMode mode_m = effective_mode(StrategyKind::Markovian, kSweepShots, cfg.input_mode);
    std::vector<DiffRow> rows(points.size());
    parallel_for(points.size(), cfg.jobs, [&](std::size_t i) {
        const ChannelPair pair = ChannelPair::make(cfg.family, points[i].eta0, points[i].eta1);
        std::optional<Optimum> flat_m, flat_b;
        std::vector<const Optimum*> seeds_m, seeds_b;
        if (mode_m == InputMode::Adaptive) {
            flat_m = optimize_strategy(StrategyKind::Markovian, pair, kSweepShots, InputMode::Flat, opt);
            seeds_m.push_back(&*flat_m);
        }
        const Optimum markov = optimize_strategy(StrategyKind::Markovian, pair, kSweepShots, mode_m, opt, seeds_m);
        seeds_b.push_back(&markov);
        if (mode_b == InputMode::Adaptive) {
            flat_b = optimize_strategy(StrategyKind::Bayesian, pair, kSweepShots, InputMode::Flat, opt,
                                       {flat_m ? &*flat_m : nullptr});
            seeds_b.push_back(&*flat_b);
        }
        const Optimum bayes = optimize_strategy(StrategyKind::Bayesian, pair, kSweepShots, mode_b, opt, seeds_b);
        DiffRow row{round15(points[i].eta0), round15(points[i].eta1), round15(bayes.p_succ), round15(markov.p_succ),
                    round15(bayes.p_succ - markov.p_succ)};
        row.validate();
        rows[i] = row;
    });
    if (warn && points.empty()) warn("sweep-diff: the grid has no cells with eta0 > eta1");
    return rows;
}

double one_shot_closed_form(ChannelFamily family, double eta0, double eta1) {
    switch (family) {
        case ChannelFamily::Depolarizing: return 0.5 * (1.0 + std::abs(eta0 - eta1) / 2.0);
        case ChannelFamily::BitFlip: return 0.5 * (1.0 + std::abs(eta0 - eta1));
        case ChannelFamily::AmplitudeDamping: {
            const double c0 = std::cos(eta0), c1 = std::cos(eta1);
            const double g = c0 + c1;
            if (g < 1.0 / std::sqrt(2.0)) return 0.25 * (2.0 + std::abs(c1 - c0) / std::sqrt(1.0 - g * g));
            const double s_hi = std::sin(std::max(eta0, eta1)), c_lo = std::cos(std::min(eta0, eta1));
            return 0.5 * (s_hi * s_hi + c_lo * c_lo);
        }
    }
    throw std::invalid_argument("one_shot_closed_form: unknown family");
}

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> validation_suites() {
    return {"oneshot-closed-forms", "strategy-reductions", "monte-carlo", "povm-properties"};
}

namespace {

constexpr ChannelFamily kFamilies[] = {ChannelFamily::Depolarizing, ChannelFamily::BitFlip,
                                       ChannelFamily::AmplitudeDamping};

CheckResult upper_check(std::string name, double deviation, double tolerance) {
    return {std::move(name), deviation, tolerance, deviation <= tolerance};
}

DensityMatrix random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double v[3] = {normal(rng), normal(rng), normal(rng)};
    const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const double radius = std::cbrt(unit(rng)) / std::max(len, 1e-300);
    for (double& x : v) x *= radius;
    return DensityMatrix(ComplexMatrix{{0.5 * (1 + v[2]), Complex(0.5 * v[0], -0.5 * v[1])},
                                       {Complex(0.5 * v[0], 0.5 * v[1]), 0.5 * (1 - v[2])}});
}

ChannelPair random_pair(std::mt19937_64& rng, ChannelFamily family) {
    std::uniform_real_distribution<double> eta(0.0, eta_max(family));
    double a = eta(rng), b = eta(rng);
    if (a < b) std::swap(a, b);
    return ChannelPair::make(family, a, b);
}

SuiteReport suite_oneshot(std::uint64_t seed) {
    SuiteReport rep{"oneshot-closed-forms", {}};
    OptConfig opt;
    opt.seed = seed;
    for (ChannelFamily fam : kFamilies) {
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i)
            for (int j = 1; j < i; ++j) {
                const auto p = EtaPoint::from_entry(fam, i / 20.0, j / 20.0);
                const auto pair = ChannelPair::make(fam, p.eta0, p.eta1);
                const Optimum o = optimize_strategy(StrategyKind::Markovian, pair, 1, InputMode::Flat, opt);
                worst = std::max(worst, std::abs(o.p_succ - one_shot_closed_form(fam, p.eta0, p.eta1)));
            }
        rep.checks.push_back(upper_check(std::string(to_string(fam)) + " optimized one-shot vs closed form", worst, 1e-6));
    }
    return rep;
}

SuiteReport suite_reductions(std::uint64_t seed) {
    SuiteReport rep{"strategy-reductions", {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double one_shot = 0.0, two_shot = 0.0, ordering = 0.0;
    for (int t = 0; t < 50; ++t) {
        const ChannelFamily fam = kFamilies[t % 3];
        const ChannelPair pair = random_pair(rng, fam);
        const double r = unit(rng);
        const auto one = InputSchedule::flat({r});
        const double helstrom =
            optimal_povm({0.5, channel_output(pair.c0, {r, 0.0}), channel_output(pair.c1, {r, 0.0})}).p_succ;
        for (StrategyKind k : {StrategyKind::Global, StrategyKind::Bayesian, StrategyKind::Markovian})
            one_shot = std::max(one_shot, std::abs(success_probability(k, pair, one) - helstrom));
        const auto two = InputSchedule::flat({unit(rng), unit(rng)});
        two_shot = std::max(two_shot, std::abs(success_probability(StrategyKind::Bayesian, pair, two) -
                                               success_probability(StrategyKind::Markovian, pair, two)));
        const auto three = InputSchedule::flat({unit(rng), unit(rng), unit(rng)});
        ordering = std::max(ordering, success_probability(StrategyKind::Bayesian, pair, three) -
                                          success_probability(StrategyKind::Global, pair, three));
    }
    rep.checks.push_back(upper_check("one shot: all strategies equal Helstrom", one_shot, 1e-12));
    rep.checks.push_back(upper_check("two shots: Bayesian equals Markovian", two_shot, 1e-12));
    rep.checks.push_back(upper_check("three shots: global >= Bayesian (excess)", std::max(ordering, 0.0), 1e-9));
    return rep;
}

SuiteReport suite_monte_carlo(std::uint64_t seed) {
    SuiteReport rep{"monte-carlo", {}};
    constexpr long kTrials = 100000;
    const auto sched = InputSchedule::flat({0.3, 0.7, 0.5});
    std::uint64_t stream = 0;
    for (ChannelFamily fam : kFamilies)
        for (auto [e0, e1] : {std::pair{0.75, 0.4}, std::pair{0.95, 0.6}}) {
            const auto p = EtaPoint::from_entry(fam, e0, e1);
            const auto pair = ChannelPair::make(fam, p.eta0, p.eta1);
            for (StrategyKind k : {StrategyKind::Global, StrategyKind::Bayesian, StrategyKind::Markovian}) {
                const double exact = success_probability(k, pair, sched);
                const double freq = simulate_protocol(k, pair, sched, kTrials, seed, stream++);
                const double sigma = std::sqrt(exact * (1 - exact) / kTrials);
                std::ostringstream name;
                name << to_string(k) << ' ' << point_label(fam, p) << " n=3";
                rep.checks.push_back(upper_check(name.str(), std::abs(freq - exact), 3 * sigma));
            }
        }
    return rep;
}

SuiteReport suite_povm(std::uint64_t seed) {
    SuiteReport rep{"povm-properties", {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double completeness = 0.0, negativity = 0.0, achieved = 0.0, below_oracle = 0.0, above_oracle = 0.0,
           below_trivial = 0.0;
    for (int t = 0; t < 200; ++t) {
        const WeightedPair w{unit(rng), random_state(rng), random_state(rng)};
        const auto res = optimal_povm(w);
        const auto& m = res.povm;
        completeness = std::max(completeness, frobenius_distance(m.pi0 + m.pi1, ComplexMatrix::identity(2)));
        negativity = std::max({negativity, -eigenvalues_hermitian(m.pi0).back(), -eigenvalues_hermitian(m.pi1).back()});
        const double value = w.p0 * outcome_probs(w.rho0, m).first + (1 - w.p0) * outcome_probs(w.rho1, m).second;
        achieved = std::max(achieved, std::abs(value - res.p_succ));
        const double oracle = brute_force_povm(w, 256);
        below_oracle = std::max(below_oracle, oracle - res.p_succ);
        above_oracle = std::max(above_oracle, res.p_succ - oracle);
        below_trivial = std::max(below_trivial, std::max(w.p0, 1 - w.p0) - res.p_succ);
    }
    rep.checks.push_back(upper_check("completeness |Pi0 + Pi1 - I|", completeness, 1e-10));
    rep.checks.push_back(upper_check("positivity (most negative eigenvalue)", std::max(negativity, 0.0), 1e-10));
    rep.checks.push_back(upper_check("reported value equals achieved value", achieved, 1e-12));
    rep.checks.push_back(upper_check("brute-force grid exceeds Helstrom by", std::max(below_oracle, 0.0), 1e-9));
    rep.checks.push_back(upper_check("Helstrom exceeds brute-force grid by", std::max(above_oracle, 0.0), 1e-3));
    rep.checks.push_back(upper_check("trivial guess exceeds Helstrom by", std::max(below_trivial, 0.0), 1e-12));
    return rep;
}

}  // namespace

SuiteReport cmd_validate(const std::string& suite, std::uint64_t seed) {
    if (suite == "oneshot-closed-forms") return suite_oneshot(seed);
    if (suite == "strategy-reductions") return suite_reductions(seed);
    if (suite == "monte-carlo") return suite_monte_carlo(seed);
    if (suite == "povm-properties") return suite_povm(seed);
    std::string known;
    for (const auto& s : validation_suites()) known += (known.empty() ? "" : ", ") + s;
    throw ConfigError("unknown validation suite '" + suite + "' (known: " + known + ")");
}

}  // namespace qcd
