#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcd/channels.hpp"
#include "qcd/optimizer.hpp"
#include "qcd/strategies.hpp"

namespace qcd {

inline constexpr const char* kToolVersion = "0.1.0";

/// Raised for any invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A channel-parameter point. `entry0/entry1` are the numbers as the user
/// wrote them: fractions of pi/2 for amplitude damping, raw eta otherwise.
struct EtaPoint {
    double eta0 = 0.0;
    double eta1 = 0.0;
    double entry0 = 0.0;
    double entry1 = 0.0;

    static EtaPoint from_entry(ChannelFamily family, double entry0, double entry1);
};

/// Entry-unit scale: pi/2 for amplitude damping, 1 otherwise.
double entry_scale(ChannelFamily family);

/// Grid of `steps` evenly spaced entry values from min to max (inclusive)
/// on both axes.
struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int steps = 50;

    /// Parses "MIN:MAX:STEPS".
    static GridSpec parse(const std::string& text);
    std::string to_string() const;
    std::vector<double> values() const;
};

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat format);

struct ExperimentConfig {
    ChannelFamily family = ChannelFamily::Depolarizing;
    std::vector<EtaPoint> points;
    std::optional<GridSpec> grid;
    int n_max = 6;
    std::vector<StrategyKind> strategies{StrategyKind::Global, StrategyKind::Bayesian, StrategyKind::Markovian};
    InputMode input_mode = InputMode::Flat;
    OptConfig optimizer;
    std::uint64_t seed = 0;
    std::string out;  // empty: stdout
    OutputFormat format = OutputFormat::Csv;
    int jobs = 1;
    /// Record per-row wall time. Off by default so output is byte-identical
    /// across runs; the column is then written as 0.
    bool timing = false;

    /// Throws ConfigError.
    void validate() const;

    /// Explicit points if given, otherwise the grid cells with eta0 > eta1
    /// (eta0 outer, both ascending). With neither, the default 50x50 grid.
    std::vector<EtaPoint> resolved_points() const;
};

/// Overlays the keys present in `json_text` onto `cfg`. Throws ConfigError.
void apply_config_json(ExperimentConfig& cfg, const std::string& json_text);
/// The config as a single-line JSON object (output path and jobs omitted,
/// since neither affects results).
std::string config_echo(const ExperimentConfig& cfg);

struct ResultRow {
    ChannelFamily family = ChannelFamily::Depolarizing;
    double eta0 = 0.0;
    double eta1 = 0.0;
    int n = 1;
    StrategyKind strategy = StrategyKind::Global;
    InputMode input_mode = InputMode::Flat;
    double p_succ = 0.5;
    std::vector<double> r;
    long evaluations = 0;
    double wall_time_s = 0.0;

    /// Throws std::invalid_argument unless p_succ lies in [0.5, 1].
    void validate() const;
    bool operator==(const ResultRow&) const = default;
};

struct DiffRow {
    double eta0 = 0.0;
    double eta1 = 0.0;
    double p_bayes = 0.5;
    double p_markov = 0.5;
    double diff = 0.0;

    void validate() const;
    bool operator==(const DiffRow&) const = default;
};

/// Shot count used by sweep-diff.
inline constexpr int kSweepShots = 3;
/// Largest adaptive parameter count handed to the optimizer.
inline constexpr std::size_t kMaxAdaptiveParams = 64;

/// Optimized success probability of one strategy at one point.
struct Optimum {
    StrategyKind kind = StrategyKind::Markovian;
    InputMode mode = InputMode::Flat;
    int shots = 1;
    double p_succ = 0.5;
    std::vector<double> r;
    long evaluations = 0;
    double wall_time_s = 0.0;

    InputSchedule schedule() const;
};

/// Maximizes `kind` over the inputs at `shots`. `seeds` are previously found
/// optima (any kind, any shot count <= shots); each is converted to this
/// kind's layout where possible and used as an extra start.
Optimum optimize_strategy(StrategyKind kind, const ChannelPair& pair, int shots, InputMode mode,
                          const OptConfig& cfg, const std::vector<const Optimum*>& seeds = {});

/// Callback for non-fatal warnings (skipped rows, mode fallbacks).
using WarningSink = std::function<void(const std::string&)>;

std::vector<ResultRow> cmd_curve(const ExperimentConfig& cfg, WarningSink warn = nullptr);
std::vector<DiffRow> cmd_sweep_diff(const ExperimentConfig& cfg, WarningSink warn = nullptr);

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed() const;
};

std::vector<std::string> validation_suites();
/// Throws ConfigError for an unknown suite name.
SuiteReport cmd_validate(const std::string& suite, std::uint64_t seed);

/// Closed-form optimal one-shot success probability of each family.
double one_shot_closed_form(ChannelFamily family, double eta0, double eta1);

/// Rounds to 15 significant digits (the serialized precision).
double round15(double x);

void write_rows(std::ostream& os, const std::vector<ResultRow>& rows, OutputFormat format,
                const std::string& command, const ExperimentConfig& cfg);
void write_diff_rows(std::ostream& os, const std::vector<DiffRow>& rows, OutputFormat format,
                     const ExperimentConfig& cfg);
void write_report(std::ostream& os, const SuiteReport& report, OutputFormat format);

/// Read-back; every row is validated. Throws std::invalid_argument on
/// malformed input.
std::vector<ResultRow> read_rows_csv(std::istream& is);
std::vector<ResultRow> read_rows_json(std::istream& is);
std::vector<DiffRow> read_diff_rows_csv(std::istream& is);
std::vector<DiffRow> read_diff_rows_json(std::istream& is);

}  // namespace qcd
