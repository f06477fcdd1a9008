// qcd: success probabilities of multi-shot qubit channel discrimination.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qcd/experiments.hpp"

namespace {

struct Flags {
    std::string config;
    std::string family;
    std::vector<double> eta0;
    std::vector<double> eta1;
    std::string grid;
    int n_max = 0;
    std::vector<std::string> strategies;
    std::string input_mode;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
    int jobs = 0;
    bool timing = false;
    std::string suite;
};

void add_experiment_flags(CLI::App* cmd, Flags& f, bool with_curve_options) {
    cmd->add_option("--config", f.config, "JSON config file; flags given here override it");
    cmd->add_option("--family", f.family, "depolarizing | bit-flip | amplitude-damping");
    cmd->add_option("--eta0", f.eta0, "eta of channel 0, repeatable (amplitude damping: fraction of pi/2)");
    cmd->add_option("--eta1", f.eta1, "eta of channel 1, paired with --eta0");
    cmd->add_option("--grid", f.grid, "grid MIN:MAX:STEPS on both axes, cells with eta0 > eta1");
    if (with_curve_options) {
        cmd->add_option("--n-max", f.n_max, "largest shot count");
        cmd->add_option("--strategies", f.strategies, "subset of global,bayesian,markovian")->delimiter(',');
    }
    cmd->add_option("--input-mode", f.input_mode, "flat | adaptive");
    cmd->add_option("--seed", f.seed, "seed for start sampling");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "csv | json");
    cmd->add_option("--jobs", f.jobs, "worker threads");
    cmd->add_flag("--timing", f.timing, "record wall time per row (output is then not reproducible)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qcd::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool given(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

qcd::ExperimentConfig build_config(const CLI::App* cmd, const Flags& f) {
    qcd::ExperimentConfig cfg;
    if (!f.config.empty()) qcd::apply_config_json(cfg, read_file(f.config));
    try {
        if (given(cmd, "--family")) cfg.family = qcd::parse_family(f.family);
        if (given(cmd, "--eta0") || given(cmd, "--eta1")) {
            if (f.eta0.size() != f.eta1.size())
                throw qcd::ConfigError("--eta0 and --eta1 must be given the same number of times");
            cfg.points.clear();
            cfg.grid.reset();
            for (std::size_t i = 0; i < f.eta0.size(); ++i) cfg.points.push_back({0, 0, f.eta0[i], f.eta1[i]});
        }
        if (given(cmd, "--grid")) {
            cfg.grid = qcd::GridSpec::parse(f.grid);
            cfg.points.clear();
        }
        if (given(cmd, "--n-max")) cfg.n_max = f.n_max;
        if (given(cmd, "--strategies")) {
            cfg.strategies.clear();
            for (const auto& s : f.strategies) cfg.strategies.push_back(qcd::parse_strategy(s));
        }
        if (given(cmd, "--input-mode")) cfg.input_mode = qcd::parse_input_mode(f.input_mode);
        if (given(cmd, "--seed")) cfg.seed = f.seed;
        if (given(cmd, "--out")) cfg.out = f.out;
        if (given(cmd, "--format")) cfg.format = qcd::parse_format(f.format);
        if (given(cmd, "--jobs")) cfg.jobs = f.jobs;
        if (f.timing) cfg.timing = true;
    } catch (const qcd::ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw qcd::ConfigError(e.what());
    }
    // Entry values are in family units; resolve them once the family is final.
    for (auto& p : cfg.points) p = qcd::EtaPoint::from_entry(cfg.family, p.entry0, p.entry1);
    cfg.validate();
    return cfg;
}

template <typename Write>
void emit(const std::string& out, Write write) {
    if (out.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream file(out);
    if (!file) throw qcd::ConfigError("cannot open output file '" + out + "'");
    write(file);
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-shot discrimination of two qubit channels"};
    app.set_version_flag("--version", qcd::kToolVersion);
    app.require_subcommand(1);

    Flags curve_flags, sweep_flags, validate_flags;
    auto* curve = app.add_subcommand("curve", "success probability vs number of shots for each strategy");
    add_experiment_flags(curve, curve_flags, true);
    auto* sweep = app.add_subcommand("sweep-diff", "Bayesian minus Markovian success at three shots over a grid");
    add_experiment_flags(sweep, sweep_flags, false);
    auto* validate = app.add_subcommand("validate", "run a built-in validation suite");
    validate->add_option("suite", validate_flags.suite, "oneshot-closed-forms | strategy-reductions | monte-carlo | povm-properties")
        ->required();
    validate->add_option("--seed", validate_flags.seed, "seed");
    validate->add_option("--out", validate_flags.out, "output file (default stdout)");
    validate->add_option("--format", validate_flags.format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*curve) {
            const auto cfg = build_config(curve, curve_flags);
            const auto rows = qcd::cmd_curve(cfg, warn);
            emit(cfg.out, [&](std::ostream& os) { qcd::write_rows(os, rows, cfg.format, "curve", cfg); });
            return 0;
        }
        if (*sweep) {
            const auto cfg = build_config(sweep, sweep_flags);
            const auto rows = qcd::cmd_sweep_diff(cfg, warn);
            emit(cfg.out, [&](std::ostream& os) { qcd::write_diff_rows(os, rows, cfg.format, cfg); });
            return 0;
        }
        const auto format = validate_flags.format.empty() ? qcd::OutputFormat::Csv
                                                          : qcd::parse_format(validate_flags.format);
        const auto report = qcd::cmd_validate(validate_flags.suite, validate_flags.seed);
        emit(validate_flags.out, [&](std::ostream& os) { qcd::write_report(os, report, format); });
        if (!report.passed()) {
            std::cerr << "validation suite " << report.suite << " FAILED\n";
            return 1;
        }
        return 0;
    } catch (const qcd::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
