#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qcd/experiments.hpp"

namespace qcd {

using nlohmann::json;

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

const char* const kRowHeader = "family,eta0,eta1,n,strategy,input_mode,p_succ,r,evaluations,wall_time_s";
const char* const kDiffHeader = "eta0,eta1,p_bayes,p_markov,diff";

json optimizer_json(const OptConfig& o) {
    return {{"ftol", o.ftol},
            {"xtol", o.xtol},
            {"max_evals_per_start", o.max_evals_per_start},
            {"max_starts", o.max_starts},
            {"initial_step", o.initial_step},
            {"max_restarts", o.max_restarts}};
}

json config_json(const ExperimentConfig& cfg) {
    json j;
    j["family"] = std::string(to_string(cfg.family));
    if (!cfg.points.empty()) {
        json pts = json::array();
        for (const auto& p : cfg.points) pts.push_back({p.entry0, p.entry1});
        j["points"] = pts;
    }
    if (cfg.grid) j["grid"] = cfg.grid->to_string();
    j["n_max"] = cfg.n_max;
    json strategies = json::array();
    for (StrategyKind k : cfg.strategies) strategies.push_back(std::string(to_string(k)));
    j["strategies"] = strategies;
    j["input_mode"] = std::string(to_string(cfg.input_mode));
    j["seed"] = cfg.seed;
    j["format"] = to_string(cfg.format);
    j["timing"] = cfg.timing;
    j["optimizer"] = optimizer_json(cfg.optimizer);
    return j;
}

void write_preamble(std::ostream& os, const std::string& command, const ExperimentConfig& cfg) {
    os << "# qcd " << command << '\n';
    os << "# version " << kToolVersion << '\n';
    os << "# config " << config_echo(cfg) << '\n';
}

std::string join_r(const std::vector<double>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ";" : "") + fmt(r[i]);
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

long to_long(const std::string& s) {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

// Data lines of a CSV stream after the mandatory header; '#' lines skipped.
std::vector<std::vector<std::string>> csv_records(std::istream& is, const char* header) {
    std::vector<std::vector<std::string>> out;
    bool seen_header = false;
    for (std::string line; std::getline(is, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            if (line != header) throw std::invalid_argument("CSV header mismatch: '" + line + "'");
            seen_header = true;
            continue;
        }
        out.push_back(split(line, ','));
    }
    if (!seen_header) throw std::invalid_argument("CSV header missing");
    return out;
}

json row_json(const ResultRow& r) {
    return {{"family", std::string(to_string(r.family))},
            {"eta0", r.eta0},
            {"eta1", r.eta1},
            {"n", r.n},
            {"strategy", std::string(to_string(r.strategy))},
            {"input_mode", std::string(to_string(r.input_mode))},
            {"p_succ", r.p_succ},
            {"r", r.r},
            {"evaluations", r.evaluations},
            {"wall_time_s", r.wall_time_s}};
}

json diff_json(const DiffRow& d) {
    return {{"eta0", d.eta0}, {"eta1", d.eta1}, {"p_bayes", d.p_bayes}, {"p_markov", d.p_markov}, {"diff", d.diff}};
}

json document(const std::string& command, const ExperimentConfig* cfg) {
    json doc;
    doc["tool"] = "qcd";
    doc["version"] = kToolVersion;
    doc["command"] = command;
    if (cfg) doc["config"] = config_json(*cfg);
    return doc;
}

}  // namespace

std::string config_echo(const ExperimentConfig& cfg) { return config_json(cfg).dump(); }

void apply_config_json(ExperimentConfig& cfg, const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    static const char* const known[] = {"family", "points", "grid",  "n_max", "strategies", "input_mode",
                                        "seed",   "out",    "format", "jobs", "timing",     "optimizer"};
    for (const auto& item : j.items())
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known))
            throw ConfigError("unknown config key '" + item.key() + "'");
    try {
        if (j.contains("family")) cfg.family = parse_family(j["family"].get<std::string>());
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            if (g.is_string()) {
                cfg.grid = GridSpec::parse(g.get<std::string>());
            } else {
                cfg.grid = GridSpec{g.at("min").get<double>(), g.at("max").get<double>(), g.at("steps").get<int>()};
            }
        }
        if (j.contains("points")) {
            cfg.points.clear();
            for (const auto& p : j["points"]) {
                if (!p.is_array() || p.size() != 2) throw ConfigError("each point must be [eta0, eta1]");
                cfg.points.push_back(EtaPoint::from_entry(cfg.family, p[0].get<double>(), p[1].get<double>()));
            }
        }
        if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
        if (j.contains("strategies")) {
            cfg.strategies.clear();
            for (const auto& s : j["strategies"]) cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
        }
        if (j.contains("input_mode")) cfg.input_mode = parse_input_mode(j["input_mode"].get<std::string>());
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("out")) cfg.out = j["out"].get<std::string>();
        if (j.contains("format")) cfg.format = parse_format(j["format"].get<std::string>());
        if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
        if (j.contains("timing")) cfg.timing = j["timing"].get<bool>();
        if (j.contains("optimizer")) {
            const auto& o = j["optimizer"];
            auto& c = cfg.optimizer;
            if (o.contains("ftol")) c.ftol = o["ftol"].get<double>();
            if (o.contains("xtol")) c.xtol = o["xtol"].get<double>();
            if (o.contains("max_evals_per_start")) c.max_evals_per_start = o["max_evals_per_start"].get<long>();
            if (o.contains("max_starts")) c.max_starts = o["max_starts"].get<std::size_t>();
            if (o.contains("initial_step")) c.initial_step = o["initial_step"].get<double>();
            if (o.contains("max_restarts")) c.max_restarts = o["max_restarts"].get<int>();
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void write_rows(std::ostream& os, const std::vector<ResultRow>& rows, OutputFormat format,
                const std::string& command, const ExperimentConfig& cfg) {
    if (format == OutputFormat::Json) {
        json doc = document(command, &cfg);
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(row_json(r));
        doc["rows"] = arr;
        os << doc.dump(2) << '\n';
        return;
    }
    write_preamble(os, command, cfg);
    os << kRowHeader << '\n';
    for (const auto& r : rows)
        os << to_string(r.family) << ',' << fmt(r.eta0) << ',' << fmt(r.eta1) << ',' << r.n << ','
           << to_string(r.strategy) << ',' << to_string(r.input_mode) << ',' << fmt(r.p_succ) << ',' << join_r(r.r)
           << ',' << r.evaluations << ',' << fmt(r.wall_time_s) << '\n';
}

void write_diff_rows(std::ostream& os, const std::vector<DiffRow>& rows, OutputFormat format,
                     const ExperimentConfig& cfg) {
    if (format == OutputFormat::Json) {
        json doc = document("sweep-diff", &cfg);
        json arr = json::array();
        for (const auto& d : rows) arr.push_back(diff_json(d));
        doc["rows"] = arr;
        os << doc.dump(2) << '\n';
        return;
    }
    write_preamble(os, "sweep-diff", cfg);
    os << kDiffHeader << '\n';
    for (const auto& d : rows)
        os << fmt(d.eta0) << ',' << fmt(d.eta1) << ',' << fmt(d.p_bayes) << ',' << fmt(d.p_markov) << ','
           << fmt(d.diff) << '\n';
}

void write_report(std::ostream& os, const SuiteReport& report, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json doc = document("validate", nullptr);
        doc["suite"] = report.suite;
        doc["passed"] = report.passed();
        json arr = json::array();
        for (const auto& c : report.checks)
            arr.push_back({{"check", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance}, {"passed", c.passed}});
        doc["checks"] = arr;
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# qcd validate " << report.suite << '\n';
    os << "# version " << kToolVersion << '\n';
    os << "check,deviation,tolerance,result\n";
    for (const auto& c : report.checks) {
        std::string name = c.name;
        for (char& ch : name)
            if (ch == ',') ch = ';';
        os << name << ',' << fmt(c.deviation) << ',' << fmt(c.tolerance) << ',' << (c.passed ? "PASS" : "FAIL") << '\n';
    }
}

std::vector<ResultRow> read_rows_csv(std::istream& is) {
    std::vector<ResultRow> rows;
    for (const auto& f : csv_records(is, kRowHeader)) {
        if (f.size() != 10) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields");
        ResultRow r;
        r.family = parse_family(f[0]);
        r.eta0 = to_double(f[1]);
        r.eta1 = to_double(f[2]);
        r.n = static_cast<int>(to_long(f[3]));
        r.strategy = parse_strategy(f[4]);
        r.input_mode = parse_input_mode(f[5]);
        r.p_succ = to_double(f[6]);
        for (const auto& v : split(f[7], ';')) r.r.push_back(to_double(v));
        r.evaluations = to_long(f[8]);
        r.wall_time_s = to_double(f[9]);
        r.validate();
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> read_rows_json(std::istream& is) {
    std::vector<ResultRow> rows;
    try {
        const json doc = json::parse(is);
        for (const auto& j : doc.at("rows")) {
            ResultRow r;
            r.family = parse_family(j.at("family").get<std::string>());
            r.eta0 = j.at("eta0").get<double>();
            r.eta1 = j.at("eta1").get<double>();
            r.n = j.at("n").get<int>();
            r.strategy = parse_strategy(j.at("strategy").get<std::string>());
            r.input_mode = parse_input_mode(j.at("input_mode").get<std::string>());
            r.p_succ = j.at("p_succ").get<double>();
            r.r = j.at("r").get<std::vector<double>>();
            r.evaluations = j.at("evaluations").get<long>();
            r.wall_time_s = j.at("wall_time_s").get<double>();
            r.validate();
            rows.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON result: ") + e.what());
    }
    return rows;
}

std::vector<DiffRow> read_diff_rows_csv(std::istream& is) {
    std::vector<DiffRow> rows;
    for (const auto& f : csv_records(is, kDiffHeader)) {
        if (f.size() != 5) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields");
        DiffRow d{to_double(f[0]), to_double(f[1]), to_double(f[2]), to_double(f[3]), to_double(f[4])};
        d.validate();
        rows.push_back(d);
    }
    return rows;
}

std::vector<DiffRow> read_diff_rows_json(std::istream& is) {
    std::vector<DiffRow> rows;
    try {
        const json doc = json::parse(is);
        for (const auto& j : doc.at("rows")) {
            DiffRow d{j.at("eta0").get<double>(), j.at("eta1").get<double>(), j.at("p_bayes").get<double>(),
                      j.at("p_markov").get<double>(), j.at("diff").get<double>()};
            d.validate();
            rows.push_back(d);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON result: ") + e.what());
    }
    return rows;
}

}  // namespace qcd
