#include "qcd/strategies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcd {

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::Global: return "global";
        case StrategyKind::Bayesian: return "bayesian";
        case StrategyKind::Markovian: return "markovian";
    }
    return "unknown";
}

std::string_view to_string(InputMode mode) {
    return mode == InputMode::Flat ? "flat" : "adaptive";
}

namespace {
std::string lowercase(std::string_view s) {
    std::string out;
    for (char ch : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    return out;
}
}  // namespace

StrategyKind parse_strategy(std::string_view name) {
    const std::string key = lowercase(name);
    if (key == "global") return StrategyKind::Global;
    if (key == "bayesian" || key == "bayes") return StrategyKind::Bayesian;
    if (key == "markovian" || key == "markov") return StrategyKind::Markovian;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

InputMode parse_input_mode(std::string_view name) {
    const std::string key = lowercase(name);
    if (key == "flat") return InputMode::Flat;
    if (key == "adaptive") return InputMode::Adaptive;
    throw std::invalid_argument("unknown input mode '" + std::string(name) + "'");
}

ChannelPair ChannelPair::make(ChannelFamily family, double eta0, double eta1) {
    return {ChannelSpec::make(family, eta0), ChannelSpec::make(family, eta1)};
}

void ChannelPair::validate() const {
    c0.validate();
    c1.validate();
    if (c0.family != c1.family) throw std::invalid_argument("ChannelPair: channel families differ");
}

InputSchedule InputSchedule::flat(std::vector<double> r, double phi) {
    InputSchedule s;
    s.mode = InputMode::Flat;
    s.shots = static_cast<int>(r.size());
    s.r = std::move(r);
    s.phi = phi;
    return s;
}

InputSchedule InputSchedule::uniform(int shots, double r, double phi) {
    if (shots < 1) throw std::invalid_argument("InputSchedule: shots must be >= 1");
    return flat(std::vector<double>(static_cast<std::size_t>(shots), r), phi);
}

std::size_t InputSchedule::adaptive_size(StrategyKind kind, int shots) {
    if (shots < 1) throw std::invalid_argument("InputSchedule: shots must be >= 1");
    switch (kind) {
        case StrategyKind::Bayesian:
            if (shots > kBayesianMaxShots) throw std::out_of_range("InputSchedule: too many shots");
            return (std::size_t{1} << shots) - 1;
        case StrategyKind::Markovian: return 2 * static_cast<std::size_t>(shots) - 1;
        case StrategyKind::Global: break;
    }
    throw std::invalid_argument("InputSchedule: the global strategy has no adaptive inputs");
}

InputSchedule InputSchedule::adaptive(StrategyKind kind, int shots, std::vector<double> r, double phi) {
    InputSchedule s;
    s.mode = InputMode::Adaptive;
    s.shots = shots;
    s.r = std::move(r);
    s.phi = phi;
    s.validate(kind);
    return s;
}

InputSchedule InputSchedule::adaptive_from_flat(StrategyKind kind, const InputSchedule& flat) {
    if (flat.mode != InputMode::Flat) throw std::invalid_argument("adaptive_from_flat: input is not flat");
    std::vector<double> r(adaptive_size(kind, flat.shots));
    if (kind == StrategyKind::Bayesian) {
        for (int k = 0; k < flat.shots; ++k)
            for (std::size_t i = (std::size_t{1} << k) - 1; i < (std::size_t{2} << k) - 1; ++i)
                r[i] = flat.r[static_cast<std::size_t>(k)];
    } else {
        r[0] = flat.r[0];
        for (int k = 1; k < flat.shots; ++k) {
            r[1 + 2 * static_cast<std::size_t>(k - 1)] = flat.r[static_cast<std::size_t>(k)];
            r[2 + 2 * static_cast<std::size_t>(k - 1)] = flat.r[static_cast<std::size_t>(k)];
        }
    }
    return adaptive(kind, flat.shots, std::move(r), flat.phi);
}

void InputSchedule::validate(StrategyKind kind) const {
    if (shots < 1) throw std::invalid_argument("InputSchedule: shots must be >= 1");
    const std::size_t expected = mode == InputMode::Flat ? static_cast<std::size_t>(shots)
                                                         : adaptive_size(kind, shots);
    if (r.size() != expected)
        throw std::invalid_argument("InputSchedule: expected " + std::to_string(expected) +
                                    " r values for " + std::string(to_string(kind)) + "/" +
                                    std::string(to_string(mode)) + ", got " + std::to_string(r.size()));
    for (double v : r) InputState{v, phi}.validate();
}

double InputSchedule::bayesian_r(int shot, std::size_t heap_index) const {
    return mode == InputMode::Flat ? r[static_cast<std::size_t>(shot)] : r[heap_index];
}

double InputSchedule::markovian_r(int shot, int last_bit) const {
    if (mode == InputMode::Flat) return r[static_cast<std::size_t>(shot)];
    if (shot == 0) return r[0];
    return r[1 + 2 * static_cast<std::size_t>(shot - 1) + static_cast<std::size_t>(last_bit)];
}

namespace {

struct OutputPair {
    DensityMatrix rho0;
    DensityMatrix rho1;
};

OutputPair outputs(const ChannelPair& pair, double r, double phi) {
    const DensityMatrix psi = pure_state({r, phi});
    return {apply(pair.c0, psi), apply(pair.c1, psi)};
}

void check_common(const ChannelPair& pair, const InputSchedule& sched, StrategyKind kind) {
    pair.validate();
    sched.validate(kind);
}

// Tr(rho pi0) for a 2x2 measurement, clamped against round-off.
double outcome0(const DensityMatrix& rho, const Povm& m) {
    return std::clamp(prob_outcome0(rho.matrix(), m.pi0), 0.0, 1.0);
}

double posterior_weight(double l0, double l1) {
    const double total = l0 + l1;
    return total > 0.0 ? l0 / total : 0.5;
}

ComplexMatrix product_state(const ChannelSpec& c, const InputSchedule& sched) {
    ComplexMatrix out = channel_output(c, {sched.r[0], sched.phi}).matrix();
    for (int k = 1; k < sched.shots; ++k)
        out = tensor(out, channel_output(c, {sched.r[static_cast<std::size_t>(k)], sched.phi}).matrix());
    return out;
}

void check_global(const ChannelPair& pair, const InputSchedule& sched) {
    if (sched.mode != InputMode::Flat)
        throw std::invalid_argument("eval_global: the global strategy takes a flat schedule");
    if (sched.shots > kGlobalMaxShots)
        throw std::out_of_range("eval_global: " + std::to_string(sched.shots) + " shots exceed the cap of " +
                                std::to_string(kGlobalMaxShots));
    check_common(pair, sched, StrategyKind::Global);
}

ComplexMatrix global_delta(const ComplexMatrix& joint0, const ComplexMatrix& joint1) {
    ComplexMatrix delta = joint0 - joint1;
    delta *= 0.5;
    return delta;
}

}  // namespace

StrategyEval eval_global(const ChannelPair& pair, const InputSchedule& sched) {
    check_global(pair, sched);
    const ComplexMatrix joint0 = product_state(pair.c0, sched);
    const ComplexMatrix joint1 = product_state(pair.c1, sched);
    const HermitianEigen eig = eigen_hermitian(global_delta(joint0, joint1));
    const std::size_t dim = joint0.dim();

    Povm povm;
    const bool any_nonneg = eig.eigenvalues.front() >= 0.0;
    const bool all_nonneg = eig.eigenvalues.back() >= 0.0;
    if (!any_nonneg) {
        povm = Povm::always_guess1(dim);
    } else if (all_nonneg) {
        povm = Povm::always_guess0(dim);
    } else {
        ComplexMatrix pi0(dim);
        for (std::size_t i = 0; i < dim && eig.eigenvalues[i] >= 0.0; ++i) pi0 += outer(eig.eigenvectors[i]);
        povm = Povm::projective(std::move(pi0));
    }

    StrategyEval out;
    out.kind = StrategyKind::Global;
    out.shots = sched.shots;
    out.p_succ = 0.5 * (trace_of_product(joint0, povm.pi0).real() + trace_of_product(joint1, povm.pi1).real());
    out.nodes.push_back({0, {}, 0.5, sched.r[0], std::move(povm)});
    return out;
}

double global_success_probability(const ChannelPair& pair, const InputSchedule& sched) {
    check_global(pair, sched);
    const auto values =
        eigenvalues_hermitian(global_delta(product_state(pair.c0, sched), product_state(pair.c1, sched)));
    double p = 0.5;
    for (double v : values)
        if (v > 0.0) p += v;
    return p;
}

namespace {

struct BayesWalker {
    const ChannelPair& pair;
    const InputSchedule& sched;
    std::vector<OutputPair> per_shot;  // flat schedules only
    std::vector<PovmNode> nodes;
    std::vector<std::uint8_t> history;
    double p_succ = 0.0;

    void visit(int shot, std::size_t heap, double l0, double l1) {
        const double r = sched.bayesian_r(shot, heap);
        const OutputPair states = sched.mode == InputMode::Flat ? per_shot[static_cast<std::size_t>(shot)]
                                                                : outputs(pair, r, sched.phi);
        const double p0 = posterior_weight(l0, l1);
        HelstromResult h = optimal_povm({p0, states.rho0, states.rho1});
        const double q0 = outcome0(states.rho0, h.povm);
        const double q1 = outcome0(states.rho1, h.povm);
        nodes[heap] = {shot, history, p0, r, std::move(h.povm)};

        if (shot + 1 == sched.shots) {
            p_succ += 0.5 * (l0 * q0 + l1 * (1.0 - q1));
            return;
        }
        history.push_back(0);
        visit(shot + 1, 2 * heap + 1, l0 * q0, l1 * q1);
        history.back() = 1;
        visit(shot + 1, 2 * heap + 2, l0 * (1.0 - q0), l1 * (1.0 - q1));
        history.pop_back();
    }
};

}  // namespace

StrategyEval eval_bayesian(const ChannelPair& pair, const InputSchedule& sched) {
    if (sched.shots > kBayesianMaxShots)
        throw std::out_of_range("eval_bayesian: " + std::to_string(sched.shots) + " shots exceed the cap of " +
                                std::to_string(kBayesianMaxShots));
    check_common(pair, sched, StrategyKind::Bayesian);

    BayesWalker walker{pair, sched, {}, {}, {}, 0.0};
    if (sched.mode == InputMode::Flat)
        for (double r : sched.r) walker.per_shot.push_back(outputs(pair, r, sched.phi));
    walker.nodes.resize((std::size_t{1} << sched.shots) - 1);
    walker.visit(0, 0, 1.0, 1.0);

    StrategyEval out;
    out.kind = StrategyKind::Bayesian;
    out.shots = sched.shots;
    out.p_succ = walker.p_succ;
    out.nodes = std::move(walker.nodes);
    return out;
}

StrategyEval eval_markovian(const ChannelPair& pair, const InputSchedule& sched) {
    check_common(pair, sched, StrategyKind::Markovian);

    StrategyEval out;
    out.kind = StrategyKind::Markovian;
    out.shots = sched.shots;
    out.nodes.reserve(2 * static_cast<std::size_t>(sched.shots) - 1);

    // weight[c][b]: probability under channel c of all histories so far ending in b.
    double weight[2][2];
    {
        const double r = sched.markovian_r(0, 0);
        const OutputPair states = outputs(pair, r, sched.phi);
        HelstromResult h = optimal_povm({0.5, states.rho0, states.rho1});
        const double q0 = outcome0(states.rho0, h.povm);
        const double q1 = outcome0(states.rho1, h.povm);
        weight[0][0] = q0;
        weight[0][1] = 1.0 - q0;
        weight[1][0] = q1;
        weight[1][1] = 1.0 - q1;
        out.nodes.push_back({0, {}, 0.5, r, std::move(h.povm)});
    }

    for (int shot = 1; shot < sched.shots; ++shot) {
        double next[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (int last = 0; last < 2; ++last) {
            const double r = sched.markovian_r(shot, last);
            const OutputPair states = outputs(pair, r, sched.phi);
            const double p0 = posterior_weight(weight[0][last], weight[1][last]);
            HelstromResult h = optimal_povm({p0, states.rho0, states.rho1});
            const double q0 = outcome0(states.rho0, h.povm);
            const double q1 = outcome0(states.rho1, h.povm);
            next[0][0] += weight[0][last] * q0;
            next[0][1] += weight[0][last] * (1.0 - q0);
            next[1][0] += weight[1][last] * q1;
            next[1][1] += weight[1][last] * (1.0 - q1);
            out.nodes.push_back({shot, {static_cast<std::uint8_t>(last)}, p0, r, std::move(h.povm)});
        }
        std::copy(&next[0][0], &next[0][0] + 4, &weight[0][0]);
    }

    out.p_succ = 0.5 * (weight[0][0] + weight[1][1]);
    return out;
}

StrategyEval evaluate(StrategyKind kind, const ChannelPair& pair, const InputSchedule& sched) {
    switch (kind) {
        case StrategyKind::Global: return eval_global(pair, sched);
        case StrategyKind::Bayesian: return eval_bayesian(pair, sched);
        case StrategyKind::Markovian: return eval_markovian(pair, sched);
    }
    throw std::logic_error("evaluate: unhandled strategy");
}

double success_probability(StrategyKind kind, const ChannelPair& pair, const InputSchedule& sched) {
    if (kind == StrategyKind::Global) return global_success_probability(pair, sched);
    return evaluate(kind, pair, sched).p_succ;
}

}  // namespace qcd
