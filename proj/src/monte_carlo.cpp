#include <random>
#include <stdexcept>

#include "qcd/strategies.hpp"

namespace qcd {

namespace {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

// Probability of outcome 0 at each node when the channel is c.
std::vector<double> node_outcome0(const ChannelSpec& c, const StrategyEval& eval, const InputSchedule& sched) {
    std::vector<double> probs;
    probs.reserve(eval.nodes.size());
    for (const auto& node : eval.nodes)
        probs.push_back(prob_outcome0(channel_output(c, {node.r, sched.phi}).matrix(), node.povm.pi0));
    return probs;
}

}  // namespace

double simulate_protocol(StrategyKind kind, const ChannelPair& pair, const InputSchedule& sched, long trials,
                         std::uint64_t seed, std::uint64_t stream) {
    if (trials < 1) throw std::invalid_argument("simulate_protocol: trials must be >= 1");
    const StrategyEval eval = evaluate(kind, pair, sched);
    std::mt19937_64 rng = make_stream(seed, stream);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::vector<double> prob0[2];
    if (kind == StrategyKind::Global) {
        // One joint measurement on the product of all outputs.
        const ComplexMatrix& pi0 = eval.nodes.front().povm.pi0;
        for (int c = 0; c < 2; ++c) {
            const ChannelSpec& spec = c == 0 ? pair.c0 : pair.c1;
            ComplexMatrix joint = channel_output(spec, {sched.r[0], sched.phi}).matrix();
            for (int k = 1; k < sched.shots; ++k)
                joint = tensor(joint, channel_output(spec, {sched.r[static_cast<std::size_t>(k)], sched.phi}).matrix());
            prob0[c] = {trace_of_product(joint, pi0).real()};
        }
    } else {
        prob0[0] = node_outcome0(pair.c0, eval, sched);
        prob0[1] = node_outcome0(pair.c1, eval, sched);
    }

    long correct = 0;
    for (long t = 0; t < trials; ++t) {
        const int channel = uniform(rng) < 0.5 ? 0 : 1;
        const auto& p = prob0[channel];
        int outcome = 0;
        switch (kind) {
            case StrategyKind::Global:
                outcome = uniform(rng) < p[0] ? 0 : 1;
                break;
            case StrategyKind::Bayesian: {
                std::size_t heap = 0;
                for (int shot = 0; shot < sched.shots; ++shot) {
                    outcome = uniform(rng) < p[heap] ? 0 : 1;
                    heap = 2 * heap + 1 + static_cast<std::size_t>(outcome);
                }
                break;
            }
            case StrategyKind::Markovian: {
                std::size_t idx = 0;
                for (int shot = 0; shot < sched.shots; ++shot) {
                    outcome = uniform(rng) < p[idx] ? 0 : 1;
                    idx = 1 + 2 * static_cast<std::size_t>(shot) + static_cast<std::size_t>(outcome);
                }
                break;
            }
        }
        if (outcome == channel) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(trials);
}

}  // namespace qcd
