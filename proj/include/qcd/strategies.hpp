#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qcd/channels.hpp"
#include "qcd/helstrom.hpp"

namespace qcd {

enum class StrategyKind { Global, Bayesian, Markovian };
enum class InputMode { Flat, Adaptive };

std::string_view to_string(StrategyKind kind);
std::string_view to_string(InputMode mode);
StrategyKind parse_strategy(std::string_view name);
InputMode parse_input_mode(std::string_view name);

/// Largest shot counts accepted by the evaluators.
inline constexpr int kGlobalMaxShots = 10;    // joint Hilbert space of dim 1024
inline constexpr int kBayesianMaxShots = 14;  // 2^13 leaf-step measurements

/// The two candidate channels; both must belong to the same family.
struct ChannelPair {
    ChannelSpec c0;
    ChannelSpec c1;

    static ChannelPair make(ChannelFamily family, double eta0, double eta1);
    ChannelFamily family() const { return c0.family; }
    void validate() const;
};

/// Per-shot input parameters r (phi shared by all shots).
///
/// Flat: r[k] is the input of shot k.
/// Adaptive, Bayesian: one r per outcome-history node in heap order; the
///   node for history x1..xk sits at (2^k - 1) + value(x1..xk), x1 most
///   significant. Size 2^shots - 1.
/// Adaptive, Markovian: r[0] for the first shot, then r[1 + 2(k-1) + b] for
///   shot k >= 1 after last outcome b. Size 2 shots - 1.
struct InputSchedule {
    InputMode mode = InputMode::Flat;
    int shots = 1;
    std::vector<double> r{0.0};
    double phi = 0.0;

    static InputSchedule flat(std::vector<double> r, double phi = 0.0);
    static InputSchedule uniform(int shots, double r, double phi = 0.0);
    static InputSchedule adaptive(StrategyKind kind, int shots, std::vector<double> r, double phi = 0.0);
    /// Expands a flat schedule into the adaptive layout of `kind` (same r per depth).
    static InputSchedule adaptive_from_flat(StrategyKind kind, const InputSchedule& flat);

    static std::size_t adaptive_size(StrategyKind kind, int shots);

    /// Throws std::invalid_argument on shape or range violations.
    void validate(StrategyKind kind) const;

    /// Input parameter of the Bayesian node (shot, heap index).
    double bayesian_r(int shot, std::size_t heap_index) const;
    /// Input parameter of the Markovian shot `shot` after last outcome `last_bit`.
    double markovian_r(int shot, int last_bit) const;
};

/// One measurement of a strategy's decision tree.
struct PovmNode {
    int shot = 0;
    /// Bayesian: full outcome history before this shot. Markovian: the
    /// previous outcome (empty on the first shot). Global: empty.
    std::vector<std::uint8_t> history;
    double posterior = 0.5;  // p0 weight the measurement was optimized for
    double r = 0.0;          // input used at this node (Global: r of the first shot)
    Povm povm;
};

struct StrategyEval {
    StrategyKind kind = StrategyKind::Global;
    int shots = 1;
    double p_succ = 0.0;
    /// Global: one node. Bayesian: heap order. Markovian: [first shot,
    /// then (shot k, last bit b) at 1 + 2(k-1) + b].
    std::vector<PovmNode> nodes;
};

/// Joint Helstrom measurement on the (n+1)-fold product outputs.
/// Throws std::out_of_range above kGlobalMaxShots and std::invalid_argument
/// for adaptive schedules or mismatched families.
StrategyEval eval_global(const ChannelPair& pair, const InputSchedule& sched);

/// p_succ of eval_global from the spectrum alone: 1/2 + sum of positive eigenvalues.
double global_success_probability(const ChannelPair& pair, const InputSchedule& sched);

/// Feedforward with the posterior conditioned on the whole outcome history.
/// Throws std::out_of_range above kBayesianMaxShots.
StrategyEval eval_bayesian(const ChannelPair& pair, const InputSchedule& sched);

/// Feedforward conditioned only on the previous outcome; O(shots).
StrategyEval eval_markovian(const ChannelPair& pair, const InputSchedule& sched);

StrategyEval evaluate(StrategyKind kind, const ChannelPair& pair, const InputSchedule& sched);

/// Cheapest route to the success probability of `kind`.
double success_probability(StrategyKind kind, const ChannelPair& pair, const InputSchedule& sched);

/// Monte Carlo run of the protocol: draws the true channel uniformly, samples
/// each outcome from the stored measurement tree and returns the fraction of
/// correct final guesses. Deterministic for a fixed (seed, stream).
double simulate_protocol(StrategyKind kind, const ChannelPair& pair, const InputSchedule& sched,
                         long trials, std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace qcd
