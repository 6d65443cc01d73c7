#pragma once

#include <optional>
#include <random>
#include <vector>

#include "qsteg/protocol1.hpp"

namespace qsteg {

// One block's worth of key-independent evidence.
struct Observation {
    long block = 0;
    long weight = 0;                  // wire/syndrome error weight
    std::optional<long> mixed_count;  // model-level Q when the record carries it
};

enum class Verdict { honest, stego };

// Exact likelihood-ratio test on per-block weights, W_i ~ Bin(n, p) against
// Bin(n, r): stego when the summed log ratio is positive. Ties (within FP
// slack) go to honest. p and r must differ and lie in (0, 1).
Verdict likelihood_ratio_decide(const std::vector<Observation>& obs, long n, double p, double r);

struct EveExperimentParams {
    long n = 0;
    double p = 0.0;        // honest channel rate
    double delta_p = 0.0;  // covert excess; the stego arm's observable rate is p + delta_p
    double delta = 0.45;   // payload margin for the stego arm's encoder
    long blocks_per_trial = 1;
};

struct AdvantageEstimate {
    double empirical_success = 0.0;
    long trials = 0;
    double ci_halfwidth = 0.0;  // 95% Wilson score halfwidth
    double ceiling = 0.0;       // p_opt at the trial's total block length
    bool within_ceiling = false;
};

// Fair-coin hypothesis game. Honest arm: sample the depolarizing channel.
// Stego arm: run the protocol-1 encoder with a fresh per-trial key,
// emulating rate delta_p/(1 - 4p/3) on top of the physical channel so the
// observable rate is p + delta_p. Eve decides from wire weights alone; with
// delta_p = 0 no test exists and she answers honest.
AdvantageEstimate distinguishing_experiment(const EveExperimentParams& params, long trials,
                                            std::mt19937_64& rng);

// Same game with a per-trial rng derived from (seed, trial index), so the
// estimate is reproducible and independent of how trials are split across
// threads.
AdvantageEstimate distinguishing_experiment_seeded(const EveExperimentParams& params, long trials,
                                                   std::uint64_t seed, int threads = 1);

}  // namespace qsteg
