#include "qsteg/adversary.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "qsteg/security.hpp"
#include "qsteg/stats.hpp"

namespace qsteg {

Verdict likelihood_ratio_decide(const std::vector<Observation>& obs, long n, double p, double r) {
    if (obs.empty()) throw std::invalid_argument("likelihood_ratio_decide: no observations");
    if (p == r) throw std::invalid_argument("likelihood_ratio_decide: p == r admits no test");
    if (p <= 0.0 || p >= 1.0 || r <= 0.0 || r >= 1.0)
        throw std::invalid_argument("likelihood_ratio_decide: rates outside (0, 1)");
    KahanSum llr;
    for (const Observation& o : obs)
        llr.add(log_binomial_pmf(n, o.weight, r) - log_binomial_pmf(n, o.weight, p));
    return llr.value() > 1e-9 ? Verdict::stego : Verdict::honest;
}

namespace {

// Everything a trial needs that does not change between trials.
struct ExperimentSetup {
    EveExperimentParams params;
    double r = 0.0;
    ChannelModel honest = ChannelModel::depolarizing(0.0);
    StegoParams1 stego;
    long m_payload = 0;
    std::size_t key_budget = 0;
};

ExperimentSetup make_setup(const EveExperimentParams& params) {
    if (params.n < 1) throw std::invalid_argument("distinguishing_experiment: n < 1");
    if (params.blocks_per_trial < 1)
        throw std::invalid_argument("distinguishing_experiment: blocks_per_trial < 1");
    if (params.p <= 0.0 || params.p >= 0.75 || params.delta_p < 0.0)
        throw std::invalid_argument("distinguishing_experiment: rates outside the DC regime");

    ExperimentSetup s;
    s.params = params;
    s.r = params.p + params.delta_p;
    s.honest = ChannelModel::depolarizing(params.p);
    if (params.delta_p > 0.0) {
        s.stego.n = params.n;
        s.stego.p_emulated = emulation_rate_for_excess(params.delta_p, params.p);
        s.stego.delta = params.delta;
        s.stego.p_physical = params.p;
        s.stego.validate();
        s.m_payload = s.stego.payload_slots();
        // Rejection sampling can retry; 48 worst-case attempts per subset
        // leaves the exhaustion probability around 2^-48 per trial.
        const KeyBudget budget = key_consumption_p1(params.n, s.m_payload);
        s.key_budget =
            48 * (budget.subset_bits + static_cast<std::size_t>(params.n - s.m_payload)) +
            budget.twirl_bits + 64 + 512;
    }
    return s;
}

bool run_trial(const ExperimentSetup& s, std::mt19937_64& rng) {
    const bool stego_arm = (rng() >> 63) != 0;
    Verdict verdict = Verdict::honest;
    if (s.params.delta_p > 0.0) {
        std::vector<Observation> obs;
        obs.reserve(static_cast<std::size_t>(s.params.blocks_per_trial));
        for (long b = 0; b < s.params.blocks_per_trial; ++b) {
            long w;
            if (stego_arm) {
                KeyStream key = KeyStream::from_seed(rng(), s.key_budget);
                PauliString payload(static_cast<std::size_t>(s.m_payload));
                for (long i = 0; i < s.m_payload; ++i)
                    payload.set_symbol(static_cast<std::size_t>(i),
                                       static_cast<std::uint8_t>(rng() & 3u));
                const EncodeResultP1 enc = encode_p1_audited(payload, key, s.stego, rng);
                w = static_cast<long>(enc.block.wire.weight());
            } else {
                w = static_cast<long>(
                    sample_error(s.honest, static_cast<std::size_t>(s.params.n), rng).weight());
            }
            obs.push_back({b, w, std::nullopt});
        }
        verdict = likelihood_ratio_decide(obs, s.params.n, s.params.p, s.r);
    }
    return (verdict == Verdict::stego) == stego_arm;
}

AdvantageEstimate finish(const ExperimentSetup& s, long successes, long trials) {
    AdvantageEstimate est;
    est.trials = trials;
    est.ceiling = p_opt(diamond_norm_n(s.params.p, s.r, s.params.n * s.params.blocks_per_trial));
    est.empirical_success = static_cast<double>(successes) / static_cast<double>(trials);
    // Wilson score halfwidth: agrees with the Wald interval away from the
    // boundary but stays positive at p_hat = 0 or 1, where Wald collapses.
    const double z = 1.96, t = static_cast<double>(trials);
    const double phat = est.empirical_success;
    est.ci_halfwidth =
        z * std::sqrt(phat * (1.0 - phat) / t + z * z / (4.0 * t * t)) / (1.0 + z * z / t);
    est.within_ceiling = est.empirical_success <= est.ceiling + est.ci_halfwidth;
    return est;
}

}  // namespace

AdvantageEstimate distinguishing_experiment(const EveExperimentParams& params, long trials,
                                            std::mt19937_64& rng) {
    if (trials < 1) throw std::invalid_argument("distinguishing_experiment: trials < 1");
    const ExperimentSetup s = make_setup(params);
    long successes = 0;
    for (long t = 0; t < trials; ++t)
        if (run_trial(s, rng)) ++successes;
    return finish(s, successes, trials);
}

AdvantageEstimate distinguishing_experiment_seeded(const EveExperimentParams& params, long trials,
                                                   std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("distinguishing_experiment: trials < 1");
    if (threads < 1) threads = 1;
    if (threads > trials) threads = static_cast<int>(trials);
    const ExperimentSetup s = make_setup(params);

    std::vector<long> partial(static_cast<std::size_t>(threads), 0);
    auto worker = [&](int w) {
        long hits = 0;
        for (long t = w; t < trials; t += threads) {
            std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
            if (run_trial(s, rng)) ++hits;
        }
        partial[static_cast<std::size_t>(w)] = hits;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    long successes = 0;
    for (long hits : partial) successes += hits;
    return finish(s, successes, trials);
}

}  // namespace qsteg
