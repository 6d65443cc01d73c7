// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Each check pins its parameters and tolerances; randomized checks run from
// fixed seeds so a green run is reproducible bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qsteg/adversary.hpp"
#include "qsteg/channel.hpp"
#include "qsteg/keysource.hpp"
#include "qsteg/protocol1.hpp"
#include "qsteg/protocol2.hpp"
#include "qsteg/security.hpp"
#include "qsteg/stats.hpp"
#include "qsteg/syndrome.hpp"

using namespace qsteg;

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// 1. Closed forms of the weight-law L1 distance at one and two channel uses.
bool criterion_diamond_closed_forms(std::string& detail) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double p = 0.02 + 0.42 * unit(rng);
        const double dp = 0.001 + (0.49 - p - 0.001) * unit(rng);
        const double d1 = diamond_norm_n(p, p + dp, 1);
        const double d2 = diamond_norm_n(p, p + dp, 2);
        worst = std::max(worst, std::fabs(d1 - 2.0 * dp));
        worst = std::max(worst, std::fabs(d2 - 2.0 * dp * (2.0 - 2.0 * p - dp)));
    }
    detail = fmt("100 pairs p, p+dp < 1/2, worst |err| = %.3g, tol 1e-12", worst);
    return worst <= 1e-12;
}

// 2. Optimal distinguishing probability chains through the same closed forms.
bool criterion_p_opt_chain(std::string& detail) {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double p = 0.02 + 0.42 * unit(rng);
        const double dp = 0.001 + (0.49 - p - 0.001) * unit(rng);
        const double s1 = p_opt(diamond_norm_n(p, p + dp, 1));
        const double s2 = p_opt(diamond_norm_n(p, p + dp, 2));
        worst = std::max(worst, std::fabs(s1 - (1.0 + dp) / 2.0));
        worst = std::max(worst, std::fabs(s2 - (0.5 + dp * (2.0 - 2.0 * p - dp) / 2.0)));
    }
    detail = fmt("100 pairs, worst |err| = %.3g, tol 1e-12", worst);
    return worst <= 1e-12;
}

// 3. Asymptotic vs exact key consumption rate on a rate grid.
bool criterion_kcr(std::string& detail) {
    const double dp = 0.01;
    const long n = 10000;
    double worst_gap = 0.0, prev_asym = -1.0, prev_exact = -1.0;
    bool monotone = true;
    for (double p : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30}) {
        const double asym = kcr_asymptotic(p, dp);
        const double exact = kcr_exact(p, dp, n);
        worst_gap = std::max(worst_gap, std::fabs(asym - exact));
        monotone = monotone && asym > prev_asym && exact > prev_exact;
        prev_asym = asym;
        prev_exact = exact;
    }
    detail = fmt("p in {0.05..0.30}, dp=0.01, N=1e4: worst gap %.2e bits/qubit (tol 0.01), "
                 "curve monotone %.0f",
                 worst_gap, monotone ? 1.0 : 0.0);
    return worst_gap <= 0.01 && monotone;
}

// 4. Hide-as-mixed-slots protocol end to end at N=200, p=0.15.
bool criterion_p1_end_to_end(std::string& detail) {
    const StegoParams1 params{200, 0.15, 0.475, 0.0, false};
    const long m = params.payload_slots();  // 21
    const KeyBudget predicted = key_consumption_p1(200, m);
    const std::size_t per_block_budget =
        48 * (predicted.subset_bits + static_cast<std::size_t>(200 - m)) + predicted.twirl_bits +
        64 + 512;

    std::mt19937_64 payload_rng(404);
    const long blocks = 10000;
    long exact = 0;
    bool audits_ok = true;
    std::vector<long> q_hist(201, 0);
    for (long b = 0; b < blocks; ++b) {
        const std::uint64_t seed = derive_seed(0xACCE4, static_cast<std::uint64_t>(b));
        KeyStream sender = KeyStream::from_seed(seed, per_block_budget);
        KeyStream receiver = KeyStream::from_seed(seed, per_block_budget);
        PauliString payload(static_cast<std::size_t>(m));
        for (long i = 0; i < m; ++i)
            payload.set_symbol(static_cast<std::size_t>(i),
                               static_cast<std::uint8_t>(payload_rng() & 3u));
        const std::size_t before = sender.cursor();
        const EncodeResultP1 enc = encode_p1_audited(payload, sender, params, payload_rng);
        audits_ok = audits_ok && enc.audit.subset_final == predicted.subset_bits &&
                    enc.audit.pad == predicted.twirl_bits &&
                    enc.audit.total() == sender.cursor() - before;
        ++q_hist[static_cast<std::size_t>(enc.block.observable_mixed_count)];
        if (decode_p1(enc.block, receiver, params) == payload) ++exact;
    }
    const ChiSquareResult chi =
        chi_square_test(q_hist, weight_distribution(ChannelModel::depolarizing(0.15), 200));
    detail = fmt("1e4 blocks: recovery %.4f (need 1.0), Q-law chi2 p=%.3f (need >0.01), "
                 "key audit exact %.0f",
                 static_cast<double>(exact) / static_cast<double>(blocks), chi.pvalue,
                 audits_ok ? 1.0 : 0.0);
    return exact == blocks && chi.pvalue > 0.01 && audits_ok;
}

// 5. Syndrome-coded protocol against exhaustive enumeration at N=12.
bool criterion_p2_small_oracle(std::string& detail) {
    const StegoParams2 params = StegoParams2::build(ChannelModel::bsc(0.25), 12, 0.3);
    if (params.partition.set_count != 85 || params.message_bits != 6) {
        detail = "partition shape off: expected 85 sets / 6 message bits";
        return false;
    }

    // Every message roundtrips on shared streams.
    KeyStream sender = KeyStream::from_seed(55, 40000);
    KeyStream receiver = KeyStream::from_seed(55, 40000);
    bool roundtrip = true;
    for (long u = 0; u < 64; ++u) {
        const TransmittedBlock block = encode_p2(mpz_class(u), sender, params);
        const DecodeResultP2 dec = decode_p2(block, receiver, params);
        roundtrip = roundtrip && dec.ok && dec.message == u;
    }

    // Exhaustive mass audit over all 2^12 bit-flip strings.
    std::vector<double> set_mass(85, 0.0);
    KahanSum assigned_mass;
    const ChannelModel ch = ChannelModel::bsc(0.25);
    for (unsigned long bits = 0; bits < 4096; ++bits) {
        PauliString e(12);
        for (int i = 0; i < 12; ++i)
            if (bits >> i & 1u) e.set_symbol(static_cast<std::size_t>(i), kX);
        const SetLookup look = locate_error(params.partition, e);
        if (!look.assigned) continue;
        const double mass = error_probability(ch, e);
        set_mass[static_cast<std::size_t>(look.set_index.get_ui())] += mass;
        assigned_mass.add(mass);
    }
    const double ideal = 1.0 / 85.0;
    double worst_dev = 0.0;
    for (double q : set_mass) worst_dev = std::max(worst_dev, std::fabs(q - ideal));
    // Window starts at weight 1 = 12 * 0.25 * (1 - 2/3).
    const double bound = partition_deviation_bound(0.25, 12, 2.0 / 3.0);
    detail = fmt("64/64 roundtrips %.0f; worst |set mass - 1/85| = %.4e vs bound %.4e",
                 roundtrip ? 1.0 : 0.0, worst_dev, bound);
    return roundtrip && worst_dev <= bound && assigned_mass.value() > 0.85;
}

// 6. Big-integer set count meets the capacity bound at N=64.
bool criterion_partition_capacity(std::string& detail) {
    const StegoParams2 params = StegoParams2::build(ChannelModel::bsc(0.1), 64, 0.1);
    const double log2_c = log2_mpz(params.partition.set_count);
    const double target = partition_capacity(0.1, 64, 0.1).m_bits - std::log2(64.0);
    detail = fmt("log2 C = %.3f bits vs N(h(p) - p d log2((1-p)/p)) - log2 N = %.3f", log2_c,
                 target);
    return log2_c >= target;
}

// 7. Emulation closeness: bound collapses to eps, decays geometrically, and
// the observed weight law sits under it.
bool criterion_closeness_bound(std::string& detail) {
    const double eps = 0.01;
    double worst_excess = 0.0;
    for (long n : {100L, 200L, 300L, 400L})
        worst_excess = std::max(worst_excess, p2_closeness_bound(0.1, n, 0.1, eps) - eps);
    const double t100 = p2_closeness_bound(0.1, 100, 0.1, 0.0);
    const double t200 = p2_closeness_bound(0.1, 200, 0.1, 0.0);
    const double t400 = p2_closeness_bound(0.1, 400, 0.1, 0.0);
    const bool geometric = t200 <= t100 / 2.0 && t400 <= t200 / 2.0;

    // Empirical weight law of the emulated channel at N=64 vs the true one.
    const StegoParams2 params = StegoParams2::build(ChannelModel::bsc(0.1), 64, 0.2);
    const TypicalErrorSet ts = build_typical_set(ChannelModel::bsc(0.1), 64, 0.2);
    const double delta_w =
        1.0 - static_cast<double>(ts.k_lo) / (64.0 * 0.1);  // weight-window margin
    const double bound = p2_closeness_bound(0.1, 64, delta_w, ts.escape_mass());

    const long trials = 20000;
    KeyStream key = KeyStream::from_seed(777, 4000000);
    std::mt19937_64 msg_rng(777);
    const mpz_class space = mpz_class(1) << static_cast<unsigned long>(params.message_bits);
    std::vector<long> w_hist(65, 0);
    for (long t = 0; t < trials; ++t) {
        mpz_class u = msg_rng();
        u %= space;
        const TransmittedBlock block = encode_p2(u, key, params);
        ++w_hist[block.wire.weight()];
    }
    std::vector<double> empirical(65, 0.0), truth(65, 0.0);
    for (int w = 0; w <= 64; ++w) {
        empirical[static_cast<std::size_t>(w)] =
            static_cast<double>(w_hist[static_cast<std::size_t>(w)]) /
            static_cast<double>(trials);
        truth[static_cast<std::size_t>(w)] = binomial_pmf(64, w, 0.1);
    }
    const double tv = tv_distance(empirical, truth);
    const double sampling = 1.5 * std::sqrt(8.0 / static_cast<double>(trials));
    detail = fmt("bound-eps %.2e (tol 1e-10); geometric decay ok; empirical TV %.4f vs "
                 "bound+3sigma %.4f",
                 worst_excess, tv, bound + sampling);
    return worst_excess <= 1e-10 && geometric && tv <= bound + sampling;
}

// 8. Square-root law: hidden-qubit count doubles when the block quadruples.
bool criterion_covert_scaling(std::string& detail) {
    double worst = 0.0;
    for (double p : {0.1, 0.25, 0.3})
        for (double eps : {0.01, 0.05, 0.1})
            for (long n : {500L, 2000L}) {
                const double ratio =
                    covert_qubit_count(p, 4 * n, eps, 0.25) / covert_qubit_count(p, n, eps, 0.25);
                worst = std::max(worst, std::fabs(ratio - 2.0));
            }
    const double reference = covert_qubit_count(0.25, 4800, 0.1, 0.0);
    detail = fmt("worst |ratio - 2| = %.2e (tol 0.02); count(p=1/4, N=4800, eps=0.1) = %.6f",
                 worst, reference);
    return worst <= 0.02 && std::fabs(reference - 4.0) < 1e-9;
}

// 9. Distinguishing advantage stays under the distance ceiling on a grid.
bool criterion_adversary_grid(std::string& detail) {
    const long trials = 10000;
    int cell = 0, failures = 0;
    double worst_margin = -1.0;  // max (success - ceiling - ci); negative is good
    for (double p : {0.15, 0.20, 0.25})
        for (double dp : {0.0, 0.05, 0.10})
            for (long n : {256L, 512L, 1024L}) {
                const EveExperimentParams params{n, p, dp, 0.45, 1};
                const AdvantageEstimate est = distinguishing_experiment_seeded(
                    params, trials, derive_seed(0xE7E3, static_cast<std::uint64_t>(cell)));
                ++cell;
                bool ok = est.within_ceiling;
                if (dp == 0.0)
                    ok = ok && std::fabs(est.empirical_success - 0.5) <= est.ci_halfwidth;
                worst_margin = std::max(
                    worst_margin, est.empirical_success - est.ceiling - est.ci_halfwidth);
                if (!ok) ++failures;
            }
    detail = fmt("27 cells x 1e4 trials: %.0f over ceiling+CI; worst margin %+.4f",
                 static_cast<double>(failures), worst_margin);
    return failures == 0;
}

// 10. Greedy constant-weight codebooks: rate floor and error-rate ordering.
bool criterion_noisy_codebook(std::string& detail) {
    const double p = 0.1, dp = 0.01;
    double rate200 = 0.0;
    bool distances_ok = true;
    std::vector<double> err;
    for (long n : {100L, 200L, 400L}) {
        KeyStream key = KeyStream::from_seed(derive_seed(0xC0DE, static_cast<std::uint64_t>(n)),
                                             200000);
        const NoisyCodebook cb = build_noisy_codebook(n, p, dp, key);
        if (cb.count() > 1) distances_ok = distances_ok && cb.min_distance() >= cb.min_distance_required;
        if (n == 200) rate200 = cb.rate();
        std::mt19937_64 rng(derive_seed(0xE44, static_cast<std::uint64_t>(n)));
        err.push_back(noisy_block_error_rate(cb, p, 4000, rng));
    }
    const double floor_rate = 0.5 * p2_noisy_rate(p, dp);
    detail = fmt("rate(200) = %.5f vs floor %.5f; block-error 100/200/400 = %.3f/", rate200,
                 floor_rate, err[0]) +
             fmt("%.3f/%.3f, need strictly decreasing", err[1], err[2]);
    return rate200 >= floor_rate && distances_ok && err[0] > err[1] && err[1] > err[2];
}

struct Criterion {
    const char* name;
    bool (*run)(std::string&);
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"diamond norm closed forms (1 and 2 uses)", criterion_diamond_closed_forms},
        {"optimal distinguishing probability chain", criterion_p_opt_chain},
        {"key consumption rate, asymptotic vs exact", criterion_kcr},
        {"mixed-slot protocol end to end", criterion_p1_end_to_end},
        {"syndrome protocol exhaustive small-N oracle", criterion_p2_small_oracle},
        {"partition count meets capacity bound", criterion_partition_capacity},
        {"emulation closeness bound and empirical TV", criterion_closeness_bound},
        {"covert qubit count square-root scaling", criterion_covert_scaling},
        {"adversary advantage under the ceiling", criterion_adversary_grid},
        {"noisy codebook rate and error ordering", criterion_noisy_codebook},
    };

    int failures = 0;
    int id = 0;
    for (const Criterion& c : criteria) {
        ++id;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%2d] %s  %-45s  %6.2f s  %s\n", id, ok ? "PASS" : "FAIL", c.name, secs,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
