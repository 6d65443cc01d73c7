#include "qsteg/protocol2.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsteg/combinatorics.hpp"
#include "qsteg/stats.hpp"

namespace qsteg {

StegoParams2 StegoParams2::build(const ChannelModel& ch, long n, double delta) {
    StegoParams2 params;
    params.n = n;
    params.channel = ch;
    params.delta = delta;
    const TypicalErrorSet ts = build_typical_set(ch, n, delta);
    params.partition = build_partition(ts, ch.non_identity_rate());
    // floor(log2 C); C >= 1 is guaranteed by build_partition.
    params.message_bits =
        static_cast<long>(mpz_sizeinbase(params.partition.set_count.get_mpz_t(), 2)) - 1;
    return params;
}

namespace {

// x then z per message bit, most significant bit first. Classically only the
// x half acts; the z half is drawn to keep the budget faithful.
mpz_class draw_message_pad(KeyStream& key, long bits) {
    mpz_class x = 0;
    for (long i = 0; i < bits; ++i) {
        x <<= 1;
        x += key.draw_bit();
        key.draw_bit();
    }
    return x;
}

}  // namespace

EncodeResultP2 encode_p2_audited(const mpz_class& message, KeyStream& key,
                                 const StegoParams2& params) {
    const mpz_class& total_sets = params.partition.set_count;
    const long bits = params.message_bits;
    const mpz_class space = mpz_class(1) << static_cast<unsigned long>(bits);
    if (message < 0 || message >= space)
        throw std::invalid_argument("encode_p2: message outside [0, 2^message_bits)");

    EncodeResultP2 res;
    const mpz_class x = draw_message_pad(key, bits);
    res.audit.pad = 2 * static_cast<std::size_t>(bits);

    const mpz_class padded = message ^ x;
    res.set_index = (padded * total_sets) >> static_cast<unsigned long>(bits);

    const RepresentativeDraw draw =
        representative_error_audited(params.partition, res.set_index, key);
    res.audit.representative_final = static_cast<std::size_t>(draw.bits_per_attempt);
    res.audit.representative_rejected =
        static_cast<std::size_t>(draw.attempts - 1) * static_cast<std::size_t>(draw.bits_per_attempt);

    res.block.n = params.n;
    res.block.channel_error = draw.error;
    res.block.wire = draw.error;
    res.block.observable_mixed_count = 0;
    return res;
}

TransmittedBlock encode_p2(const mpz_class& message, KeyStream& key, const StegoParams2& params) {
    return encode_p2_audited(message, key, params).block;
}

DecodeResultP2 decode_p2(const TransmittedBlock& block, KeyStream& key,
                         const StegoParams2& params) {
    if (block.n != params.n) throw std::invalid_argument("decode_p2: block length mismatch");
    const mpz_class& total_sets = params.partition.set_count;
    const long bits = params.message_bits;
    const mpz_class space = mpz_class(1) << static_cast<unsigned long>(bits);

    const mpz_class x = draw_message_pad(key, bits);
    DecodeResultP2 out;

    const SetLookup look = locate_error(params.partition, block.wire);
    if (!look.assigned) return out;  // atypical or leftover: member draw cannot be replayed

    const RepresentativeDraw redraw =
        representative_error_audited(params.partition, look.set_index, key);
    out.representative_mismatch = !(redraw.error == block.wire);

    // Invert g = (u * C) >> bits: the unique preimage candidate is
    // ceil(g * 2^bits / C); sets outside the map's image have none.
    mpz_class u = (look.set_index << static_cast<unsigned long>(bits)) + total_sets - 1;
    u /= total_sets;
    if (u >= space) return out;
    if (((u * total_sets) >> static_cast<unsigned long>(bits)) != look.set_index) return out;

    out.message = u ^ x;
    out.ok = true;
    return out;
}

OptimalQ optimal_q(double p, double m_over_n) {
    if (p <= 0.0 || p >= 0.5) throw std::invalid_argument("optimal_q: p outside (0, 1/2)");
    if (m_over_n < 0.0 || m_over_n > 1.0)
        throw std::invalid_argument("optimal_q: M/N outside [0, 1]");
    const double pow_h = std::exp2(entropy_bits(p));
    OptimalQ out;
    out.q = m_over_n * pow_h / (pow_h - 1.0);
    if (out.q > 1.0) {
        out.q = 1.0;
        out.clamped = true;
    }
    return out;
}

double p2_noisy_rate(double p, double delta_p) {
    if (p <= 0.0 || p >= 0.5) throw std::invalid_argument("p2_noisy_rate: p outside (0, 1/2)");
    if (delta_p < 0.0) throw std::invalid_argument("p2_noisy_rate: delta_p negative");
    if (delta_p == 0.0) return 0.0;
    return -(delta_p / (1.0 - 2.0 * p)) * std::log2(std::exp2(entropy_bits(p)) - 1.0);
}

double NoisyCodebook::rate() const {
    if (count() < 1) return 0.0;
    return std::log2(static_cast<double>(count())) / static_cast<double>(n);
}

namespace {

long mask_distance(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    long d = 0;
    for (std::size_t w = 0; w < a.size(); ++w) d += std::popcount(a[w] ^ b[w]);
    return d;
}

}  // namespace

long NoisyCodebook::min_distance() const {
    long best = 0;
    bool seen = false;
    for (std::size_t i = 0; i < codewords.size(); ++i)
        for (std::size_t j = i + 1; j < codewords.size(); ++j) {
            const long d = mask_distance(codewords[i], codewords[j]);
            if (!seen || d < best) {
                best = d;
                seen = true;
            }
        }
    return seen ? best : 0;
}

NoisyCodebook build_noisy_codebook(long n, double p, double delta_p, KeyStream& key) {
    if (n < 1) throw std::invalid_argument("build_noisy_codebook: n < 1");
    if (p <= 0.0 || p >= 0.5)
        throw std::invalid_argument("build_noisy_codebook: p outside (0, 1/2)");
    if (delta_p < 0.0) throw std::invalid_argument("build_noisy_codebook: delta_p negative");

    NoisyCodebook cb;
    cb.n = n;
    cb.weight = std::llround(static_cast<double>(n) * delta_p / (1.0 - 2.0 * p));
    if (cb.weight == 0) {
        cb.codewords.push_back({});
        return cb;
    }

    const OptimalQ oq = optimal_q(p, static_cast<double>(cb.weight) / static_cast<double>(n));
    cb.q_fraction = oq.q;
    cb.q_clamped = oq.clamped;
    long active = std::llround(oq.q * static_cast<double>(n));
    if (active < cb.weight) active = cb.weight;
    if (active > n) active = n;
    cb.active_slots = select_subset(key, n, active);

    cb.min_distance_required =
        2 * std::llround(p * oq.q * static_cast<double>(n)) + 2;
    if (2 * cb.weight < cb.min_distance_required)
        throw std::invalid_argument(
            "build_noisy_codebook: weight-" + std::to_string(cb.weight) +
            " codewords cannot sit min distance " + std::to_string(cb.min_distance_required) +
            " apart; geometry infeasible at these (n, p, delta_p)");

    long cap = std::llround(std::exp2(p2_noisy_rate(p, delta_p) * static_cast<double>(n)));
    if (cap < 1) cap = 1;

    std::mt19937_64 gen(key.draw_bits_u64(64));
    const std::size_t words = static_cast<std::size_t>((active + 63) / 64);
    std::vector<int> order(static_cast<std::size_t>(active));
    for (long i = 0; i < active; ++i) order[static_cast<std::size_t>(i)] = static_cast<int>(i);

    const long budget = 200 * cap + 2000;
    for (long cand = 0; cand < budget && cb.count() < cap; ++cand) {
        // Partial Fisher-Yates; the 2^-64 modulo bias is immaterial here.
        for (long j = 0; j < cb.weight; ++j) {
            const std::uint64_t span = static_cast<std::uint64_t>(active - j);
            std::swap(order[static_cast<std::size_t>(j)],
                      order[static_cast<std::size_t>(j) + static_cast<std::size_t>(gen() % span)]);
        }
        std::vector<std::uint64_t> mask(words, 0);
        for (long j = 0; j < cb.weight; ++j) {
            const int bit = order[static_cast<std::size_t>(j)];
            mask[static_cast<std::size_t>(bit) / 64] |= std::uint64_t{1} << (bit % 64);
        }
        bool ok = true;
        for (const auto& cw : cb.codewords)
            if (mask_distance(cw, mask) < cb.min_distance_required) {
                ok = false;
                break;
            }
        if (ok) cb.codewords.push_back(std::move(mask));
    }
    return cb;
}

long decode_noisy(const std::vector<std::uint8_t>& received, const NoisyCodebook& cb) {
    if (static_cast<long>(received.size()) != cb.n)
        throw std::invalid_argument("decode_noisy: received length != n");
    if (cb.count() < 1) throw std::invalid_argument("decode_noisy: empty codebook");
    const std::size_t words = cb.codewords.front().size();
    std::vector<std::uint64_t> projected(words, 0);
    for (std::size_t j = 0; j < cb.active_slots.size(); ++j)
        if (received[static_cast<std::size_t>(cb.active_slots[j])] != 0)
            projected[j / 64] |= std::uint64_t{1} << (j % 64);

    long best = 0;
    long best_d = std::numeric_limits<long>::max();
    for (long i = 0; i < cb.count(); ++i) {
        const long d = mask_distance(cb.codewords[static_cast<std::size_t>(i)], projected);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

double noisy_block_error_rate(const NoisyCodebook& cb, double p, long trials,
                              std::mt19937_64& rng) {
    if (trials < 1) throw std::invalid_argument("noisy_block_error_rate: trials < 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("noisy_block_error_rate: p outside [0,1]");
    long errors = 0;
    std::vector<std::uint8_t> wire(static_cast<std::size_t>(cb.n));
    for (long t = 0; t < trials; ++t) {
        const long sent = static_cast<long>(rng() % static_cast<std::uint64_t>(cb.count()));
        std::fill(wire.begin(), wire.end(), 0);
        const auto& cw = cb.codewords[static_cast<std::size_t>(sent)];
        for (std::size_t j = 0; j < cb.active_slots.size(); ++j)
            if ((cw[j / 64] >> (j % 64)) & 1u)
                wire[static_cast<std::size_t>(cb.active_slots[j])] = 1;
        for (auto& slot : wire) {
            const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
            if (u < p) slot ^= 1u;
        }
        if (decode_noisy(wire, cb) != sent) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(trials);
}

}  // namespace qsteg
