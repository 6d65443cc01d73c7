#include "qsteg/protocol1.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsteg/stats.hpp"
#include "qsteg/syndrome.hpp"

namespace qsteg {

long StegoParams1::payload_slots() const {
    return std::llround((4.0 / 3.0) * p_emulated * static_cast<double>(n) * (1.0 - delta));
}

double StegoParams1::delta_lower() const {
    const double t = (4.0 / 3.0) * p_emulated;
    if (t <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt((1.0 - t) / (t * static_cast<double>(n)));
}

void StegoParams1::validate() const {
    if (n < 1) throw std::invalid_argument("StegoParams1: n must be positive");
    if (p_emulated < 0.0 || p_emulated > 0.75)
        throw std::invalid_argument("StegoParams1: p_emulated outside [0, 3/4]");
    if (p_physical < 0.0 || p_physical > 0.75)
        throw std::invalid_argument("StegoParams1: p_physical outside [0, 3/4]");
    if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("StegoParams1: delta outside [0, 1)");
    const long m = payload_slots();
    if (m > n) throw std::invalid_argument("StegoParams1: payload does not fit the block");
    if (use_inner_code && m % 7 != 0)
        throw std::invalid_argument("StegoParams1: inner code needs M divisible by 7");
}

namespace {

// Inverse-CDF sample of Q ~ Binomial(n, t) conditioned on Q >= m_floor,
// driven by one 64-bit key word. Conditioning (rather than clamping) keeps
// the Q-marginal exactly binomial above the payload count.
long sample_mixed_total(std::uint64_t word, long n, double t, long m_floor) {
    const double u = (static_cast<double>(word) + 0.5) * 0x1p-64;
    const double tail = 1.0 - binomial_cdf(n, m_floor - 1, t);
    const double target = u * std::max(tail, 0.0);
    KahanSum cum;
    long q = m_floor;
    for (;;) {
        cum.add(binomial_pmf(n, q, t));
        if (cum.value() >= target || q >= n) break;
        ++q;
    }
    return q;
}

std::vector<int> complement_slots(long n, const std::vector<int>& subset) {
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (int s : subset) taken[static_cast<std::size_t>(s)] = true;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - subset.size());
    for (long i = 0; i < n; ++i)
        if (!taken[static_cast<std::size_t>(i)]) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace

EncodeResultP1 encode_p1_audited(const PauliString& payload, KeyStream& key,
                                 const StegoParams1& params, std::mt19937_64& rng) {
    params.validate();
    const long n = params.n;
    const long m_payload = params.payload_slots();
    if (static_cast<long>(payload.size()) != m_payload)
        throw std::invalid_argument("encode_p1: payload length != M");

    EncodeResultP1 res;
    KeyAuditP1& audit = res.audit;
    TransmittedBlock& block = res.block;
    block.n = n;

    const SubsetDraw subset = select_subset_audited(key, n, m_payload);
    audit.subset_final = subset.bits_per_attempt;
    audit.subset_rejected = (subset.attempts - 1) * subset.bits_per_attempt;
    block.payload_slots = subset.slots;

    block.pad = twirl_pad(key, static_cast<std::size_t>(m_payload));
    audit.pad = 2 * static_cast<std::size_t>(m_payload);

    const std::uint64_t word = key.draw_bits_u64(64);
    audit.m_draw = 64;
    const double t = (4.0 / 3.0) * params.p_emulated;
    const long q_total = sample_mixed_total(word, n, t, m_payload);
    const long m_decoy = q_total - m_payload;
    block.observable_mixed_count = q_total;

    const std::vector<int> outside = complement_slots(n, block.payload_slots);
    const SubsetDraw decoy = select_subset_audited(key, n - m_payload, m_decoy);
    audit.decoy_subset = decoy.bits_per_attempt;
    audit.decoy_rejected = (decoy.attempts - 1) * decoy.bits_per_attempt;
    block.decoy_mixed_slots.reserve(static_cast<std::size_t>(m_decoy));
    for (int rel : decoy.slots)
        block.decoy_mixed_slots.push_back(outside[static_cast<std::size_t>(rel)]);

    block.wire = PauliString(static_cast<std::size_t>(n));
    for (long i = 0; i < m_payload; ++i) {
        const std::size_t slot = static_cast<std::size_t>(block.payload_slots[i]);
        block.wire.set_symbol(slot, payload.symbol(static_cast<std::size_t>(i)) ^
                                        block.pad.symbol(static_cast<std::size_t>(i)));
    }
    std::uniform_int_distribution<int> uniform_symbol(0, 3);
    for (int slot : block.decoy_mixed_slots)
        block.wire.set_symbol(static_cast<std::size_t>(slot),
                              static_cast<std::uint8_t>(uniform_symbol(rng)));

    block.channel_error = PauliString(static_cast<std::size_t>(n));
    if (params.p_physical > 0.0) {
        block.channel_error = sample_error(ChannelModel::depolarizing(params.p_physical),
                                           static_cast<std::size_t>(n), rng);
        block.wire.compose_with(block.channel_error);
    }
    return res;
}

TransmittedBlock encode_p1(const PauliString& payload, KeyStream& key, const StegoParams1& params,
                           std::mt19937_64& rng) {
    return encode_p1_audited(payload, key, params, rng).block;
}

PauliString decode_p1(const TransmittedBlock& block, KeyStream& key, const StegoParams1& params) {
    params.validate();
    const long n = params.n;
    if (block.n != n) throw std::invalid_argument("decode_p1: block length mismatch");
    const long m_payload = params.payload_slots();

    // Replay every encoder draw so the cursor stays aligned across blocks.
    const SubsetDraw subset = select_subset_audited(key, n, m_payload);
    const PauliString pad = twirl_pad(key, static_cast<std::size_t>(m_payload));
    const std::uint64_t word = key.draw_bits_u64(64);
    const double t = (4.0 / 3.0) * params.p_emulated;
    const long q_total = sample_mixed_total(word, n, t, m_payload);
    select_subset_audited(key, n - m_payload, q_total - m_payload);

    PauliString payload(static_cast<std::size_t>(m_payload));
    for (long i = 0; i < m_payload; ++i) {
        const std::size_t slot = static_cast<std::size_t>(subset.slots[static_cast<std::size_t>(i)]);
        payload.set_symbol(static_cast<std::size_t>(i),
                           block.wire.symbol(slot) ^ pad.symbol(static_cast<std::size_t>(i)));
    }
    return payload;
}

long logical_payload_slots(const StegoParams1& params) {
    const long m = params.payload_slots();
    if (m % 7 != 0) throw std::invalid_argument("logical_payload_slots: M not divisible by 7");
    return 4 * m / 7;
}

namespace {

// Packed-bit planes: plane b of symbol s is bit b of its 2-bit code. The
// code's XOR composition makes each plane an independent GF(2) channel, so
// Hamming words can be corrected plane by plane.
PauliString inner_encode(const PauliString& logical, long m_physical) {
    PauliString physical(static_cast<std::size_t>(m_physical));
    const long groups = m_physical / 7;
    for (long g = 0; g < groups; ++g) {
        std::uint8_t d0 = 0, d1 = 0;
        for (int j = 0; j < 4; ++j) {
            const std::uint8_t s = logical.symbol(static_cast<std::size_t>(4 * g + j));
            d0 |= static_cast<std::uint8_t>((s & 1u) << j);
            d1 |= static_cast<std::uint8_t>(((s >> 1) & 1u) << j);
        }
        const std::uint8_t w0 = hamming74::encode(d0);
        const std::uint8_t w1 = hamming74::encode(d1);
        for (int i = 0; i < 7; ++i)
            physical.set_symbol(static_cast<std::size_t>(7 * g + i),
                                static_cast<std::uint8_t>(((w0 >> i) & 1u) | (((w1 >> i) & 1u) << 1)));
    }
    return physical;
}

PauliString inner_decode(const PauliString& physical) {
    const long groups = static_cast<long>(physical.size()) / 7;
    PauliString logical(static_cast<std::size_t>(4 * groups));
    for (long g = 0; g < groups; ++g) {
        std::uint8_t w0 = 0, w1 = 0;
        for (int i = 0; i < 7; ++i) {
            const std::uint8_t s = physical.symbol(static_cast<std::size_t>(7 * g + i));
            w0 |= static_cast<std::uint8_t>((s & 1u) << i);
            w1 |= static_cast<std::uint8_t>(((s >> 1) & 1u) << i);
        }
        const std::uint8_t d0 = hamming74::extract(hamming74::correct(w0));
        const std::uint8_t d1 = hamming74::extract(hamming74::correct(w1));
        for (int j = 0; j < 4; ++j)
            logical.set_symbol(static_cast<std::size_t>(4 * g + j),
                               static_cast<std::uint8_t>(((d0 >> j) & 1u) | (((d1 >> j) & 1u) << 1)));
    }
    return logical;
}

}  // namespace

EncodeResultP1 encode_p1_noisy_audited(const PauliString& payload_logical, KeyStream& key,
                                       const StegoParams1& params, std::mt19937_64& rng) {
    params.validate();
    if (!params.use_inner_code)
        throw std::invalid_argument("encode_p1_noisy: params.use_inner_code is off");
    const long m_physical = params.payload_slots();
    if (static_cast<long>(payload_logical.size()) != 4 * m_physical / 7)
        throw std::invalid_argument("encode_p1_noisy: logical payload length != 4M/7");
    return encode_p1_audited(inner_encode(payload_logical, m_physical), key, params, rng);
}

TransmittedBlock encode_p1_noisy(const PauliString& payload_logical, KeyStream& key,
                                 const StegoParams1& params, std::mt19937_64& rng) {
    return encode_p1_noisy_audited(payload_logical, key, params, rng).block;
}

PauliString decode_p1_noisy(const TransmittedBlock& block, KeyStream& key,
                            const StegoParams1& params) {
    if (!params.use_inner_code)
        throw std::invalid_argument("decode_p1_noisy: params.use_inner_code is off");
    return inner_decode(decode_p1(block, key, params));
}

double emulation_rate_for_excess(double delta_p, double p_physical) {
    if (delta_p < 0.0) throw std::invalid_argument("emulation_rate_for_excess: delta_p negative");
    if (p_physical < 0.0 || p_physical >= 0.75)
        throw std::invalid_argument("emulation_rate_for_excess: p_physical outside [0, 3/4)");
    return delta_p / (1.0 - (4.0 / 3.0) * p_physical);
}

double inner_code_rate_margin_form(double p, double delta_p, double delta) {
    return (1.0 - delta) * (1.0 - entropy_bits(p)) * delta_p / (1.0 - 2.0 * p);
}

double inner_code_rate_asymptotic_form(double p, double delta_p) {
    return 2.0 * delta_p * (1.0 - entropy_bits(p)) / (1.0 - 2.0 * p);
}

EveRecord eve_view(const TransmittedBlock& block) {
    EveRecord rec;
    rec.n = block.n;
    rec.observable_mixed_count = block.observable_mixed_count;
    rec.wire_weight = static_cast<long>(block.wire.weight());
    rec.wire = block.wire;
    return rec;
}

}  // namespace qsteg
