#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "qsteg/channel.hpp"
#include "qsteg/keysource.hpp"
#include "qsteg/pauli.hpp"
#include "qsteg/protocol1.hpp"
#include "qsteg/syndrome.hpp"

namespace qsteg {

// Message-as-typical-error protocol: the message selects one set of the
// typical-error partition and the emitted "channel error" is a keyed uniform
// member of that set.
struct StegoParams2 {
    long n = 0;
    ChannelModel channel = ChannelModel::bsc(0.0);
    double delta = 0.0;          // probability-exponent typicality margin
    ErrorPartition partition;
    long message_bits = 0;       // floor(log2 C), C = partition.set_count

    static StegoParams2 build(const ChannelModel& ch, long n, double delta);
};

struct KeyAuditP2 {
    std::size_t pad = 0;                     // 2 bits per message bit
    std::size_t representative_final = 0;    // accepted in-set member index
    std::size_t representative_rejected = 0; // discarded member attempts
    std::size_t total() const { return pad + representative_final + representative_rejected; }
};

struct EncodeResultP2 {
    TransmittedBlock block;
    KeyAuditP2 audit;
    mpz_class set_index;
};

// message in [0, 2^message_bits). The padded message is spread over the full
// set range by g = (u * C) >> message_bits, which is injective since
// C >= 2^message_bits. Key draws, in order: pad (x then z per message bit,
// z inert classically), then the representative member.
EncodeResultP2 encode_p2_audited(const mpz_class& message, KeyStream& key,
                                 const StegoParams2& params);
TransmittedBlock encode_p2(const mpz_class& message, KeyStream& key, const StegoParams2& params);

struct DecodeResultP2 {
    bool ok = false;                       // false: error atypical, unassigned, or unmapped
    mpz_class message;
    bool representative_mismatch = false;  // observed member differs from the keyed redraw
};

// Locates the observed error's set, replays the encoder's member draw (which
// realigns the key cursor and cross-checks the member), and inverts the
// message map. When the error cannot be located the pad is still consumed
// but the member draw cannot be replayed, so cursor alignment is lost; ok is
// false and the caller decides whether to continue the stream.
DecodeResultP2 decode_p2(const TransmittedBlock& block, KeyStream& key,
                         const StegoParams2& params);

// Closed-form subset fraction maximizing the noisy-variant rate,
// q = (M/N) 2^h(p) / (2^h(p) - 1), clamped into (0, 1].
struct OptimalQ {
    double q = 0.0;
    bool clamped = false;
};
OptimalQ optimal_q(double p, double m_over_n);

// Asymptotic noisy-variant rate R = -(delta_p/(1-2p)) log2(2^h(p) - 1).
double p2_noisy_rate(double p, double delta_p);

// Constant-weight codebook for hiding messages in a BSC(p): count codewords
// of weight M on N' = round(qN) keyed active slots, pairwise Hamming
// distance > 2pqN.
struct NoisyCodebook {
    long n = 0;
    double q_fraction = 0.0;
    bool q_clamped = false;
    long weight = 0;                  // M = round(N delta_p / (1 - 2p))
    long min_distance_required = 0;   // the acceptance threshold, > 2pqN
    std::vector<int> active_slots;
    std::vector<std::vector<std::uint64_t>> codewords;  // bitmasks over active slots

    long count() const { return static_cast<long>(codewords.size()); }
    double rate() const;              // log2(count) / n
    long min_distance() const;        // exhaustive pairwise; count < 2 gives 0
};

// Greedy construction over a keyed candidate stream: the key selects the
// active subset and seeds the candidate generator, so the book is a pure
// function of (n, p, delta_p, key state). Throws when the geometry cannot
// hold two codewords apart.
NoisyCodebook build_noisy_codebook(long n, double p, double delta_p, KeyStream& key);

// Nearest-codeword decode restricted to active slots; ties break to the
// lowest index. received holds one 0/1 entry per block slot.
long decode_noisy(const std::vector<std::uint8_t>& received, const NoisyCodebook& cb);

// Monte-Carlo block error rate of the codebook over BSC(p): random codeword,
// i.i.d. flips on every slot, nearest-codeword decode.
double noisy_block_error_rate(const NoisyCodebook& cb, double p, long trials,
                              std::mt19937_64& rng);

}  // namespace qsteg
