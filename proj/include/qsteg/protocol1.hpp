#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "qsteg/channel.hpp"
#include "qsteg/keysource.hpp"
#include "qsteg/pauli.hpp"

namespace qsteg {

// Hide-payload-as-mixed-slots protocol: M payload slots are twirled to look
// maximally mixed and planted among decoy mixed slots so the block's mixed
// count follows the emulated channel's law.
struct StegoParams1 {
    long n = 0;
    double p_emulated = 0.0;   // depolarizing rate the stego layer emulates
    double delta = 0.0;        // payload margin in M = (4/3) p n (1 - delta)
    double p_physical = 0.0;   // intrinsic channel rate, 0 for the noiseless variant
    bool use_inner_code = false;

    // M = round((4/3) p_emulated n (1 - delta)).
    long payload_slots() const;
    // Margin floor sqrt((1 - 4p/3) / ((4p/3) n)): below it the decoy count
    // cannot hide M reliably. Guidance, not a hard error.
    double delta_lower() const;
    bool delta_admissible() const { return delta > delta_lower() && delta < 0.5; }
    void validate() const;  // throws std::invalid_argument
};

struct TransmittedBlock {
    long n = 0;
    std::vector<int> payload_slots;      // key-secret
    PauliString pad;                     // key-secret, one symbol per payload slot
    std::vector<int> decoy_mixed_slots;  // key-secret, the m extra mixed positions
    PauliString channel_error;           // physical-channel action on the block
    long observable_mixed_count = 0;     // Q = M + m
    PauliString wire;                    // net per-slot action an observer sees
};

// Measured key consumption of one encode, split by purpose. Rejected
// subset-draw attempts are itemized so the accepted draw can be compared
// against the closed-form budget.
struct KeyAuditP1 {
    std::size_t subset_final = 0;     // accepted payload-subset index
    std::size_t subset_rejected = 0;  // discarded payload-subset attempts
    std::size_t pad = 0;              // one-time pad, 2 bits per payload slot
    std::size_t m_draw = 0;           // decoy-count inverse-CDF sample
    std::size_t decoy_subset = 0;     // accepted decoy-position index
    std::size_t decoy_rejected = 0;   // discarded decoy-position attempts
    std::size_t total() const {
        return subset_final + subset_rejected + pad + m_draw + decoy_subset + decoy_rejected;
    }
};

struct EncodeResultP1 {
    TransmittedBlock block;
    KeyAuditP1 audit;
};

// payload: M symbols. Key draws, in order: payload subset, pad, decoy count
// m (so that Q = M + m follows the emulated binomial law conditioned on
// Q >= M), decoy positions. Decoy slot contents come from rng; the receiver
// never needs them.
EncodeResultP1 encode_p1_audited(const PauliString& payload, KeyStream& key,
                                 const StegoParams1& params, std::mt19937_64& rng);
TransmittedBlock encode_p1(const PauliString& payload, KeyStream& key, const StegoParams1& params,
                           std::mt19937_64& rng);

// Replays the encoder's key draws (all of them, to keep the cursor in step
// for later blocks) and unpads the payload slots. Exact when the block was
// not hit by physical noise.
PauliString decode_p1(const TransmittedBlock& block, KeyStream& key, const StegoParams1& params);

// Noisy variant: payload_logical (4M/7 symbols) is expanded through a
// Hamming(7,4) code per packed bit-plane, encoded as above, and the block
// then passes through a depolarizing channel at p_physical. Requires
// use_inner_code and M divisible by 7.
EncodeResultP1 encode_p1_noisy_audited(const PauliString& payload_logical, KeyStream& key,
                                       const StegoParams1& params, std::mt19937_64& rng);
TransmittedBlock encode_p1_noisy(const PauliString& payload_logical, KeyStream& key,
                                 const StegoParams1& params, std::mt19937_64& rng);

// Inverse of encode_p1_noisy: unpads, then corrects each 7-slot group per
// bit-plane. Exact whenever no group takes more than one physical error.
PauliString decode_p1_noisy(const TransmittedBlock& block, KeyStream& key,
                            const StegoParams1& params);

// Logical payload capacity of the noisy variant: k_s = 4M/7.
long logical_payload_slots(const StegoParams1& params);

// Emulation rate q that makes the observable rate p_physical + delta_p,
// inverting p + q(1 - 4p/3).
double emulation_rate_for_excess(double delta_p, double p_physical);

// Reference rates for the inner-coded variant over an effective BSC, the
// two published normalizations (they differ by 2/(1 - delta)).
double inner_code_rate_margin_form(double p, double delta_p, double delta);
double inner_code_rate_asymptotic_form(double p, double delta_p);

// What a key-less observer can record about one block. The mixed count is
// key-independent model metadata; the wire weight is the statistic a
// syndrome monitor actually measures.
struct EveRecord {
    long n = 0;
    long observable_mixed_count = 0;
    long wire_weight = 0;
    PauliString wire;
};

EveRecord eve_view(const TransmittedBlock& block);

}  // namespace qsteg
