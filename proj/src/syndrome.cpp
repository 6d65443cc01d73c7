#include "qsteg/syndrome.hpp"

#include <cmath>
#include <stdexcept>

#include "qsteg/combinatorics.hpp"
#include "qsteg/stats.hpp"

namespace qsteg {

namespace hamming74 {

std::uint8_t syndrome(std::uint8_t word) {
    std::uint8_t s = 0;
    for (int j = 0; j < 7; ++j)
        if (word & (1u << j)) s ^= static_cast<std::uint8_t>(j + 1);
    return s;
}

std::uint8_t encode(std::uint8_t data) {
    if (data > 0x0f) throw std::invalid_argument("hamming74::encode: data wider than 4 bits");
    std::uint8_t word = static_cast<std::uint8_t>(((data & 1u) << 2) | ((data & 2u) << 3) |
                                                  ((data & 4u) << 3) | ((data & 8u) << 3));
    const std::uint8_t s = syndrome(word);
    // Parity positions 1, 2, 4 each touch exactly one syndrome bit.
    if (s & 1u) word ^= 1u << 0;
    if (s & 2u) word ^= 1u << 1;
    if (s & 4u) word ^= 1u << 3;
    return word;
}

std::uint8_t correct(std::uint8_t word) {
    const std::uint8_t s = syndrome(word);
    return s == 0 ? word : static_cast<std::uint8_t>(word ^ (1u << (s - 1)));
}

std::uint8_t extract(std::uint8_t word) {
    return static_cast<std::uint8_t>(((word >> 2) & 1u) | ((word >> 3) & 2u) |
                                     ((word >> 3) & 4u) | ((word >> 3) & 8u));
}

}  // namespace hamming74

namespace {

int symbol_kinds(const ChannelModel& ch) {
    switch (ch.kind()) {
        case ChannelKind::bsc: return 1;
        case ChannelKind::depolarizing: return 3;
        default:
            throw std::invalid_argument("partitioning supports bsc and depolarizing channels");
    }
}

// Guard against ties like 100*0.1 = 10.000000000000002 landing on the wrong
// side of ceil/floor.
constexpr double kEdgeNudge = 1e-9;

}  // namespace

TypicalErrorSet build_typical_set(const ChannelModel& ch, long n, double delta) {
    if (n < 1) throw std::invalid_argument("build_typical_set: n must be positive");
    if (delta < 0.0) throw std::invalid_argument("build_typical_set: delta must be nonnegative");
    const int c = symbol_kinds(ch);
    const double t = ch.non_identity_rate();
    const double nd = static_cast<double>(n);

    TypicalErrorSet ts{ch, n, channel_entropy(ch), delta, 0, 0, 0.0};
    if (t == 0.0 || t == 1.0) {
        ts.k_lo = ts.k_hi = (t == 0.0) ? 0 : n;
        ts.total_probability = 1.0;
        return ts;
    }

    // -log2 P(string of weight k) = base + k*lambda.
    const double lambda = std::log2(c * (1.0 - t) / t);
    const double base = -nd * std::log2(1.0 - t);
    const double target_lo = nd * (ts.entropy_per_symbol - delta);
    const double target_hi = nd * (ts.entropy_per_symbol + delta);
    if (std::fabs(lambda) < 1e-12) {
        // All strings equiprobable (e.g. a symmetric channel at rate 1/2).
        if (base < target_lo - kEdgeNudge || base > target_hi + kEdgeNudge)
            throw std::invalid_argument("build_typical_set: empty weight window");
        ts.k_lo = 0;
        ts.k_hi = n;
        ts.total_probability = 1.0;
        return ts;
    }

    double lo_real = (target_lo - base) / lambda;
    double hi_real = (target_hi - base) / lambda;
    if (lambda < 0.0) std::swap(lo_real, hi_real);
    const long k_lo = std::max(0L, static_cast<long>(std::ceil(lo_real - kEdgeNudge)));
    const long k_hi = std::min(n, static_cast<long>(std::floor(hi_real + kEdgeNudge)));
    if (k_lo > k_hi)
        throw std::invalid_argument("build_typical_set: empty weight window at this delta");

    ts.k_lo = k_lo;
    ts.k_hi = k_hi;
    KahanSum mass;
    for (long k = k_lo; k <= k_hi; ++k) mass.add(binomial_pmf(n, k, t));
    ts.total_probability = std::min(1.0, mass.value());
    return ts;
}

const WeightClassPlan* ErrorPartition::class_at_weight(long k) const {
    for (const auto& cls : classes)
        if (cls.k == k) return &cls;
    return nullptr;
}

const WeightClassPlan* ErrorPartition::class_of_set(const mpz_class& set_index) const {
    for (const auto& cls : classes)
        if (set_index >= cls.set_offset && set_index < cls.set_offset + cls.set_count)
            return &cls;
    return nullptr;
}

ErrorPartition build_partition(const TypicalErrorSet& ts, double p) {
    const int c = symbol_kinds(ts.channel);
    if (std::fabs(p - ts.channel.non_identity_rate()) > 1e-12)
        throw std::invalid_argument("build_partition: p disagrees with the typical set's channel");
    if (p <= 0.0 || p >= static_cast<double>(c) / (c + 1))
        throw std::invalid_argument("build_partition: rate outside the contractive regime");

    ErrorPartition part{ts.channel, ts.n, ts.k_lo, ts.k_hi, 0, 0.0, {}};
    const mpq_class p_exact(p);  // exact binary value of the double
    const mpq_class rho = mpq_class(1 - p_exact) * c / p_exact;
    part.log2_ideal_mass = ts.k_lo * std::log2(p / c) +
                           static_cast<double>(ts.n - ts.k_lo) * std::log2(1.0 - p);

    mpq_class rho_pow = 1;
    mpz_class offset = 0;
    for (long k = ts.k_lo; k <= ts.k_hi; ++k) {
        WeightClassPlan cls;
        cls.k = k;
        mpz_class kinds_pow;
        mpz_ui_pow_ui(kinds_pow.get_mpz_t(), static_cast<unsigned long>(c),
                      static_cast<unsigned long>(k));
        cls.class_size = binomial(ts.n, k) * kinds_pow;
        cls.per_set = round_to_mpz(rho_pow);
        // Rounded mass quotient, capped by the number of whole sets the
        // class can supply; leftover strings stay unassigned.
        const mpz_class ideal = round_to_mpz(mpq_class(cls.class_size) / rho_pow);
        const mpz_class cap = cls.class_size / cls.per_set;
        cls.set_count = ideal < cap ? ideal : cap;
        cls.set_offset = offset;
        offset += cls.set_count;
        part.classes.push_back(std::move(cls));
        rho_pow *= rho;
    }
    part.set_count = offset;
    if (part.set_count == 0)
        throw std::invalid_argument("build_partition: no set fits the window");
    return part;
}

PartitionCapacity partition_capacity(double p, long n, double delta) {
    if (p <= 0.0 || p >= 0.5)
        throw std::invalid_argument("partition_capacity: p must lie in (0, 1/2)");
    if (n < 1) throw std::invalid_argument("partition_capacity: n must be positive");
    PartitionCapacity out;
    out.m_bits = static_cast<double>(n) *
                 (entropy_bits(p) - p * delta * std::log2((1.0 - p) / p));
    out.c = std::exp2(out.m_bits);
    return out;
}

double partition_deviation_bound(double p, long n, double delta) {
    if (p <= 0.0 || p >= 0.5)
        throw std::invalid_argument("partition_deviation_bound: p must lie in (0, 1/2)");
    if (n < 1) throw std::invalid_argument("partition_deviation_bound: n must be positive");
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("partition_deviation_bound: delta must lie in [0, 1]");
    const double nd = static_cast<double>(n);
    long k = static_cast<long>(std::ceil(nd * p * (1.0 - delta) - kEdgeNudge));
    k = std::max(0L, std::min(n, k));
    const double kd = static_cast<double>(k);
    const double log_val = std::log((1.0 - p) / (1.0 - 2.0 * p)) + 2.0 * kd * std::log(p) +
                           (nd - 2.0 * kd) * std::log(1.0 - p);
    return std::exp(log_val);
}

namespace {

// Shared by sampling and lookup: strings of weight k are ranked by position
// subset first, then by the base-kinds number of their symbol kinds read in
// slot order (X=0, Y=1, Z=2).
PauliString string_at_rank(long n, long k, int kinds, const mpz_class& rank) {
    mpz_class kinds_pow;
    mpz_ui_pow_ui(kinds_pow.get_mpz_t(), static_cast<unsigned long>(kinds),
                  static_cast<unsigned long>(k));
    mpz_class pos_rank = rank / kinds_pow;
    mpz_class sym_rank = rank % kinds_pow;
    const std::vector<int> slots = subset_unrank(n, k, pos_rank);
    PauliString e(static_cast<std::size_t>(n));
    if (kinds == 1) {
        for (int s : slots) e.set_symbol(static_cast<std::size_t>(s), kX);
        return e;
    }
    std::vector<int> digits(static_cast<std::size_t>(k));
    mpz_class rest = sym_rank;
    for (long i = k - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = static_cast<int>(mpz_class(rest % kinds).get_ui());
        rest /= kinds;
    }
    for (long i = 0; i < k; ++i)
        e.set_symbol(static_cast<std::size_t>(slots[static_cast<std::size_t>(i)]),
                     static_cast<std::uint8_t>(kX + digits[static_cast<std::size_t>(i)]));
    return e;
}

// Inverse of string_at_rank. Returns false when the string uses symbols the
// model does not admit (Y/Z under a bit-flip channel).
bool rank_of_string(const PauliString& e, int kinds, mpz_class& rank_out, long& weight_out) {
    const long n = static_cast<long>(e.size());
    std::vector<int> slots;
    std::vector<int> digits;
    for (long i = 0; i < n; ++i) {
        const std::uint8_t s = e.symbol(static_cast<std::size_t>(i));
        if (s == kI) continue;
        if (kinds == 1 && s != kX) return false;
        slots.push_back(static_cast<int>(i));
        digits.push_back(static_cast<int>(s) - kX);
    }
    const long k = static_cast<long>(slots.size());
    mpz_class sym_rank = 0;
    for (int d : digits) sym_rank = sym_rank * kinds + d;
    mpz_class kinds_pow;
    mpz_ui_pow_ui(kinds_pow.get_mpz_t(), static_cast<unsigned long>(kinds),
                  static_cast<unsigned long>(k));
    rank_out = subset_rank(n, slots) * kinds_pow + sym_rank;
    weight_out = k;
    return true;
}

}  // namespace

RepresentativeDraw representative_error_audited(const ErrorPartition& part,
                                                const mpz_class& set_index, KeyStream& key) {
    const WeightClassPlan* cls = part.class_of_set(set_index);
    if (cls == nullptr)
        throw std::out_of_range("representative_error: set index outside the partition");
    RepresentativeDraw draw;
    draw.bits_per_attempt = static_cast<long>(index_bit_width(cls->per_set));
    mpz_class idx;
    for (draw.attempts = 1;; ++draw.attempts) {
        idx = key.draw_bits_mpz(static_cast<std::size_t>(draw.bits_per_attempt));
        if (idx < cls->per_set) break;
    }
    const mpz_class rank = (set_index - cls->set_offset) * cls->per_set + idx;
    draw.error = string_at_rank(part.n, cls->k, symbol_kinds(part.channel), rank);
    return draw;
}

PauliString representative_error(const ErrorPartition& part, const mpz_class& set_index,
                                 KeyStream& key) {
    return representative_error_audited(part, set_index, key).error;
}

SetLookup locate_error(const ErrorPartition& part, const PauliString& e) {
    SetLookup out;
    if (static_cast<long>(e.size()) != part.n)
        throw std::invalid_argument("locate_error: length mismatch");
    mpz_class rank;
    long k = 0;
    if (!rank_of_string(e, symbol_kinds(part.channel), rank, k)) return out;
    const WeightClassPlan* cls = part.class_at_weight(k);
    if (cls == nullptr) return out;
    const mpz_class b = rank / cls->per_set;
    if (b >= cls->set_count) return out;  // leftover string, never emitted
    out.assigned = true;
    out.set_index = cls->set_offset + b;
    out.member_rank = rank - b * cls->per_set;
    return out;
}

SyndromeLabel SyndromeModel::syndrome_of(const PauliString& e) const {
    if (static_cast<long>(e.size()) != n)
        throw std::invalid_argument("syndrome_of: length mismatch");
    SyndromeLabel label;
    if (!rank_of_string(e, kinds, label.rank, label.weight))
        throw std::invalid_argument("syndrome_of: symbol outside the channel's error model");
    return label;
}

PauliString SyndromeModel::error_of(const SyndromeLabel& label) const {
    if (label.weight < 0 || label.weight > n)
        throw std::invalid_argument("error_of: weight out of range");
    return string_at_rank(n, label.weight, kinds, label.rank);
}

}  // namespace qsteg
