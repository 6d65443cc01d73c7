#include "qsteg/keysource.hpp"

#include "qsteg/stats.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <random>

namespace qsteg {

KeyStream KeyStream::from_seed(std::uint64_t seed, std::size_t n_bits) {
    KeyStream ks;
    ks.nbits_ = n_bits;
    ks.bytes_.resize((n_bits + 7) / 8);
    std::mt19937_64 gen(seed);
    std::size_t i = 0;
    while (i < ks.bytes_.size()) {
        std::uint64_t w = gen();
        for (int b = 0; b < 8 && i < ks.bytes_.size(); ++b, ++i) {
            ks.bytes_[i] = static_cast<std::uint8_t>(w >> 56);
            w <<= 8;
        }
    }
    return ks;
}

KeyStream KeyStream::from_hex(std::string_view hex) {
    KeyStream ks;
    int hi = -1;
    for (char c : hex) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument("KeyStream::from_hex: bad hex digit");
        if (hi < 0) {
            hi = v;
        } else {
            ks.bytes_.push_back(static_cast<std::uint8_t>((hi << 4) | v));
            hi = -1;
        }
    }
    if (hi >= 0) throw std::invalid_argument("KeyStream::from_hex: odd digit count");
    ks.nbits_ = ks.bytes_.size() * 8;
    return ks;
}

KeyStream KeyStream::from_hex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("KeyStream: cannot open key file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_hex(content);
}

KeyStream KeyStream::from_bit_string(std::string_view bits) {
    KeyStream ks;
    ks.nbits_ = bits.size();
    ks.bytes_.assign((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') ks.bytes_[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
        else if (bits[i] != '0') throw std::invalid_argument("KeyStream::from_bit_string: bad bit");
    }
    return ks;
}

int KeyStream::draw_bit() {
    if (cursor_ >= nbits_) throw KeyExhaustedError("key stream exhausted");
    const int bit = (bytes_[cursor_ / 8] >> (7 - cursor_ % 8)) & 1;
    ++cursor_;
    return bit;
}

std::uint64_t KeyStream::draw_bits_u64(unsigned n) {
    if (n > 64) throw std::invalid_argument("draw_bits_u64: n > 64");
    if (cursor_ + n > nbits_) throw KeyExhaustedError("key stream exhausted");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < n; ++i) v = (v << 1) | static_cast<std::uint64_t>(draw_bit());
    return v;
}

mpz_class KeyStream::draw_bits_mpz(std::size_t n) {
    if (cursor_ + n > nbits_) throw KeyExhaustedError("key stream exhausted");
    mpz_class v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v <<= 1;
        v += draw_bit();
    }
    return v;
}

std::vector<std::uint8_t> KeyStream::draw_bits(std::size_t n) {
    if (cursor_ + n > nbits_) throw KeyExhaustedError("key stream exhausted");
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(draw_bit());
    return out;
}

KeyBudget key_consumption_p1(long n, long m) {
    if (m < 0 || m > n) throw std::invalid_argument("key_consumption_p1: need 0 <= m <= n");
    KeyBudget b;
    b.subset_bits = index_bit_width(binomial(n, m));
    b.twirl_bits = 2 * static_cast<std::size_t>(m);
    return b;
}

SubsetDraw select_subset_audited(KeyStream& key, long n, long m) {
    const mpz_class count = binomial(n, m);
    if (count == 0) throw std::invalid_argument("select_subset: need 0 <= m <= n");
    SubsetDraw draw;
    draw.bits_per_attempt = index_bit_width(count);
    mpz_class idx = 0;
    for (;;) {
        idx = key.draw_bits_mpz(draw.bits_per_attempt);
        if (idx < count) break;
        ++draw.attempts;
    }
    draw.slots = subset_unrank(n, m, idx);
    return draw;
}

std::vector<int> select_subset(KeyStream& key, long n, long m) {
    return select_subset_audited(key, n, m).slots;
}

PauliString twirl_pad(KeyStream& key, std::size_t m) {
    PauliString pad(m);
    for (std::size_t i = 0; i < m; ++i)
        pad.set_symbol(i, static_cast<std::uint8_t>(key.draw_bits_u64(2)));
    return pad;
}

double kcr_asymptotic(double p, double delta_p) {
    if (p < 0.0 || p >= 0.75) throw std::invalid_argument("kcr: p outside [0, 3/4)");
    if (delta_p < 0.0) throw std::invalid_argument("kcr: delta_p negative");
    const double beta = 4.0 * delta_p / (3.0 - 4.0 * p);
    if (beta >= 1.0) throw std::invalid_argument("kcr: emulated excess too large (beta >= 1)");
    return entropy_bits(beta) + 2.0 * beta;
}

double kcr_exact(double p, double delta_p, long n) {
    if (n <= 0) throw std::invalid_argument("kcr_exact: n must be positive");
    if (p < 0.0 || p >= 0.75) throw std::invalid_argument("kcr: p outside [0, 3/4)");
    const double beta = 4.0 * delta_p / (3.0 - 4.0 * p);
    if (beta < 0.0 || beta >= 1.0) throw std::invalid_argument("kcr: beta outside [0, 1)");
    const long m = std::lround(beta * static_cast<double>(n));
    return static_cast<double>(key_consumption_p1(n, m).total()) / static_cast<double>(n);
}

KeyBudget key_consumption_p2(long n, double s, double delta) {
    if (n <= 0) throw std::invalid_argument("key_consumption_p2: n must be positive");
    if (delta < 0.0 || s < delta)
        throw std::invalid_argument("key_consumption_p2: need 0 <= delta <= s");
    KeyBudget b;
    b.twirl_bits = static_cast<std::size_t>(std::ceil(2.0 * n * (s - delta)));
    b.representative_bits = static_cast<std::size_t>(std::ceil(n * delta));
    return b;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base ^ (index * 0x9E3779B97F4A7C15ull);
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

EbitAccounting ebit_teleport_accounting(long n) {
    if (n < 0) throw std::invalid_argument("ebit_teleport_accounting: n negative");
    return {n, 2 * n, false};
}

}  // namespace qsteg
