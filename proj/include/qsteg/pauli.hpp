#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsteg {

// Symbol codes. The encoding is chosen so that the phase-free single-qubit
// product is the XOR of codes: X*Y ~ Z, X*Z ~ Y, Y*Z ~ X, A*A = I.
enum PauliSymbol : std::uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

inline constexpr char kPauliChars[5] = "IXYZ";

// Fixed-length string over {I, X, Y, Z}, packed 2 bits per symbol.
// Doubles as the generic 2-bit symbol sequence used for payload slots.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::size_t n) : n_(n), words_((n + 31) / 32, 0) {}

    static PauliString parse(std::string_view text);
    static PauliString from_symbols(const std::vector<std::uint8_t>& symbols);

    std::size_t size() const { return n_; }

    std::uint8_t symbol(std::size_t i) const {
        return static_cast<std::uint8_t>((words_[i / 32] >> (2 * (i % 32))) & 3u);
    }

    void set_symbol(std::size_t i, std::uint8_t v) {
        const std::size_t w = i / 32, sh = 2 * (i % 32);
        words_[w] = (words_[w] & ~(std::uint64_t{3} << sh)) | (std::uint64_t{v & 3u} << sh);
    }

    // Number of non-identity symbols.
    std::size_t weight() const;

    std::string str() const;

    bool operator==(const PauliString& other) const = default;

    // In-place phase-free product with another string of equal length.
    void compose_with(const PauliString& other);

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Phase-free product of equal-length strings. Every string is its own inverse.
PauliString compose(const PauliString& a, const PauliString& b);

}  // namespace qsteg
