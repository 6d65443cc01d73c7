#include "qsteg/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qsteg {

PauliString PauliString::parse(std::string_view text) {
    PauliString out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        std::uint8_t v;
        switch (text[i]) {
            case 'I': v = kI; break;
            case 'X': v = kX; break;
            case 'Y': v = kY; break;
            case 'Z': v = kZ; break;
            default: throw std::invalid_argument("PauliString::parse: bad symbol");
        }
        out.set_symbol(i, v);
    }
    return out;
}

PauliString PauliString::from_symbols(const std::vector<std::uint8_t>& symbols) {
    PauliString out(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] > 3) throw std::invalid_argument("PauliString::from_symbols: bad symbol");
        out.set_symbol(i, symbols[i]);
    }
    return out;
}

std::size_t PauliString::weight() const {
    constexpr std::uint64_t kLow = 0x5555555555555555ull;
    std::size_t w = 0;
    for (std::uint64_t word : words_) {
        // A symbol is non-identity iff either of its two bits is set.
        const std::uint64_t non_id = (word | (word >> 1)) & kLow;
        w += static_cast<std::size_t>(std::popcount(non_id));
    }
    return w;
}

std::string PauliString::str() const {
    std::string s(n_, 'I');
    for (std::size_t i = 0; i < n_; ++i) s[i] = kPauliChars[symbol(i)];
    return s;
}

void PauliString::compose_with(const PauliString& other) {
    if (other.n_ != n_) throw std::invalid_argument("compose: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
}

PauliString compose(const PauliString& a, const PauliString& b) {
    PauliString out = a;
    out.compose_with(b);
    return out;
}

}  // namespace qsteg
