#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace qsteg {

// Exact binomial coefficient C(n, k). Zero when k < 0 or k > n.
mpz_class binomial(long n, long k);

// Bits needed to index the range [0, count), i.e. ceil(log2(count)).
// count must be positive; count == 1 needs 0 bits.
std::size_t index_bit_width(const mpz_class& count);

// log2 of a positive big integer, accurate to double precision.
double log2_mpz(const mpz_class& v);

// Round a nonnegative rational to the nearest integer, half away from zero.
mpz_class round_to_mpz(const mpq_class& v);

// Lexicographic rank of a strictly increasing m-subset of {0..n-1}.
mpz_class subset_rank(long n, const std::vector<int>& subset);

// Inverse of subset_rank: rank must lie in [0, C(n, m)).
std::vector<int> subset_unrank(long n, long m, const mpz_class& rank);

}  // namespace qsteg
