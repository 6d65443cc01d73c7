#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qsteg/protocol1.hpp"
#include "qsteg/stats.hpp"

using namespace qsteg;

namespace {

PauliString random_payload(std::size_t m, std::mt19937_64& rng) {
    PauliString p(m);
    for (std::size_t i = 0; i < m; ++i) p.set_symbol(i, static_cast<std::uint8_t>(rng() & 3u));
    return p;
}

}  // namespace

TEST_CASE("payload sizing, margin floor, and validation") {
    StegoParams1 params{100, 0.15, 0.3, 0.0, false};
    CHECK(params.payload_slots() == 14);  // round((4/3) 0.15 * 100 * 0.7)
    CHECK(params.delta_lower() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(params.delta_admissible());
    params.delta = 0.15;
    CHECK_FALSE(params.delta_admissible());
    params.delta = 0.55;
    CHECK_FALSE(params.delta_admissible());

    CHECK_THROWS_AS((StegoParams1{0, 0.1, 0.3, 0.0, false}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((StegoParams1{100, 0.8, 0.3, 0.0, false}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((StegoParams1{100, 0.1, 1.0, 0.0, false}).validate(), std::invalid_argument);
    // Inner code needs M divisible by 7; M = 14 passes, M = 10 does not.
    CHECK_NOTHROW((StegoParams1{100, 0.15, 0.3, 0.0, true}).validate());
    CHECK_THROWS_AS((StegoParams1{64, 0.15, 0.25, 0.0, true}).validate(), std::invalid_argument);
}

TEST_CASE("noiseless roundtrip keeps both cursors in step over many blocks") {
    const StegoParams1 params{64, 0.15, 0.25, 0.0, false};
    const long m = params.payload_slots();
    REQUIRE(m == 10);
    std::mt19937_64 rng(2024);
    KeyStream sender = KeyStream::from_seed(77, 200000);
    KeyStream receiver = KeyStream::from_seed(77, 200000);
    for (int blockno = 0; blockno < 25; ++blockno) {
        const PauliString payload = random_payload(static_cast<std::size_t>(m), rng);
        const std::size_t before = sender.cursor();
        const EncodeResultP1 enc = encode_p1_audited(payload, sender, params, rng);
        CHECK(enc.audit.total() == sender.cursor() - before);
        CHECK(enc.audit.subset_final == key_consumption_p1(64, m).subset_bits);
        CHECK(enc.audit.pad == 2 * static_cast<std::size_t>(m));
        CHECK(enc.audit.m_draw == 64);
        CHECK(enc.block.observable_mixed_count ==
              static_cast<long>(m + enc.block.decoy_mixed_slots.size()));

        const PauliString out = decode_p1(enc.block, receiver, params);
        CHECK(out == payload);
        CHECK(receiver.cursor() == sender.cursor());
    }
}

TEST_CASE("decoding with the wrong key looks like uniform guessing") {
    const StegoParams1 params{64, 0.15, 0.25, 0.0, false};
    const long m = params.payload_slots();
    std::mt19937_64 rng(5);
    KeyStream sender = KeyStream::from_seed(101, 2000000);
    KeyStream wrong = KeyStream::from_seed(202, 2000000);
    long matches = 0, symbols = 0;
    for (int blockno = 0; blockno < 200; ++blockno) {
        const PauliString payload = random_payload(static_cast<std::size_t>(m), rng);
        const TransmittedBlock block = encode_p1(payload, sender, params, rng);
        const PauliString guess = decode_p1(block, wrong, params);
        for (long i = 0; i < m; ++i)
            matches += guess.symbol(static_cast<std::size_t>(i)) ==
                       payload.symbol(static_cast<std::size_t>(i));
        symbols += m;
    }
    // Each symbol matches with probability exactly 1/4 under a fresh pad.
    const double expected = 0.25 * static_cast<double>(symbols);
    const double band = 4.5 * std::sqrt(static_cast<double>(symbols) * 0.25 * 0.75);
    CHECK(std::abs(static_cast<double>(matches) - expected) < band);
}

TEST_CASE("mixed count follows the conditioned binomial law") {
    const StegoParams1 params{50, 0.2, 0.3, 0.0, false};
    const long m = params.payload_slots();
    REQUIRE(m == 9);
    const double t = 4.0 * 0.2 / 3.0;
    std::mt19937_64 rng(31);
    KeyStream key = KeyStream::from_seed(404, 2000000);

    const long trials = 3000;
    std::vector<long> observed(static_cast<std::size_t>(50 - m + 1), 0);
    for (long i = 0; i < trials; ++i) {
        const TransmittedBlock block =
            encode_p1(random_payload(static_cast<std::size_t>(m), rng), key, params, rng);
        REQUIRE(block.observable_mixed_count >= m);
        ++observed[static_cast<std::size_t>(block.observable_mixed_count - m)];
    }
    const double tail = 1.0 - binomial_cdf(50, m - 1, t);
    std::vector<double> expected;
    for (long q = m; q <= 50; ++q) expected.push_back(binomial_pmf(50, q, t) / tail);
    const ChiSquareResult r = chi_square_test(observed, expected);
    CHECK(r.pvalue > 1e-3);
}

TEST_CASE("wire weight is binomial at the emulated rate when the cut is deep") {
    // With delta = 0.475 the payload count sits far below the mixed-count
    // mean, so conditioning distorts the weight law by under 3e-4 in mass.
    const StegoParams1 params{200, 0.15, 0.475, 0.0, false};
    REQUIRE(params.payload_slots() == 21);
    std::mt19937_64 rng(47);
    KeyStream key = KeyStream::from_seed(555, 4000000);

    const long trials = 2000;
    std::vector<long> observed(201, 0);
    for (long i = 0; i < trials; ++i) {
        const TransmittedBlock block =
            encode_p1(random_payload(21, rng), key, params, rng);
        ++observed[static_cast<std::size_t>(block.wire.weight())];
    }
    std::vector<double> expected;
    for (long w = 0; w <= 200; ++w) expected.push_back(binomial_pmf(200, w, 0.15));
    const ChiSquareResult r = chi_square_test(observed, expected);
    CHECK(r.pvalue > 1e-3);
}

TEST_CASE("every slot is equally likely to carry payload") {
    const StegoParams1 params{16, 0.25, 0.25, 0.0, false};
    REQUIRE(params.payload_slots() == 4);
    std::mt19937_64 rng(60);
    KeyStream key = KeyStream::from_seed(808, 12000000);

    const long trials = 100000;
    std::vector<long> payload_hits(16, 0);
    std::vector<long> mixed_hits(16, 0);
    for (long i = 0; i < trials; ++i) {
        const TransmittedBlock block = encode_p1(random_payload(4, rng), key, params, rng);
        for (int s : block.payload_slots) ++payload_hits[static_cast<std::size_t>(s)];
        for (int s : block.payload_slots) ++mixed_hits[static_cast<std::size_t>(s)];
        for (int s : block.decoy_mixed_slots) ++mixed_hits[static_cast<std::size_t>(s)];
    }
    const double expect_payload = static_cast<double>(trials) * 4.0 / 16.0;
    const double band_payload = 4.5 * std::sqrt(static_cast<double>(trials) * 0.25 * 0.75);
    for (long c : payload_hits)
        CHECK(std::abs(static_cast<double>(c) - expect_payload) < band_payload);

    double mean_mixed = 0.0;
    for (long c : mixed_hits) mean_mixed += static_cast<double>(c) / 16.0;
    const double q_hat = mean_mixed / static_cast<double>(trials);
    const double band_mixed =
        5.0 * std::sqrt(static_cast<double>(trials) * q_hat * (1.0 - q_hat));
    for (long c : mixed_hits) CHECK(std::abs(static_cast<double>(c) - mean_mixed) < band_mixed);
}

TEST_CASE("inner code recovers the logical payload and fixes any single slot error") {
    const StegoParams1 params{40, 0.15, 0.125, 0.0, true};
    REQUIRE(params.payload_slots() == 7);
    REQUIRE(logical_payload_slots(params) == 4);
    std::mt19937_64 rng(91);
    const PauliString logical = PauliString::parse("XZYI");

    KeyStream sender = KeyStream::from_seed(99, 100000);
    const EncodeResultP1 enc = encode_p1_noisy_audited(logical, sender, params, rng);
    {
        KeyStream receiver = KeyStream::from_seed(99, 100000);
        CHECK(decode_p1_noisy(enc.block, receiver, params) == logical);
    }
    // One corrupted payload slot, any Pauli kind: the per-plane code heals it.
    for (int slot : enc.block.payload_slots) {
        for (std::uint8_t sym = 1; sym < 4; ++sym) {
            TransmittedBlock hit = enc.block;
            hit.wire.set_symbol(static_cast<std::size_t>(slot),
                                hit.wire.symbol(static_cast<std::size_t>(slot)) ^ sym);
            KeyStream receiver = KeyStream::from_seed(99, 100000);
            CHECK(decode_p1_noisy(hit, receiver, params) == logical);
        }
    }
    // Errors away from the payload never touch the decoded value.
    std::vector<bool> is_payload(40, false);
    for (int s : enc.block.payload_slots) is_payload[static_cast<std::size_t>(s)] = true;
    for (int slot = 0; slot < 40; ++slot) {
        if (is_payload[static_cast<std::size_t>(slot)]) continue;
        TransmittedBlock hit = enc.block;
        hit.wire.set_symbol(static_cast<std::size_t>(slot),
                            hit.wire.symbol(static_cast<std::size_t>(slot)) ^ 2u);
        KeyStream receiver = KeyStream::from_seed(99, 100000);
        CHECK(decode_p1_noisy(hit, receiver, params) == logical);
    }
}

TEST_CASE("noisy end-to-end run survives a weak physical channel") {
    // q chosen so the observable rate is p_physical + 0.15; failures need
    // two physical hits in one seven-slot group, about 2e-3 per block.
    const double q = emulation_rate_for_excess(0.15, 0.01);
    const StegoParams1 params{40, q, 0.125, 0.01, true};
    REQUIRE(params.payload_slots() == 7);
    std::mt19937_64 rng(2718);
    KeyStream sender = KeyStream::from_seed(1234, 2000000);
    KeyStream receiver = KeyStream::from_seed(1234, 2000000);
    long exact = 0;
    const long blocks = 200;
    for (long i = 0; i < blocks; ++i) {
        const PauliString logical = random_payload(4, rng);
        const TransmittedBlock block = encode_p1_noisy(logical, sender, params, rng);
        if (decode_p1_noisy(block, receiver, params) == logical) ++exact;
        CHECK(receiver.cursor() == sender.cursor());
    }
    CHECK(exact >= 195);
}

TEST_CASE("observable rate composes the physical and emulated channels") {
    const double q = emulation_rate_for_excess(0.05, 0.1);
    CHECK(effective_error_rate(0.1, q) == doctest::Approx(0.15).epsilon(1e-12));
    const StegoParams1 params{400, q, 0.45, 0.1, false};
    REQUIRE(params.payload_slots() == 17);
    std::mt19937_64 rng(13);
    KeyStream key = KeyStream::from_seed(31415, 4000000);
    double mean_w = 0.0;
    const long trials = 2000;
    for (long i = 0; i < trials; ++i) {
        const TransmittedBlock block = encode_p1(random_payload(17, rng), key, params, rng);
        mean_w += static_cast<double>(block.wire.weight()) / static_cast<double>(trials);
    }
    // 4 sigma of the trial mean is about 0.64; conditioning adds under 0.05.
    CHECK(std::abs(mean_w - 400.0 * 0.15) < 0.75);
}

TEST_CASE("emulation_rate_for_excess inverts the composition") {
    for (double p : {0.0, 0.05, 0.1, 0.2})
        for (double dp : {0.01, 0.05, 0.1}) {
            const double q = emulation_rate_for_excess(dp, p);
            CHECK(effective_error_rate(p, q) == doctest::Approx(p + dp).epsilon(1e-12));
        }
}

TEST_CASE("reference rate normalizations differ by the documented factor") {
    const double margin = inner_code_rate_margin_form(0.1, 0.02, 0.3);
    const double asym = inner_code_rate_asymptotic_form(0.1, 0.02);
    CHECK(asym == doctest::Approx(margin * 2.0 / (1.0 - 0.3)).epsilon(1e-12));
    CHECK(margin == doctest::Approx(0.7 * (1.0 - entropy_bits(0.1)) * 0.02 / 0.8).epsilon(1e-12));
}

TEST_CASE("eve_view carries only the public record") {
    const StegoParams1 params{64, 0.15, 0.25, 0.0, false};
    std::mt19937_64 rng(3);
    KeyStream key = KeyStream::from_seed(1, 100000);
    const TransmittedBlock block = encode_p1(random_payload(10, rng), key, params, rng);
    const EveRecord rec = eve_view(block);
    CHECK(rec.n == 64);
    CHECK(rec.observable_mixed_count == block.observable_mixed_count);
    CHECK(rec.wire_weight == static_cast<long>(block.wire.weight()));
    CHECK(rec.wire == block.wire);
}

TEST_CASE("a starved key stream raises the exhaustion error") {
    const StegoParams1 params{64, 0.15, 0.25, 0.0, false};
    std::mt19937_64 rng(8);
    KeyStream tiny = KeyStream::from_seed(2, 10);
    CHECK_THROWS_AS(encode_p1(random_payload(10, rng), tiny, params, rng), KeyExhaustedError);
}
