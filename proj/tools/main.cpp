// CLI front end: analytic tables (kcr, rates, security), protocol Monte-Carlo
// runs (simulate-p1, simulate-p2), the adversary experiment (eve), and file
// codecs (p2-encode, p2-decode). Every CSV artifact embeds an artifact
// version and a hash of the effective config, so identical config plus key
// material reproduces outputs byte for byte.
//
// Exit codes: 0 success, 2 config error, 3 key exhaustion.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsteg/adversary.hpp"
#include "qsteg/channel.hpp"
#include "qsteg/keysource.hpp"
#include "qsteg/protocol1.hpp"
#include "qsteg/protocol2.hpp"
#include "qsteg/security.hpp"
#include "qsteg/stats.hpp"

using nlohmann::json;
using namespace qsteg;

namespace {

constexpr const char* kArtifactVersion = "1";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// nlohmann's default object container is key-sorted, so dump() is canonical.
std::string header_comment(const json& effective_config) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(effective_config.dump())));
    return std::string("# artifact_version ") + kArtifactVersion + "\n# config_hash " + buf +
           "\n";
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return json::parse(in);  // json::exception maps to exit 2
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::fputs(body.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << body;
}

ChannelModel make_channel(const json& spec) {
    if (!spec.is_object()) throw std::invalid_argument("channel spec must be an object");
    const std::string kind = spec.value("kind", "depolarizing");
    if (kind == "pauli") {
        const auto& w = spec.at("weights");
        if (!w.is_array() || w.size() != 4)
            throw std::invalid_argument("pauli channel needs four weights");
        return ChannelModel::pauli(w[0].get<double>(), w[1].get<double>(), w[2].get<double>(),
                                   w[3].get<double>());
    }
    const double p = spec.at("p").get<double>();
    if (kind == "depolarizing") return ChannelModel::depolarizing(p);
    if (kind == "bsc") return ChannelModel::bsc(p);
    throw std::invalid_argument("unknown channel kind: " + kind);
}

std::vector<double> grid_from(const json& cfg, const char* key, double lo, double hi,
                              double step) {
    std::vector<double> g;
    if (cfg.contains(key)) {
        for (const auto& v : cfg.at(key)) g.push_back(v.get<double>());
        if (g.empty()) throw std::invalid_argument(std::string(key) + " must be nonempty");
        return g;
    }
    lo = cfg.value(std::string(key) + "_min", lo);
    hi = cfg.value(std::string(key) + "_max", hi);
    step = cfg.value(std::string(key) + "_step", step);
    if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
    for (double v = lo; v <= hi + 1e-12; v += step) g.push_back(v);
    return g;
}

// Key material: exactly one of a 64-bit test seed or a hex key file.
struct KeySpec {
    std::optional<std::uint64_t> seed;
    std::string file;

    void require_one() const {
        if (seed.has_value() == !file.empty())
            throw std::invalid_argument("provide exactly one of --seed or --key-file");
        if (seed)
            std::fprintf(stderr,
                         "WARNING: --seed derives a reproducible test key stream that is NOT "
                         "SECRET; use --key-file for real key material.\n");
    }
    KeyStream open(std::size_t seeded_budget_bits) const {
        return seed ? KeyStream::from_seed(*seed, seeded_budget_bits)
                    : KeyStream::from_hex_file(file);
    }
    json describe() const {
        json j;
        if (seed)
            j["seed"] = *seed;
        else
            j["key_file"] = file;  // path only; contents never leave the stream
        return j;
    }
};

// Worst-case key bits one protocol-1 block can consume, including the
// bounded rejection redraws (48 attempts per subset draw).
std::size_t p1_block_budget(const StegoParams1& params) {
    const long m = params.payload_slots();
    const KeyBudget kb = key_consumption_p1(params.n, m);
    return 48 * (kb.subset_bits + static_cast<std::size_t>(params.n - m)) + kb.twirl_bits + 64 +
           512;
}

std::size_t p2_block_budget(const StegoParams2& params) {
    std::size_t repr_bits = 1;
    for (const auto& cls : params.partition.classes)
        repr_bits = std::max(repr_bits, index_bit_width(cls.per_set));
    return 2 * static_cast<std::size_t>(params.message_bits) + 48 * (repr_bits + 1);
}

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string in_path;
    std::string trace_path;
    std::string codebook_path;
    KeySpec key;
    bool reveal = false;
    long trials_override = -1;
    int threads = 1;
};

std::ofstream open_trace(const std::string& path, const json& effective) {
    std::ofstream trace(path, std::ios::binary);
    if (!trace) throw std::invalid_argument("cannot open trace file: " + path);
    json head;
    head["artifact_version"] = kArtifactVersion;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(effective.dump())));
    head["config_hash"] = buf;
    trace << head.dump() << "\n";
    return trace;
}

int run_kcr(const CommonFlags& flags) {
    const json cfg = load_config(flags.config_path);
    const std::vector<double> ps = grid_from(cfg, "p", 0.05, 0.30, 0.05);
    const double dp = cfg.value("delta_p", 0.01);
    const long n = cfg.value("n", 10000L);

    json effective{{"verb", "kcr"}, {"p", ps}, {"delta_p", dp}, {"n", n}};
    std::string body = header_comment(effective);
    body += "p,delta_p,beta,k_asymptotic,k_exact_n\n";
    for (double p : ps) {
        const double beta = 4.0 * dp / (3.0 - 4.0 * p);
        body += fmt_double(p) + "," + fmt_double(dp) + "," + fmt_double(beta) + "," +
                fmt_double(kcr_asymptotic(p, dp)) + "," + fmt_double(kcr_exact(p, dp, n)) + "\n";
    }
    write_text(flags.out_path, body);
    return 0;
}

int run_rates(const CommonFlags& flags) {
    const json cfg = load_config(flags.config_path);
    const std::vector<double> ps = grid_from(cfg, "p", 0.05, 0.30, 0.05);
    const double delta = cfg.value("delta", 0.01);
    const double dp = cfg.value("delta_p", 0.01);
    const std::string kind = cfg.value("channel_kind", "depolarizing");

    json effective{
        {"verb", "rates"}, {"p", ps}, {"delta", delta}, {"delta_p", dp}, {"channel_kind", kind}};
    std::string body = header_comment(effective);
    body += "p,rate_p1,rate_p2,rate_p2_noisy,rate_inner_bsc_margin,rate_inner_bsc_asymptotic\n";
    for (double p : ps) {
        const ChannelModel ch =
            kind == "bsc" ? ChannelModel::bsc(p) : ChannelModel::depolarizing(p);
        const double s = channel_entropy(ch);
        body += fmt_double(p) + "," + fmt_double(4.0 * p / 3.0) + "," + fmt_double(s - delta) +
                "," + fmt_double(p2_noisy_rate(p, dp)) + "," +
                fmt_double(inner_code_rate_margin_form(p, dp, delta)) + "," +
                fmt_double(inner_code_rate_asymptotic_form(p, dp)) + "\n";
    }
    write_text(flags.out_path, body);
    return 0;
}

int run_security(const CommonFlags& flags) {
    const json cfg = load_config(flags.config_path);
    std::vector<long> ns;
    for (const auto& v : cfg.value("n", json::array({1, 2, 5, 10, 100, 1000})))
        ns.push_back(v.get<long>());
    const std::vector<double> ps = grid_from(cfg, "p", 0.10, 0.10, 0.05);
    const double dp = cfg.value("delta_p", 0.01);
    const double delta = cfg.value("delta", 0.1);
    const double eps = cfg.value("eps", 0.01);

    json effective{{"verb", "security"}, {"n", ns},         {"p", ps},
                   {"delta_p", dp},      {"delta", delta},  {"eps", eps}};
    std::string body = header_comment(effective);
    body += "n,p,delta_p,diamond_norm,p_opt,s37_bound\n";
    for (long n : ns)
        for (double p : ps) {
            const double d = diamond_norm_n(p, p + dp, n);
            body += std::to_string(n) + "," + fmt_double(p) + "," + fmt_double(dp) + "," +
                    fmt_double(d) + "," + fmt_double(p_opt(d)) + "," +
                    fmt_double(p2_closeness_bound(p, n, delta, eps)) + "\n";
        }
    write_text(flags.out_path, body);
    return 0;
}

std::string chi_fields(const std::vector<long>& observed, const std::vector<double>& law) {
    try {
        const ChiSquareResult r = chi_square_test(observed, law);
        return fmt_double(r.statistic) + "," + fmt_double(r.pvalue);
    } catch (const std::invalid_argument&) {
        return "nan,nan";  // too few blocks to pool a valid table
    }
}

int run_simulate_p1(const CommonFlags& flags) {
    const json cfg = load_config(flags.config_path);
    StegoParams1 params;
    params.n = cfg.at("n").get<long>();
    params.p_emulated = cfg.at("p_emulated").get<double>();
    params.delta = cfg.at("delta").get<double>();
    params.p_physical = cfg.value("p_physical", 0.0);
    params.use_inner_code = cfg.value("inner_code", false);
    params.validate();
    const long blocks = flags.trials_override > 0 ? flags.trials_override
                                                  : cfg.value("blocks", 1000L);
    if (blocks < 1) throw std::invalid_argument("blocks must be >= 1");
    const std::uint64_t sim_seed = cfg.value("sim_seed", 0x51D0ull);
    flags.key.require_one();

    // The CSV hash covers what determines the CSV bytes; trace-only switches
    // (reveal) are hashed into the trace header instead.
    json effective{{"verb", "simulate-p1"},
                   {"n", params.n},
                   {"p_emulated", params.p_emulated},
                   {"delta", params.delta},
                   {"p_physical", params.p_physical},
                   {"inner_code", params.use_inner_code},
                   {"blocks", blocks},
                   {"sim_seed", sim_seed},
                   {"key", flags.key.describe()}};

    const long m = params.payload_slots();
    const long payload_len = params.use_inner_code ? logical_payload_slots(params) : m;
    const std::size_t budget = static_cast<std::size_t>(blocks) * p1_block_budget(params) + 4096;
    KeyStream sender = flags.key.open(budget);
    KeyStream receiver = flags.key.open(budget);
    std::mt19937_64 rng(sim_seed);

    std::ofstream trace;
    if (!flags.trace_path.empty()) {
        json trace_cfg = effective;
        trace_cfg["reveal"] = flags.reveal;
        trace = open_trace(flags.trace_path, trace_cfg);
    }

    long recovered = 0;
    KeyAuditP1 totals;
    std::vector<long> q_hist(static_cast<std::size_t>(params.n) + 1, 0);
    std::vector<long> w_hist(static_cast<std::size_t>(params.n) + 1, 0);
    for (long b = 0; b < blocks; ++b) {
        PauliString payload(static_cast<std::size_t>(payload_len));
        for (long i = 0; i < payload_len; ++i)
            payload.set_symbol(static_cast<std::size_t>(i),
                               static_cast<std::uint8_t>(rng() & 3u));
        const EncodeResultP1 enc = params.use_inner_code
                                       ? encode_p1_noisy_audited(payload, sender, params, rng)
                                       : encode_p1_audited(payload, sender, params, rng);
        totals.subset_final += enc.audit.subset_final;
        totals.subset_rejected += enc.audit.subset_rejected;
        totals.pad += enc.audit.pad;
        totals.m_draw += enc.audit.m_draw;
        totals.decoy_subset += enc.audit.decoy_subset;
        totals.decoy_rejected += enc.audit.decoy_rejected;
        const EveRecord seen = eve_view(enc.block);
        ++q_hist[static_cast<std::size_t>(seen.observable_mixed_count)];
        ++w_hist[static_cast<std::size_t>(seen.wire_weight)];
        const PauliString out = params.use_inner_code
                                    ? decode_p1_noisy(enc.block, receiver, params)
                                    : decode_p1(enc.block, receiver, params);
        const bool ok = out == payload;
        if (ok) ++recovered;
        if (trace.is_open()) {
            json rec{{"block", b},
                     {"n", seen.n},
                     {"mixed_count", seen.observable_mixed_count},
                     {"wire_weight", seen.wire_weight},
                     {"wire", seen.wire.str()}};
            if (flags.reveal) {
                rec["payload"] = payload.str();
                rec["payload_slots"] = enc.block.payload_slots;
                rec["pad"] = enc.block.pad.str();
                rec["decoy_slots"] = enc.block.decoy_mixed_slots;
                rec["recovered"] = ok;
            }
            trace << rec.dump() << "\n";
        }
    }

    const double r_obs = effective_error_rate(params.p_physical, params.p_emulated);
    std::vector<double> w_law(static_cast<std::size_t>(params.n) + 1, 0.0);
    for (long w = 0; w <= params.n; ++w)
        w_law[static_cast<std::size_t>(w)] = binomial_pmf(params.n, w, r_obs);
    const KeyBudget closed = key_consumption_p1(params.n, m);

    std::string body = header_comment(effective);
    body += "blocks,n,payload_slots,recovery_rate,key_subset_bits,key_pad_bits,key_m_draw_bits,"
            "key_decoy_bits,key_rejected_bits,key_total_bits,closed_form_bits_per_block,"
            "q_chi2,q_pvalue,wire_chi2,wire_pvalue\n";
    body += std::to_string(blocks) + "," + std::to_string(params.n) + "," + std::to_string(m) +
            "," + fmt_double(static_cast<double>(recovered) / static_cast<double>(blocks)) + "," +
            std::to_string(totals.subset_final) + "," + std::to_string(totals.pad) + "," +
            std::to_string(totals.m_draw) + "," + std::to_string(totals.decoy_subset) + "," +
            std::to_string(totals.subset_rejected + totals.decoy_rejected) + "," +
            std::to_string(totals.total()) + "," + std::to_string(closed.total()) + "," +
            chi_fields(q_hist, weight_distribution(ChannelModel::depolarizing(params.p_emulated),
                                                   static_cast<std::size_t>(params.n))) +
            "," + chi_fields(w_hist, w_law) + "\n";
    write_text(flags.out_path, body);
    return 0;
}

int run_simulate_p2_partition(const CommonFlags& flags, const json& cfg) {
    const ChannelModel ch = make_channel(cfg.at("channel"));
    const long n = cfg.at("n").get<long>();
    const double delta = cfg.at("delta").get<double>();
    const StegoParams2 params = StegoParams2::build(ch, n, delta);
    const long blocks = flags.trials_override > 0 ? flags.trials_override
                                                  : cfg.value("blocks", 1000L);
    if (blocks < 1) throw std::invalid_argument("blocks must be >= 1");
    const std::uint64_t sim_seed = cfg.value("sim_seed", 0x52D0ull);
    flags.key.require_one();

    json effective{{"verb", "simulate-p2"}, {"variant", "partition"},
                   {"channel", cfg.at("channel")}, {"n", n},
                   {"delta", delta},               {"blocks", blocks},
                   {"sim_seed", sim_seed},         {"key", flags.key.describe()}};

    const std::size_t budget = static_cast<std::size_t>(blocks) * p2_block_budget(params) + 4096;
    KeyStream sender = flags.key.open(budget);
    KeyStream receiver = flags.key.open(budget);
    std::mt19937_64 rng(sim_seed);
    const mpz_class space = mpz_class(1) << static_cast<unsigned long>(params.message_bits);

    std::ofstream trace;
    if (!flags.trace_path.empty()) {
        json trace_cfg = effective;
        trace_cfg["reveal"] = flags.reveal;
        trace = open_trace(flags.trace_path, trace_cfg);
    }

    long recovered = 0, mismatches = 0;
    KeyAuditP2 totals;
    for (long b = 0; b < blocks; ++b) {
        mpz_class u = rng();
        u <<= 64;
        u += mpz_class{rng()};
        u %= space;
        const EncodeResultP2 enc = encode_p2_audited(u, sender, params);
        totals.pad += enc.audit.pad;
        totals.representative_final += enc.audit.representative_final;
        totals.representative_rejected += enc.audit.representative_rejected;
        const DecodeResultP2 dec = decode_p2(enc.block, receiver, params);
        const bool ok = dec.ok && dec.message == u;
        if (ok) ++recovered;
        if (dec.representative_mismatch) ++mismatches;
        if (trace.is_open()) {
            json rec{{"block", b},
                     {"n", n},
                     {"wire", enc.block.wire.str()},
                     {"wire_weight", enc.block.wire.weight()}};
            if (flags.reveal) {
                rec["message"] = u.get_str();
                rec["set_index"] = enc.set_index.get_str();
                rec["recovered"] = ok;
            }
            trace << rec.dump() << "\n";
        }
    }

    std::string body = header_comment(effective);
    body += "blocks,n,message_bits,recovery_rate,representative_mismatches,key_pad_bits,"
            "key_representative_bits,key_rejected_bits,key_total_bits,pad_bits_per_block\n";
    body += std::to_string(blocks) + "," + std::to_string(n) + "," +
            std::to_string(params.message_bits) + "," +
            fmt_double(static_cast<double>(recovered) / static_cast<double>(blocks)) + "," +
            std::to_string(mismatches) + "," + std::to_string(totals.pad) + "," +
            std::to_string(totals.representative_final) + "," +
            std::to_string(totals.representative_rejected) + "," + std::to_string(totals.total()) +
            "," + std::to_string(2 * params.message_bits) + "\n";
    write_text(flags.out_path, body);
    return 0;
}

int run_simulate_p2_codebook(const CommonFlags& flags, const json& cfg) {
    const long n = cfg.at("n").get<long>();
    const double p = cfg.at("p").get<double>();
    const double dp = cfg.at("delta_p").get<double>();
    const long trials = flags.trials_override > 0 ? flags.trials_override
                                                  : cfg.value("trials", 2000L);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const std::uint64_t sim_seed = cfg.value("sim_seed", 0xC0DEull);
    flags.key.require_one();

    json effective{{"verb", "simulate-p2"}, {"variant", "codebook"}, {"n", n},
                   {"p", p},                {"delta_p", dp},         {"trials", trials},
                   {"sim_seed", sim_seed},  {"key", flags.key.describe()}};

    KeyStream key = flags.key.open(200000);
    const NoisyCodebook cb = build_noisy_codebook(n, p, dp, key);
    std::mt19937_64 rng(sim_seed);
    const double err = noisy_block_error_rate(cb, p, trials, rng);

    if (!flags.codebook_path.empty()) {
        json book{{"n", cb.n},
                  {"p", p},
                  {"delta_p", dp},
                  {"weight", cb.weight},
                  {"min_distance_required", cb.min_distance_required},
                  {"active_slots", cb.active_slots}};
        std::vector<std::string> words;
        for (const auto& mask : cb.codewords) {
            std::string bits(cb.active_slots.size(), '0');
            for (std::size_t a = 0; a < cb.active_slots.size(); ++a)
                if (mask[a / 64] >> (a % 64) & 1u) bits[a] = '1';
            words.push_back(bits);
        }
        book["codewords"] = words;
        write_text(flags.codebook_path, book.dump(2) + "\n");
    }

    std::string body = header_comment(effective);
    body += "n,p,delta_p,weight,active_count,codeword_count,rate,min_distance,"
            "min_distance_required,trials,block_error_rate\n";
    body += std::to_string(n) + "," + fmt_double(p) + "," + fmt_double(dp) + "," +
            std::to_string(cb.weight) + "," + std::to_string(cb.active_slots.size()) + "," +
            std::to_string(cb.count()) + "," + fmt_double(cb.rate()) + "," +
            std::to_string(cb.min_distance()) + "," + std::to_string(cb.min_distance_required) +
            "," + std::to_string(trials) + "," + fmt_double(err) + "\n";
    write_text(flags.out_path, body);
    return 0;
}

int run_simulate_p2(const CommonFlags& flags) {
    const json cfg = load_config(flags.config_path);
    const std::string variant = cfg.value("variant", "partition");
    if (variant == "partition") return run_simulate_p2_partition(flags, cfg);
    if (variant == "codebook") return run_simulate_p2_codebook(flags, cfg);
    throw std::invalid_argument("unknown simulate-p2 variant: " + variant);
}

int run_eve(const CommonFlags& flags, const EveExperimentParams& params, long trials,
            std::uint64_t seed) {
    if (trials < 1000)
        throw std::invalid_argument("eve needs --trials >= 1000 for the reported CI");
    if (!flags.key.file.empty())
        throw std::invalid_argument("eve derives per-trial keys from --seed, not --key-file");
    std::fprintf(stderr,
                 "WARNING: eve uses seed-derived per-trial key streams; they are NOT SECRET.\n");

    json effective{{"verb", "eve"},
                   {"n", params.n},
                   {"p", params.p},
                   {"delta_p", params.delta_p},
                   {"delta", params.delta},
                   {"blocks", params.blocks_per_trial},
                   {"trials", trials},
                   {"seed", seed},
                   {"threads", flags.threads},
                   {"prior", "fair coin"}};
    const AdvantageEstimate est =
        distinguishing_experiment_seeded(params, trials, seed, flags.threads);

    std::string body = header_comment(effective);
    body += "n,p,delta_p,delta,blocks_per_trial,trials,empirical_success,ci_halfwidth,ceiling,"
            "within_ceiling\n";
    body += std::to_string(params.n) + "," + fmt_double(params.p) + "," +
            fmt_double(params.delta_p) + "," + fmt_double(params.delta) + "," +
            std::to_string(params.blocks_per_trial) + "," + std::to_string(est.trials) + "," +
            fmt_double(est.empirical_success) + "," + fmt_double(est.ci_halfwidth) + "," +
            fmt_double(est.ceiling) + "," + (est.within_ceiling ? "1" : "0") + "\n";
    write_text(flags.out_path, body);
    return 0;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

StegoParams2 p2_params_from(const json& cfg) {
    return StegoParams2::build(make_channel(cfg.at("channel")), cfg.at("n").get<long>(),
                               cfg.at("delta").get<double>());
}

int run_p2_encode(const CommonFlags& flags) {
    const json cfg = load_config(flags.config_path);
    const StegoParams2 params = p2_params_from(cfg);
    flags.key.require_one();
    if (flags.in_path.empty()) throw std::invalid_argument("p2-encode needs --in <message file>");

    const std::vector<std::string> lines = read_lines(flags.in_path);
    const mpz_class space = mpz_class(1) << static_cast<unsigned long>(params.message_bits);
    KeyStream key =
        flags.key.open(lines.size() * p2_block_budget(params) + 4096);
    std::string body;
    for (const std::string& line : lines) {
        const mpz_class u(line, 10);  // throws std::invalid_argument on garbage
        if (u < 0 || u >= space)
            throw std::invalid_argument("message out of range [0, 2^" +
                                        std::to_string(params.message_bits) + "): " + line);
        body += encode_p2(u, key, params).wire.str() + "\n";
    }
    write_text(flags.out_path, body);
    return 0;
}

int run_p2_decode(const CommonFlags& flags) {
    const json cfg = load_config(flags.config_path);
    const StegoParams2 params = p2_params_from(cfg);
    flags.key.require_one();
    if (flags.in_path.empty()) throw std::invalid_argument("p2-decode needs --in <wire file>");

    const std::vector<std::string> lines = read_lines(flags.in_path);
    KeyStream key =
        flags.key.open(lines.size() * p2_block_budget(params) + 4096);
    std::string body;
    for (const std::string& line : lines) {
        TransmittedBlock block;
        block.n = params.n;
        block.wire = PauliString::parse(line);
        if (static_cast<long>(block.wire.size()) != params.n)
            throw std::invalid_argument("wire line length != n: " + line);
        const DecodeResultP2 dec = decode_p2(block, key, params);
        body += dec.ok ? dec.message.get_str() + "\n" : std::string("FAIL\n");
    }
    write_text(flags.out_path, body);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and analytics for hide-payload-as-channel-noise protocols"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::uint64_t seed_value = 0;
    bool seed_given = false;
    EveExperimentParams eve_params;
    long eve_trials = 10000;

    auto add_common = [&](CLI::App* sub, bool keyed) {
        sub->add_option("--config", flags.config_path, "JSON config file");
        sub->add_option("--out", flags.out_path, "output CSV path (default stdout)");
        sub->add_option("--trials", flags.trials_override, "override trial/block count");
        sub->add_option("--threads", flags.threads, "worker threads for Monte-Carlo verbs");
        if (keyed) {
            sub->add_option("--seed", seed_value, "64-bit test seed (NOT SECRET)")
                ->each([&](const std::string&) { seed_given = true; });
            sub->add_option("--key-file", flags.key.file, "hex-encoded key material file");
        }
    };

    add_common(app.add_subcommand("kcr", "key consumption rate curve"), false);
    add_common(app.add_subcommand("rates", "achievable-rate table"), false);
    add_common(app.add_subcommand("security", "distinguishability and closeness sweep"), false);

    CLI::App* sim1 = app.add_subcommand("simulate-p1", "mixed-slot protocol Monte-Carlo");
    add_common(sim1, true);
    sim1->add_option("--trace", flags.trace_path, "JSON-lines per-block trace path");
    sim1->add_flag("--reveal", flags.reveal, "include hidden fields in the trace");

    CLI::App* sim2 = app.add_subcommand("simulate-p2", "syndrome protocol Monte-Carlo");
    add_common(sim2, true);
    sim2->add_option("--trace", flags.trace_path, "JSON-lines per-block trace path");
    sim2->add_flag("--reveal", flags.reveal, "include hidden fields in the trace");
    sim2->add_option("--codebook-out", flags.codebook_path,
                     "write the noisy-variant codebook as JSON");

    CLI::App* eve = app.add_subcommand("eve", "adversary distinguishing experiment");
    add_common(eve, true);
    eve->add_option("--n", eve_params.n, "block length")->required();
    eve->add_option("--p", eve_params.p, "honest channel rate")->required();
    eve->add_option("--delta-p", eve_params.delta_p, "covert excess rate")->required();
    eve->add_option("--delta", eve_params.delta, "stego encoder payload margin");
    eve->add_option("--blocks", eve_params.blocks_per_trial, "blocks per trial");

    CLI::App* penc = app.add_subcommand("p2-encode", "message file -> wire error strings");
    add_common(penc, true);
    penc->add_option("--in", flags.in_path, "decimal messages, one per line");

    CLI::App* pdec = app.add_subcommand("p2-decode", "wire error strings -> message file");
    add_common(pdec, true);
    pdec->add_option("--in", flags.in_path, "wire strings, one per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (seed_given) flags.key.seed = seed_value;

    try {
        if (sim1->parsed()) return run_simulate_p1(flags);
        if (sim2->parsed()) return run_simulate_p2(flags);
        if (eve->parsed()) {
            if (flags.trials_override > 0) eve_trials = flags.trials_override;
            return run_eve(flags, eve_params, eve_trials, flags.key.seed.value_or(0));
        }
        if (penc->parsed()) return run_p2_encode(flags);
        if (pdec->parsed()) return run_p2_decode(flags);
        if (app.get_subcommand("kcr")->parsed()) return run_kcr(flags);
        if (app.get_subcommand("rates")->parsed()) return run_rates(flags);
        return run_security(flags);
    } catch (const KeyExhaustedError& e) {
        std::fprintf(stderr, "key exhausted: %s\n", e.what());
        return 3;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}
