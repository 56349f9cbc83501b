#include "channelsim/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "channelsim/rng.hpp"
#include "channelsim/textio.hpp"

namespace channelsim {

namespace {

const std::vector<std::vector<std::string>>& category_vocabularies() {
    static const std::vector<std::vector<std::string>> vocabs = {
        {"finance", "health", "manufacturing", "retail", "tech"},
        {"amer", "apac", "emea", "latam"},
        {"enterprise", "mid", "smb"},
        {"event", "inbound", "outbound", "referral"},
    };
    return vocabs;
}

void validate_params(const GeneratorParams& p) {
    if (p.pool_size < 1) throw std::invalid_argument("generator: pool_size must be >= 1");
    if (p.segments < 1) throw std::invalid_argument("generator: segments must be >= 1");
    if (p.conv_low < 0.0 || p.conv_high > 1.0 || p.conv_low > p.conv_high) {
        throw std::invalid_argument("generator: conversion range must satisfy 0 <= low <= high <= 1");
    }
    if (p.missing_rate < 0.0 || p.missing_rate >= 1.0) {
        throw std::invalid_argument("generator: missing_rate must be in [0, 1)");
    }
    if (p.rule_affinity_boost < 0.0) throw std::invalid_argument("generator: rule_affinity_boost must be >= 0");
    for (const auto& row : p.delay_mean_days) {
        for (double m : row) {
            if (m <= 0.0) throw std::invalid_argument("generator: delay means must be positive");
        }
    }
}

int sample_delay_days(const GeneratorParams& p, Action a, int reward, Rng& rng) {
    const double mean = p.delay_mean_days[static_cast<size_t>(action_index(a))][static_cast<size_t>(reward)];
    const double sigma = reward ? p.delay_sigma_converted : p.delay_sigma_not_converted;
    // Lognormal with the requested mean: mu = ln(mean) - sigma^2 / 2.
    const double mu = std::log(mean) - 0.5 * sigma * sigma;
    const double draw = rng.lognormal(mu, sigma);
    const int days = static_cast<int>(std::floor(draw));
    return std::clamp(days, 0, p.max_delay_days);
}

}  // namespace

ReferencePool generate_reference_dataset(const GeneratorParams& params, uint64_t seed) {
    validate_params(params);

    ReferencePool pool;
    pool.schema = FeatureSchema::builtin();
    const int n_real = pool.schema.real_count();
    const int n_cat = pool.schema.cat_count();
    const auto& vocabs = category_vocabularies();
    if (static_cast<int>(vocabs.size()) != n_cat) throw std::logic_error("generator: vocabulary/schema mismatch");

    Rng latent = derive_stream(seed, "gen.latent");
    Rng draw = derive_stream(seed, "gen.rows");

    const int S = params.segments;
    // Latent structure: per-segment feature centers and per-(segment, action)
    // base conversion rates.
    std::vector<double> fhat_center(static_cast<size_t>(S));
    for (int s = 0; s < S; ++s) {
        fhat_center[static_cast<size_t>(s)] =
            S == 1 ? 0.5 * (params.fhat_low + params.fhat_high)
                   : params.fhat_low + (params.fhat_high - params.fhat_low) * s / (S - 1.0);
    }
    const int structured = std::min(params.structured_reals, n_real - 1);
    std::vector<double> real_center(static_cast<size_t>(S * (n_real - 1)), 0.0);
    for (int s = 0; s < S; ++s) {
        for (int j = 0; j < structured; ++j) {
            real_center[static_cast<size_t>(s * (n_real - 1) + j)] = params.real_structure_sd * latent.normal();
        }
    }
    std::vector<double> base_rate(static_cast<size_t>(S * kActionCount));
    for (auto& p : base_rate) p = params.conv_low + (params.conv_high - params.conv_low) * latent.uniform01();

    pool.rows.reserve(static_cast<size_t>(params.pool_size));
    pool.meta.reserve(static_cast<size_t>(params.pool_size));
    for (int i = 0; i < params.pool_size; ++i) {
        const int s = static_cast<int>(draw.uniform_below(static_cast<uint64_t>(S)));

        RawLeadFeatures raw;
        raw.reals.resize(static_cast<size_t>(n_real), 0.0);
        raw.real_missing.assign(static_cast<size_t>(n_real), 0);
        raw.cats.resize(static_cast<size_t>(n_cat));

        const int fhat_sub = pool.schema.fhat_real_index();
        raw.reals[static_cast<size_t>(fhat_sub)] =
            std::clamp(fhat_center[static_cast<size_t>(s)] + params.fhat_sd * draw.normal(), 0.0, 30.0);

        int other = 0;
        for (int sub = 0; sub < n_real; ++sub) {
            if (sub == fhat_sub) continue;
            raw.reals[static_cast<size_t>(sub)] = real_center[static_cast<size_t>(s * (n_real - 1) + other)] + draw.normal();
            if (draw.uniform01() < params.missing_rate) {
                raw.real_missing[static_cast<size_t>(sub)] = 1;
                raw.reals[static_cast<size_t>(sub)] = 0.0;
            }
            ++other;
        }
        for (int c = 0; c < n_cat; ++c) {
            const auto& vocab = vocabs[static_cast<size_t>(c)];
            const int preferred = (s + c) % static_cast<int>(vocab.size());
            const int token = draw.uniform01() < params.cat_affinity
                                  ? preferred
                                  : static_cast<int>(draw.uniform_below(vocab.size()));
            raw.cats[static_cast<size_t>(c)] = vocab[static_cast<size_t>(token)];
        }

        // Historical allocation follows the rule-based policy (observational
        // history), so the action is a function of the lead's f-hat.
        const double fhat = raw.reals[static_cast<size_t>(fhat_sub)];
        const Action a = bucket_rule_action(fhat_bucket(fhat));
        double p = base_rate[static_cast<size_t>(s * kActionCount + action_index(a))];
        p = std::min(0.95, p + params.rule_affinity_boost);  // matched pair by construction
        const uint8_t reward = draw.bernoulli(p) ? 1 : 0;

        PoolMeta meta;
        meta.hist_action = a;
        meta.hist_reward = reward;
        meta.hist_delay_days = sample_delay_days(params, a, reward, draw);

        pool.rows.push_back(std::move(raw));
        pool.meta.push_back(meta);
    }
    return pool;
}

std::string ReferencePool::to_text() const {
    std::ostringstream out;
    out << "# channelsim pool v1\n";
    out << schema.to_text();
    for (int f = 0; f < schema.feature_count(); ++f) {
        out << schema.decl(f).name << '\t';
    }
    out << "hist_action\thist_reward\thist_delay_days\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const RawLeadFeatures& raw = rows[i];
        for (int f = 0; f < schema.feature_count(); ++f) {
            const int sub = schema.sub_index(f);
            if (schema.decl(f).kind == FeatureKind::Real) {
                if (!raw.real_missing[static_cast<size_t>(sub)]) {
                    out << format_double(raw.reals[static_cast<size_t>(sub)]);
                }
                // Missing values serialize as an empty cell.
            } else {
                out << raw.cats[static_cast<size_t>(sub)];
            }
            out << '\t';
        }
        out << action_name(meta[i].hist_action) << '\t' << static_cast<int>(meta[i].hist_reward) << '\t'
            << meta[i].hist_delay_days << '\n';
    }
    return out.str();
}

ReferencePool ReferencePool::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string schema_text;
    bool pool_header = false;
    ReferencePool pool;

    // Schema lines come first, then the column header row, then data rows.
    bool schema_done = false;
    std::vector<std::string> data_lines;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("channelsim pool v1") != std::string::npos) pool_header = true;
            schema_text += line;
            schema_text += '\n';
            continue;
        }
        if (line.rfind("feature\t", 0) == 0 && !schema_done) {
            schema_text += line;
            schema_text += '\n';
            continue;
        }
        if (!schema_done) {
            schema_done = true;  // this is the column header row; skip it
            continue;
        }
        data_lines.push_back(line);
    }
    if (!pool_header) throw std::invalid_argument("pool: missing 'channelsim pool v1' header");
    pool.schema = FeatureSchema::parse("# channelsim schema v1\n" + schema_text);

    const int n_feat = pool.schema.feature_count();
    for (const std::string& row_line : data_lines) {
        const auto fields = split_fields(row_line, '\t');
        if (static_cast<int>(fields.size()) != n_feat + 3) {
            throw std::invalid_argument("pool: row has wrong column count: " + row_line);
        }
        RawLeadFeatures raw;
        raw.reals.resize(static_cast<size_t>(pool.schema.real_count()), 0.0);
        raw.real_missing.assign(static_cast<size_t>(pool.schema.real_count()), 0);
        raw.cats.resize(static_cast<size_t>(pool.schema.cat_count()));
        for (int f = 0; f < n_feat; ++f) {
            const auto field = fields[static_cast<size_t>(f)];
            const int sub = pool.schema.sub_index(f);
            if (pool.schema.decl(f).kind == FeatureKind::Real) {
                if (field.empty()) {
                    raw.real_missing[static_cast<size_t>(sub)] = 1;
                } else {
                    raw.reals[static_cast<size_t>(sub)] = parse_double(field);
                }
            } else {
                raw.cats[static_cast<size_t>(sub)] = std::string(field);
            }
        }
        PoolMeta meta;
        meta.hist_action = action_from_name(fields[static_cast<size_t>(n_feat)]);
        meta.hist_reward = static_cast<uint8_t>(parse_int(fields[static_cast<size_t>(n_feat) + 1]));
        meta.hist_delay_days = static_cast<int>(parse_int(fields[static_cast<size_t>(n_feat) + 2]));
        pool.rows.push_back(std::move(raw));
        pool.meta.push_back(meta);
    }
    return pool;
}

void ReferencePool::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pool file: " + path);
    out << to_text();
}

ReferencePool ReferencePool::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pool file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace channelsim
