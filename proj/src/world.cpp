#include "channelsim/world.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "channelsim/textio.hpp"

namespace channelsim {

std::string_view conversion_scenario_name(ConversionScenario s) {
    switch (s) {
        case ConversionScenario::Historical: return "historical";
        case ConversionScenario::Uniform: return "uniform";
        case ConversionScenario::FhatAdjusted: return "fhat_adjusted";
    }
    return "?";
}

ConversionScenario conversion_scenario_from_name(std::string_view s) {
    if (s == "historical") return ConversionScenario::Historical;
    if (s == "uniform") return ConversionScenario::Uniform;
    if (s == "fhat_adjusted") return ConversionScenario::FhatAdjusted;
    throw std::invalid_argument("unknown conversion scenario: " + std::string(s));
}

World build_world(ReferencePool pool, const WorldConfig& config, uint64_t seed) {
    if (pool.rows.empty()) throw std::invalid_argument("build_world: empty reference pool");

    World w;
    w.schema = pool.schema;
    w.stats = fit_preprocessor(w.schema, pool.rows);
    w.contexts.reserve(pool.rows.size());
    for (const auto& raw : pool.rows) w.contexts.push_back(transform(w.schema, w.stats, raw));

    Rng kmeans_rng = derive_stream(seed, "world.kmeans");
    w.clusters = kmeans_fit(w.contexts, config.kmeans_k, config.kmeans_max_iters, config.kmeans_tol, kmeans_rng);
    w.pool_clusters.reserve(w.contexts.size());
    for (const auto& x : w.contexts) w.pool_clusters.push_back(assign_cluster(x.span(), w.clusters));

    w.historical = build_historical_conversion(w.pool_clusters, pool.meta, config.kmeans_k);
    w.scenario = config.scenario;
    if (config.scenario == ConversionScenario::Historical) {
        w.active = w.historical;
    } else {
        double lo = config.uniform_lo;
        double hi = config.uniform_hi;
        if (lo > hi) {  // derive from the historical table
            const auto& entries = w.historical.entries();
            lo = *std::min_element(entries.begin(), entries.end());
            hi = *std::max_element(entries.begin(), entries.end());
        }
        Rng conv_rng = derive_stream(seed, "world.uniform");
        ConversionTable uniform = build_uniform_conversion(config.kmeans_k, lo, hi, conv_rng);
        w.active = config.scenario == ConversionScenario::Uniform
                       ? uniform
                       : build_fhat_adjusted_conversion(uniform, config.fhat_boost);
    }

    w.delays = fit_delay_model(pool.meta);
    w.delays.set_lambda(config.delay_lambda);
    w.pool = std::move(pool);
    return w;
}

std::vector<LeadRecord> World::sample_leads(int day, int n, Rng& rng, int64_t first_id) const {
    if (n < 0) throw std::invalid_argument("sample_leads: n must be >= 0");
    std::vector<LeadRecord> leads;
    leads.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<size_t>(rng.uniform_below(pool.rows.size()));
        LeadRecord lead;
        lead.lead_id = first_id + i;
        lead.arrival_day = day;
        lead.pool_index = static_cast<int>(idx);
        lead.raw = &pool.rows[idx];
        lead.fhat = pool.rows[idx].fhat(schema);
        lead.context = contexts[idx];
        leads.push_back(std::move(lead));
    }
    return leads;
}

namespace {

void write_table(std::ostringstream& out, const std::string& label, const ConversionTable& t) {
    out << label << '\t'
        << (t.keying() == ConversionKeying::ClusterAction ? "cluster_action" : "cluster_action_bucket") << '\t'
        << t.clusters();
    for (double p : t.entries()) out << '\t' << format_double(p);
    out << '\n';
}

ConversionTable parse_table(const std::vector<std::string_view>& fields) {
    if (fields.size() < 3) throw std::invalid_argument("world: malformed conversion table line");
    const ConversionKeying keying = fields[1] == "cluster_action" ? ConversionKeying::ClusterAction
                                                                  : ConversionKeying::ClusterActionBucket;
    const int clusters = static_cast<int>(parse_int(fields[2]));
    std::vector<double> p;
    p.reserve(fields.size() - 3);
    for (size_t i = 3; i < fields.size(); ++i) p.push_back(parse_double(fields[i]));
    return ConversionTable(keying, clusters, std::move(p));
}

}  // namespace

std::string World::to_text() const {
    std::ostringstream out;
    out << "# channelsim world v1\n";
    out << "scenario\t" << conversion_scenario_name(scenario) << '\n';

    out << "stats_dim\t" << stats.dim << '\n';
    for (size_t r = 0; r < stats.reals.size(); ++r) {
        const auto& rs = stats.reals[r];
        out << "stats_real\t" << r << '\t' << format_double(rs.mean) << '\t' << format_double(rs.sigma) << '\t'
            << rs.column << '\n';
    }
    for (size_t c = 0; c < stats.cats.size(); ++c) {
        const auto& cs = stats.cats[c];
        out << "stats_cat\t" << c << '\t' << cs.column;
        for (const auto& tok : cs.vocab) out << '\t' << tok;
        out << '\n';
    }

    out << "clusters\t" << clusters.k << '\t' << clusters.dim << '\t' << clusters.iterations << '\n';
    for (int c = 0; c < clusters.k; ++c) {
        out << "centroid\t" << c;
        for (double v : clusters.centroid(c)) out << '\t' << format_double(v);
        out << '\n';
    }

    write_table(out, "table_historical", historical);
    write_table(out, "table_active", active);

    out << "delay_lambda\t" << format_double(delays.lambda()) << '\n';
    for (const Action a : kAllActions) {
        for (int r = 0; r < 2; ++r) {
            out << "delay_pool\t" << action_name(a) << '\t' << r;
            for (int32_t d : delays.pool(a, r)) out << '\t' << d;
            out << '\n';
        }
    }

    out << "begin_pool\n" << pool.to_text() << "end_pool\n";
    return out.str();
}

World World::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header = false;

    World w;
    PreprocessStats stats;
    ClusterModel clusters;
    std::array<std::vector<int32_t>, 6> delay_pools;
    double delay_lambda = 1.0;
    bool have_hist = false;
    bool have_active = false;
    std::string pool_text;
    bool in_pool = false;

    while (std::getline(in, line)) {
        if (in_pool) {
            if (line == "end_pool") {
                in_pool = false;
                continue;
            }
            pool_text += line;
            pool_text += '\n';
            continue;
        }
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("channelsim world v1") != std::string::npos) header = true;
            continue;
        }
        if (line == "begin_pool") {
            in_pool = true;
            continue;
        }
        const auto fields = split_fields(line, '\t');
        const auto& tag = fields[0];
        if (tag == "scenario") {
            w.scenario = conversion_scenario_from_name(fields.at(1));
        } else if (tag == "stats_dim") {
            stats.dim = static_cast<int>(parse_int(fields.at(1)));
        } else if (tag == "stats_real") {
            const auto idx = static_cast<size_t>(parse_int(fields.at(1)));
            if (stats.reals.size() <= idx) stats.reals.resize(idx + 1);
            stats.reals[idx].mean = parse_double(fields.at(2));
            stats.reals[idx].sigma = parse_double(fields.at(3));
            stats.reals[idx].column = static_cast<int>(parse_int(fields.at(4)));
        } else if (tag == "stats_cat") {
            const auto idx = static_cast<size_t>(parse_int(fields.at(1)));
            if (stats.cats.size() <= idx) stats.cats.resize(idx + 1);
            stats.cats[idx].column = static_cast<int>(parse_int(fields.at(2)));
            for (size_t i = 3; i < fields.size(); ++i) stats.cats[idx].vocab.emplace_back(fields[i]);
        } else if (tag == "clusters") {
            clusters.k = static_cast<int>(parse_int(fields.at(1)));
            clusters.dim = static_cast<int>(parse_int(fields.at(2)));
            clusters.iterations = static_cast<int>(parse_int(fields.at(3)));
            clusters.centroids.assign(static_cast<size_t>(clusters.k) * static_cast<size_t>(clusters.dim), 0.0);
        } else if (tag == "centroid") {
            const auto c = static_cast<size_t>(parse_int(fields.at(1)));
            if (fields.size() != static_cast<size_t>(clusters.dim) + 2) {
                throw std::invalid_argument("world: centroid line has wrong dimension");
            }
            for (int j = 0; j < clusters.dim; ++j) {
                clusters.centroids[c * static_cast<size_t>(clusters.dim) + static_cast<size_t>(j)] =
                    parse_double(fields[static_cast<size_t>(j) + 2]);
            }
        } else if (tag == "table_historical") {
            w.historical = parse_table(fields);
            have_hist = true;
        } else if (tag == "table_active") {
            w.active = parse_table(fields);
            have_active = true;
        } else if (tag == "delay_lambda") {
            delay_lambda = parse_double(fields.at(1));
        } else if (tag == "delay_pool") {
            const Action a = action_from_name(fields.at(1));
            const int r = static_cast<int>(parse_int(fields.at(2)));
            auto& pool = delay_pools[static_cast<size_t>(action_index(a)) * 2 + static_cast<size_t>(r)];
            for (size_t i = 3; i < fields.size(); ++i) pool.push_back(static_cast<int32_t>(parse_int(fields[i])));
        } else {
            throw std::invalid_argument("world: unexpected line tag: " + std::string(tag));
        }
    }
    if (!header) throw std::invalid_argument("world: missing 'channelsim world v1' header");
    if (!have_hist || !have_active) throw std::invalid_argument("world: missing conversion tables");

    w.pool = ReferencePool::parse(pool_text);
    w.schema = w.pool.schema;
    w.stats = std::move(stats);
    w.clusters = std::move(clusters);
    w.delays = DelayModel(std::move(delay_pools), delay_lambda);

    w.contexts.reserve(w.pool.rows.size());
    for (const auto& raw : w.pool.rows) w.contexts.push_back(transform(w.schema, w.stats, raw));
    w.pool_clusters.reserve(w.contexts.size());
    for (const auto& x : w.contexts) w.pool_clusters.push_back(assign_cluster(x.span(), w.clusters));
    return w;
}

void World::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write world file: " + path);
    out << to_text();
}

World World::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open world file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace channelsim
