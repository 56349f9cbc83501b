#include "channelsim/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace channelsim {

FeatureSchema FeatureSchema::from_decls(std::vector<FeatureDecl> decls) {
    if (decls.empty()) throw std::invalid_argument("schema needs at least one feature");
    FeatureSchema s;
    s.decls_ = std::move(decls);
    s.sub_index_.resize(s.decls_.size());
    std::set<std::string> names;
    for (size_t i = 0; i < s.decls_.size(); ++i) {
        const FeatureDecl& d = s.decls_[i];
        if (d.name.empty()) throw std::invalid_argument("schema feature with empty name");
        if (!names.insert(d.name).second) throw std::invalid_argument("duplicate feature name: " + d.name);
        if (d.kind == FeatureKind::Real) {
            s.sub_index_[i] = s.real_count_++;
        } else {
            s.sub_index_[i] = s.cat_count_++;
        }
        if (d.is_fhat) {
            if (d.kind != FeatureKind::Real) throw std::invalid_argument("f-hat feature must be real-valued");
            if (s.fhat_feature_ >= 0) throw std::invalid_argument("schema declares more than one f-hat feature");
            s.fhat_feature_ = static_cast<int>(i);
        }
    }
    if (s.fhat_feature_ < 0) throw std::invalid_argument("schema declares no f-hat feature");
    return s;
}

FeatureSchema FeatureSchema::builtin() {
    std::vector<FeatureDecl> d;
    d.push_back({"fhat", FeatureKind::Real, true});
    for (const char* name : {"engagement", "account_age", "headcount_log", "activity_score", "spend_index",
                             "pipeline_depth", "response_rate", "seat_utilization"}) {
        d.push_back({name, FeatureKind::Real, false});
    }
    d.push_back({"industry", FeatureKind::Categorical, false});
    d.push_back({"region", FeatureKind::Categorical, false});
    d.push_back({"tier", FeatureKind::Categorical, false});
    d.push_back({"source", FeatureKind::Categorical, false});
    return from_decls(std::move(d));
}

void FeatureSchema::require_lead_schema() const {
    if (feature_count() != 13) {
        throw std::invalid_argument("lead schema must declare exactly 13 features, got " +
                                    std::to_string(feature_count()));
    }
}

bool FeatureSchema::decls_same(const FeatureSchema& other) const {
    if (decls_.size() != other.decls_.size()) return false;
    for (size_t i = 0; i < decls_.size(); ++i) {
        const auto& a = decls_[i];
        const auto& b = other.decls_[i];
        if (a.name != b.name || a.kind != b.kind || a.is_fhat != b.is_fhat) return false;
    }
    return true;
}

std::string FeatureSchema::to_text() const {
    std::ostringstream out;
    out << "# channelsim schema v1\n";
    for (const auto& d : decls_) {
        out << "feature\t" << d.name << '\t' << (d.kind == FeatureKind::Real ? "real" : "categorical");
        if (d.is_fhat) out << "\tfhat";
        out << '\n';
    }
    return out.str();
}

FeatureSchema FeatureSchema::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<FeatureDecl> decls;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("channelsim schema v1") != std::string::npos) header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        std::string tag, name, kind, flag;
        ls >> tag >> name >> kind >> flag;
        if (tag != "feature") throw std::invalid_argument("schema: unexpected line: " + line);
        FeatureDecl d;
        d.name = name;
        if (kind == "real") {
            d.kind = FeatureKind::Real;
        } else if (kind == "categorical") {
            d.kind = FeatureKind::Categorical;
        } else {
            throw std::invalid_argument("schema: unknown feature kind: " + kind);
        }
        if (flag == "fhat") {
            d.is_fhat = true;
        } else if (!flag.empty()) {
            throw std::invalid_argument("schema: unknown feature flag: " + flag);
        }
        decls.push_back(std::move(d));
    }
    if (!header_seen) throw std::invalid_argument("schema: missing 'channelsim schema v1' header");
    return from_decls(std::move(decls));
}

FeatureSchema FeatureSchema::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void FeatureSchema::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write schema file: " + path);
    out << to_text();
}

int PreprocessStats::vocab_index(int cat_sub, const std::string& token) const {
    const auto& vocab = cats[static_cast<size_t>(cat_sub)].vocab;
    auto it = std::lower_bound(vocab.begin(), vocab.end(), token);
    if (it != vocab.end() && *it == token) return static_cast<int>(it - vocab.begin());
    return -1;
}

namespace {

void check_row(const FeatureSchema& schema, const RawLeadFeatures& raw) {
    if (static_cast<int>(raw.reals.size()) != schema.real_count() ||
        static_cast<int>(raw.real_missing.size()) != schema.real_count() ||
        static_cast<int>(raw.cats.size()) != schema.cat_count()) {
        throw std::invalid_argument("raw lead row does not match schema layout");
    }
    if (raw.real_missing[static_cast<size_t>(schema.fhat_real_index())]) {
        throw std::invalid_argument("f-hat value is missing");
    }
}

}  // namespace

PreprocessStats fit_preprocessor(const FeatureSchema& schema, std::span<const RawLeadFeatures> records) {
    if (records.empty()) throw std::invalid_argument("fit_preprocessor: no records");

    PreprocessStats stats;
    stats.reals.resize(static_cast<size_t>(schema.real_count()));
    stats.cats.resize(static_cast<size_t>(schema.cat_count()));

    std::vector<double> sum(static_cast<size_t>(schema.real_count()), 0.0);
    std::vector<double> sum_sq(static_cast<size_t>(schema.real_count()), 0.0);
    std::vector<int64_t> count(static_cast<size_t>(schema.real_count()), 0);
    std::vector<std::set<std::string>> vocab_sets(static_cast<size_t>(schema.cat_count()));

    for (const auto& raw : records) {
        check_row(schema, raw);
        for (size_t r = 0; r < sum.size(); ++r) {
            if (raw.real_missing[r]) continue;
            sum[r] += raw.reals[r];
            sum_sq[r] += raw.reals[r] * raw.reals[r];
            ++count[r];
        }
        for (size_t c = 0; c < vocab_sets.size(); ++c) vocab_sets[c].insert(raw.cats[c]);
    }

    int column = 0;
    for (int f = 0; f < schema.feature_count(); ++f) {
        const int sub = schema.sub_index(f);
        if (schema.decl(f).kind == FeatureKind::Real) {
            auto& rs = stats.reals[static_cast<size_t>(sub)];
            if (count[static_cast<size_t>(sub)] == 0) {
                throw std::invalid_argument("real feature '" + schema.decl(f).name +
                                            "' is missing in every record; no mean to impute");
            }
            const double n = static_cast<double>(count[static_cast<size_t>(sub)]);
            rs.mean = sum[static_cast<size_t>(sub)] / n;
            // Population variance; guard tiny negative round-off.
            const double var = std::max(0.0, sum_sq[static_cast<size_t>(sub)] / n - rs.mean * rs.mean);
            const double sigma = std::sqrt(var);
            rs.sigma = sigma > 0.0 ? sigma : 1.0;  // zero-variance rule
            rs.column = column;
            column += 1;
        } else {
            auto& cs = stats.cats[static_cast<size_t>(sub)];
            cs.vocab.assign(vocab_sets[static_cast<size_t>(sub)].begin(), vocab_sets[static_cast<size_t>(sub)].end());
            cs.column = column;
            column += static_cast<int>(cs.vocab.size());
        }
    }
    stats.dim = column;
    return stats;
}

ContextVector transform(const FeatureSchema& schema, const PreprocessStats& stats, const RawLeadFeatures& raw) {
    if (static_cast<int>(stats.reals.size()) != schema.real_count() ||
        static_cast<int>(stats.cats.size()) != schema.cat_count()) {
        throw std::invalid_argument("transform: stats were fitted on a different schema");
    }
    check_row(schema, raw);

    ContextVector out;
    out.values.assign(static_cast<size_t>(stats.dim), 0.0);
    for (int sub = 0; sub < schema.real_count(); ++sub) {
        const auto& rs = stats.reals[static_cast<size_t>(sub)];
        // Missing values are imputed with the mean first, so they land at 0.
        double z = 0.0;
        if (!raw.real_missing[static_cast<size_t>(sub)]) {
            z = (raw.reals[static_cast<size_t>(sub)] - rs.mean) / rs.sigma;
            z = std::clamp(z, -kZScoreCap, kZScoreCap);
        }
        out.values[static_cast<size_t>(rs.column)] = z;
    }
    for (int sub = 0; sub < schema.cat_count(); ++sub) {
        const auto& cs = stats.cats[static_cast<size_t>(sub)];
        const int idx = stats.vocab_index(sub, raw.cats[static_cast<size_t>(sub)]);
        if (idx >= 0) out.values[static_cast<size_t>(cs.column + idx)] = 1.0;
        // Unseen tokens leave the whole block at zero.
    }
    return out;
}

}  // namespace channelsim
