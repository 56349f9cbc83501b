#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace channelsim {

enum class FeatureKind : uint8_t { Real, Categorical };

struct FeatureDecl {
    std::string name;
    FeatureKind kind = FeatureKind::Real;
    bool is_fhat = false;
};

// Fixed per-dataset feature layout. Raw lead rows, the preprocessor and the
// dataset files all refer to features through this schema. Lead datasets use
// exactly 13 features (see require_lead_schema); the preprocessing operations
// themselves work with any consistent schema.
class FeatureSchema {
public:
    FeatureSchema() = default;
    static FeatureSchema from_decls(std::vector<FeatureDecl> decls);

    // The 13-feature reference schema used by the synthetic data generator.
    static FeatureSchema builtin();

    static FeatureSchema load(const std::string& path);
    static FeatureSchema parse(const std::string& text);
    void save(const std::string& path) const;
    std::string to_text() const;

    int feature_count() const { return static_cast<int>(decls_.size()); }
    int real_count() const { return real_count_; }
    int cat_count() const { return cat_count_; }
    const FeatureDecl& decl(int i) const { return decls_.at(static_cast<size_t>(i)); }
    const std::vector<FeatureDecl>& decls() const { return decls_; }

    // Index into RawLeadFeatures::reals / ::cats for feature i.
    int sub_index(int i) const { return sub_index_.at(static_cast<size_t>(i)); }
    int fhat_feature_index() const { return fhat_feature_; }
    int fhat_real_index() const { return sub_index_.at(static_cast<size_t>(fhat_feature_)); }

    // Lead datasets carry exactly 13 post-processed features.
    void require_lead_schema() const;

    bool operator==(const FeatureSchema& other) const { return decls_same(other); }

private:
    bool decls_same(const FeatureSchema& other) const;

    std::vector<FeatureDecl> decls_;
    std::vector<int> sub_index_;
    int real_count_ = 0;
    int cat_count_ = 0;
    int fhat_feature_ = -1;
};

// One raw lead row. Values are stored per kind, aligned with the schema's
// sub-indices. Empty token / missing flag encode absent values; f-hat is
// never missing.
struct RawLeadFeatures {
    std::vector<double> reals;
    std::vector<uint8_t> real_missing;  // 1 = missing
    std::vector<std::string> cats;

    double real_value(const FeatureSchema& schema, int feature) const {
        return reals[static_cast<size_t>(schema.sub_index(feature))];
    }
    double fhat(const FeatureSchema& schema) const {
        return reals[static_cast<size_t>(schema.fhat_real_index())];
    }
};

// Post-processed context vector x. Real coordinates are capped z-scores in
// [-5, 5]; categorical features expand to one-hot blocks.
struct ContextVector {
    std::vector<double> values;

    int dim() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    std::span<const double> span() const { return values; }
    bool operator==(const ContextVector& o) const { return values == o.values; }
};

// Fitted preprocessing statistics: per real feature a mean and a population
// standard deviation (zero-variance features store sigma = 1), per
// categorical feature a sorted vocabulary with its one-hot column offset.
struct PreprocessStats {
    struct RealStats {
        double mean = 0.0;
        double sigma = 1.0;
        int column = 0;
    };
    struct CatStats {
        std::vector<std::string> vocab;  // sorted, unique
        int column = 0;                  // first one-hot column
    };

    std::vector<RealStats> reals;  // by real sub-index
    std::vector<CatStats> cats;    // by categorical sub-index
    int dim = 0;

    // Index of a token inside the fitted vocabulary, or -1 if unseen.
    int vocab_index(int cat_sub, const std::string& token) const;
};

// Computes means, population standard deviations and category vocabularies
// over the given records. Throws if records is empty, a row does not match
// the schema, or a real feature is missing in every record.
PreprocessStats fit_preprocessor(const FeatureSchema& schema, std::span<const RawLeadFeatures> records);

// Maps a raw row to its context vector: capped z-scores for real features
// (missing values imputed with the mean, hence coordinate 0), one-hot blocks
// for categorical features (all zeros for an unseen token).
ContextVector transform(const FeatureSchema& schema, const PreprocessStats& stats, const RawLeadFeatures& raw);

inline constexpr double kZScoreCap = 5.0;

}  // namespace channelsim
