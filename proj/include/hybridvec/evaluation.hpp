#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hybridvec/embeddings.hpp"

namespace hybridvec {

// Word-relatedness judgments: pairs with human-assigned gold scores.
struct SimilarityDataset {
    struct Pair {
        std::string word1;
        std::string word2;
        double gold;
    };
    std::string name;
    std::vector<Pair> pairs;
};

// Parses lines "word1 word2 score" (any run of spaces/tabs); lines starting
// with '#' are skipped. Duplicate unordered pairs or malformed lines raise a
// DataError carrying the line number.
SimilarityDataset load_dataset(const std::filesystem::path& path, const std::string& name,
                               bool lowercase = true);

// u.v / (|u||v|); throws NumericError("zero vector") when either norm is 0.
double cosine(std::span<const double> u, std::span<const double> v);

// Spearman's rho: Pearson correlation of fractional (average) ranks, which
// stays valid under ties. Throws DataError("undefined correlation") for
// fewer than 3 points or a constant list.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct EvalReport {
    std::string dataset;
    std::size_t covered = 0;        // pairs with both words in the embedding set
    std::size_t total = 0;          // dataset size
    double rho = 0.0;               // Spearman on covered pairs, gold vs cosine
    std::size_t zero_vector_pairs = 0;  // covered pairs skipped for a zero-norm vector
};

// Scores covered pairs only; throws DataError("insufficient coverage") when
// fewer than 3 pairs remain.
EvalReport evaluate(const EmbeddingSet& emb, const SimilarityDataset& ds);

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;  // two-tailed
    bool significant = false;  // p < 0.05
};

// Unpaired two-sample equal-variance Student's t-test; the two-tailed p
// value comes from the regularized incomplete beta function. Each group
// needs at least 2 samples. Zero pooled variance: p = 1 when the means are
// equal, p = 0 otherwise.
TTestResult ttest(std::span<const double> a, std::span<const double> b);

// Paired variant (equal lengths >= 2), off by default in the tools.
TTestResult ttest_paired(std::span<const double> a, std::span<const double> b);

// I_x(a, b), evaluated with a Lentz continued fraction.
double regularized_incomplete_beta(double x, double a, double b);

}  // namespace hybridvec
