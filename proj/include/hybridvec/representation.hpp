#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hybridvec/cooccurrence.hpp"
#include "hybridvec/corpus.hpp"

namespace hybridvec {

// Input initialization schemes.
//   one_hot        - every word activates one private index; input_dim = |V|.
//   mixed          - one index space of size n; frequent words (freq > theta)
//                    activate their own dimension-word index, rare words
//                    activate the indices of their cooccurring dimension words.
//   separate       - k one-hot indices for frequent words concatenated with
//                    n distributional indices for rare words; input_dim = k+n.
//   distributional - mixed with every word treated as rare.
enum class Scheme { kOneHot, kMixed, kSeparate, kDistributional };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);  // throws DataError

struct SchemeConfig {
    Scheme scheme = Scheme::kOneHot;
    std::uint64_t theta = 0;  // ignored for one_hot / distributional
};

struct RepresentationSummary {
    std::size_t input_dim = 0;
    std::size_t k = 0;  // frequent words
    std::size_t n = 0;  // dimension words
    std::size_t frequent_words = 0;
    std::size_t rare_words = 0;
    double mean_active = 0.0;
    std::size_t max_active = 0;
    std::size_t fallback_words = 0;
};

// Per-word sparse active-dimension sets (all weights 1). Every word has at
// least one active dimension: a rare word whose distributional vector is
// all-zero falls back to its own dimension-word index.
class InputRepresentation {
  public:
    InputRepresentation(std::vector<std::vector<std::uint32_t>> active,
                        std::size_t input_dim, std::size_t k, std::size_t n,
                        SchemeConfig config, std::size_t fallback_count);

    std::size_t input_dim() const { return input_dim_; }
    std::size_t vocab_size() const { return active_.size(); }
    const std::vector<std::uint32_t>& active(std::uint32_t word_id) const;

    std::size_t k() const { return k_; }
    std::size_t n() const { return n_; }
    const SchemeConfig& config() const { return config_; }
    std::size_t fallback_count() const { return fallback_count_; }

    // Same shape as the cooccurrence dump: "word<TAB>idx1,idx2,...".
    void dump(std::ostream& out, const Vocabulary& vocab) const;

  private:
    std::vector<std::vector<std::uint32_t>> active_;
    std::size_t input_dim_;
    std::size_t k_;
    std::size_t n_;
    SchemeConfig config_;
    std::size_t fallback_count_;
};

// cooc may be null for the one_hot scheme; all other schemes require it.
// For mixed, every frequent word must be a dimension word.
InputRepresentation build_representation(const Vocabulary& vocab,
                                         const SparseBinaryMatrix* cooc,
                                         const SchemeConfig& config);

RepresentationSummary describe(const InputRepresentation& rep);

}  // namespace hybridvec
