#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hybridvec/corpus.hpp"
#include "hybridvec/embeddings.hpp"
#include "hybridvec/huffman.hpp"
#include "hybridvec/representation.hpp"
#include "hybridvec/rng.hpp"

namespace hybridvec {

// How a multi-active-dimension input projects through the input matrix:
// sum of the active rows (the matrix product with the binary input vector)
// or their mean.
enum class CombineMode { kSum, kMean };

const char* combine_name(CombineMode m);
CombineMode combine_from_name(const std::string& name);  // throws DataError

struct TrainingConfig {
    int dim = 100;            // embedding size d
    int window = 11;          // max one-side context width
    double sample = 1e-3;     // subsampling threshold t; <= 0 disables
    int epochs = 5;
    double alpha0 = 0.025;    // initial learning rate
    double alpha_floor = -1;  // minimum learning rate; < 0 means alpha0 * 1e-4
    std::uint64_t seed = 1;
    int threads = 1;
    CombineMode combine = CombineMode::kSum;

    double resolved_alpha_floor() const {
        return alpha_floor < 0 ? alpha0 * 1e-4 : alpha_floor;
    }
};

// Skip-gram model with hierarchical softmax over a generalized sparse input
// layer: the hidden vector of a word is the sum (or mean) of the input-matrix
// rows of its active dimensions. Input rows start uniform in [-0.5/d, 0.5/d],
// inner-node vectors start at zero.
class SkipGramModel {
  public:
    SkipGramModel(const InputRepresentation& rep, const HuffmanTree& tree, int dim,
                  CombineMode combine, Rng& init_rng);

    int dim() const { return dim_; }
    std::size_t input_dim() const { return rep_->input_dim(); }
    std::size_t vocab_size() const { return rep_->vocab_size(); }
    CombineMode combine() const { return combine_; }
    const InputRepresentation& rep() const { return *rep_; }
    const HuffmanTree& tree() const { return *tree_; }

    std::span<double> input_row(std::size_t i) { return {input_.data() + i * dim_, (std::size_t)dim_}; }
    std::span<const double> input_row(std::size_t i) const { return {input_.data() + i * dim_, (std::size_t)dim_}; }
    std::span<double> node_row(std::size_t j) { return {nodes_.data() + j * dim_, (std::size_t)dim_}; }
    std::span<const double> node_row(std::size_t j) const { return {nodes_.data() + j * dim_, (std::size_t)dim_}; }

    // Hidden vector of a word: combine of its active input rows.
    void project_into(std::uint32_t word_id, std::span<double> out) const;
    std::vector<double> project(std::uint32_t word_id) const;

    // Full output distribution p(w | h) under the hierarchical softmax.
    // Test/diagnostic path only; training never materializes it.
    std::vector<double> predict_distribution(std::span<const double> h) const;

    // One SGD step on -log p(context | center). `scratch` must hold 2*dim
    // doubles. Throws NumericError when a non-finite activation shows up.
    void train_pair(std::uint32_t center_id, std::uint32_t context_id, double lr,
                    std::span<double> scratch);
    void train_pair(std::uint32_t center_id, std::uint32_t context_id, double lr);

    bool all_finite() const;

  private:
    const InputRepresentation* rep_;
    const HuffmanTree* tree_;
    int dim_;
    CombineMode combine_;
    std::vector<double> input_;  // input_dim x dim
    std::vector<double> nodes_;  // inner_count x dim
};

// Per-center pair stream: draws b uniform in [1, window] for each center
// position and emits (center, context) for every other position within b.
// Exposed so the enumeration order is testable.
void for_each_skipgram_pair(std::span<const std::uint32_t> sentence, int window, Rng& rng,
                            const std::function<void(std::uint32_t, std::uint32_t)>& fn);

struct TrainOutput {
    SkipGramModel model;
    EmbeddingSet embeddings;
};

// Streams the corpus for `epochs` passes, subsampling tokens and training
// each surviving (center, context) pair; the learning rate decays linearly
// to the floor over the expected token count. threads > 1 trains hogwild
// over disjoint line shards (results then depend on the interleaving);
// threads == 1 is deterministic for a fixed seed.
TrainOutput train(const CorpusStream& corpus, const Vocabulary& vocab,
                  const InputRepresentation& rep, const HuffmanTree& tree,
                  const TrainingConfig& config);

EmbeddingSet extract_embeddings(const SkipGramModel& model, const Vocabulary& vocab);

}  // namespace hybridvec
