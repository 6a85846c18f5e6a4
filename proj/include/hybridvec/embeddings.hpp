#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hybridvec {

// Dense word vectors, one d-dimensional row per word, in vocabulary-id order.
class EmbeddingSet {
  public:
    EmbeddingSet(std::vector<std::string> words, std::size_t dim);

    std::size_t size() const { return words_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& words() const { return words_; }

    std::span<double> vec(std::size_t id) { return {data_.data() + id * dim_, dim_}; }
    std::span<const double> vec(std::size_t id) const {
        return {data_.data() + id * dim_, dim_};
    }

    // Vector of a word, or an empty span if the word is absent.
    std::span<const double> find(const std::string& word) const;

    bool all_finite() const;

  private:
    std::vector<std::string> words_;
    std::size_t dim_;
    std::vector<double> data_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Text format: header "<vocab_size> <dim>", then one line per word,
// "<word> <v1> ... <vd>", space separated, in id order. Values are written
// with 17 significant digits so doubles round-trip exactly.
void save_embeddings_text(const EmbeddingSet& emb, std::ostream& out);
void save_embeddings_text(const EmbeddingSet& emb, const std::filesystem::path& path);
EmbeddingSet load_embeddings_text(const std::filesystem::path& path);

}  // namespace hybridvec
