#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "hybridvec/corpus.hpp"

namespace hybridvec {

// Binary cooccurrence model: row(w) lists the dimension words that occur
// within `window` token positions of w on some line. Rows are strictly
// increasing word-id lists; the dimension index of a word is its position
// in dim_words(). Immutable once built.
class SparseBinaryMatrix {
  public:
    SparseBinaryMatrix(std::vector<std::vector<std::uint32_t>> rows,
                       std::vector<std::uint32_t> dim_words, int window,
                       std::size_t vocab_size);

    const std::vector<std::uint32_t>& row(std::uint32_t word_id) const;

    // Dimension words in dimension order (ascending word id).
    const std::vector<std::uint32_t>& dim_words() const { return dim_words_; }

    // Dimension index of a word, or -1 if it is not a dimension word.
    std::int64_t dim_index_of(std::uint32_t word_id) const;

    std::size_t num_dims() const { return dim_words_.size(); }
    std::size_t num_rows() const { return rows_.size(); }
    int window() const { return window_; }

    // One line per word: "word<TAB>id1,id2,..." in word-id order.
    void dump(std::ostream& out, const Vocabulary& vocab) const;

  private:
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::uint32_t> dim_words_;
    std::vector<std::int32_t> dim_index_;  // word id -> dimension index or -1
    int window_;
};

// Scans the corpus and records, for every word, which dimension words occur
// within `window` positions on the same line. Distance never crosses line
// boundaries; two occurrences of the same word within the window set the
// self entry; a position never pairs with itself.
SparseBinaryMatrix build_cooccurrence(const CorpusStream& corpus, const Vocabulary& vocab,
                                      int window, std::vector<std::uint32_t> dim_words);

// Default dimension-word set: the entire vocabulary (n = |V|).
SparseBinaryMatrix build_cooccurrence(const CorpusStream& corpus, const Vocabulary& vocab,
                                      int window);

}  // namespace hybridvec
