#include "hybridvec/cooccurrence.hpp"

#include <algorithm>
#include <limits>

#include "hybridvec/errors.hpp"

namespace hybridvec {

namespace {
constexpr std::uint32_t kUnknown = std::numeric_limits<std::uint32_t>::max();
}

SparseBinaryMatrix::SparseBinaryMatrix(std::vector<std::vector<std::uint32_t>> rows,
                                       std::vector<std::uint32_t> dim_words, int window,
                                       std::size_t vocab_size)
    : rows_(std::move(rows)), dim_words_(std::move(dim_words)), window_(window) {
    dim_index_.assign(vocab_size, -1);
    for (std::size_t d = 0; d < dim_words_.size(); ++d) {
        dim_index_[dim_words_[d]] = static_cast<std::int32_t>(d);
    }
}

const std::vector<std::uint32_t>& SparseBinaryMatrix::row(std::uint32_t word_id) const {
    if (word_id >= rows_.size()) {
        throw DataError("unknown word id " + std::to_string(word_id));
    }
    return rows_[word_id];
}

std::int64_t SparseBinaryMatrix::dim_index_of(std::uint32_t word_id) const {
    if (word_id >= dim_index_.size()) return -1;
    return dim_index_[word_id];
}

void SparseBinaryMatrix::dump(std::ostream& out, const Vocabulary& vocab) const {
    for (std::uint32_t w = 0; w < rows_.size(); ++w) {
        out << vocab.words[w] << '\t';
        for (std::size_t i = 0; i < rows_[w].size(); ++i) {
            if (i > 0) out << ',';
            out << rows_[w][i];
        }
        out << '\n';
    }
}

SparseBinaryMatrix build_cooccurrence(const CorpusStream& corpus, const Vocabulary& vocab,
                                      int window, std::vector<std::uint32_t> dim_words) {
    if (window < 1) {
        throw DataError("cooccurrence window must be >= 1");
    }
    std::sort(dim_words.begin(), dim_words.end());
    dim_words.erase(std::unique(dim_words.begin(), dim_words.end()), dim_words.end());
    if (!dim_words.empty() && dim_words.back() >= vocab.size()) {
        throw DataError("dimension word id out of range");
    }

    std::vector<char> is_dim(vocab.size(), 0);
    for (std::uint32_t d : dim_words) is_dim[d] = 1;

    std::vector<std::vector<std::uint32_t>> rows(vocab.size());
    std::vector<std::uint32_t> ids;
    corpus.for_each_sentence([&](const std::vector<std::string>& tokens) {
        ids.clear();
        for (const auto& tok : tokens) {
            auto id = vocab.lookup(tok);
            // Positions are counted over the original line, so unknown
            // tokens still occupy a slot.
            ids.push_back(id ? *id : kUnknown);
        }
        const std::size_t n = ids.size();
        for (std::size_t p = 0; p < n; ++p) {
            if (ids[p] == kUnknown) continue;
            const std::size_t hi = std::min(n, p + static_cast<std::size_t>(window) + 1);
            for (std::size_t q = p + 1; q < hi; ++q) {
                if (ids[q] == kUnknown) continue;
                if (is_dim[ids[q]]) rows[ids[p]].push_back(ids[q]);
                if (is_dim[ids[p]]) rows[ids[q]].push_back(ids[p]);
            }
        }
    });

    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        r.shrink_to_fit();
    }
    return SparseBinaryMatrix(std::move(rows), std::move(dim_words), window, vocab.size());
}

SparseBinaryMatrix build_cooccurrence(const CorpusStream& corpus, const Vocabulary& vocab,
                                      int window) {
    std::vector<std::uint32_t> all(vocab.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return build_cooccurrence(corpus, vocab, window, std::move(all));
}

}  // namespace hybridvec
