#include "hybridvec/representation.hpp"

#include <algorithm>

#include "hybridvec/errors.hpp"

namespace hybridvec {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kOneHot: return "one-hot";
        case Scheme::kMixed: return "mixed";
        case Scheme::kSeparate: return "separate";
        case Scheme::kDistributional: return "distributional";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "one-hot" || name == "one_hot") return Scheme::kOneHot;
    if (name == "mixed") return Scheme::kMixed;
    if (name == "separate") return Scheme::kSeparate;
    if (name == "distributional") return Scheme::kDistributional;
    throw DataError("unknown scheme: " + name);
}

InputRepresentation::InputRepresentation(std::vector<std::vector<std::uint32_t>> active,
                                         std::size_t input_dim, std::size_t k,
                                         std::size_t n, SchemeConfig config,
                                         std::size_t fallback_count)
    : active_(std::move(active)),
      input_dim_(input_dim),
      k_(k),
      n_(n),
      config_(config),
      fallback_count_(fallback_count) {}

const std::vector<std::uint32_t>& InputRepresentation::active(std::uint32_t word_id) const {
    if (word_id >= active_.size()) {
        throw DataError("unknown word id " + std::to_string(word_id));
    }
    return active_[word_id];
}

void InputRepresentation::dump(std::ostream& out, const Vocabulary& vocab) const {
    for (std::uint32_t w = 0; w < active_.size(); ++w) {
        out << vocab.words[w] << '\t';
        for (std::size_t i = 0; i < active_[w].size(); ++i) {
            if (i > 0) out << ',';
            out << active_[w][i];
        }
        out << '\n';
    }
}

namespace {

// Distributional active set of `w`: the dimension indices of its
// cooccurrence row, shifted by `offset`. Falls back to the word's own
// dimension index when the row is empty.
std::vector<std::uint32_t> distributional_active(std::uint32_t w, const Vocabulary& vocab,
                                                 const SparseBinaryMatrix& cooc,
                                                 std::uint32_t offset,
                                                 std::size_t* fallback_count) {
    std::vector<std::uint32_t> act;
    for (std::uint32_t v : cooc.row(w)) {
        act.push_back(offset + static_cast<std::uint32_t>(cooc.dim_index_of(v)));
    }
    if (act.empty()) {
        std::int64_t own = cooc.dim_index_of(w);
        if (own < 0) {
            throw DataError("word has no active dimensions and is not a dimension word: " +
                            vocab.words[w]);
        }
        act.push_back(offset + static_cast<std::uint32_t>(own));
        ++*fallback_count;
    }
    std::sort(act.begin(), act.end());
    return act;
}

}  // namespace

InputRepresentation build_representation(const Vocabulary& vocab,
                                         const SparseBinaryMatrix* cooc,
                                         const SchemeConfig& config) {
    if (vocab.size() == 0) {
        throw DataError("empty vocabulary");
    }
    const std::size_t vsize = vocab.size();
    std::vector<std::vector<std::uint32_t>> active(vsize);
    std::size_t fallbacks = 0;

    if (config.scheme == Scheme::kOneHot) {
        for (std::uint32_t w = 0; w < vsize; ++w) active[w] = {w};
        return InputRepresentation(std::move(active), vsize, vsize, 0, config, 0);
    }

    if (cooc == nullptr) {
        throw DataError("scheme requires a cooccurrence model");
    }
    const std::size_t n = cooc->num_dims();

    switch (config.scheme) {
        case Scheme::kMixed: {
            auto part = partition_by_threshold(vocab, config.theta);
            for (std::uint32_t w : part.frequent) {
                std::int64_t own = cooc->dim_index_of(w);
                if (own < 0) {
                    throw DataError("mixed scheme: frequent word is not a dimension word: " +
                                    vocab.words[w]);
                }
                active[w] = {static_cast<std::uint32_t>(own)};
            }
            for (std::uint32_t w : part.rare) {
                active[w] = distributional_active(w, vocab, *cooc, 0, &fallbacks);
            }
            return InputRepresentation(std::move(active), n, part.frequent.size(), n,
                                       config, fallbacks);
        }
        case Scheme::kSeparate: {
            auto part = partition_by_threshold(vocab, config.theta);
            const std::size_t k = part.frequent.size();
            // Frequent words own the first k indices, in id order.
            for (std::uint32_t rank = 0; rank < part.frequent.size(); ++rank) {
                active[part.frequent[rank]] = {rank};
            }
            for (std::uint32_t w : part.rare) {
                active[w] = distributional_active(w, vocab, *cooc,
                                                  static_cast<std::uint32_t>(k), &fallbacks);
            }
            return InputRepresentation(std::move(active), k + n, k, n, config, fallbacks);
        }
        case Scheme::kDistributional: {
            for (std::uint32_t w = 0; w < vsize; ++w) {
                active[w] = distributional_active(w, vocab, *cooc, 0, &fallbacks);
            }
            return InputRepresentation(std::move(active), n, 0, n, config, fallbacks);
        }
        default:
            throw DataError("unknown scheme");
    }
}

RepresentationSummary describe(const InputRepresentation& rep) {
    RepresentationSummary s;
    s.input_dim = rep.input_dim();
    s.k = rep.k();
    s.n = rep.n();
    s.fallback_words = rep.fallback_count();
    const std::size_t vsize = rep.vocab_size();
    std::size_t total_active = 0;
    for (std::uint32_t w = 0; w < vsize; ++w) {
        std::size_t a = rep.active(w).size();
        total_active += a;
        s.max_active = std::max(s.max_active, a);
    }
    s.mean_active = vsize ? static_cast<double>(total_active) / static_cast<double>(vsize) : 0.0;
    switch (rep.config().scheme) {
        case Scheme::kOneHot:
            s.frequent_words = vsize;
            s.rare_words = 0;
            break;
        case Scheme::kDistributional:
            s.frequent_words = 0;
            s.rare_words = vsize;
            break;
        default:
            s.frequent_words = rep.k();
            s.rare_words = vsize - rep.k();
    }
    return s;
}

}  // namespace hybridvec
