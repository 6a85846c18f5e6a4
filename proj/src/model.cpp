#include "hybridvec/model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "hybridvec/errors.hpp"

namespace hybridvec {

namespace {

// Exact double-precision sigmoid; the argument is clamped at |x| = 30 where
// sigma is within 1e-13 of saturation.
double sigmoid(double x) {
    if (x > 30.0) x = 30.0;
    if (x < -30.0) x = -30.0;
    return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace

const char* combine_name(CombineMode m) {
    return m == CombineMode::kSum ? "sum" : "mean";
}

CombineMode combine_from_name(const std::string& name) {
    if (name == "sum") return CombineMode::kSum;
    if (name == "mean") return CombineMode::kMean;
    throw DataError("unknown combine mode: " + name);
}

SkipGramModel::SkipGramModel(const InputRepresentation& rep, const HuffmanTree& tree,
                             int dim, CombineMode combine, Rng& init_rng)
    : rep_(&rep), tree_(&tree), dim_(dim), combine_(combine) {
    if (dim < 1) throw DataError("embedding size must be >= 1");
    if (tree.num_words() != rep.vocab_size()) {
        throw DataError("huffman tree and representation disagree on vocabulary size");
    }
    input_.resize(rep.input_dim() * static_cast<std::size_t>(dim));
    for (double& x : input_) {
        x = (init_rng.uniform() - 0.5) / dim;
    }
    nodes_.assign(tree.inner_count * static_cast<std::size_t>(dim), 0.0);
}

void SkipGramModel::project_into(std::uint32_t word_id, std::span<double> out) const {
    const auto& act = rep_->active(word_id);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::uint32_t idx : act) {
        const double* row = input_.data() + static_cast<std::size_t>(idx) * dim_;
        for (int j = 0; j < dim_; ++j) out[j] += row[j];
    }
    if (combine_ == CombineMode::kMean) {
        const double inv = 1.0 / static_cast<double>(act.size());
        for (int j = 0; j < dim_; ++j) out[j] *= inv;
    }
}

std::vector<double> SkipGramModel::project(std::uint32_t word_id) const {
    std::vector<double> h(dim_);
    project_into(word_id, h);
    return h;
}

std::vector<double> SkipGramModel::predict_distribution(std::span<const double> h) const {
    std::vector<double> probs(vocab_size());
    for (std::size_t w = 0; w < probs.size(); ++w) {
        const auto& pts = tree_->points[w];
        const auto& bits = tree_->codes[w];
        double p = 1.0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const double* v = nodes_.data() + static_cast<std::size_t>(pts[j]) * dim_;
            double x = 0.0;
            for (int c = 0; c < dim_; ++c) x += h[c] * v[c];
            p *= sigmoid(bits[j] ? -x : x);
        }
        probs[w] = p;
    }
    return probs;
}

void SkipGramModel::train_pair(std::uint32_t center_id, std::uint32_t context_id,
                               double lr, std::span<double> scratch) {
    double* h = scratch.data();
    double* e = scratch.data() + dim_;
    project_into(center_id, {h, static_cast<std::size_t>(dim_)});
    std::fill(e, e + dim_, 0.0);

    const auto& pts = tree_->points[context_id];
    const auto& bits = tree_->codes[context_id];
    for (std::size_t j = 0; j < pts.size(); ++j) {
        double* v = nodes_.data() + static_cast<std::size_t>(pts[j]) * dim_;
        double x = 0.0;
        for (int c = 0; c < dim_; ++c) x += h[c] * v[c];
        const double f = sigmoid(x);
        if (!std::isfinite(f)) {
            throw NumericError("non-finite activation during training");
        }
        const double g = lr * (1.0 - bits[j] - f);
        for (int c = 0; c < dim_; ++c) e[c] += g * v[c];
        for (int c = 0; c < dim_; ++c) v[c] += g * h[c];
    }

    const auto& act = rep_->active(center_id);
    const double scale =
        combine_ == CombineMode::kMean ? 1.0 / static_cast<double>(act.size()) : 1.0;
    for (std::uint32_t idx : act) {
        double* row = input_.data() + static_cast<std::size_t>(idx) * dim_;
        for (int c = 0; c < dim_; ++c) row[c] += scale * e[c];
    }
}

void SkipGramModel::train_pair(std::uint32_t center_id, std::uint32_t context_id,
                               double lr) {
    std::vector<double> scratch(2 * static_cast<std::size_t>(dim_));
    train_pair(center_id, context_id, lr, scratch);
}

bool SkipGramModel::all_finite() const {
    for (double x : input_) {
        if (!std::isfinite(x)) return false;
    }
    for (double x : nodes_) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

void for_each_skipgram_pair(std::span<const std::uint32_t> sentence, int window, Rng& rng,
                            const std::function<void(std::uint32_t, std::uint32_t)>& fn) {
    const std::size_t n = sentence.size();
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t b = 1 + rng.below(static_cast<std::uint64_t>(window));
        const std::size_t lo = c >= b ? c - b : 0;
        const std::size_t hi = std::min(n - 1, c + b);
        for (std::size_t q = lo; q <= hi; ++q) {
            if (q == c) continue;
            fn(sentence[c], sentence[q]);
        }
    }
}

namespace {

struct EncodedCorpus {
    std::vector<std::vector<std::uint32_t>> lines;
    std::uint64_t tokens = 0;
};

EncodedCorpus encode(const CorpusStream& corpus, const Vocabulary& vocab) {
    EncodedCorpus enc;
    corpus.for_each_sentence([&](const std::vector<std::string>& tokens) {
        std::vector<std::uint32_t> ids;
        ids.reserve(tokens.size());
        for (const auto& tok : tokens) {
            if (auto id = vocab.lookup(tok)) ids.push_back(*id);
        }
        enc.tokens += ids.size();
        enc.lines.push_back(std::move(ids));
    });
    return enc;
}

}  // namespace

TrainOutput train(const CorpusStream& corpus, const Vocabulary& vocab,
                  const InputRepresentation& rep, const HuffmanTree& tree,
                  const TrainingConfig& config) {
    if (rep.vocab_size() != vocab.size() || tree.num_words() != vocab.size()) {
        throw DataError("vocabulary, representation and tree sizes disagree");
    }
    if (config.window < 1) throw DataError("window must be >= 1");
    if (config.epochs < 1) throw DataError("epochs must be >= 1");
    const double alpha_floor = config.resolved_alpha_floor();
    if (!(config.alpha0 > alpha_floor && alpha_floor > 0)) {
        throw DataError("learning rate must satisfy alpha0 > floor > 0");
    }

    Rng init_rng(config.seed);
    SkipGramModel model(rep, tree, config.dim, config.combine, init_rng);

    const EncodedCorpus enc = encode(corpus, vocab);

    std::vector<double> keep_prob;
    if (config.sample > 0) {
        keep_prob.resize(vocab.size());
        for (std::uint32_t w = 0; w < vocab.size(); ++w) {
            keep_prob[w] = subsample_keep_probability(w, vocab, config.sample);
        }
    }

    const double total_expected =
        static_cast<double>(config.epochs) * static_cast<double>(std::max<std::uint64_t>(enc.tokens, 1));
    std::atomic<std::uint64_t> processed{0};

    const int n_threads = std::max(1, config.threads);
    const std::size_t n_lines = enc.lines.size();

    auto worker = [&](int tid) {
        Rng rng(Rng::derive_seed(config.seed, static_cast<std::uint64_t>(tid)));
        std::vector<double> scratch(2 * static_cast<std::size_t>(config.dim));
        std::vector<std::uint32_t> kept;
        const std::size_t lo = n_lines * tid / n_threads;
        const std::size_t hi = n_lines * (tid + 1) / n_threads;
        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            for (std::size_t li = lo; li < hi; ++li) {
                const auto& line = enc.lines[li];
                if (line.empty()) continue;
                const double done = static_cast<double>(processed.load(std::memory_order_relaxed));
                const double lr = std::max(
                    alpha_floor,
                    config.alpha0 - (config.alpha0 - alpha_floor) * (done / total_expected));
                kept.clear();
                for (std::uint32_t id : line) {
                    if (!keep_prob.empty() && !(rng.uniform() < keep_prob[id])) continue;
                    kept.push_back(id);
                }
                for_each_skipgram_pair(kept, config.window, rng,
                                       [&](std::uint32_t center, std::uint32_t context) {
                                           model.train_pair(center, context, lr, scratch);
                                       });
                processed.fetch_add(line.size(), std::memory_order_relaxed);
            }
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    worker(t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    if (!model.all_finite()) {
        throw NumericError("non-finite parameter after training");
    }
    EmbeddingSet emb = extract_embeddings(model, vocab);
    return TrainOutput{std::move(model), std::move(emb)};
}

EmbeddingSet extract_embeddings(const SkipGramModel& model, const Vocabulary& vocab) {
    EmbeddingSet emb(vocab.words, static_cast<std::size_t>(model.dim()));
    for (std::uint32_t w = 0; w < vocab.size(); ++w) {
        auto dst = emb.vec(w);
        model.project_into(w, dst);
    }
    return emb;
}

}  // namespace hybridvec
