#include "hybridvec/embeddings.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hybridvec/errors.hpp"

namespace hybridvec {

EmbeddingSet::EmbeddingSet(std::vector<std::string> words, std::size_t dim)
    : words_(std::move(words)), dim_(dim), data_(words_.size() * dim, 0.0) {
    index_.reserve(words_.size());
    for (std::uint32_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

std::span<const double> EmbeddingSet::find(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return {};
    return vec(it->second);
}

bool EmbeddingSet::all_finite() const {
    for (double x : data_) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

void save_embeddings_text(const EmbeddingSet& emb, std::ostream& out) {
    out << emb.size() << ' ' << emb.dim() << '\n';
    char buf[40];
    for (std::size_t i = 0; i < emb.size(); ++i) {
        out << emb.words()[i];
        for (double x : emb.vec(i)) {
            std::snprintf(buf, sizeof buf, " %.17g", x);
            out << buf;
        }
        out << '\n';
    }
}

void save_embeddings_text(const EmbeddingSet& emb, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write embedding file: " + path.string());
    save_embeddings_text(emb, out);
    if (!out) throw DataError("write failed: " + path.string());
}

EmbeddingSet load_embeddings_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open embedding file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty embedding file: " + path.string());
    std::istringstream header(line);
    std::size_t count = 0, dim = 0;
    if (!(header >> count >> dim) || dim == 0) {
        throw DataError("malformed embedding header: " + path.string());
    }

    std::vector<std::string> words(count);
    std::vector<std::vector<double>> rows(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) {
            throw DataError("embedding file truncated at row " + std::to_string(i + 1));
        }
        std::istringstream row(line);
        if (!(row >> words[i])) {
            throw DataError("malformed embedding row " + std::to_string(i + 1));
        }
        rows[i].reserve(dim);
        double x;
        while (row >> x) rows[i].push_back(x);
        if (rows[i].size() != dim) {
            throw DataError("embedding row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " values, expected " +
                            std::to_string(dim));
        }
    }

    EmbeddingSet emb(std::move(words), dim);
    for (std::size_t i = 0; i < count; ++i) {
        auto dst = emb.vec(i);
        for (std::size_t j = 0; j < dim; ++j) dst[j] = rows[i][j];
    }
    return emb;
}

}  // namespace hybridvec
