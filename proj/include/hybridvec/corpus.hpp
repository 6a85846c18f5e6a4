#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hybridvec {

// Word <-> id mapping with raw frequencies. Ids are dense 0..|V|-1, ordered
// by descending frequency with lexicographic tie-break, and no word is ever
// dropped for low frequency (min-count is 0).
struct Vocabulary {
    std::vector<std::string> words;        // id -> surface form
    std::vector<std::uint64_t> freq;       // id -> raw occurrence count
    std::uint64_t total_tokens = 0;        // sum of freq
    std::unordered_map<std::string, std::uint32_t> word_to_id;

    std::size_t size() const { return words.size(); }

    std::optional<std::uint32_t> lookup(const std::string& word) const {
        auto it = word_to_id.find(word);
        if (it == word_to_id.end()) return std::nullopt;
        return it->second;
    }

    double relative_freq(std::uint32_t word_id) const;
};

// A whitespace-tokenized plain-text corpus, one sentence per line.
// Stateless over the file: every pass yields the same token stream.
class CorpusStream {
  public:
    explicit CorpusStream(std::filesystem::path path, bool lowercase = true)
        : path_(std::move(path)), lowercase_(lowercase) {}

    // Calls fn once per line with that line's tokens (possibly empty).
    // Throws DataError if the file is unreadable or not valid UTF-8
    // (the message carries the byte offset of the offending byte).
    void for_each_sentence(
        const std::function<void(const std::vector<std::string>&)>& fn) const;

    const std::filesystem::path& path() const { return path_; }
    bool lowercase() const { return lowercase_; }

  private:
    std::filesystem::path path_;
    bool lowercase_;
};

Vocabulary build_vocabulary(const CorpusStream& corpus);

// Probability that an occurrence of a word is kept under frequency
// subsampling: min(1, sqrt(t / f_rel)) where f_rel = freq/total. The
// discard probability 1 - sqrt(t/f) is clamped into [0,1], so words with
// f_rel <= t are always kept.
double subsample_keep_probability(std::uint32_t word_id, const Vocabulary& vocab,
                                  double sample_threshold);

struct ThresholdPartition {
    std::vector<std::uint32_t> frequent;  // freq > theta, ascending id
    std::vector<std::uint32_t> rare;      // freq <= theta, ascending id
};

ThresholdPartition partition_by_threshold(const Vocabulary& vocab, std::uint64_t theta);

}  // namespace hybridvec
