#include "hybridvec/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hybridvec/errors.hpp"

namespace hybridvec {

namespace {

bool is_token_separator(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Structural UTF-8 check. `line_start` is the byte offset of the line within
// the file, used to report the absolute offset of the first bad byte.
void validate_utf8(const std::string& line, std::uint64_t line_start) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(line.data());
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        unsigned char b = bytes[i];
        std::size_t extra;
        if (b < 0x80) {
            extra = 0;
        } else if (b >= 0xc2 && b <= 0xdf) {
            extra = 1;
        } else if (b >= 0xe0 && b <= 0xef) {
            extra = 2;
        } else if (b >= 0xf0 && b <= 0xf4) {
            extra = 3;
        } else {  // continuation byte out of place, overlong lead (c0/c1), or > f4
            throw DataError("undecodable byte at offset " + std::to_string(line_start + i));
        }
        for (std::size_t j = 1; j <= extra; ++j) {
            if (i + j >= n || (bytes[i + j] & 0xc0) != 0x80) {
                throw DataError("undecodable byte at offset " +
                                std::to_string(line_start + i + j));
            }
        }
        i += extra + 1;
    }
}

}  // namespace

double Vocabulary::relative_freq(std::uint32_t word_id) const {
    if (word_id >= freq.size()) {
        throw DataError("unknown word id " + std::to_string(word_id));
    }
    return static_cast<double>(freq[word_id]) / static_cast<double>(total_tokens);
}

void CorpusStream::for_each_sentence(
    const std::function<void(const std::vector<std::string>&)>& fn) const {
    std::ifstream in(path_, std::ios::binary);
    if (!in) {
        throw DataError("cannot open corpus file: " + path_.string());
    }
    std::string line;
    std::vector<std::string> tokens;
    std::uint64_t line_start = 0;
    while (std::getline(in, line)) {
        validate_utf8(line, line_start);
        tokens.clear();
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_token_separator(line[i])) ++i;
            std::size_t begin = i;
            while (i < line.size() && !is_token_separator(line[i])) ++i;
            if (i > begin) {
                std::string tok = line.substr(begin, i - begin);
                if (lowercase_) {
                    std::transform(tok.begin(), tok.end(), tok.begin(), ascii_lower);
                }
                tokens.push_back(std::move(tok));
            }
        }
        fn(tokens);
        line_start += line.size() + 1;
    }
}

Vocabulary build_vocabulary(const CorpusStream& corpus) {
    std::unordered_map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    corpus.for_each_sentence([&](const std::vector<std::string>& tokens) {
        for (const auto& tok : tokens) {
            ++counts[tok];
            ++total;
        }
    });
    if (total == 0) {
        throw DataError("empty corpus");
    }

    std::vector<std::pair<std::string, std::uint64_t>> items(counts.begin(), counts.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    Vocabulary vocab;
    vocab.words.reserve(items.size());
    vocab.freq.reserve(items.size());
    vocab.word_to_id.reserve(items.size());
    for (std::uint32_t id = 0; id < items.size(); ++id) {
        vocab.word_to_id.emplace(items[id].first, id);
        vocab.words.push_back(std::move(items[id].first));
        vocab.freq.push_back(items[id].second);
    }
    vocab.total_tokens = total;
    return vocab;
}

double subsample_keep_probability(std::uint32_t word_id, const Vocabulary& vocab,
                                  double sample_threshold) {
    if (sample_threshold <= 0.0) {
        throw DataError("sampling threshold must be positive");
    }
    double f_rel = vocab.relative_freq(word_id);
    return std::min(1.0, std::sqrt(sample_threshold / f_rel));
}

ThresholdPartition partition_by_threshold(const Vocabulary& vocab, std::uint64_t theta) {
    ThresholdPartition part;
    for (std::uint32_t id = 0; id < vocab.size(); ++id) {
        if (vocab.freq[id] > theta) {
            part.frequent.push_back(id);
        } else {
            part.rare.push_back(id);
        }
    }
    return part;
}

}  // namespace hybridvec
