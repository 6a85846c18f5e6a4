#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hybridvec/corpus.hpp"

namespace hybridvec {

// Minimal-weighted-path-length binary prefix code over word frequencies.
// points[w] holds the inner-node ids on the root-to-leaf path of word w,
// codes[w] the branch (0/1) taken at each of those nodes. Inner nodes are
// numbered in creation order, so the root id is inner_count - 1.
struct HuffmanTree {
    std::vector<std::vector<std::uint32_t>> points;
    std::vector<std::vector<std::uint8_t>> codes;
    std::size_t inner_count = 0;

    std::size_t num_words() const { return points.size(); }
    std::uint32_t root() const { return static_cast<std::uint32_t>(inner_count - 1); }

    std::uint64_t weighted_code_length(std::span<const std::uint64_t> counts) const;
};

// Two-queue Huffman construction, deterministic for any input: on equal
// counts the node that existed first wins (leaves before merged nodes,
// queue order otherwise). Throws DataError when fewer than 2 words.
HuffmanTree build_huffman(std::span<const std::uint64_t> counts);
HuffmanTree build_huffman(const Vocabulary& vocab);

}  // namespace hybridvec
