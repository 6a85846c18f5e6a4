#include "hybridvec/huffman.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "hybridvec/errors.hpp"

namespace hybridvec {

std::uint64_t HuffmanTree::weighted_code_length(std::span<const std::uint64_t> counts) const {
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < codes.size(); ++w) {
        total += counts[w] * codes[w].size();
    }
    return total;
}

HuffmanTree build_huffman(std::span<const std::uint64_t> counts) {
    const std::size_t v = counts.size();
    if (v < 2) {
        throw DataError("vocabulary too small for hierarchical softmax");
    }

    // Leaves in ascending count order. Index descending on ties so that a
    // vocabulary (nonincreasing counts) simply reverses: the two-queue merge
    // then consumes both queues in nondecreasing order.
    std::vector<std::uint32_t> leaf_order(v);
    std::iota(leaf_order.begin(), leaf_order.end(), 0u);
    std::stable_sort(leaf_order.begin(), leaf_order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         if (counts[a] != counts[b]) return counts[a] < counts[b];
                         return a > b;
                     });

    // Node ids: 0..v-1 leaves, v..2v-2 merged nodes in creation order.
    std::vector<std::uint64_t> weight(2 * v - 1, 0);
    std::vector<std::uint32_t> parent(2 * v - 1, 0);
    std::vector<std::uint8_t> branch(2 * v - 1, 0);
    for (std::size_t i = 0; i < v; ++i) weight[i] = counts[i];

    std::size_t leaf_pos = 0;
    std::deque<std::uint32_t> merged;
    auto take_min = [&]() -> std::uint32_t {
        // Prefer the leaf on ties: it was created earlier than any merged node.
        if (leaf_pos < v &&
            (merged.empty() || weight[leaf_order[leaf_pos]] <= weight[merged.front()])) {
            return leaf_order[leaf_pos++];
        }
        std::uint32_t id = merged.front();
        merged.pop_front();
        return id;
    };

    for (std::uint32_t m = 0; m + 1 < v; ++m) {
        std::uint32_t first = take_min();
        std::uint32_t second = take_min();
        std::uint32_t node = static_cast<std::uint32_t>(v) + m;
        weight[node] = weight[first] + weight[second];
        parent[first] = node;
        parent[second] = node;
        branch[first] = 0;
        branch[second] = 1;
        merged.push_back(node);
    }

    const std::uint32_t root_node = static_cast<std::uint32_t>(2 * v - 2);
    HuffmanTree tree;
    tree.inner_count = v - 1;
    tree.points.resize(v);
    tree.codes.resize(v);
    for (std::uint32_t w = 0; w < v; ++w) {
        // Climb leaf -> root collecting (inner node, branch taken from it).
        std::uint32_t cur = w;
        auto& pts = tree.points[w];
        auto& bits = tree.codes[w];
        while (cur != root_node) {
            bits.push_back(branch[cur]);
            cur = parent[cur];
            pts.push_back(cur - static_cast<std::uint32_t>(v));
        }
        std::reverse(pts.begin(), pts.end());
        std::reverse(bits.begin(), bits.end());
    }
    return tree;
}

HuffmanTree build_huffman(const Vocabulary& vocab) {
    return build_huffman(std::span<const std::uint64_t>(vocab.freq));
}

}  // namespace hybridvec
