#include "hybridvec/representation.hpp"

#include <doctest.h>

#include <set>

#include "hybridvec/errors.hpp"
#include "hybridvec/rng.hpp"
#include "test_util.hpp"

using namespace hybridvec;
using testutil::TempDir;
using testutil::write_file;

namespace {

struct Pipeline {
    TempDir tmp;
    CorpusStream corpus;
    Vocabulary vocab;
    SparseBinaryMatrix cooc;

    static CorpusStream make_corpus(TempDir& tmp, const std::string& text) {
        write_file(tmp.file("c.txt"), text);
        return CorpusStream(tmp.file("c.txt"));
    }

    explicit Pipeline(const std::string& text, int window = 10)
        : corpus(make_corpus(tmp, text)),
          vocab(build_vocabulary(corpus)),
          cooc(build_cooccurrence(corpus, vocab, window)) {}
};

}  // namespace

TEST_CASE("mixed scheme on the toy two-word corpus") {
    // "the the the the cat the" gives the:5, cat:1.
    Pipeline p("the the the the cat the\n");
    REQUIRE(p.vocab.freq[*p.vocab.lookup("the")] == 5);
    REQUIRE(p.vocab.freq[*p.vocab.lookup("cat")] == 1);
    const auto the = *p.vocab.lookup("the");
    const auto cat = *p.vocab.lookup("cat");

    auto rep = build_representation(p.vocab, &p.cooc, {Scheme::kMixed, 1});
    const auto the_dim = static_cast<std::uint32_t>(p.cooc.dim_index_of(the));
    CHECK(rep.active(the) == std::vector<std::uint32_t>{the_dim});
    CHECK(rep.active(cat) == std::vector<std::uint32_t>{the_dim});
    CHECK(rep.input_dim() == p.cooc.num_dims());
    CHECK(rep.k() == 1);

    auto summary = describe(rep);
    CHECK(summary.frequent_words == 1);
    CHECK(summary.rare_words == 1);
}

TEST_CASE("one-hot scheme is the identity mapping") {
    Pipeline p("the the the the cat the\n");
    auto rep = build_representation(p.vocab, nullptr, {Scheme::kOneHot, 0});
    CHECK(rep.input_dim() == 2);
    CHECK(rep.active(0) == std::vector<std::uint32_t>{0});
    CHECK(rep.active(1) == std::vector<std::uint32_t>{1});
    auto summary = describe(rep);
    CHECK(summary.input_dim == 2);
    CHECK(summary.mean_active == 1.0);
    CHECK(summary.max_active == 1);
}

TEST_CASE("mixed with theta 0 equals one-hot index for index") {
    Pipeline p("e d c b a\na b c d e\nc a\n");
    auto one_hot = build_representation(p.vocab, nullptr, {Scheme::kOneHot, 0});
    auto mixed0 = build_representation(p.vocab, &p.cooc, {Scheme::kMixed, 0});
    REQUIRE(one_hot.input_dim() == mixed0.input_dim());
    for (std::uint32_t w = 0; w < p.vocab.size(); ++w) {
        CHECK(one_hot.active(w) == mixed0.active(w));
    }
}

TEST_CASE("mixed with theta >= max freq equals distributional") {
    Pipeline p("a b c a b a\nc b a\n");
    const std::uint64_t max_freq = p.vocab.freq[0];
    auto mixed_inf = build_representation(p.vocab, &p.cooc, {Scheme::kMixed, max_freq});
    auto dist = build_representation(p.vocab, &p.cooc, {Scheme::kDistributional, 0});
    REQUIRE(mixed_inf.input_dim() == dist.input_dim());
    for (std::uint32_t w = 0; w < p.vocab.size(); ++w) {
        CHECK(mixed_inf.active(w) == dist.active(w));
    }
    CHECK(mixed_inf.k() == 0);
}

TEST_CASE("separate scheme keeps frequent and rare blocks disjoint") {
    Rng rng(11);
    std::string text;
    for (int l = 0; l < 30; ++l) {
        for (int i = 0; i < 10; ++i) text += "w" + std::to_string(rng.below(25)) + " ";
        text += "\n";
    }
    Pipeline p(text, 5);
    for (std::uint64_t theta : {1ULL, 2ULL, 5ULL, 20ULL}) {
        auto rep = build_representation(p.vocab, &p.cooc, {Scheme::kSeparate, theta});
        auto part = partition_by_threshold(p.vocab, theta);
        const std::size_t k = part.frequent.size();
        CHECK(rep.k() == k);
        CHECK(rep.input_dim() == k + p.cooc.num_dims());
        std::set<std::uint32_t> frequent(part.frequent.begin(), part.frequent.end());
        for (std::uint32_t w = 0; w < p.vocab.size(); ++w) {
            REQUIRE(!rep.active(w).empty());
            for (auto idx : rep.active(w)) {
                if (frequent.count(w)) {
                    CHECK(idx < k);
                } else {
                    CHECK(idx >= k);
                }
            }
            if (frequent.count(w)) CHECK(rep.active(w).size() == 1);
        }
        // Frequent words map to distinct indices in [0, k).
        std::set<std::uint32_t> own;
        for (std::uint32_t w : part.frequent) own.insert(rep.active(w)[0]);
        CHECK(own.size() == k);
    }
}

TEST_CASE("identical cooccurrence rows give identical active sets") {
    // "alpha" and "beta" both occur exactly once, in identical contexts on
    // separate lines.
    Pipeline p("x alpha y\nx beta y\nx y z\n");
    const auto a = *p.vocab.lookup("alpha");
    const auto b = *p.vocab.lookup("beta");
    REQUIRE(p.cooc.row(a) == p.cooc.row(b));
    for (Scheme s : {Scheme::kMixed, Scheme::kSeparate, Scheme::kDistributional}) {
        auto rep = build_representation(p.vocab, &p.cooc, {s, 1});
        CHECK(rep.active(a) == rep.active(b));
    }
}

TEST_CASE("all-zero distributional vectors fall back to the word's own dimension") {
    // "lonely" sits alone on its line: empty cooccurrence row.
    Pipeline p("a b a b a b\nlonely\n");
    const auto lonely = *p.vocab.lookup("lonely");
    REQUIRE(p.cooc.row(lonely).empty());

    auto mixed = build_representation(p.vocab, &p.cooc, {Scheme::kMixed, 1});
    const auto own = static_cast<std::uint32_t>(p.cooc.dim_index_of(lonely));
    CHECK(mixed.active(lonely) == std::vector<std::uint32_t>{own});
    CHECK(mixed.fallback_count() == 1);

    auto sep = build_representation(p.vocab, &p.cooc, {Scheme::kSeparate, 1});
    const auto k = static_cast<std::uint32_t>(sep.k());
    CHECK(sep.active(lonely) == std::vector<std::uint32_t>{k + own});

    auto summary = describe(mixed);
    CHECK(summary.fallback_words == 1);
}

TEST_CASE("mixed requires every frequent word to be a dimension word") {
    Pipeline p("a a a b\n");
    const auto a = *p.vocab.lookup("a");
    const auto b = *p.vocab.lookup("b");
    // Dimension words without "a": the frequent word is missing.
    auto cooc = build_cooccurrence(p.corpus, p.vocab, 10, {b});
    CHECK_THROWS_AS(build_representation(p.vocab, &cooc, {Scheme::kMixed, 1}), DataError);
    (void)a;
}

TEST_CASE("representation construction rejects bad inputs") {
    Pipeline p("a b\n");
    Vocabulary empty;
    CHECK_THROWS_WITH_AS(build_representation(empty, &p.cooc, {Scheme::kOneHot, 0}),
                         "empty vocabulary", DataError);
    CHECK_THROWS_AS(build_representation(p.vocab, nullptr, {Scheme::kMixed, 1}), DataError);
}

TEST_CASE("describe reports mean and max active sizes") {
    Pipeline p("a b c d\nd c b a\n");
    auto rep = build_representation(p.vocab, &p.cooc, {Scheme::kDistributional, 0});
    auto summary = describe(rep);
    CHECK(summary.k == 0);
    CHECK(summary.frequent_words == 0);
    CHECK(summary.rare_words == p.vocab.size());
    CHECK(summary.max_active <= p.vocab.size());
    CHECK(summary.mean_active > 0.0);
}
