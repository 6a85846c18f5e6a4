#include "hybridvec/cooccurrence.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

#include "hybridvec/errors.hpp"
#include "hybridvec/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hybridvec;
using testutil::TempDir;
using testutil::write_file;

namespace {

struct Fixture {
    TempDir tmp;
    Vocabulary vocab;
    CorpusStream make(const std::string& text) {
        static int n = 0;
        auto path = tmp.file("c" + std::to_string(n++) + ".txt");
        write_file(path, text);
        CorpusStream corpus(path);
        vocab = build_vocabulary(corpus);
        return corpus;
    }
};

}  // namespace

TEST_CASE("adjacent pair cooccurs in both directions") {
    Fixture f;
    auto corpus = f.make("a b\n");
    auto m = build_cooccurrence(corpus, f.vocab, 10);
    const auto a = *f.vocab.lookup("a");
    const auto b = *f.vocab.lookup("b");
    CHECK(m.row(a) == std::vector<std::uint32_t>{b});
    CHECK(m.row(b) == std::vector<std::uint32_t>{a});
}

TEST_CASE("pairs beyond the window distance do not cooccur") {
    Fixture f;
    // 11 fillers between x and y: distance 12 > 10.
    auto corpus = f.make("x f0 f1 f2 f3 f4 f5 f6 f7 f8 f9 f10 y\n");
    auto m = build_cooccurrence(corpus, f.vocab, 10);
    const auto x = *f.vocab.lookup("x");
    const auto y = *f.vocab.lookup("y");
    std::set<std::uint32_t> xrow(m.row(x).begin(), m.row(x).end());
    CHECK(xrow.count(y) == 0);
    // Distance exactly 10 does cooccur.
    auto corpus2 = f.make("x f0 f1 f2 f3 f4 f5 f6 f7 f8 y\n");
    auto vocab2 = build_vocabulary(corpus2);
    auto m2 = build_cooccurrence(corpus2, vocab2, 10);
    std::set<std::uint32_t> xrow2(m2.row(*vocab2.lookup("x")).begin(),
                                  m2.row(*vocab2.lookup("x")).end());
    CHECK(xrow2.count(*vocab2.lookup("y")) == 1);
}

TEST_CASE("cooccurrence never crosses line boundaries") {
    Fixture f;
    auto corpus = f.make("a\nb\n");
    auto m = build_cooccurrence(corpus, f.vocab, 10);
    CHECK(m.row(*f.vocab.lookup("a")).empty());
    CHECK(m.row(*f.vocab.lookup("b")).empty());
}

TEST_CASE("two occurrences of a word within the window set the self entry") {
    Fixture f;
    auto corpus = f.make("a x a\n");
    auto m = build_cooccurrence(corpus, f.vocab, 2);
    const auto a = *f.vocab.lookup("a");
    std::set<std::uint32_t> arow(m.row(a).begin(), m.row(a).end());
    CHECK(arow.count(a) == 1);
    // A single occurrence never pairs with itself.
    auto corpus2 = f.make("b x y\n");
    auto vocab2 = build_vocabulary(corpus2);
    auto m2 = build_cooccurrence(corpus2, vocab2, 2);
    const auto b = *vocab2.lookup("b");
    std::set<std::uint32_t> brow(m2.row(b).begin(), m2.row(b).end());
    CHECK(brow.count(b) == 0);
}

TEST_CASE("restricting dim_words filters rows and symmetry holds on dims") {
    Fixture f;
    auto corpus = f.make("a b c\nb c a\n");
    const auto a = *f.vocab.lookup("a");
    const auto b = *f.vocab.lookup("b");
    auto m = build_cooccurrence(corpus, f.vocab, 10, {a, b});
    REQUIRE(m.num_dims() == 2);
    CHECK(m.dim_index_of(a) >= 0);
    CHECK(m.dim_index_of(*f.vocab.lookup("c")) == -1);
    for (std::uint32_t w = 0; w < f.vocab.size(); ++w) {
        for (auto v : m.row(w)) {
            CHECK((v == a || v == b));
        }
    }
    // Symmetry over dimension words.
    const auto& ra = m.row(a);
    const auto& rb = m.row(b);
    CHECK((std::find(ra.begin(), ra.end(), b) != ra.end()) ==
          (std::find(rb.begin(), rb.end(), a) != rb.end()));
}

TEST_CASE("cooccurrence matches the exhaustive pair-scan oracle") {
    TempDir tmp;
    Rng rng(123);
    for (int trial = 0; trial < 12; ++trial) {
        const int vocab_pool = 3 + static_cast<int>(rng.below(20));
        std::string text;
        std::vector<std::vector<std::uint32_t>> id_lines;
        const int n_lines = 1 + static_cast<int>(rng.below(40));
        for (int l = 0; l < n_lines; ++l) {
            const int len = static_cast<int>(rng.below(31));
            std::string line;
            for (int i = 0; i < len; ++i) {
                line += "w" + std::to_string(rng.below(vocab_pool));
                line += ' ';
            }
            text += line + "\n";
        }
        auto path = tmp.file("r" + std::to_string(trial) + ".txt");
        write_file(path, text);
        CorpusStream corpus(path);
        Vocabulary vocab;
        try {
            vocab = build_vocabulary(corpus);
        } catch (const DataError&) {
            continue;  // all lines drew length 0
        }
        corpus.for_each_sentence([&](const std::vector<std::string>& toks) {
            std::vector<std::uint32_t> ids;
            for (const auto& t : toks) ids.push_back(*vocab.lookup(t));
            id_lines.push_back(ids);
        });

        const int window = 1 + static_cast<int>(rng.below(12));
        // Alternate between the full vocabulary and a random subset.
        std::vector<std::uint32_t> dims;
        std::vector<bool> is_dim(vocab.size(), false);
        for (std::uint32_t w = 0; w < vocab.size(); ++w) {
            if (trial % 2 == 0 || rng.below(2) == 0) {
                dims.push_back(w);
                is_dim[w] = true;
            }
        }
        auto m = build_cooccurrence(corpus, vocab, window, dims);
        auto expected = oracle::cooccurrence(id_lines, vocab.size(), window, is_dim);
        for (std::uint32_t w = 0; w < vocab.size(); ++w) {
            std::vector<std::uint32_t> exp(expected[w].begin(), expected[w].end());
            CHECK(m.row(w) == exp);
        }
    }
}

TEST_CASE("growing the window never removes entries") {
    TempDir tmp;
    Rng rng(5);
    std::string text;
    for (int l = 0; l < 20; ++l) {
        for (int i = 0; i < 12; ++i) text += "w" + std::to_string(rng.below(8)) + " ";
        text += "\n";
    }
    auto path = tmp.file("mono.txt");
    write_file(path, text);
    CorpusStream corpus(path);
    Vocabulary vocab = build_vocabulary(corpus);
    auto prev = build_cooccurrence(corpus, vocab, 1);
    for (int window = 2; window <= 8; ++window) {
        auto cur = build_cooccurrence(corpus, vocab, window);
        for (std::uint32_t w = 0; w < vocab.size(); ++w) {
            std::set<std::uint32_t> cur_set(cur.row(w).begin(), cur.row(w).end());
            for (auto v : prev.row(w)) CHECK(cur_set.count(v) == 1);
        }
        prev = std::move(cur);
    }
}

TEST_CASE("any word on a line of length >= 2 gets a non-empty row") {
    Fixture f;
    auto corpus = f.make("p q\nr\nsolo\nm n o\n");
    auto m = build_cooccurrence(corpus, f.vocab, 10);
    for (const char* w : {"p", "q", "m", "n", "o"}) {
        CHECK(!m.row(*f.vocab.lookup(w)).empty());
    }
    CHECK(m.row(*f.vocab.lookup("r")).empty());
}

TEST_CASE("rows are strictly increasing and the dump is canonical") {
    Fixture f;
    auto corpus = f.make("c b a c b\n");
    auto m = build_cooccurrence(corpus, f.vocab, 10);
    for (std::uint32_t w = 0; w < f.vocab.size(); ++w) {
        const auto& r = m.row(w);
        for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i - 1] < r[i]);
    }
    std::ostringstream out;
    m.dump(out, f.vocab);
    // Vocab order: b(2) c(2) a(1); every word cooccurs with every other and
    // b,c self-cooccur.
    CHECK(out.str() == "b\t0,1,2\nc\t0,1,2\na\t0,1\n");
}
