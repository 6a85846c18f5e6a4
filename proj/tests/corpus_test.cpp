#include "hybridvec/corpus.hpp"

#include <doctest.h>

#include <string>
#include <vector>

#include "hybridvec/errors.hpp"
#include "hybridvec/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hybridvec;
using testutil::TempDir;
using testutil::write_file;

TEST_CASE("build_vocabulary counts one line") {
    TempDir tmp;
    write_file(tmp.file("c.txt"), "a b a\n");
    Vocabulary v = build_vocabulary(CorpusStream(tmp.file("c.txt")));
    REQUIRE(v.size() == 2);
    CHECK(v.words[0] == "a");
    CHECK(v.freq[0] == 2);
    CHECK(v.words[1] == "b");
    CHECK(v.freq[1] == 1);
    CHECK(v.total_tokens == 3);
    CHECK(*v.lookup("a") == 0);
    CHECK(!v.lookup("z"));
}

TEST_CASE("build_vocabulary rejects an empty corpus") {
    TempDir tmp;
    write_file(tmp.file("empty.txt"), "");
    CHECK_THROWS_WITH_AS(build_vocabulary(CorpusStream(tmp.file("empty.txt"))),
                         "empty corpus", DataError);
    write_file(tmp.file("blank.txt"), "\n  \n\t\n");
    CHECK_THROWS_WITH_AS(build_vocabulary(CorpusStream(tmp.file("blank.txt"))),
                         "empty corpus", DataError);
}

TEST_CASE("build_vocabulary fails on a missing file") {
    CHECK_THROWS_AS(build_vocabulary(CorpusStream("/nonexistent/corpus.txt")), DataError);
}

TEST_CASE("build_vocabulary matches a hash-count oracle on a random corpus") {
    TempDir tmp;
    Rng rng(42);
    std::vector<std::vector<std::string>> lines;
    std::string text;
    std::size_t tokens = 0;
    while (tokens < 1000) {
        std::vector<std::string> line;
        const std::size_t len = 1 + rng.below(12);
        for (std::size_t i = 0; i < len && tokens < 1000; ++i) {
            line.push_back("w" + std::to_string(rng.below(60)));
            text += line.back() + " ";
            ++tokens;
        }
        text += "\n";
        lines.push_back(std::move(line));
    }
    write_file(tmp.file("r.txt"), text);
    Vocabulary v = build_vocabulary(CorpusStream(tmp.file("r.txt")));

    auto expected = oracle::count_tokens(lines);
    REQUIRE(v.size() == expected.size());
    std::uint64_t sum = 0;
    for (std::size_t id = 0; id < v.size(); ++id) {
        REQUIRE(expected.count(v.words[id]) == 1);
        CHECK(v.freq[id] == expected[v.words[id]]);
        sum += v.freq[id];
    }
    CHECK(sum == v.total_tokens);
    CHECK(v.total_tokens == 1000);
}

TEST_CASE("vocabulary order is descending frequency, ties lexicographic") {
    TempDir tmp;
    write_file(tmp.file("c.txt"), "pear apple pear apple fig\n");
    Vocabulary v = build_vocabulary(CorpusStream(tmp.file("c.txt")));
    REQUIRE(v.size() == 3);
    CHECK(v.words[0] == "apple");  // freq 2, before pear lexicographically
    CHECK(v.words[1] == "pear");
    CHECK(v.words[2] == "fig");
}

TEST_CASE("build_vocabulary is deterministic across passes") {
    TempDir tmp;
    write_file(tmp.file("c.txt"), "d c b a\na b c d\nb d\n");
    CorpusStream corpus(tmp.file("c.txt"));
    Vocabulary v1 = build_vocabulary(corpus);
    Vocabulary v2 = build_vocabulary(corpus);
    CHECK(v1.words == v2.words);
    CHECK(v1.freq == v2.freq);
}

TEST_CASE("lowercase flag folds ASCII only") {
    TempDir tmp;
    write_file(tmp.file("c.txt"), "Cat CAT cat\n");
    Vocabulary folded = build_vocabulary(CorpusStream(tmp.file("c.txt"), true));
    REQUIRE(folded.size() == 1);
    CHECK(folded.freq[0] == 3);
    Vocabulary kept = build_vocabulary(CorpusStream(tmp.file("c.txt"), false));
    CHECK(kept.size() == 3);
}

TEST_CASE("undecodable bytes are reported with their offset") {
    TempDir tmp;
    std::string bad = "ok line\nbad \xff token\n";
    write_file(tmp.file("c.txt"), bad);
    try {
        build_vocabulary(CorpusStream(tmp.file("c.txt")));
        FAIL("expected DataError");
    } catch (const DataError& e) {
        // 0xff sits at absolute offset 12.
        CHECK(std::string(e.what()).find("offset 12") != std::string::npos);
    }
    // Valid multi-byte UTF-8 passes.
    write_file(tmp.file("utf8.txt"), "caf\xc3\xa9 na\xc3\xafve \xe2\x82\xac\n");
    CHECK(build_vocabulary(CorpusStream(tmp.file("utf8.txt"))).size() == 3);
}

TEST_CASE("subsample_keep_probability follows the clamped formula") {
    Vocabulary v;
    v.words = {"common", "fourt", "att", "rare"};
    v.freq = {800, 40, 10, 1};
    v.total_tokens = 851;
    // Craft f_rel exactly: use t relative to each word's frequency.
    const double t_att = 10.0 / 851.0;  // f_rel == t
    CHECK(subsample_keep_probability(2, v, t_att) == doctest::Approx(1.0).epsilon(1e-12));
    const double t_fourt = 10.0 / 851.0;  // f_rel(fourt) == 4t
    CHECK(subsample_keep_probability(1, v, t_fourt) == doctest::Approx(0.5).epsilon(1e-12));
    // f_rel < t clamps to keep = 1.
    CHECK(subsample_keep_probability(3, v, 0.5) == 1.0);

    CHECK_THROWS_AS(subsample_keep_probability(99, v, 1e-3), DataError);
    CHECK_THROWS_AS(subsample_keep_probability(0, v, 0.0), DataError);
}

TEST_CASE("keep probability is non-increasing in frequency") {
    Vocabulary v;
    for (int i = 0; i < 20; ++i) {
        v.words.push_back("w" + std::to_string(i));
        v.freq.push_back(1ULL << (19 - i));  // descending, id order
        v.total_tokens += v.freq.back();
    }
    const double t = 1e-3;
    double prev = 0.0;  // id 0 is the most frequent, so keep grows from here
    for (std::uint32_t id = 0; id < 20; ++id) {
        double keep = subsample_keep_probability(id, v, t);
        CHECK(keep >= prev - 1e-15);
        if (v.relative_freq(id) <= t) CHECK(keep == 1.0);
        prev = keep;
    }
}

TEST_CASE("partition_by_threshold splits on strict inequality") {
    Vocabulary v;
    v.words = {"the", "cat"};
    v.freq = {5, 1};
    v.total_tokens = 6;

    auto part = partition_by_threshold(v, 1);
    CHECK(part.frequent == std::vector<std::uint32_t>{0});
    CHECK(part.rare == std::vector<std::uint32_t>{1});

    auto all_frequent = partition_by_threshold(v, 0);
    CHECK(all_frequent.frequent.size() == 2);
    CHECK(all_frequent.rare.empty());

    auto all_rare = partition_by_threshold(v, 5);
    CHECK(all_rare.frequent.empty());
    CHECK(all_rare.rare.size() == 2);
}

TEST_CASE("partition is complete and disjoint for any theta") {
    Rng rng(7);
    Vocabulary v;
    for (int i = 0; i < 50; ++i) {
        v.words.push_back("w" + std::to_string(i));
        v.freq.push_back(1 + rng.below(40));
        v.total_tokens += v.freq.back();
    }
    for (std::uint64_t theta : {0ULL, 1ULL, 2ULL, 7ULL, 39ULL, 40ULL, 1000ULL}) {
        auto part = partition_by_threshold(v, theta);
        CHECK(part.frequent.size() + part.rare.size() == v.size());
        for (std::uint32_t id : part.frequent) CHECK(v.freq[id] > theta);
        for (std::uint32_t id : part.rare) CHECK(v.freq[id] <= theta);
    }
}
