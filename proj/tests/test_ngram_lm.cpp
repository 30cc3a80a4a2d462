#include <cmath>

#include "doctest.h"

#include "helpers.hpp"
#include "lexmml/ngram_lm.hpp"

using namespace lexmml;
using testutil::seq;

namespace {

Lexicon tiny_lexicon() {
    Lexicon lex;
    lex.add_entry("the", {"dt"}, seq({"ax"}));
    lex.add_entry("fox", {"nn"}, seq({"ax"}));
    lex.add_entry("big", {"jj"}, seq({"ax"}));
    lex.seed_canonical_realizations();
    return lex;
}

double level_sum(const LevelDist& d) {
    double s = d.escape;
    for (const auto& [sym, p] : d.seen) s += p;
    return s;
}

} // namespace

TEST_CASE("boundary padding produces the expected trigram counts") {
    TaggedCorpus corpus = {{{"the", "dt"}, {"fox", "nn"}}};
    LanguageModel lm = train_from_tagged_corpus(corpus, tiny_lexicon());
    const auto& tri = lm.pos.trigram_counts();
    REQUIRE(tri.count({kEos2Tag, kEos1Tag}));
    CHECK(tri.at({kEos2Tag, kEos1Tag}).at("dt") == 1);
    REQUIRE(tri.count({kEos1Tag, "dt"}));
    CHECK(tri.at({kEos1Tag, "dt"}).at("nn") == 1);
    CHECK(tri.size() == 2);

    // Witten-Bell: one observation, one distinct successor -> P = 1/2.
    CHECK(lm.pos.code_length(kEos2Tag, kEos1Tag, "dt") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty corpus keeps the unigram floor") {
    LanguageModel lm = train_from_tagged_corpus({}, tiny_lexicon());
    CHECK(lm.pos.trigram_counts().empty());
    CHECK(lm.word.unigram_counts().at("dt").at("the") == 1);
    CHECK(lm.word.unigram_counts().at("nn").at("fox") == 1);
    CHECK(lm.word_only.unigram_counts().at("big") == 1);
}

TEST_CASE("doubling the corpus doubles every count and keeps ML ratios") {
    TaggedCorpus corpus = {{{"the", "dt"}, {"fox", "nn"}},
                           {{"big", "jj"}, {"fox", "nn"}}};
    TaggedCorpus doubled = corpus;
    doubled.insert(doubled.end(), corpus.begin(), corpus.end());
    LanguageModel a = train_from_tagged_corpus(corpus, tiny_lexicon());
    LanguageModel b = train_from_tagged_corpus(doubled, tiny_lexicon());
    for (const auto& [ctx, succ] : a.pos.trigram_counts()) {
        int ctx_a = 0, ctx_b = 0;
        for (const auto& [tag, c] : succ) {
            CHECK(b.pos.trigram_counts().at(ctx).at(tag) == 2 * c);
            ctx_a += c;
            ctx_b += b.pos.trigram_counts().at(ctx).at(tag);
        }
        for (const auto& [tag, c] : succ)
            CHECK(static_cast<double>(c) / ctx_a ==
                  doctest::Approx(static_cast<double>(
                                      b.pos.trigram_counts().at(ctx).at(tag)) /
                                  ctx_b));
    }
}

TEST_CASE("Witten-Bell back-off on a hand-evaluated five-event fixture") {
    // Trigram context (dt, nn) observed 4 times: vb three times, jj once.
    Lexicon lex;
    lex.add_entry("w1", {"dt"}, seq({"ax"}));
    lex.add_entry("w2", {"nn"}, seq({"ax"}));
    lex.add_entry("w3", {"vb"}, seq({"ax"}));
    lex.add_entry("w4", {"jj"}, seq({"ax"}));
    lex.seed_canonical_realizations();
    TaggedCorpus corpus = {
        {{"w1", "dt"}, {"w2", "nn"}, {"w3", "vb"}},
        {{"w1", "dt"}, {"w2", "nn"}, {"w3", "vb"}},
        {{"w1", "dt"}, {"w2", "nn"}, {"w3", "vb"}},
        {{"w1", "dt"}, {"w2", "nn"}, {"w4", "jj"}},
    };
    LanguageModel lm = train_from_tagged_corpus(corpus, lex);

    // n = 4, d = 2: P(vb) = 3/6, P(jj) = 1/6, escape = 2/6.
    CHECK(lm.pos.code_length("dt", "nn", "vb") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lm.pos.code_length("dt", "nn", "jj") ==
          doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    LevelDist d = lm.pos.trigram_dist("dt", "nn");
    CHECK(level_sum(d) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.escape == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("a fully unseen context walks three free escapes to the uniform") {
    LanguageModel lm = train_from_tagged_corpus({}, tiny_lexicon());
    // Tag set {dt, jj, nn}: every level is empty, so only the uniform costs.
    CHECK(lm.pos.code_length("nn", "nn", "dt") ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-12));
}

TEST_CASE("unigram escape feeds the uniform for tags never observed") {
    Lexicon lex = tiny_lexicon();
    TaggedCorpus corpus = {{{"the", "dt"}, {"fox", "nn"}}};
    LanguageModel lm = train_from_tagged_corpus(corpus, lex);
    // jj has no unigram count: unseen trigram and bigram contexts escape
    // free, the unigram escape costs -log2(2/4), the uniform log2(3).
    double expected = 1.0 + std::log2(3.0);
    CHECK(lm.pos.code_length("jj", "jj", "jj") ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("word code lengths with floors and escapes") {
    Lexicon lex;
    lex.add_entry("x", {"nn"}, seq({"ax"}));
    lex.add_entry("y", {"nn"}, seq({"ax"}));
    lex.seed_canonical_realizations();
    LanguageModel lm = train_from_tagged_corpus({}, lex);

    // Unseen context escapes for free; the floored unigram has two words.
    CHECK(lm.word.code_length(kEosWord, "nn", "x") ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(lm.word.code_length(kEosWord, "dt", "x"), InvalidPairing);

    // Seen bigram: hand evaluation of count/(n+d).
    TaggedCorpus corpus = {{{"x", "nn"}, {"y", "nn"}}};
    lm = train_from_tagged_corpus(corpus, lex);
    // Context (x, nn) saw y once: P(y) = 1/2.
    CHECK(word_code_length(lm.word, "x", "nn", "y") ==
          doctest::Approx(1.0).epsilon(1e-12));
    // x unseen in that context: escape 1/2, then unigram with floor:
    // counts x: 1+1, y: 1+1 -> P(x) = 1/2.
    CHECK(word_code_length(lm.word, "x", "nn", "x") ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("degenerate one-word one-tag untrained model codes for free") {
    Lexicon lex;
    lex.add_entry("w", {"nn"}, seq({"ax"}));
    lex.seed_canonical_realizations();
    LanguageModel lm = train_from_tagged_corpus({}, lex);
    TaggedSentence s = {{"w", "nn"}};
    CHECK(sentence_lm_code_length(lm, s) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(word_only_code_length(lm.word_only, {"w"}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the quick brown fox factors into the documented contexts") {
    TaggedSentence s = {{"the", "art"}, {"quick", "adj"}, {"brown", "adj"}, {"fox", "noun"}};
    auto factors = lm_factors(s);
    REQUIRE(factors.size() == 4);
    CHECK(factors[0].prev_word == kEosWord);
    CHECK(factors[0].prev_tag == kEos1Tag);
    CHECK(factors[0].prev2_tag == kEos2Tag);
    CHECK(factors[1].prev_word == "the");
    CHECK(factors[1].prev_tag == "art");
    CHECK(factors[1].prev2_tag == kEos1Tag);
    CHECK(factors[2].prev_word == "quick");
    CHECK(factors[2].prev_tag == "adj");
    CHECK(factors[2].prev2_tag == "art");
    CHECK(factors[3].prev_word == "brown");
    CHECK(factors[3].prev_tag == "adj");
    CHECK(factors[3].prev2_tag == "adj");
}

TEST_CASE("sentence scores add across independently scored sentences") {
    Lexicon lex = tiny_lexicon();
    TaggedCorpus corpus = {{{"the", "dt"}, {"fox", "nn"}}, {{"big", "jj"}}};
    LanguageModel lm = train_from_tagged_corpus(corpus, lex);
    TaggedSentence s1 = {{"the", "dt"}, {"fox", "nn"}};
    TaggedSentence s2 = {{"big", "jj"}};
    double a = sentence_lm_code_length(lm, s1);
    double b = sentence_lm_code_length(lm, s2);
    CHECK(a + b == doctest::Approx(sentence_lm_code_length(lm, s1) +
                                   sentence_lm_code_length(lm, s2)));
    CHECK(a > 0.0);
    CHECK(std::isfinite(a + b));
}

TEST_CASE("every observed context distribution is normalized") {
    testutil::ToyWorld w = testutil::toy_world();
    const auto& lm = w.models.lm;
    for (const auto& [ctx, succ] : lm.pos.trigram_counts()) {
        CHECK(level_sum(lm.pos.trigram_dist(ctx.first, ctx.second)) ==
              doctest::Approx(1.0).epsilon(1e-9));
        // No event can be coded below the most probable event's cost.
        LevelDist d = lm.pos.trigram_dist(ctx.first, ctx.second);
        double max_p = d.escape;
        for (const auto& [sym, p] : d.seen) max_p = std::max(max_p, p);
        for (const auto& tag : lm.pos.tagset()) {
            double bits = pos_code_length(lm.pos, ctx.first, ctx.second, tag);
            CHECK(std::isfinite(bits));
            CHECK(bits >= -std::log2(max_p) - 1e-9);
        }
    }
    for (const auto& [t1, succ] : lm.pos.bigram_counts())
        CHECK(level_sum(lm.pos.bigram_dist(t1)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(level_sum(lm.pos.unigram_dist()) == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& [ctx, succ] : lm.word.bigram_counts())
        CHECK(level_sum(lm.word.bigram_dist(ctx.first, ctx.second)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& [tag, row] : lm.word.unigram_counts()) {
        double s = 0;
        for (const auto& [wd, p] : lm.word.unigram_dist(tag)) s += p;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    }
    double s = 0;
    for (const auto& [wd, p] : lm.word_only.unigram_dist()) s += p;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("grammar-shaped corpus favors the PoS model over word bigrams") {
    Lexicon lex;
    lex.add_entry("the", {"dt"}, seq({"ax"}));
    lex.add_entry("a", {"dt"}, seq({"ax"}));
    lex.add_entry("cat", {"nn"}, seq({"ax"}));
    lex.add_entry("dog", {"nn"}, seq({"ax"}));
    lex.add_entry("fox", {"nn"}, seq({"ax"}));
    lex.add_entry("hen", {"nn"}, seq({"ax"}));
    lex.add_entry("ran", {"vb"}, seq({"ax"}));
    lex.add_entry("sat", {"vb"}, seq({"ax"}));
    lex.seed_canonical_realizations();
    TaggedCorpus corpus = {
        {{"the", "dt"}, {"cat", "nn"}, {"ran", "vb"}},
        {{"a", "dt"}, {"dog", "nn"}, {"sat", "vb"}},
        {{"the", "dt"}, {"fox", "nn"}, {"sat", "vb"}},
        {{"a", "dt"}, {"cat", "nn"}, {"ran", "vb"}},
    };
    LanguageModel lm = train_from_tagged_corpus(corpus, lex);
    TaggedSentence s = {{"the", "dt"}, {"hen", "nn"}, {"ran", "vb"}};
    std::vector<std::string> words = {"the", "hen", "ran"};
    CHECK(sentence_lm_code_length(lm, s) <
          word_only_code_length(lm.word_only, words));
}

TEST_CASE("word-only counts ignore the tags") {
    Lexicon lex = tiny_lexicon();
    TaggedCorpus tagged_one_way = {{{"the", "dt"}, {"fox", "nn"}}};
    TaggedCorpus tagged_other_way = {{{"the", "dt"}, {"fox", "nn"}}};
    for (auto& s : tagged_other_way) s[0].second = "jj", s[1].second = "jj";
    LanguageModel a = train_from_tagged_corpus(tagged_one_way, lex);
    LanguageModel b = train_from_tagged_corpus(tagged_other_way, lex);
    CHECK(a.word_only.bigram_counts() == b.word_only.bigram_counts());
    CHECK(a.word_only.unigram_counts() == b.word_only.unigram_counts());
}

TEST_CASE("training rejects unknown tags and empty sentences") {
    Lexicon lex = tiny_lexicon();
    CHECK_THROWS_AS(train_from_tagged_corpus({{{"the", "zz"}}}, lex), UnknownTag);
    CHECK_THROWS_AS(train_from_tagged_corpus({TaggedSentence{}}, lex), InvalidArgs);
}

TEST_CASE("tagged corpus file parsing") {
    testutil::TempDir tmp;
    tmp.write("c.txt", "the/dt fox/nn\n\nbig/jj\n");
    TaggedCorpus corpus = load_tagged_corpus(tmp.file("c.txt"));
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0][0] == std::pair<std::string, std::string>{"the", "dt"});
    tmp.write("bad.txt", "oops\n");
    CHECK_THROWS_AS(load_tagged_corpus(tmp.file("bad.txt")), ParseError);
}
