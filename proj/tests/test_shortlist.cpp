#include <set>

#include "doctest.h"

#include "helpers.hpp"
#include "lexmml/shortlist.hpp"

using namespace lexmml;
using testutil::seq;

namespace {

PhonemeInventory vs_inventory() {
    return PhonemeInventory({"v1", "v2", "s1", "s2"});
}

BroadGroupMap vs_groups() {
    return BroadGroupMap(
        {{"v1", "vowel"}, {"v2", "vowel"}, {"s1", "stop"}, {"s2", "stop"}});
}

} // namespace

TEST_CASE("one shared broad-group sequence collapses to one class") {
    Lexicon lex;
    lex.add_entry("w1", {"nn"}, seq({"v1", "s1"}));
    lex.add_entry("w2", {"nn"}, seq({"v2", "s2"}));
    lex.add_entry("w3", {"nn"}, seq({"v1", "s2"}));
    lex.seed_canonical_realizations();
    ClassModel m = build_classes(lex, vs_groups(), 1, 3, 5);
    CHECK(m.size() == 1);
    CHECK(m.classes()[0].members.size() == 3);
}

TEST_CASE("well-separated vowel and stop words give two pure classes") {
    Lexicon lex;
    lex.add_entry("va", {"nn"}, seq({"v1", "v1", "v1", "v1", "v1"}));
    lex.add_entry("vb", {"nn"}, seq({"v1", "v1", "v1", "v1", "v2"}));
    lex.add_entry("vc", {"nn"}, seq({"v1", "v1", "v1", "v2", "v2"}));
    lex.add_entry("sa", {"nn"}, seq({"s1", "s1", "s1", "s1", "s1"}));
    lex.add_entry("sb", {"nn"}, seq({"s1", "s1", "s1", "s1", "s2"}));
    lex.add_entry("sc", {"nn"}, seq({"s1", "s1", "s1", "s2", "s2"}));
    lex.seed_canonical_realizations();
    ClassModel m = build_classes(lex, vs_groups(), 1, 4, 5);
    REQUIRE(m.size() == 2);
    for (const auto& c : m.classes()) {
        std::set<char> leading;
        for (const auto& member : c.members) leading.insert(member.word[0]);
        CHECK(leading.size() == 1); // all vowel words or all stop words
    }
}

TEST_CASE("a forced k range of one puts everything together") {
    Lexicon lex;
    lex.add_entry("w1", {"nn"}, seq({"v1"}));
    lex.add_entry("w2", {"nn"}, seq({"s1", "s2"}));
    lex.seed_canonical_realizations();
    ClassModel m = build_classes(lex, vs_groups(), 1, 1, 5);
    REQUIRE(m.size() == 1);
    CHECK(m.classes()[0].members.size() == 2);
}

TEST_CASE("classification ties go to the lowest class id") {
    EquivalenceClass a, b;
    a.id = 0;
    a.centroid = {"vowel"};
    a.members = {{"wa", 0}};
    b.id = 1;
    b.centroid = {"stop"};
    b.members = {{"wb", 0}};
    ClassModel m({a, b});
    // Probe [v2]: distance 0 to class 0. Probe [s2]: distance 0 to class 1.
    CHECK(classify(seq({"v1"}), m, vs_groups()) == 0);
    CHECK(classify(seq({"s1"}), m, vs_groups()) == 1);
    // Two-symbol probe is one edit from either centroid: lowest id wins.
    CHECK(classify(seq({"v1", "s1"}), m, vs_groups()) == 0);
    CHECK_THROWS_AS(classify(seq({"v1"}), ClassModel(), vs_groups()), InvalidArgs);
}

TEST_CASE("members land in their build-time class on a clustered fixture") {
    std::mt19937_64 rng(31);
    PhonemeInventory inv = vs_inventory();
    BroadGroupMap groups = vs_groups();
    std::vector<PhonemeSeq> prototypes = {
        seq({"v1", "v1", "v1", "v1", "v1", "v1"}),
        seq({"s1", "s1", "s1", "s1", "s1", "s1"}),
        seq({"v1", "s1", "v1", "s1", "v1", "s1"}),
        seq({"s1", "s1", "v1", "v1", "s1", "s1"}),
    };
    Lexicon lex;
    std::uniform_int_distribution<std::size_t> proto(0, prototypes.size() - 1);
    std::uniform_int_distribution<std::size_t> pos(0, 5), sym(0, inv.size() - 1);
    for (int i = 0; i < 100; ++i) {
        PhonemeSeq s = prototypes[proto(rng)];
        if (i % 3 == 0) s[pos(rng)] = inv.symbols()[sym(rng)];
        std::string word = "w" + std::to_string(i);
        lex.add_entry(word, {"nn"}, s);
    }
    lex.seed_canonical_realizations();
    ClassModel m = build_classes(lex, groups, 2, 8, 5);

    std::map<std::string, int> built_class;
    int total_members = 0;
    for (const auto& c : m.classes()) {
        for (const auto& member : c.members) {
            built_class[member.word] = c.id;
            ++total_members;
        }
    }
    CHECK(total_members == lex.total_realizations());

    int agree = 0, n = 0;
    for (const auto& [word, e] : lex.entries()) {
        for (const auto& r : e.realizations) {
            if (classify(r.phonemes, m, groups) == built_class[word]) ++agree;
            ++n;
        }
    }
    CHECK(static_cast<double>(agree) / n >= 0.95);
}

TEST_CASE("candidate lists are the deduplicated words of the chosen class") {
    Lexicon lex;
    lex.add_entry("the", {"dt"}, seq({"v1", "v2"}));
    lex.add_realization("the", seq({"v1", "v2"}), 2);
    lex.add_realization("the", seq({"v2", "v2"}), 1);
    lex.add_entry("pin", {"nn"}, seq({"s1", "v1", "s2"}));
    lex.seed_canonical_realizations();
    ClassModel m = build_classes(lex, vs_groups(), 2, 2, 5);
    auto words = candidates(seq({"v1", "v1"}), m, vs_groups(), lex);
    CHECK(words == std::vector<std::string>{"the"});
}

TEST_CASE("a segment can classify into a class lacking its word") {
    // The documented short-list failure: the input's broad groups land in a
    // class whose members do not include the intended word.
    EquivalenceClass with_target, without_target;
    with_target.id = 0;
    with_target.centroid = {"stop", "vowel", "vowel"};
    with_target.members = {{"target", 0}};
    without_target.id = 1;
    without_target.centroid = {"vowel", "vowel"};
    without_target.members = {{"filler", 0}};
    ClassModel m({with_target, without_target});

    // The first phoneme of "target" was deleted by the recognizer.
    PhonemeSeq degraded = seq({"v1", "v2"});
    auto words = candidates(degraded, m, vs_groups(), Lexicon());
    CHECK(words == std::vector<std::string>{"filler"});
}

TEST_CASE("every realization belongs to exactly one class") {
    testutil::ToyWorld w = testutil::toy_world();
    std::set<std::pair<std::string, std::size_t>> seen;
    int total = 0;
    for (const auto& c : w.models.classes.classes()) {
        for (const auto& member : c.members) {
            CHECK(seen.insert({member.word, member.realization_index}).second);
            ++total;
        }
    }
    CHECK(total == w.models.lexicon.total_realizations());
}

TEST_CASE("class dump format") {
    EquivalenceClass c;
    c.id = 0;
    c.centroid = {"vowel", "stop"};
    c.members = {{"w", 1}};
    std::string dump = format_classes(ClassModel({c}));
    CHECK(dump == "class 0\ncentroid vowel stop\nmember w 1\n");
}
