#include <cmath>

#include "doctest.h"

#include "helpers.hpp"
#include "lexmml/aligner.hpp"

using namespace lexmml;
using testutil::seq;

namespace {

std::vector<EditKind> kinds(const Alignment& a) {
    std::vector<EditKind> out;
    for (const auto& op : a.ops) out.push_back(op.kind);
    return out;
}

} // namespace

TEST_CASE("the another alignment: match match delete substitute insert match") {
    auto inv = testutil::another_inventory();
    auto groups = testutil::another_groups();
    CostModel costs = class_cost_model(inv, groups);

    Alignment a = align(seq({"ax", "n", "ah", "dh", "er"}),
                        seq({"ax", "n", "dx", "q", "er"}), costs);
    REQUIRE(a.ops.size() == 6);
    CHECK(kinds(a) == std::vector<EditKind>{EditKind::Match, EditKind::Match,
                                            EditKind::Delete, EditKind::Substitute,
                                            EditKind::Insert, EditKind::Match});
    CHECK(a.ops[2].intended == "ah");
    CHECK(a.ops[3].intended == "dh");
    CHECK(a.ops[3].observed == "dx");
    CHECK(a.ops[4].observed == "q");
    CHECK(a.length() == 6);
    CHECK(a.insertions() == 1);
    CHECK(a.intended_seq() == seq({"ax", "n", "ah", "dh", "er"}));
    CHECK(a.observed_seq() == seq({"ax", "n", "dx", "q", "er"}));
}

TEST_CASE("identical sequences align as all matches at zero cost") {
    CostModel unit = unit_cost_model();
    PhonemeSeq s = seq({"ax", "n", "ah"});
    Alignment a = align(s, s, unit);
    CHECK(a.cost == 0.0);
    CHECK(a.matches() == 3);
    CHECK(a.insertions() == 0);
    CHECK(a.length() == 3);
}

TEST_CASE("insert against a one-symbol intended sequence") {
    CostModel unit = unit_cost_model();
    Alignment a = align(seq({"ax"}), seq({"ix", "ax"}), unit);
    CHECK(a.cost == doctest::Approx(1.0));
    CHECK(a.insertions() == 1);
    CHECK(a.matches() == 1);
    CHECK(a.cost ==
          doctest::Approx(testutil::brute_force_align_cost(
              seq({"ax"}), seq({"ix", "ax"}), unit)));
}

TEST_CASE("pure deletion when the observation is empty") {
    CostModel unit = unit_cost_model();
    Alignment a = align(seq({"a", "b"}), {}, unit);
    CHECK(a.deletions() == 2);
    CHECK(a.cost == doctest::Approx(2.0));
}

TEST_CASE("alignment cost matches the brute-force oracle on random pairs") {
    PhonemeInventory inv({"p", "q", "r", "s"});
    BroadGroupMap groups({{"p", "g1"}, {"q", "g1"}, {"r", "g2"}, {"s", "g2"}});
    CostModel costs = class_cost_model(inv, groups);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> ilen(1, 6), olen(0, 6), pick(0, 3);
    for (int t = 0; t < 150; ++t) {
        PhonemeSeq intended, observed;
        int n = ilen(rng), m = olen(rng);
        for (int i = 0; i < n; ++i) intended.push_back(inv.symbols()[pick(rng)]);
        for (int j = 0; j < m; ++j) observed.push_back(inv.symbols()[pick(rng)]);
        Alignment a = align(intended, observed, costs);
        CHECK(a.cost == doctest::Approx(testutil::brute_force_align_cost(
                            intended, observed, costs)).epsilon(1e-12));
        CHECK(a.length() == static_cast<int>(intended.size()) + a.insertions());
        CHECK(a.intended_seq() == intended);
        CHECK(a.observed_seq() == observed);
    }
}

TEST_CASE("confusion rows: diagonal dominance and normalization") {
    PhonemeInventory inv({"a", "b", "c"});
    CostModel unit = unit_cost_model();

    SeqPairs identical = {{seq({"a", "b"}), seq({"a", "b"})},
                          {seq({"c"}), seq({"c"})},
                          {seq({"b", "c", "a"}), seq({"b", "c", "a"})}};
    ConfusionModel m = estimate_confusions(identical, unit, inv);
    for (const auto& sym : inv.symbols()) {
        for (const auto& other : inv.symbols())
            if (sym != other) CHECK(m.prob(sym, sym) > m.prob(sym, other));
    }

    SeqPairs one = {{seq({"a"}), seq({"b"})}};
    ConfusionModel m2 = estimate_confusions(one, unit, inv);
    CHECK(m2.prob("a", "b") > m2.prob("a", "a"));
    CHECK(m2.prob("a", "b") > m2.prob("a", "c"));

    std::mt19937_64 rng(23);
    SeqPairs random_pairs;
    std::uniform_int_distribution<int> len(1, 5), pick(0, 2);
    for (int t = 0; t < 50; ++t) {
        PhonemeSeq x, y;
        int n = len(rng), mlen = len(rng);
        for (int i = 0; i < n; ++i) x.push_back(inv.symbols()[pick(rng)]);
        for (int j = 0; j < mlen; ++j) y.push_back(inv.symbols()[pick(rng)]);
        random_pairs.emplace_back(x, y);
    }
    ConfusionModel m3 = estimate_confusions(random_pairs, unit, inv);
    for (const auto& [intended, row] : m3.rows()) {
        double s = 0;
        for (const auto& [obs, p] : row) {
            CHECK(p > 0.0);
            s += p;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    }
    // The gap row exists for insertions and has no gap-to-gap cell.
    CHECK(m3.rows().count("-"));
    CHECK_THROWS_AS(m3.prob("-", "-"), MissingProbability);
}

TEST_CASE("insertion distribution from identical realizations concentrates at zero") {
    CostModel unit = unit_cost_model();
    std::map<std::string, std::vector<PhonemeSeq>> db;
    db["w"] = {seq({"a", "b"}), seq({"a", "b"}), seq({"a", "b"}), seq({"a", "b"})};
    db["v"] = {seq({"c"}), seq({"c"})};
    InsertionCountDist d = estimate_insertion_dist(db, unit, 3);
    CHECK(d.prob(0) > 0.5);
    double total = d.tail_mass();
    for (int n = 0; n <= d.max_n(); ++n) total += d.prob(n);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two realizations differing by one insertion split the tallies") {
    CostModel unit = unit_cost_model();
    std::map<std::string, std::vector<PhonemeSeq>> db;
    db["w"] = {seq({"ax"}), seq({"ax", "q"})};
    InsertionCountDist d = estimate_insertion_dist(db, unit, 3);
    REQUIRE(d.tallies().size() == 2);
    CHECK(d.tallies()[0] == 1); // holding out the shorter: a deletion
    CHECK(d.tallies()[1] == 1); // holding out the longer: one insertion
}

TEST_CASE("insertion estimation needs a word with two realizations") {
    CostModel unit = unit_cost_model();
    std::map<std::string, std::vector<PhonemeSeq>> db;
    db["w"] = {seq({"ax"})};
    CHECK_THROWS_AS(estimate_insertion_dist(db, unit, 3), InsufficientData);
}

TEST_CASE("injected insertion rate is recovered approximately") {
    PhonemeInventory inv({"a", "b", "c", "d", "e", "f"});
    CostModel unit = unit_cost_model();
    PhonemeSeq base = seq({"a", "b", "c", "d"});
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<std::size_t> gap(0, base.size());
    std::uniform_int_distribution<std::size_t> sym(0, inv.size() - 1);
    std::map<std::string, std::vector<PhonemeSeq>> db;
    for (int i = 0; i < 20; ++i) {
        PhonemeSeq r = base;
        if (u(rng) < 0.3)
            r.insert(r.begin() + static_cast<std::ptrdiff_t>(gap(rng)),
                     inv.symbols()[sym(rng)]);
        db["w"].push_back(r);
    }
    InsertionCountDist d = estimate_insertion_dist(db, unit, 5);
    double mean = 0.0;
    for (int n = 0; n <= d.max_n(); ++n) mean += n * d.prob(n);
    CHECK(mean == doctest::Approx(0.3).epsilon(0.5)); // +-0.15 absolute
    CHECK(std::abs(mean - 0.3) <= 0.15);
}

TEST_CASE("estimated costs keep the diagonal at zero and learn confusability") {
    PhonemeInventory inv({"dh", "dx", "k"});
    BroadGroupMap groups({{"dh", "g1"}, {"dx", "g1"}, {"k", "g2"}});
    SeqPairs pairs;
    for (int i = 0; i < 9; ++i) pairs.push_back({seq({"dh"}), seq({"dx"})});
    pairs.push_back({seq({"dh"}), seq({"k"})});
    CostModel costs = estimate_costs(pairs, inv, groups);
    CHECK(costs.sub_cost("dh", "dh") == 0.0);
    CHECK(costs.sub_cost("dx", "dx") == 0.0);
    CHECK(costs.sub_cost("dh", "dx") < costs.sub_cost("dh", "k"));
}

TEST_CASE("identity pairs keep zero-cost matches through the iterations") {
    PhonemeInventory inv({"a", "b"});
    BroadGroupMap groups({{"a", "g1"}, {"b", "g2"}});
    SeqPairs pairs = {{seq({"a", "b"}), seq({"a", "b"})},
                      {seq({"b"}), seq({"b"})}};
    CostModel costs = estimate_costs(pairs, inv, groups);
    CHECK(costs.sub_cost("a", "a") == 0.0);
    CHECK(costs.sub_cost("b", "b") == 0.0);
}

TEST_CASE("cost re-estimation reaches a fixpoint on a mixed fixture") {
    PhonemeInventory inv({"a", "b", "c", "d"});
    BroadGroupMap groups(
        {{"a", "g1"}, {"b", "g1"}, {"c", "g2"}, {"d", "g2"}});
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> len(1, 5), pick(0, 3);
    SeqPairs pairs;
    for (int t = 0; t < 100; ++t) {
        PhonemeSeq x;
        int n = len(rng);
        for (int i = 0; i < n; ++i) x.push_back(inv.symbols()[pick(rng)]);
        PhonemeSeq y = x;
        if (!y.empty() && pick(rng) == 0) y[0] = inv.symbols()[pick(rng)];
        pairs.emplace_back(x, y);
    }
    CostModel costs = estimate_costs(pairs, inv, groups);
    // Fixpoint: re-deriving costs from the final alignments changes nothing.
    ConfusionModel conf = estimate_confusions(pairs, costs, inv);
    CostModel again = costs_from_confusions(conf, inv);
    for (const auto& [x, y] : pairs)
        CHECK(align(x, y, costs).ops == align(x, y, again).ops);
}

TEST_CASE("the alignment pretty printer uses two rows and gaps") {
    CostModel unit = unit_cost_model();
    Alignment a = align(seq({"ax", "n"}), seq({"ax"}), unit);
    std::string text = format_alignment(a);
    CHECK(text == "ax n\nax -\n");
}
