#ifndef LEXMML_TEST_HELPERS_HPP
#define LEXMML_TEST_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lexmml/codec.hpp"
#include "lexmml/search.hpp"
#include "lexmml/synth.hpp"

namespace testutil {

using namespace lexmml;

inline PhonemeSeq seq(std::initializer_list<const char*> symbols) {
    PhonemeSeq s;
    for (const char* p : symbols) s.push_back(p);
    return s;
}

// Inventory and broad groups used by the "another" fixtures. dx is grouped
// with dh (the trained tables treat them as close) and q with silence.
inline PhonemeInventory another_inventory() {
    return PhonemeInventory({"ax", "n", "ah", "dh", "axr", "er", "ix", "q", "uh",
                             "nx", "dx"});
}

inline BroadGroupMap another_groups() {
    return BroadGroupMap({{"ax", "vowel"}, {"ah", "vowel"}, {"axr", "vowel"},
                          {"er", "vowel"}, {"ix", "vowel"}, {"uh", "vowel"},
                          {"n", "nasal"}, {"nx", "nasal"},
                          {"dh", "fricative"}, {"dx", "fricative"},
                          {"q", "silence"}});
}

// The seven observed pronunciations of "another", frequencies 3 3 2 1 1 1 1.
inline Lexicon another_lexicon() {
    Lexicon lex;
    lex.add_entry("another", {"nn"}, seq({"ax", "n", "ah", "dh", "axr"}));
    lex.add_realization("another", seq({"ix", "n", "ah", "dh", "axr"}), 3);
    lex.add_realization("another", seq({"ax", "n", "ah", "dh", "er"}), 3);
    lex.add_realization("another", seq({"q", "ax", "n", "ah", "dh", "axr"}), 2);
    lex.add_realization("another", seq({"q", "ax", "n", "ah", "dh", "er"}), 1);
    lex.add_realization("another", seq({"q", "ax", "n", "ah", "dh", "ax"}), 1);
    lex.add_realization("another", seq({"ix", "nx", "ah", "dh", "uh"}), 1);
    lex.add_realization("another", seq({"er", "n", "ah", "dh", "axr"}), 1);
    return lex;
}

// Exhaustive minimum alignment cost over all edit scripts. Plain recursion,
// no DP, so it stays an independent oracle.
inline double brute_force_align_cost(const PhonemeSeq& intended, const PhonemeSeq& observed,
                                     const CostModel& costs, std::size_t i = 0,
                                     std::size_t j = 0) {
    if (i == intended.size() && j == observed.size()) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    if (i < intended.size() && j < observed.size())
        best = std::min(best, costs.sub_cost(intended[i], observed[j]) +
                                  brute_force_align_cost(intended, observed, costs, i + 1, j + 1));
    if (i < intended.size())
        best = std::min(best, costs.del_cost(intended[i]) +
                                  brute_force_align_cost(intended, observed, costs, i + 1, j));
    if (j < observed.size())
        best = std::min(best, costs.ins_cost(observed[j]) +
                                  brute_force_align_cost(intended, observed, costs, i, j + 1));
    return best;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return v[a] < v[b];
        });
        std::vector<double> r(v.size());
        std::size_t i = 0;
        while (i < idx.size()) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    std::vector<double> rx = ranks(xs), ry = ranks(ys);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) { mx += rx[i]; my += ry[i]; }
    mx /= static_cast<double>(rx.size());
    my /= static_cast<double>(ry.size());
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0 || dy == 0) return 0.0;
    return num / std::sqrt(dx * dy);
}

// Small four-phoneme world with a six-word lexicon, used by the search and
// oracle-equivalence tests.
struct ToyWorld {
    Models models;
    SearchConfig cfg;
};

inline ToyWorld toy_world() {
    ToyWorld w;
    w.models.inventory = PhonemeInventory({"a", "b", "c", "d"});
    w.models.groups = BroadGroupMap(
        {{"a", "vowel"}, {"b", "stop"}, {"c", "fricative"}, {"d", "nasal"}});

    Lexicon& lex = w.models.lexicon;
    lex.add_entry("ab", {"nn"}, seq({"a", "b"}));
    lex.add_entry("bc", {"vb"}, seq({"b", "c"}));
    lex.add_entry("abc", {"nn"}, seq({"a", "b", "c"}));
    lex.add_entry("cb", {"dt"}, seq({"c", "b"}));
    lex.add_entry("da", {"jj", "nn"}, seq({"d", "a"}));
    lex.add_entry("bd", {"dt"}, seq({"b", "d"}));
    lex.add_realization("ab", seq({"a", "b"}), 2);
    lex.add_realization("ab", seq({"a", "a", "b"}), 1);
    lex.add_realization("bc", seq({"b", "c"}), 2);
    lex.add_realization("abc", seq({"a", "b", "c"}), 1);
    lex.add_realization("cb", seq({"c", "b"}), 3);
    lex.add_realization("da", seq({"d", "a"}), 2);
    lex.add_realization("bd", seq({"b", "d"}), 2);

    TaggedCorpus corpus = {
        {{"cb", "dt"}, {"ab", "nn"}, {"bc", "vb"}},
        {{"bd", "dt"}, {"abc", "nn"}},
        {{"cb", "dt"}, {"da", "nn"}, {"bc", "vb"}},
        {{"da", "jj"}, {"ab", "nn"}},
        {{"bd", "dt"}, {"ab", "nn"}, {"bc", "vb"}},
        {{"cb", "dt"}, {"abc", "nn"}, {"bc", "vb"}},
    };
    w.models.lm = train_from_tagged_corpus(corpus, lex);
    w.models.costs = class_cost_model(w.models.inventory, w.models.groups);
    w.models.confusion =
        estimate_confusions(realization_pairs(lex), w.models.costs, w.models.inventory);
    w.models.insertions =
        estimate_insertion_dist(realization_db(lex), w.models.costs, 7);
    w.models.classes = build_classes(lex, w.models.groups, 1, 4, 7);

    // Two-phoneme minimum slots keep exhaustive enumeration tractable.
    w.cfg.beam_bits = 1e9;
    w.cfg.max_beam = 1000000;
    w.cfg.slot_min_ph = 2;
    w.cfg.slot_max_ph = 10;
    w.cfg.slot_ratio = 2.0;
    w.cfg.shortlist_enabled = false;
    w.cfg.oracle_cap = 12;
    w.cfg.top_k = 4;
    return w;
}

class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::mt19937_64 rng(std::random_device{}());
        path_ = base / ("lexmml_test_" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(path_ / name);
        out << content;
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace testutil

#endif
