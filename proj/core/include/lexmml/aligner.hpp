#ifndef LEXMML_ALIGNER_HPP
#define LEXMML_ALIGNER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexmml/phoneme.hpp"

namespace lexmml {

enum class EditKind { Match, Substitute, Insert, Delete };

// One alignment column. Insert has intended == "-", Delete observed == "-".
struct EditOp {
    EditKind kind;
    std::string intended;
    std::string observed;

    bool operator==(const EditOp&) const = default;
};

struct Alignment {
    std::vector<EditOp> ops;
    double cost = 0.0;

    int length() const { return static_cast<int>(ops.size()); }  // L
    int insertions() const;                                      // N
    int deletions() const;
    int substitutions() const;
    int matches() const;
    // Non-exact operations: insertions + deletions + substitutions.
    int non_exact() const;

    PhonemeSeq intended_seq() const;
    PhonemeSeq observed_seq() const;
};

// Two-row display, intended over observed, gaps as "-".
std::string format_alignment(const Alignment& a);

// Alignment op weights. sub(x,x) is always 0; lookups outside the explicit
// tables fall back to the default costs.
class CostModel {
public:
    CostModel() = default;
    CostModel(double default_sub, double default_ins, double default_del)
        : default_sub_(default_sub), default_ins_(default_ins), default_del_(default_del) {}

    double sub_cost(const std::string& intended, const std::string& observed) const;
    double ins_cost(const std::string& observed) const;
    double del_cost(const std::string& intended) const;

    void set_sub(const std::string& intended, const std::string& observed, double cost);
    void set_ins(const std::string& observed, double cost);
    void set_del(const std::string& intended, double cost);

    double default_sub() const { return default_sub_; }
    double default_ins() const { return default_ins_; }
    double default_del() const { return default_del_; }

    const std::map<std::pair<std::string, std::string>, double>& sub_table() const { return sub_; }
    const std::map<std::string, double>& ins_table() const { return ins_; }
    const std::map<std::string, double>& del_table() const { return del_; }

private:
    std::map<std::pair<std::string, std::string>, double> sub_;
    std::map<std::string, double> ins_;
    std::map<std::string, double> del_;
    double default_sub_ = 1.0;
    double default_ins_ = 1.0;
    double default_del_ = 1.0;
};

// Unit costs: every non-match op costs 1. Used for word-level alignment
// and as a plain Levenshtein fallback.
CostModel unit_cost_model();

// Substitutions within the same broad sound group are cheap, across groups
// expensive. The usual starting point before iterative re-estimation.
CostModel class_cost_model(const PhonemeInventory& inv, const BroadGroupMap& groups,
                           double within = 0.5, double cross = 2.0, double indel = 1.5);

// Minimum-cost alignment by dynamic programming. Ties are resolved
// Match > Substitute > Delete > Insert so results are reproducible.
Alignment align(const PhonemeSeq& intended, const PhonemeSeq& observed,
                const CostModel& costs);

// Unit-cost edit distance over plain symbol sequences (no ops materialized).
int unit_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b);

// P(observed symbol | intended symbol) with rows for every inventory symbol
// and for the gap "-". Rows are normalized; an additive floor keeps every
// outcome codable.
class ConfusionModel {
public:
    ConfusionModel() = default;

    double prob(const std::string& intended, const std::string& observed) const;
    double bits(const std::string& intended, const std::string& observed) const;

    void set_prob(const std::string& intended, const std::string& observed, double p);
    const std::map<std::string, std::map<std::string, double>>& rows() const { return rows_; }

private:
    std::map<std::string, std::map<std::string, double>> rows_;
};

// Distribution over the number of insertions in one word alignment.
// Explicit probabilities up to max_n, geometric tail (ratio 1/2) beyond.
class InsertionCountDist {
public:
    InsertionCountDist() = default;
    InsertionCountDist(std::vector<double> probs, double tail_mass);

    static InsertionCountDist from_tallies(const std::vector<std::int64_t>& tallies,
                                           double alpha = 0.5, int min_max_n = 4);
    // Point mass near zero insertions; fallback when no training data exists.
    static InsertionCountDist default_dist();

    double prob(int n) const;
    double bits(int n) const;
    int max_n() const { return static_cast<int>(probs_.size()) - 1; }
    double tail_mass() const { return tail_mass_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<std::int64_t>& tallies() const { return tallies_; }
    void set_tallies(std::vector<std::int64_t> tallies) { tallies_ = std::move(tallies); }

private:
    std::vector<double> probs_;      // p(0) .. p(max_n)
    double tail_mass_ = 0.0;         // total mass for n > max_n
    std::vector<std::int64_t> tallies_;
};

using SeqPairs = std::vector<std::pair<PhonemeSeq, PhonemeSeq>>;

// Aligns every (intended, observed) pair and normalizes the co-occurrence
// tallies per intended symbol, with epsilon pseudo-counts over the whole
// inventory so unseen substitutions stay codable.
ConfusionModel estimate_confusions(const SeqPairs& pairs, const CostModel& costs,
                                   const PhonemeInventory& inv, double epsilon = 0.5);

// Rotating 10%-holdout: realizations are shuffled with `seed` and split into
// `folds` contiguous folds; each held-out realization is aligned against the
// remaining realizations of the same word and the insertion count of the
// closest alignment is tallied.
InsertionCountDist estimate_insertion_dist(
    const std::map<std::string, std::vector<PhonemeSeq>>& db, const CostModel& costs,
    std::uint64_t seed = 1, int folds = 10);

// Iterative re-estimation: start from broad-class costs, align, re-derive
// costs as -log2 of smoothed confusion frequencies, repeat until the
// alignments stop changing (at most max_iters rounds).
CostModel estimate_costs(const SeqPairs& pairs, const PhonemeInventory& inv,
                         const BroadGroupMap& groups, int max_iters = 10,
                         double epsilon = 0.5);

// Derives alignment costs from a confusion model: off-diagonal costs are
// -log2 p(observed|intended), diagonal is pinned to 0.
CostModel costs_from_confusions(const ConfusionModel& conf, const PhonemeInventory& inv);

} // namespace lexmml

#endif
