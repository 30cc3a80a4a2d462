#include "lexmml/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace lexmml {

int Alignment::insertions() const {
    int n = 0;
    for (const auto& op : ops) n += op.kind == EditKind::Insert;
    return n;
}

int Alignment::deletions() const {
    int n = 0;
    for (const auto& op : ops) n += op.kind == EditKind::Delete;
    return n;
}

int Alignment::substitutions() const {
    int n = 0;
    for (const auto& op : ops) n += op.kind == EditKind::Substitute;
    return n;
}

int Alignment::matches() const {
    int n = 0;
    for (const auto& op : ops) n += op.kind == EditKind::Match;
    return n;
}

int Alignment::non_exact() const {
    return insertions() + deletions() + substitutions();
}

PhonemeSeq Alignment::intended_seq() const {
    PhonemeSeq out;
    for (const auto& op : ops)
        if (op.intended != kGap) out.push_back(op.intended);
    return out;
}

PhonemeSeq Alignment::observed_seq() const {
    PhonemeSeq out;
    for (const auto& op : ops)
        if (op.observed != kGap) out.push_back(op.observed);
    return out;
}

std::string format_alignment(const Alignment& a) {
    std::ostringstream top, bot;
    for (std::size_t i = 0; i < a.ops.size(); ++i) {
        std::size_t w = std::max(a.ops[i].intended.size(), a.ops[i].observed.size());
        if (i) { top << ' '; bot << ' '; }
        top << a.ops[i].intended << std::string(w - a.ops[i].intended.size(), ' ');
        bot << a.ops[i].observed << std::string(w - a.ops[i].observed.size(), ' ');
    }
    return top.str() + "\n" + bot.str() + "\n";
}

double CostModel::sub_cost(const std::string& intended, const std::string& observed) const {
    if (intended == observed) return 0.0;
    auto it = sub_.find({intended, observed});
    return it == sub_.end() ? default_sub_ : it->second;
}

double CostModel::ins_cost(const std::string& observed) const {
    auto it = ins_.find(observed);
    return it == ins_.end() ? default_ins_ : it->second;
}

double CostModel::del_cost(const std::string& intended) const {
    auto it = del_.find(intended);
    return it == del_.end() ? default_del_ : it->second;
}

void CostModel::set_sub(const std::string& intended, const std::string& observed, double cost) {
    if (cost < 0) throw InvalidArgs("negative substitution cost");
    sub_[{intended, observed}] = cost;
}

void CostModel::set_ins(const std::string& observed, double cost) {
    if (cost < 0) throw InvalidArgs("negative insertion cost");
    ins_[observed] = cost;
}

void CostModel::set_del(const std::string& intended, double cost) {
    if (cost < 0) throw InvalidArgs("negative deletion cost");
    del_[intended] = cost;
}

CostModel unit_cost_model() {
    return CostModel(1.0, 1.0, 1.0);
}

CostModel class_cost_model(const PhonemeInventory& inv, const BroadGroupMap& groups,
                           double within, double cross, double indel) {
    CostModel costs(cross, indel, indel);
    for (const auto& a : inv.symbols())
        for (const auto& b : inv.symbols())
            if (a != b && groups.group_of(a) == groups.group_of(b))
                costs.set_sub(a, b, within);
    return costs;
}

Alignment align(const PhonemeSeq& intended, const PhonemeSeq& observed,
                const CostModel& costs) {
    const std::size_t n = intended.size();
    const std::size_t m = observed.size();

    // dp[i][j]: min cost aligning intended[0..i) with observed[0..j).
    // choice: 0 = diagonal (match/sub), 1 = delete, 2 = insert.
    std::vector<std::vector<double>> dp(n + 1, std::vector<double>(m + 1, 0.0));
    std::vector<std::vector<char>> choice(n + 1, std::vector<char>(m + 1, 0));

    for (std::size_t i = 1; i <= n; ++i) {
        dp[i][0] = dp[i - 1][0] + costs.del_cost(intended[i - 1]);
        choice[i][0] = 1;
    }
    for (std::size_t j = 1; j <= m; ++j) {
        dp[0][j] = dp[0][j - 1] + costs.ins_cost(observed[j - 1]);
        choice[0][j] = 2;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            // Candidates in tie-break order: match/substitute, delete, insert.
            double diag = dp[i - 1][j - 1] + costs.sub_cost(intended[i - 1], observed[j - 1]);
            double del = dp[i - 1][j] + costs.del_cost(intended[i - 1]);
            double ins = dp[i][j - 1] + costs.ins_cost(observed[j - 1]);
            double best = diag;
            char c = 0;
            if (del < best) { best = del; c = 1; }
            if (ins < best) { best = ins; c = 2; }
            dp[i][j] = best;
            choice[i][j] = c;
        }
    }

    Alignment a;
    a.cost = dp[n][m];
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        switch (choice[i][j]) {
        case 0: {
            const std::string& x = intended[i - 1];
            const std::string& y = observed[j - 1];
            a.ops.push_back({x == y ? EditKind::Match : EditKind::Substitute, x, y});
            --i; --j;
            break;
        }
        case 1:
            a.ops.push_back({EditKind::Delete, intended[i - 1], kGap});
            --i;
            break;
        default:
            a.ops.push_back({EditKind::Insert, kGap, observed[j - 1]});
            --j;
            break;
        }
    }
    std::reverse(a.ops.begin(), a.ops.end());
    return a;
}

int unit_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<int> prev(m + 1), cur(m + 1);
    std::iota(prev.begin(), prev.end(), 0);
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            int diag = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

double ConfusionModel::prob(const std::string& intended, const std::string& observed) const {
    auto row = rows_.find(intended);
    if (row == rows_.end()) throw MissingProbability(intended, observed);
    auto it = row->second.find(observed);
    if (it == row->second.end()) throw MissingProbability(intended, observed);
    return it->second;
}

double ConfusionModel::bits(const std::string& intended, const std::string& observed) const {
    return -std::log2(prob(intended, observed));
}

void ConfusionModel::set_prob(const std::string& intended, const std::string& observed,
                              double p) {
    rows_[intended][observed] = p;
}

InsertionCountDist::InsertionCountDist(std::vector<double> probs, double tail_mass)
    : probs_(std::move(probs)), tail_mass_(tail_mass) {}

InsertionCountDist InsertionCountDist::from_tallies(const std::vector<std::int64_t>& tallies,
                                                    double alpha, int min_max_n) {
    int max_seen = -1;
    for (std::size_t i = 0; i < tallies.size(); ++i)
        if (tallies[i] > 0) max_seen = static_cast<int>(i);
    int max_n = std::max(min_max_n, max_seen);

    double total = 0.0;
    std::vector<double> raw(max_n + 1, 0.0);
    for (int n = 0; n <= max_n; ++n) {
        raw[n] = alpha + (n < static_cast<int>(tallies.size()) ? tallies[n] : 0);
        total += raw[n];
    }
    double raw_tail = alpha;
    total += raw_tail;

    std::vector<double> probs(max_n + 1);
    for (int n = 0; n <= max_n; ++n) probs[n] = raw[n] / total;
    InsertionCountDist dist(std::move(probs), raw_tail / total);
    dist.tallies_ = tallies;
    return dist;
}

InsertionCountDist InsertionCountDist::default_dist() {
    return from_tallies({1}, 0.5, 4);
}

double InsertionCountDist::prob(int n) const {
    if (n < 0) throw InvalidArgs("negative insertion count");
    if (n < static_cast<int>(probs_.size())) return probs_[n];
    // Geometric tail: half the remaining mass per extra insertion.
    return tail_mass_ * std::pow(0.5, n - max_n());
}

double InsertionCountDist::bits(int n) const {
    return -std::log2(prob(n));
}

namespace {

// Tally one alignment into per-intended-symbol co-occurrence counts.
void tally_alignment(const Alignment& a,
                     std::map<std::string, std::map<std::string, std::int64_t>>& counts) {
    for (const auto& op : a.ops) counts[op.intended][op.observed] += 1;
}

ConfusionModel normalize_confusions(
    const std::map<std::string, std::map<std::string, std::int64_t>>& counts,
    const PhonemeInventory& inv, double epsilon) {
    ConfusionModel model;
    std::vector<std::string> rows = inv.symbols();
    rows.push_back(kGap);
    for (const auto& intended : rows) {
        // Outcomes: every inventory symbol, plus "-" for deletions.
        // The gap row has no "-" outcome (no gap-to-gap event exists).
        std::vector<std::string> outcomes = inv.symbols();
        if (intended != kGap) outcomes.push_back(kGap);

        double total = 0.0;
        const std::map<std::string, std::int64_t>* row = nullptr;
        auto it = counts.find(intended);
        if (it != counts.end()) row = &it->second;
        for (const auto& obs : outcomes) {
            double c = epsilon;
            if (row) {
                auto jt = row->find(obs);
                if (jt != row->end()) c += static_cast<double>(jt->second);
            }
            total += c;
        }
        for (const auto& obs : outcomes) {
            double c = epsilon;
            if (row) {
                auto jt = row->find(obs);
                if (jt != row->end()) c += static_cast<double>(jt->second);
            }
            model.set_prob(intended, obs, c / total);
        }
    }
    return model;
}

} // namespace

ConfusionModel estimate_confusions(const SeqPairs& pairs, const CostModel& costs,
                                   const PhonemeInventory& inv, double epsilon) {
    if (pairs.empty()) throw InvalidArgs("estimate_confusions: no pairs");
    std::map<std::string, std::map<std::string, std::int64_t>> counts;
    for (const auto& [intended, observed] : pairs)
        tally_alignment(align(intended, observed, costs), counts);
    return normalize_confusions(counts, inv, epsilon);
}

InsertionCountDist estimate_insertion_dist(
    const std::map<std::string, std::vector<PhonemeSeq>>& db, const CostModel& costs,
    std::uint64_t seed, int folds) {
    bool usable = false;
    for (const auto& [word, reals] : db)
        if (reals.size() >= 2) { usable = true; break; }
    if (!usable)
        throw InsufficientData("no word has two or more realizations");

    struct Item { const std::string* word; const PhonemeSeq* seq; };
    std::vector<Item> items;
    for (const auto& [word, reals] : db)
        for (const auto& r : reals) items.push_back({&word, &r});

    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<int> fold_of(items.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        fold_of[order[k]] = static_cast<int>(k * folds / order.size());

    std::vector<std::int64_t> tallies;
    for (int f = 0; f < folds; ++f) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (fold_of[i] != f) continue;
            // Align the held-out realization against every remaining
            // realization of the same word; record the closest alignment's N.
            double best_cost = 0.0;
            int best_n = -1;
            for (std::size_t j = 0; j < items.size(); ++j) {
                if (j == i || fold_of[j] == f || *items[j].word != *items[i].word)
                    continue;
                Alignment a = align(*items[j].seq, *items[i].seq, costs);
                if (best_n < 0 || a.cost < best_cost) {
                    best_cost = a.cost;
                    best_n = a.insertions();
                }
            }
            if (best_n < 0) continue; // nothing left for this word in the 90%
            if (best_n >= static_cast<int>(tallies.size()))
                tallies.resize(best_n + 1, 0);
            tallies[best_n] += 1;
        }
    }
    if (tallies.empty())
        throw InsufficientData("holdout produced no alignments");
    return InsertionCountDist::from_tallies(tallies);
}

CostModel costs_from_confusions(const ConfusionModel& conf, const PhonemeInventory& inv) {
    CostModel costs(20.0, 20.0, 20.0);
    for (const auto& x : inv.symbols()) {
        for (const auto& y : inv.symbols())
            if (x != y) costs.set_sub(x, y, -std::log2(conf.prob(x, y)));
        costs.set_del(x, -std::log2(conf.prob(x, kGap)));
        costs.set_ins(x, -std::log2(conf.prob(kGap, x)));
    }
    return costs;
}

CostModel estimate_costs(const SeqPairs& pairs, const PhonemeInventory& inv,
                         const BroadGroupMap& groups, int max_iters, double epsilon) {
    if (pairs.empty()) throw InvalidArgs("estimate_costs: no pairs");
    CostModel costs = class_cost_model(inv, groups);
    std::vector<Alignment> prev;
    for (int iter = 0; iter < max_iters; ++iter) {
        std::vector<Alignment> cur;
        cur.reserve(pairs.size());
        std::map<std::string, std::map<std::string, std::int64_t>> counts;
        for (const auto& [intended, observed] : pairs) {
            cur.push_back(align(intended, observed, costs));
            tally_alignment(cur.back(), counts);
        }
        bool stable = !prev.empty() && prev.size() == cur.size();
        if (stable)
            for (std::size_t k = 0; k < cur.size(); ++k)
                if (!(cur[k].ops == prev[k].ops)) { stable = false; break; }
        if (stable) break;
        costs = costs_from_confusions(normalize_confusions(counts, inv, epsilon), inv);
        prev = std::move(cur);
    }
    return costs;
}

} // namespace lexmml
