#include "lexmml/shortlist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "lexmml/aligner.hpp"

namespace lexmml {

ClassModel::ClassModel(std::vector<EquivalenceClass> classes)
    : classes_(std::move(classes)) {
    for (auto& c : classes_) {
        c.candidate_words.clear();
        for (const auto& m : c.members) c.candidate_words.push_back(m.word);
        std::sort(c.candidate_words.begin(), c.candidate_words.end());
        c.candidate_words.erase(
            std::unique(c.candidate_words.begin(), c.candidate_words.end()),
            c.candidate_words.end());
    }
}

namespace {

struct SeqGroup {
    BroadGroupSeq seq;
    std::vector<ClassMember> members; // realizations sharing this sequence
};

// Distinct broad-group sequences in first-appearance order.
std::vector<SeqGroup> collect_groups(const Lexicon& lex, const BroadGroupMap& groups) {
    std::vector<SeqGroup> out;
    std::map<BroadGroupSeq, std::size_t> index;
    for (const auto& [word, e] : lex.entries()) {
        for (std::size_t j = 0; j < e.realizations.size(); ++j) {
            BroadGroupSeq g = to_broad_groups(e.realizations[j].phonemes, groups);
            auto it = index.find(g);
            if (it == index.end()) {
                index.emplace(g, out.size());
                out.push_back({g, {{word, j}}});
            } else {
                out[it->second].members.push_back({word, j});
            }
        }
    }
    return out;
}

struct Clustering {
    std::vector<std::size_t> medoids;           // indices into the group list
    std::vector<int> assignment;                // group index -> cluster
};

// Plain k-medoids over the precomputed distance matrix, weighted by group
// multiplicity. Deterministic given the seed.
Clustering k_medoids(const std::vector<std::vector<int>>& dist,
                     const std::vector<int>& weight, int k, std::uint64_t seed) {
    const std::size_t n = dist.size();
    Clustering c;
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(c.medoids),
                static_cast<std::size_t>(k), rng);
    c.assignment.assign(n, 0);

    for (int iter = 0; iter < 50; ++iter) {
        // Assign to nearest medoid, ties to the lowest cluster index.
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            int best_d = dist[i][c.medoids[0]];
            for (std::size_t m = 1; m < c.medoids.size(); ++m) {
                int d = dist[i][c.medoids[m]];
                if (d < best_d) { best_d = d; best = static_cast<int>(m); }
            }
            if (c.assignment[i] != best) { c.assignment[i] = best; changed = true; }
        }
        // Recenter each cluster on the member minimizing weighted distance.
        bool moved = false;
        for (std::size_t m = 0; m < c.medoids.size(); ++m) {
            long best_sum = -1;
            std::size_t best_i = c.medoids[m];
            for (std::size_t i = 0; i < n; ++i) {
                if (c.assignment[i] != static_cast<int>(m)) continue;
                long sum = 0;
                for (std::size_t j = 0; j < n; ++j)
                    if (c.assignment[j] == static_cast<int>(m))
                        sum += static_cast<long>(dist[i][j]) * weight[j];
                if (best_sum < 0 || sum < best_sum ||
                    (sum == best_sum && i < best_i)) {
                    best_sum = sum;
                    best_i = i;
                }
            }
            if (c.medoids[m] != best_i) { c.medoids[m] = best_i; moved = true; }
        }
        if (!changed && !moved) break;
    }
    // Final assignment pass so every member is nearest its own centroid.
    for (std::size_t i = 0; i < n; ++i) {
        int best = 0;
        int best_d = dist[i][c.medoids[0]];
        for (std::size_t m = 1; m < c.medoids.size(); ++m) {
            int d = dist[i][c.medoids[m]];
            if (d < best_d) { best_d = d; best = static_cast<int>(m); }
        }
        c.assignment[i] = best;
    }
    return c;
}

double clustering_score(const std::vector<std::vector<int>>& dist,
                        const std::vector<int>& weight, const Clustering& c) {
    const std::size_t n = dist.size();
    int total = 0;
    std::vector<int> cluster_w(c.medoids.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        cluster_w[c.assignment[i]] += weight[i];
        total += weight[i];
    }
    double bits = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        int m = c.assignment[i];
        // Assignment code: -log2 of the class prior.
        double prior = static_cast<double>(cluster_w[m]) / total;
        // Distance code: geometric over op counts, P(d) = 2^-(d+1).
        double d = static_cast<double>(dist[i][c.medoids[m]]);
        bits += weight[i] * (-std::log2(prior) + d + 1.0);
    }
    return bits;
}

} // namespace

ClassModel build_classes(const Lexicon& lex, const BroadGroupMap& groups,
                         int k_min, int k_max, std::uint64_t seed) {
    if (lex.size() == 0) throw InvalidArgs("build_classes: empty lexicon");
    if (k_min < 1 || k_min > k_max) throw InvalidArgs("build_classes: bad k range");

    std::vector<SeqGroup> seq_groups = collect_groups(lex, groups);
    const std::size_t n = seq_groups.size();
    k_max = std::min<int>(k_max, static_cast<int>(n));
    k_min = std::min(k_min, k_max);

    std::vector<int> weight(n);
    for (std::size_t i = 0; i < n; ++i)
        weight[i] = static_cast<int>(seq_groups[i].members.size());

    std::vector<std::vector<int>> dist(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = unit_edit_distance(seq_groups[i].seq, seq_groups[j].seq);

    double best_score = 0.0;
    Clustering best;
    bool first = true;
    for (int k = k_min; k <= k_max; ++k) {
        Clustering c = k_medoids(dist, weight, k, seed + static_cast<std::uint64_t>(k));
        double score = clustering_score(dist, weight, c);
        if (first || score < best_score) {
            best_score = score;
            best = std::move(c);
            first = false;
        }
    }

    std::vector<EquivalenceClass> classes(best.medoids.size());
    for (std::size_t m = 0; m < best.medoids.size(); ++m) {
        classes[m].id = static_cast<int>(m);
        classes[m].centroid = seq_groups[best.medoids[m]].seq;
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& cls = classes[best.assignment[i]];
        for (const auto& member : seq_groups[i].members)
            cls.members.push_back(member);
    }
    // Drop clusters that ended up empty (possible when k exceeds the number
    // of populated regions) and renumber.
    std::vector<EquivalenceClass> kept;
    for (auto& c : classes)
        if (!c.members.empty()) {
            c.id = static_cast<int>(kept.size());
            kept.push_back(std::move(c));
        }
    return ClassModel(std::move(kept));
}

double class_model_score(const ClassModel& model, const BroadGroupMap& groups,
                         const Lexicon& lex) {
    int total = 0;
    for (const auto& c : model.classes()) total += static_cast<int>(c.members.size());
    double bits = 0.0;
    for (const auto& c : model.classes()) {
        double prior = static_cast<double>(c.members.size()) / total;
        for (const auto& m : c.members) {
            const auto& seq = lex.at(m.word).realizations.at(m.realization_index).phonemes;
            int d = unit_edit_distance(to_broad_groups(seq, groups), c.centroid);
            bits += -std::log2(prior) + d + 1.0;
        }
    }
    return bits;
}

int classify(const PhonemeSeq& seq, const ClassModel& model, const BroadGroupMap& groups) {
    if (model.empty()) throw InvalidArgs("classify: empty class model");
    BroadGroupSeq g = to_broad_groups(seq, groups);
    int best_id = 0;
    int best_d = -1;
    for (const auto& c : model.classes()) {
        int d = unit_edit_distance(g, c.centroid);
        if (best_d < 0 || d < best_d) {
            best_d = d;
            best_id = c.id;
        }
    }
    return best_id;
}

std::vector<std::string> candidates(const PhonemeSeq& seq, const ClassModel& model,
                                    const BroadGroupMap& groups, const Lexicon& lex) {
    (void)lex;
    int id = classify(seq, model, groups);
    return model.classes().at(id).candidate_words;
}

std::string format_classes(const ClassModel& model) {
    std::ostringstream out;
    for (const auto& c : model.classes()) {
        out << "class " << c.id << '\n';
        out << "centroid " << join_symbols(c.centroid) << '\n';
        for (const auto& m : c.members)
            out << "member " << m.word << ' ' << m.realization_index << '\n';
    }
    return out.str();
}

} // namespace lexmml
