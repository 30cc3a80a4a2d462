#ifndef LEXMML_SHORTLIST_HPP
#define LEXMML_SHORTLIST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lexmml/lexicon.hpp"
#include "lexmml/phoneme.hpp"

namespace lexmml {

struct ClassMember {
    std::string word;
    std::size_t realization_index;
};

struct EquivalenceClass {
    int id = 0;
    BroadGroupSeq centroid;
    std::vector<ClassMember> members;
    std::vector<std::string> candidate_words; // deduplicated member words
};

class ClassModel {
public:
    ClassModel() = default;
    explicit ClassModel(std::vector<EquivalenceClass> classes);

    bool empty() const { return classes_.empty(); }
    std::size_t size() const { return classes_.size(); }
    const std::vector<EquivalenceClass>& classes() const { return classes_; }

private:
    std::vector<EquivalenceClass> classes_;
};

// Clusters the broad-group sequences of every lexicon realization with
// k-medoids under unit edit distance. k is chosen within [k_min, k_max] by
// a two-part score: the class-assignment code plus a per-member distance
// code under a geometric model (one op halves the probability).
ClassModel build_classes(const Lexicon& lex, const BroadGroupMap& groups,
                         int k_min, int k_max, std::uint64_t seed = 1);

// Two-part score of a clustering; exposed for tests.
double class_model_score(const ClassModel& model, const BroadGroupMap& groups,
                         const Lexicon& lex);

// Index of the class whose centroid is closest to the sequence's broad
// groups; ties go to the lowest id.
int classify(const PhonemeSeq& seq, const ClassModel& model, const BroadGroupMap& groups);

// Words of the chosen class, deduplicated and sorted.
std::vector<std::string> candidates(const PhonemeSeq& seq, const ClassModel& model,
                                    const BroadGroupMap& groups, const Lexicon& lex);

// Class dump: one block per class, centroid line then member lines.
std::string format_classes(const ClassModel& model);

} // namespace lexmml

#endif
