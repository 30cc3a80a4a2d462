#ifndef LEXMML_EVAL_HPP
#define LEXMML_EVAL_HPP

#include <string>
#include <vector>

#include "lexmml/aligner.hpp"
#include "lexmml/lexicon.hpp"

namespace lexmml {

struct WerCounts {
    int ins = 0;
    int del = 0;
    int sub = 0;
    double wer = 0.0;
};

struct EvalRecord {
    std::string id;
    std::vector<std::string> ref_words;
    std::vector<std::string> hyp_words;
    int ins = 0;
    int del = 0;
    int sub = 0;
    double wer = 0.0;
    double distortion = 0.0;
    double bits_per_phoneme = 0.0;
};

// Minimum-edit word alignment with unit costs; counts from one optimal
// alignment (ties broken Match > Substitute > Delete > Insert).
WerCounts word_error_rate(const std::vector<std::string>& hyp,
                          const std::vector<std::string>& ref);

// Fraction of non-exact phoneme operations over the whole input, using the
// closest realization of each correct word on its own segment. Boundaries
// are segment lengths, one per reference word.
double distortion_rate(const PhonemeSeq& input, const std::vector<std::string>& ref_words,
                       const std::vector<int>& ref_boundaries, const Lexicon& lex,
                       const CostModel& costs);

struct BucketRow {
    double threshold = 0.0;   // distortion cutoff, records with distortion < threshold
    std::size_t sentences = 0;
    double avg_words = 0.0;
    double avg_ins = 0.0;
    double avg_del = 0.0;
    double avg_sub = 0.0;
    double avg_wer = 0.0;     // mean of per-sentence WER, as a percentage
};

// Cumulative buckets: each row averages over every record whose distortion
// is below the row's threshold. Thresholds must be ascending.
std::vector<BucketRow> bucket_report(const std::vector<EvalRecord>& records,
                                     const std::vector<double>& thresholds);

// Plain-text table; a second variant's rows render side by side.
std::string format_bucket_table(const std::vector<BucketRow>& rows,
                                const std::vector<BucketRow>* second = nullptr);

// CSV of (bits_per_phoneme, wer), one row per record.
std::string scatter_csv(const std::vector<EvalRecord>& records);

} // namespace lexmml

#endif
