#ifndef LEXMML_CODEC_HPP
#define LEXMML_CODEC_HPP

#include <string>
#include <vector>

#include "lexmml/aligner.hpp"
#include "lexmml/lexicon.hpp"
#include "lexmml/ngram_lm.hpp"
#include "lexmml/shortlist.hpp"

namespace lexmml {

// Which language model scores the word sequence.
enum class LmMode { PosTrigram, WordBigramOnly };

// Everything a decoder needs, loaded once and shared read-only.
struct Models {
    PhonemeInventory inventory;
    BroadGroupMap groups;
    Lexicon lexicon;
    LanguageModel lm;
    ConfusionModel confusion;
    InsertionCountDist insertions;
    CostModel costs;
    ClassModel classes;
};

struct WordCodeBreakdown {
    double pos_bits = 0.0;
    double word_bits = 0.0;
    double ph_diff_bits = 0.0;
    double total_bits = 0.0;
    std::size_t realization_index = 0;
};

// A word hypothesis over one input segment [begin, end).
struct WordPlacement {
    std::string word;
    std::string tag;
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct SentenceHyp {
    std::vector<WordPlacement> words;
    std::vector<WordCodeBreakdown> breakdowns;
    double total_bits = 0.0;
};

// -log2 (freq_j / total freq): the cost of naming realization j.
double realization_code_length(const LexEntry& entry, std::size_t j);

// Insertion-count plus insertion-position cost:
// -log2 p(N) + log2 C(L, N) for an alignment of length L with N insertions.
double insertion_code_length(int L, int N, const InsertionCountDist& dist);

// Sum over every alignment column of -log2 P(observed | intended); deletions
// code "-" given the intended symbol, insertions code the symbol given "-".
double substitution_code_length(const Alignment& a, const ConfusionModel& conf);

struct PhDiffResult {
    double bits = 0.0;
    std::size_t realization_index = 0;
    Alignment alignment;
};

// Minimum over the entry's realizations of realization + insertion +
// substitution bits; ties go to the lowest index.
PhDiffResult phoneme_diff_code_length(const PhonemeSeq& segment, const LexEntry& entry,
                                      const ConfusionModel& conf,
                                      const InsertionCountDist& dist,
                                      const CostModel& costs);

// Scores a full sentence hypothesis: boundaries must partition the input.
SentenceHyp sentence_code_length(const PhonemeSeq& input,
                                 const std::vector<WordPlacement>& words,
                                 const Models& models, LmMode mode = LmMode::PosTrigram);

double bits_per_phoneme(const SentenceHyp& hyp, std::size_t input_len);

// Per-word bit table: word, tagged PoS bits, word bits, phoneme-difference
// bits, total, with a column-sum footer. Cells are rounded to two decimals
// before any total is formed, so the printed table is exactly additive.
std::string format_breakdown(const SentenceHyp& hyp);

} // namespace lexmml

#endif
