#ifndef LEXMML_SEARCH_HPP
#define LEXMML_SEARCH_HPP

#include <cstddef>
#include <vector>

#include "lexmml/codec.hpp"

namespace lexmml {

struct SearchConfig {
    // Partial hypotheses more than beam_bits above the best at the same
    // consumed length are dropped; each pool is additionally capped.
    double beam_bits = 12.0;
    std::size_t max_beam = 64;
    // Segment length bounds for one word slot.
    int slot_min_ph = 1;
    int slot_max_ph = 12;
    // A word fits a slot when some realization length r satisfies
    // max(seg/r, r/seg) <= slot_ratio.
    double slot_ratio = 2.0;
    bool shortlist_enabled = true;
    std::size_t top_k = 1;
    LmMode lm_mode = LmMode::PosTrigram;
    int oracle_cap = 12;
};

// Level-building decoder: expands every live partial hypothesis by one word
// per level over all candidate boundaries, scoring with the full message
// code, then beam-prunes per consumed length. Returns complete hypotheses
// sorted by total bits (best first). Throws NoHypothesis when the lexicon
// cannot tile the input under the slot rules.
std::vector<SentenceHyp> decode(const PhonemeSeq& input, const Models& models,
                                const SearchConfig& cfg);

// Enumerates every partition and word/tag assignment within the slot rules
// and returns the global minimum. Only for small inputs; throws CapExceeded
// beyond cfg.oracle_cap.
SentenceHyp exhaustive_decode(const PhonemeSeq& input, const Models& models,
                              const SearchConfig& cfg);

// Deterministic total order used for tie-breaking equal-bits hypotheses.
bool placements_less(const std::vector<WordPlacement>& a,
                     const std::vector<WordPlacement>& b);

} // namespace lexmml

#endif
