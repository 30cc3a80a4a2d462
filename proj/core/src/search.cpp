#include "lexmml/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

namespace lexmml {

bool placements_less(const std::vector<WordPlacement>& a,
                     const std::vector<WordPlacement>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto ka = std::tie(a[i].begin, a[i].end, a[i].word, a[i].tag);
        auto kb = std::tie(b[i].begin, b[i].end, b[i].word, b[i].tag);
        if (ka != kb) return ka < kb;
    }
    return a.size() < b.size();
}

namespace {

struct Hyp {
    std::vector<WordPlacement> words;
    std::vector<WordCodeBreakdown> breakdowns;
    double bits = 0.0;
    std::size_t consumed = 0;
};

bool hyp_less(const Hyp& a, const Hyp& b) {
    if (a.bits != b.bits) return a.bits < b.bits;
    return placements_less(a.words, b.words);
}

SentenceHyp to_sentence_hyp(const Hyp& h) {
    SentenceHyp out;
    out.words = h.words;
    out.breakdowns = h.breakdowns;
    out.total_bits = h.bits;
    return out;
}

// Shared helpers for decode and the exhaustive oracle, so both apply the
// same slot admission rules and the same scoring.
class Expander {
public:
    Expander(const PhonemeSeq& input, const Models& models, const SearchConfig& cfg)
        : input_(input), models_(models), cfg_(cfg) {
        for (const auto& [word, e] : models.lexicon.entries())
            for (const auto& r : e.realizations)
                by_length_[static_cast<int>(r.phonemes.size())].push_back(word);
        for (auto& [len, words] : by_length_) {
            std::sort(words.begin(), words.end());
            words.erase(std::unique(words.begin(), words.end()), words.end());
        }
    }

    bool fits_slot(const LexEntry& entry, int seg_len) const {
        for (const auto& r : entry.realizations) {
            double rl = static_cast<double>(r.phonemes.size());
            double sl = static_cast<double>(seg_len);
            if (std::max(sl / rl, rl / sl) <= cfg_.slot_ratio) return true;
        }
        return false;
    }

    // Candidate words for input segment [begin, end), slot rules applied.
    // Cached per segment: every hypothesis reaching `begin` shares the list.
    const std::vector<std::string>& candidates_for(std::size_t begin, std::size_t end,
                                                   bool use_shortlist) {
        const std::size_t key =
            2 * (begin * (input_.size() + 1) + end) + (use_shortlist ? 1 : 0);
        auto cached = cand_cache_.find(key);
        if (cached != cand_cache_.end()) return cached->second;

        const int seg_len = static_cast<int>(end - begin);
        std::vector<std::string> words;
        if (use_shortlist && !models_.classes.empty()) {
            PhonemeSeq segment(input_.begin() + static_cast<std::ptrdiff_t>(begin),
                               input_.begin() + static_cast<std::ptrdiff_t>(end));
            words = candidates(segment, models_.classes, models_.groups, models_.lexicon);
        } else {
            int lo = static_cast<int>(std::ceil(seg_len / cfg_.slot_ratio));
            int hi = static_cast<int>(std::floor(seg_len * cfg_.slot_ratio));
            for (auto it = by_length_.lower_bound(std::max(lo, 1));
                 it != by_length_.end() && it->first <= hi; ++it)
                words.insert(words.end(), it->second.begin(), it->second.end());
            std::sort(words.begin(), words.end());
            words.erase(std::unique(words.begin(), words.end()), words.end());
        }
        std::vector<std::string> out;
        for (const auto& w : words)
            if (fits_slot(models_.lexicon.at(w), seg_len)) out.push_back(w);
        return cand_cache_.emplace(key, std::move(out)).first->second;
    }

    const PhDiffResult& ph_diff(std::size_t begin, std::size_t end,
                                const std::string& word) {
        auto& per_word = cache_[begin * (input_.size() + 1) + end];
        auto it = per_word.find(word);
        if (it != per_word.end()) return it->second;
        PhonemeSeq segment(input_.begin() + static_cast<std::ptrdiff_t>(begin),
                           input_.begin() + static_cast<std::ptrdiff_t>(end));
        PhDiffResult r = phoneme_diff_code_length(segment, models_.lexicon.at(word),
                                                  models_.confusion, models_.insertions,
                                                  models_.costs);
        return per_word.emplace(word, std::move(r)).first->second;
    }

    // One scored expansion of a hypothesis ending at `begin`.
    WordCodeBreakdown score(const std::string& prev_word, const std::string& t2,
                            const std::string& t1, const std::string& word,
                            const std::string& tag, std::size_t begin, std::size_t end) {
        WordCodeBreakdown b;
        if (cfg_.lm_mode == LmMode::PosTrigram) {
            b.pos_bits = models_.lm.pos.code_length(t2, t1, tag);
            b.word_bits = models_.lm.word.code_length(prev_word, tag, word);
        } else {
            b.word_bits = models_.lm.word_only.code_length(prev_word, word);
        }
        const PhDiffResult& ph = ph_diff(begin, end, word);
        b.ph_diff_bits = ph.bits;
        b.realization_index = ph.realization_index;
        b.total_bits = b.pos_bits + b.word_bits + b.ph_diff_bits;
        return b;
    }

    const SearchConfig& cfg() const { return cfg_; }
    const Models& models() const { return models_; }
    std::size_t input_size() const { return input_.size(); }

private:
    const PhonemeSeq& input_;
    const Models& models_;
    const SearchConfig& cfg_;
    std::map<int, std::vector<std::string>> by_length_;
    std::unordered_map<std::size_t, std::unordered_map<std::string, PhDiffResult>> cache_;
    std::unordered_map<std::size_t, std::vector<std::string>> cand_cache_;
};

void lm_context(const Hyp& h, std::string& prev_word, std::string& t1, std::string& t2) {
    const std::size_t n = h.words.size();
    prev_word = n >= 1 ? h.words[n - 1].word : kEosWord;
    t1 = n >= 1 ? h.words[n - 1].tag : kEos1Tag;
    t2 = n >= 2 ? h.words[n - 2].tag : (n == 1 ? kEos1Tag : kEos2Tag);
}

} // namespace

std::vector<SentenceHyp> decode(const PhonemeSeq& input, const Models& models,
                                const SearchConfig& cfg) {
    if (input.empty()) throw InvalidArgs("decode: empty input");
    for (std::size_t i = 0; i < input.size(); ++i)
        if (!models.inventory.contains(input[i])) throw UnknownPhoneme(input[i], i);

    Expander ex(input, models, cfg);
    const std::size_t n = input.size();

    std::vector<Hyp> live(1); // the empty hypothesis at consumed 0
    std::map<std::size_t, double> best_at;
    best_at[0] = 0.0;
    std::vector<Hyp> results;
    double best_complete = 0.0;
    bool have_complete = false;

    while (!live.empty()) {
        std::map<std::size_t, std::vector<Hyp>> pools;
        for (const Hyp& hyp : live) {
            std::string prev_word, t1, t2;
            lm_context(hyp, prev_word, t1, t2);
            const std::size_t base = hyp.consumed;
            const std::size_t lo = base + static_cast<std::size_t>(cfg.slot_min_ph);
            const std::size_t hi =
                std::min(n, base + static_cast<std::size_t>(cfg.slot_max_ph));
            for (std::size_t end = lo; end <= hi; ++end) {
                for (const auto& word :
                     ex.candidates_for(base, end, cfg.shortlist_enabled)) {
                    const LexEntry& entry = models.lexicon.at(word);
                    std::vector<std::string> tags;
                    if (cfg.lm_mode == LmMode::PosTrigram)
                        tags = entry.pos_tags;
                    else
                        tags.push_back(entry.pos_tags.front());
                    for (const auto& tag : tags) {
                        WordCodeBreakdown b =
                            ex.score(prev_word, t2, t1, word, tag, base, end);
                        Hyp child;
                        child.words = hyp.words;
                        child.words.push_back({word, tag, base, end});
                        child.breakdowns = hyp.breakdowns;
                        child.breakdowns.push_back(b);
                        child.bits = hyp.bits + b.total_bits;
                        child.consumed = end;
                        pools[end].push_back(std::move(child));
                    }
                }
            }
        }

        live.clear();
        for (auto& [consumed, pool] : pools) {
            double best = pool.front().bits;
            for (const Hyp& h : pool) best = std::min(best, h.bits);
            auto it = best_at.find(consumed);
            if (it != best_at.end()) best = std::min(best, it->second);
            best_at[consumed] = best;

            std::sort(pool.begin(), pool.end(), hyp_less);
            std::vector<Hyp> kept;
            for (Hyp& h : pool) {
                if (h.bits > best + cfg.beam_bits) break;
                kept.push_back(std::move(h));
                if (kept.size() >= cfg.max_beam) break;
            }
            if (consumed == n) {
                for (Hyp& h : kept) {
                    if (!have_complete || h.bits < best_complete) {
                        best_complete = h.bits;
                        have_complete = true;
                    }
                    results.push_back(std::move(h));
                }
            } else {
                for (Hyp& h : kept) live.push_back(std::move(h));
            }
        }

        // Keep the result pool bounded with the same beam rule.
        if (have_complete) {
            std::sort(results.begin(), results.end(), hyp_less);
            std::vector<Hyp> kept;
            for (Hyp& h : results) {
                if (h.bits > best_complete + cfg.beam_bits) break;
                kept.push_back(std::move(h));
                if (kept.size() >= std::max(cfg.max_beam, cfg.top_k)) break;
            }
            results = std::move(kept);
        }
    }

    if (results.empty())
        throw NoHypothesis("no word tiling covers the input under the slot rules");
    std::sort(results.begin(), results.end(), hyp_less);
    std::vector<SentenceHyp> out;
    out.reserve(results.size());
    for (const Hyp& h : results) out.push_back(to_sentence_hyp(h));
    return out;
}

namespace {

struct OracleState {
    Expander* ex = nullptr;
    const PhonemeSeq* input = nullptr;
    std::vector<WordPlacement> current;
    std::vector<WordCodeBreakdown> breakdowns;
    double bits = 0.0;
    bool found = false;
    Hyp best;
};

void oracle_rec(OracleState& st, std::size_t pos) {
    const SearchConfig& cfg = st.ex->cfg();
    const std::size_t n = st.input->size();
    if (pos == n) {
        if (!st.found || st.bits < st.best.bits ||
            (st.bits == st.best.bits && placements_less(st.current, st.best.words))) {
            st.best.words = st.current;
            st.best.breakdowns = st.breakdowns;
            st.best.bits = st.bits;
            st.best.consumed = n;
            st.found = true;
        }
        return;
    }
    std::string prev_word = kEosWord, t1 = kEos1Tag, t2 = kEos2Tag;
    if (!st.current.empty()) {
        prev_word = st.current.back().word;
        t1 = st.current.back().tag;
        t2 = st.current.size() >= 2 ? st.current[st.current.size() - 2].tag : kEos1Tag;
    }
    const std::size_t lo = pos + static_cast<std::size_t>(cfg.slot_min_ph);
    const std::size_t hi = std::min(n, pos + static_cast<std::size_t>(cfg.slot_max_ph));
    for (std::size_t end = lo; end <= hi; ++end) {
        for (const auto& word : st.ex->candidates_for(pos, end, false)) {
            const LexEntry& entry = st.ex->models().lexicon.at(word);
            std::vector<std::string> tags;
            if (cfg.lm_mode == LmMode::PosTrigram)
                tags = entry.pos_tags;
            else
                tags.push_back(entry.pos_tags.front());
            for (const auto& tag : tags) {
                WordCodeBreakdown b = st.ex->score(prev_word, t2, t1, word, tag, pos, end);
                st.current.push_back({word, tag, pos, end});
                st.breakdowns.push_back(b);
                double saved = st.bits;
                st.bits += b.total_bits;
                oracle_rec(st, end);
                st.bits = saved;
                st.breakdowns.pop_back();
                st.current.pop_back();
            }
        }
    }
}

} // namespace

SentenceHyp exhaustive_decode(const PhonemeSeq& input, const Models& models,
                              const SearchConfig& cfg) {
    if (input.empty()) throw InvalidArgs("exhaustive_decode: empty input");
    if (static_cast<int>(input.size()) > cfg.oracle_cap)
        throw CapExceeded("input of " + std::to_string(input.size()) +
                          " phonemes exceeds the oracle cap of " +
                          std::to_string(cfg.oracle_cap));
    for (std::size_t i = 0; i < input.size(); ++i)
        if (!models.inventory.contains(input[i])) throw UnknownPhoneme(input[i], i);

    Expander ex(input, models, cfg);
    OracleState st;
    st.ex = &ex;
    st.input = &input;
    oracle_rec(st, 0);
    if (!st.found)
        throw NoHypothesis("no word tiling covers the input under the slot rules");
    return to_sentence_hyp(st.best);
}

} // namespace lexmml
