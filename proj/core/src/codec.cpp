#include "lexmml/codec.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lexmml {

double realization_code_length(const LexEntry& entry, std::size_t j) {
    if (j >= entry.realizations.size())
        throw IndexOutOfRange("realization " + std::to_string(j) + " of '" +
                              entry.word + "' (" +
                              std::to_string(entry.realizations.size()) + " available)");
    double total = static_cast<double>(entry.total_freq());
    return -std::log2(entry.realizations[j].freq / total);
}

namespace {

double log2_binomial(int n, int k) {
    double bits = 0.0;
    for (int i = 0; i < k; ++i)
        bits += std::log2(static_cast<double>(n - i)) -
                std::log2(static_cast<double>(i + 1));
    return bits;
}

} // namespace

double insertion_code_length(int L, int N, const InsertionCountDist& dist) {
    if (N < 0 || L < 0 || N > L)
        throw InvalidArgs("insertion_code_length: need 0 <= N <= L");
    return dist.bits(N) + log2_binomial(L, N);
}

double substitution_code_length(const Alignment& a, const ConfusionModel& conf) {
    double bits = 0.0;
    for (const auto& op : a.ops) bits += conf.bits(op.intended, op.observed);
    return bits;
}

PhDiffResult phoneme_diff_code_length(const PhonemeSeq& segment, const LexEntry& entry,
                                      const ConfusionModel& conf,
                                      const InsertionCountDist& dist,
                                      const CostModel& costs) {
    if (entry.realizations.empty())
        throw InvalidArgs("word '" + entry.word + "' has no realizations");
    PhDiffResult best;
    bool first = true;
    for (std::size_t j = 0; j < entry.realizations.size(); ++j) {
        Alignment a = align(entry.realizations[j].phonemes, segment, costs);
        double bits = realization_code_length(entry, j) +
                      insertion_code_length(a.length(), a.insertions(), dist) +
                      substitution_code_length(a, conf);
        if (first || bits < best.bits) {
            best.bits = bits;
            best.realization_index = j;
            best.alignment = std::move(a);
            first = false;
        }
    }
    return best;
}

SentenceHyp sentence_code_length(const PhonemeSeq& input,
                                 const std::vector<WordPlacement>& words,
                                 const Models& models, LmMode mode) {
    if (words.empty()) throw InvalidArgs("empty hypothesis");
    std::size_t cursor = 0;
    for (const auto& w : words) {
        if (w.begin != cursor || w.end <= w.begin || w.end > input.size())
            throw InvalidArgs("boundaries do not partition the input");
        cursor = w.end;
    }
    if (cursor != input.size())
        throw InvalidArgs("boundaries do not cover the input");

    SentenceHyp hyp;
    hyp.words = words;
    std::string prev_word = kEosWord, t1 = kEos1Tag, t2 = kEos2Tag;
    for (const auto& w : words) {
        const LexEntry& entry = models.lexicon.at(w.word);
        WordCodeBreakdown b;
        if (mode == LmMode::PosTrigram) {
            b.pos_bits = models.lm.pos.code_length(t2, t1, w.tag);
            b.word_bits = models.lm.word.code_length(prev_word, w.tag, w.word);
        } else {
            b.pos_bits = 0.0;
            b.word_bits = models.lm.word_only.code_length(prev_word, w.word);
        }
        PhonemeSeq segment(input.begin() + static_cast<std::ptrdiff_t>(w.begin),
                           input.begin() + static_cast<std::ptrdiff_t>(w.end));
        PhDiffResult ph = phoneme_diff_code_length(segment, entry, models.confusion,
                                                   models.insertions, models.costs);
        b.ph_diff_bits = ph.bits;
        b.realization_index = ph.realization_index;
        b.total_bits = b.pos_bits + b.word_bits + b.ph_diff_bits;
        hyp.total_bits += b.total_bits;
        hyp.breakdowns.push_back(b);
        prev_word = w.word;
        t2 = t1;
        t1 = w.tag;
    }
    return hyp;
}

double bits_per_phoneme(const SentenceHyp& hyp, std::size_t input_len) {
    if (input_len == 0) throw InvalidArgs("bits_per_phoneme: empty input");
    return hyp.total_bits / static_cast<double>(input_len);
}

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

std::string fixed2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

} // namespace

std::string format_breakdown(const SentenceHyp& hyp) {
    std::size_t word_w = 4, tag_w = 3;
    for (const auto& w : hyp.words) {
        word_w = std::max(word_w, w.word.size());
        tag_w = std::max(tag_w, w.tag.size());
    }

    std::ostringstream out;
    auto cell = [](const std::string& s, std::size_t w) {
        return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
    };
    auto num = [](const std::string& s, std::size_t w) {
        return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
    };
    const std::size_t nw = 12;

    out << cell("word", word_w) << "  " << cell("", tag_w)
        << num("PoS bits", nw) << num("word bits", nw)
        << num("phDiff bits", nw) << num("total", nw) << '\n';

    double sum_pos = 0.0, sum_word = 0.0, sum_ph = 0.0;
    for (std::size_t i = 0; i < hyp.words.size(); ++i) {
        const auto& w = hyp.words[i];
        const auto& b = hyp.breakdowns[i];
        double pos = round2(b.pos_bits), wb = round2(b.word_bits), ph = round2(b.ph_diff_bits);
        sum_pos += pos;
        sum_word += wb;
        sum_ph += ph;
        out << cell(w.word, word_w) << "  " << cell(w.tag, tag_w)
            << num(fixed2(pos), nw) << num(fixed2(wb), nw)
            << num(fixed2(ph), nw) << num(fixed2(pos + wb + ph), nw) << '\n';
    }
    out << cell("", word_w) << "  " << cell("", tag_w)
        << num(fixed2(sum_pos), nw) << num(fixed2(sum_word), nw)
        << num(fixed2(sum_ph), nw) << num(fixed2(sum_pos + sum_word + sum_ph), nw) << '\n';
    return out.str();
}

} // namespace lexmml
