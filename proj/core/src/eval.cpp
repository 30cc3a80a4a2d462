#include "lexmml/eval.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

namespace lexmml {

WerCounts word_error_rate(const std::vector<std::string>& hyp,
                          const std::vector<std::string>& ref) {
    if (ref.empty()) throw InvalidArgs("word_error_rate: empty reference");
    Alignment a = align(ref, hyp, unit_cost_model());
    WerCounts c;
    c.ins = a.insertions();
    c.del = a.deletions();
    c.sub = a.substitutions();
    c.wer = static_cast<double>(c.ins + c.del + c.sub) / static_cast<double>(ref.size());
    return c;
}

double distortion_rate(const PhonemeSeq& input, const std::vector<std::string>& ref_words,
                       const std::vector<int>& ref_boundaries, const Lexicon& lex,
                       const CostModel& costs) {
    if (ref_words.size() != ref_boundaries.size())
        throw InvalidArgs("distortion_rate: boundary count differs from word count");
    int covered = std::accumulate(ref_boundaries.begin(), ref_boundaries.end(), 0);
    if (covered != static_cast<int>(input.size()))
        throw InvalidArgs("distortion_rate: boundaries do not partition the input");
    if (input.empty()) throw InvalidArgs("distortion_rate: empty input");

    int non_exact = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < ref_words.size(); ++i) {
        const LexEntry& entry = lex.at(ref_words[i]);
        PhonemeSeq segment(input.begin() + static_cast<std::ptrdiff_t>(pos),
                           input.begin() + static_cast<std::ptrdiff_t>(pos + ref_boundaries[i]));
        pos += static_cast<std::size_t>(ref_boundaries[i]);
        bool first = true;
        double best_cost = 0.0;
        int best_ops = 0;
        for (const auto& r : entry.realizations) {
            Alignment a = align(r.phonemes, segment, costs);
            if (first || a.cost < best_cost) {
                best_cost = a.cost;
                best_ops = a.non_exact();
                first = false;
            }
        }
        non_exact += best_ops;
    }
    return static_cast<double>(non_exact) / static_cast<double>(input.size());
}

std::vector<BucketRow> bucket_report(const std::vector<EvalRecord>& records,
                                     const std::vector<double>& thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] <= thresholds[i - 1])
            throw InvalidArgs("bucket_report: thresholds must ascend");
    std::vector<BucketRow> rows;
    for (double t : thresholds) {
        BucketRow row;
        row.threshold = t;
        for (const auto& r : records) {
            if (r.distortion >= t) continue;
            row.sentences += 1;
            row.avg_words += static_cast<double>(r.ref_words.size());
            row.avg_ins += r.ins;
            row.avg_del += r.del;
            row.avg_sub += r.sub;
            row.avg_wer += r.wer;
        }
        if (row.sentences > 0) {
            double n = static_cast<double>(row.sentences);
            row.avg_words /= n;
            row.avg_ins /= n;
            row.avg_del /= n;
            row.avg_sub /= n;
            row.avg_wer = 100.0 * row.avg_wer / n;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string fnum(double x, int prec = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, x);
    return buf;
}

std::string rpad(const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
}

std::string lpad(const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
}

} // namespace

std::string format_bucket_table(const std::vector<BucketRow>& rows,
                                const std::vector<BucketRow>* second) {
    std::ostringstream out;
    const std::size_t cw = 9;
    out << rpad("thresh", 8) << lpad("words", cw)
        << lpad("ins", cw) << lpad("del", cw) << lpad("sub", cw) << lpad("WER", cw);
    if (second)
        out << " |" << lpad("ins", cw) << lpad("del", cw) << lpad("sub", cw)
            << lpad("WER", cw);
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BucketRow& r = rows[i];
        out << rpad(fnum(100.0 * r.threshold, 0), 8) << lpad(fnum(r.avg_words), cw)
            << lpad(fnum(r.avg_ins), cw) << lpad(fnum(r.avg_del), cw)
            << lpad(fnum(r.avg_sub), cw) << lpad(fnum(r.avg_wer), cw);
        if (second && i < second->size()) {
            const BucketRow& s = (*second)[i];
            out << " |" << lpad(fnum(s.avg_ins), cw) << lpad(fnum(s.avg_del), cw)
                << lpad(fnum(s.avg_sub), cw) << lpad(fnum(s.avg_wer), cw);
        }
        out << '\n';
    }
    return out.str();
}

std::string scatter_csv(const std::vector<EvalRecord>& records) {
    std::ostringstream out;
    out << "bits_per_phoneme,wer\n";
    char buf[80];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.6g,%.6g\n", r.bits_per_phoneme, r.wer);
        out << buf;
    }
    return out.str();
}

} // namespace lexmml
