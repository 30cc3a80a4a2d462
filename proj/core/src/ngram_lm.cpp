#include "lexmml/ngram_lm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lexmml {

namespace {

// Witten-Bell lookup of one symbol in one context level.
// Returns {true, event bits} when the symbol was seen, otherwise
// {false, escape bits}. An empty context escapes for free.
std::pair<bool, double> wb_lookup(const std::map<std::string, int>* counts,
                                  const std::string& symbol) {
    if (!counts || counts->empty()) return {false, 0.0};
    int total = 0;
    for (const auto& [s, c] : *counts) total += c;
    const double denom = static_cast<double>(total) + static_cast<double>(counts->size());
    auto it = counts->find(symbol);
    if (it != counts->end() && it->second > 0)
        return {true, -std::log2(static_cast<double>(it->second) / denom)};
    return {false, -std::log2(static_cast<double>(counts->size()) / denom)};
}

} // namespace

LevelDist witten_bell_level(const std::map<std::string, int>& counts) {
    LevelDist dist;
    if (counts.empty()) return dist; // escape == 1
    int total = 0;
    for (const auto& [s, c] : counts) total += c;
    const double denom = static_cast<double>(total) + static_cast<double>(counts.size());
    for (const auto& [s, c] : counts) dist.seen[s] = static_cast<double>(c) / denom;
    dist.escape = static_cast<double>(counts.size()) / denom;
    return dist;
}

void PosTrigramModel::set_tagset(std::vector<std::string> tags) {
    tagset_ = std::move(tags);
    tagset_index_ = std::set<std::string>(tagset_.begin(), tagset_.end());
}

void PosTrigramModel::observe(const std::vector<std::string>& sentence_tags) {
    if (sentence_tags.empty()) throw InvalidArgs("empty sentence");
    for (const auto& t : sentence_tags)
        if (!in_tagset(t)) throw UnknownTag(t);
    std::string t2 = kEos2Tag, t1 = kEos1Tag;
    for (const auto& tag : sentence_tags) {
        tri_[{t2, t1}][tag] += 1;
        bi_[t1][tag] += 1;
        uni_[tag] += 1;
        t2 = t1;
        t1 = tag;
    }
}

double PosTrigramModel::code_length(const std::string& t2, const std::string& t1,
                                    const std::string& tag) const {
    if (!in_tagset(tag)) throw UnknownTag(tag);
    double bits = 0.0;

    auto tri = tri_.find({t2, t1});
    auto [hit3, b3] = wb_lookup(tri == tri_.end() ? nullptr : &tri->second, tag);
    bits += b3;
    if (hit3) return bits;

    auto bi = bi_.find(t1);
    auto [hit2, b2] = wb_lookup(bi == bi_.end() ? nullptr : &bi->second, tag);
    bits += b2;
    if (hit2) return bits;

    auto [hit1, b1] = wb_lookup(&uni_, tag);
    bits += b1;
    if (hit1) return bits;

    // Uniform over the whole tag set.
    return bits + std::log2(static_cast<double>(tagset_.size()));
}

LevelDist PosTrigramModel::trigram_dist(const std::string& t2, const std::string& t1) const {
    auto it = tri_.find({t2, t1});
    return it == tri_.end() ? LevelDist{} : witten_bell_level(it->second);
}

LevelDist PosTrigramModel::bigram_dist(const std::string& t1) const {
    auto it = bi_.find(t1);
    return it == bi_.end() ? LevelDist{} : witten_bell_level(it->second);
}

LevelDist PosTrigramModel::unigram_dist() const {
    return witten_bell_level(uni_);
}

void PosTrigramModel::set_counts(std::map<TriKey, std::map<std::string, int>> tri,
                                 std::map<std::string, std::map<std::string, int>> bi,
                                 std::map<std::string, int> uni) {
    tri_ = std::move(tri);
    bi_ = std::move(bi);
    uni_ = std::move(uni);
}

void WordBigramModel::init_floor(const Lexicon& lex) {
    for (const auto& [word, e] : lex.entries()) {
        for (const auto& tag : e.pos_tags) {
            uni_[tag][word] += 1;
            pairs_.insert({word, tag});
        }
    }
}

void WordBigramModel::observe(const std::string& prev_word, const std::string& word,
                              const std::string& tag) {
    bi_[{prev_word, tag}][word] += 1;
    uni_[tag][word] += 1;
}

double WordBigramModel::code_length(const std::string& prev_word, const std::string& tag,
                                    const std::string& word) const {
    if (!pairs_.count({word, tag})) throw InvalidPairing(word, tag);
    double bits = 0.0;

    auto bi = bi_.find({prev_word, tag});
    auto [hit, b] = wb_lookup(bi == bi_.end() ? nullptr : &bi->second, word);
    bits += b;
    if (hit) return bits;

    // Terminal unigram: complete thanks to the lexicon floor.
    const auto& row = uni_.at(tag);
    int total = 0;
    for (const auto& [w, c] : row) total += c;
    return bits - std::log2(static_cast<double>(row.at(word)) / total);
}

LevelDist WordBigramModel::bigram_dist(const std::string& prev_word,
                                       const std::string& tag) const {
    auto it = bi_.find({prev_word, tag});
    return it == bi_.end() ? LevelDist{} : witten_bell_level(it->second);
}

std::map<std::string, double> WordBigramModel::unigram_dist(const std::string& tag) const {
    std::map<std::string, double> dist;
    auto it = uni_.find(tag);
    if (it == uni_.end()) return dist;
    int total = 0;
    for (const auto& [w, c] : it->second) total += c;
    for (const auto& [w, c] : it->second)
        dist[w] = static_cast<double>(c) / total;
    return dist;
}

void WordBigramModel::set_counts(std::map<BiKey, std::map<std::string, int>> bi,
                                 std::map<std::string, std::map<std::string, int>> uni,
                                 std::set<std::pair<std::string, std::string>> pairs) {
    bi_ = std::move(bi);
    uni_ = std::move(uni);
    pairs_ = std::move(pairs);
}

void WordOnlyModel::init_floor(const Lexicon& lex) {
    for (const auto& [word, e] : lex.entries()) {
        uni_[word] += 1;
        vocab_.insert(word);
    }
}

void WordOnlyModel::observe(const std::string& prev_word, const std::string& word) {
    bi_[prev_word][word] += 1;
    uni_[word] += 1;
}

double WordOnlyModel::code_length(const std::string& prev_word,
                                  const std::string& word) const {
    if (!vocab_.count(word)) throw UnknownWord(word);
    double bits = 0.0;
    auto bi = bi_.find(prev_word);
    auto [hit, b] = wb_lookup(bi == bi_.end() ? nullptr : &bi->second, word);
    bits += b;
    if (hit) return bits;
    int total = 0;
    for (const auto& [w, c] : uni_) total += c;
    return bits - std::log2(static_cast<double>(uni_.at(word)) / total);
}

LevelDist WordOnlyModel::bigram_dist(const std::string& prev_word) const {
    auto it = bi_.find(prev_word);
    return it == bi_.end() ? LevelDist{} : witten_bell_level(it->second);
}

std::map<std::string, double> WordOnlyModel::unigram_dist() const {
    std::map<std::string, double> dist;
    int total = 0;
    for (const auto& [w, c] : uni_) total += c;
    for (const auto& [w, c] : uni_) dist[w] = static_cast<double>(c) / total;
    return dist;
}

void WordOnlyModel::set_counts(std::map<std::string, std::map<std::string, int>> bi,
                               std::map<std::string, int> uni, std::set<std::string> vocab) {
    bi_ = std::move(bi);
    uni_ = std::move(uni);
    vocab_ = std::move(vocab);
}

LanguageModel train_from_tagged_corpus(const TaggedCorpus& corpus, const Lexicon& lex) {
    LanguageModel lm;
    lm.pos.set_tagset(lex.tag_universe());
    lm.word.init_floor(lex);
    lm.word_only.init_floor(lex);
    for (const auto& sentence : corpus) {
        if (sentence.empty()) throw InvalidArgs("empty sentence in corpus");
        std::vector<std::string> tags;
        tags.reserve(sentence.size());
        for (const auto& [word, tag] : sentence) tags.push_back(tag);
        lm.pos.observe(tags);
        std::string prev = kEosWord;
        for (const auto& [word, tag] : sentence) {
            lm.word.observe(prev, word, tag);
            lm.word_only.observe(prev, word);
            prev = word;
        }
    }
    return lm;
}

std::vector<LmFactor> lm_factors(const TaggedSentence& sentence) {
    std::vector<LmFactor> factors;
    std::string prev_word = kEosWord, t1 = kEos1Tag, t2 = kEos2Tag;
    for (const auto& [word, tag] : sentence) {
        factors.push_back({word, tag, prev_word, t1, t2});
        prev_word = word;
        t2 = t1;
        t1 = tag;
    }
    return factors;
}

double pos_code_length(const PosTrigramModel& m, const std::string& t2,
                       const std::string& t1, const std::string& tag) {
    return m.code_length(t2, t1, tag);
}

double word_code_length(const WordBigramModel& m, const std::string& prev_word,
                        const std::string& tag, const std::string& word) {
    return m.code_length(prev_word, tag, word);
}

double sentence_lm_code_length(const LanguageModel& lm, const TaggedSentence& sentence) {
    if (sentence.empty()) throw InvalidArgs("empty sentence");
    double bits = 0.0;
    for (const auto& f : lm_factors(sentence)) {
        bits += lm.pos.code_length(f.prev2_tag, f.prev_tag, f.tag);
        bits += lm.word.code_length(f.prev_word, f.tag, f.word);
    }
    return bits;
}

double word_only_code_length(const WordOnlyModel& m, const std::vector<std::string>& words) {
    if (words.empty()) throw InvalidArgs("empty sentence");
    double bits = 0.0;
    std::string prev = kEosWord;
    for (const auto& w : words) {
        bits += m.code_length(prev, w);
        prev = w;
    }
    return bits;
}

TaggedCorpus load_tagged_corpus(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open tagged corpus: " + file.string());
    TaggedCorpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        TaggedSentence sentence;
        std::string tok;
        while (ss >> tok) {
            auto slash = tok.rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
                throw ParseError(line_no, "expected word/TAG, got '" + tok + "'");
            sentence.emplace_back(tok.substr(0, slash), tok.substr(slash + 1));
        }
        if (!sentence.empty()) corpus.push_back(std::move(sentence));
    }
    return corpus;
}

} // namespace lexmml
