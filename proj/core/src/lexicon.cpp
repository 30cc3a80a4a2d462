#include "lexmml/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace lexmml {

int LexEntry::total_freq() const {
    int sum = 0;
    for (const auto& r : realizations) sum += r.freq;
    return sum;
}

bool LexEntry::has_tag(const std::string& tag) const {
    return std::find(pos_tags.begin(), pos_tags.end(), tag) != pos_tags.end();
}

void validate_entry(const LexEntry& entry) {
    if (entry.word.empty() || entry.pos_tags.empty() || entry.canonical.empty())
        throw EmptyEntry(entry.word);
    if (entry.word == kEosWord)
        throw InvalidArgs("word 'eos' is reserved");
    for (const auto& t : entry.pos_tags)
        if (t == kEos1Tag || t == kEos2Tag)
            throw InvalidArgs("tags eos1/eos2 are reserved (word '" + entry.word + "')");
    for (std::size_t i = 0; i < entry.realizations.size(); ++i) {
        if (entry.realizations[i].phonemes.empty() || entry.realizations[i].freq < 1)
            throw InvalidArgs("bad realization for word '" + entry.word + "'");
        for (std::size_t j = i + 1; j < entry.realizations.size(); ++j)
            if (entry.realizations[i].phonemes == entry.realizations[j].phonemes)
                throw DuplicateRealization(entry.word);
    }
}

void Lexicon::add_entry(const std::string& word, std::vector<std::string> tags,
                        PhonemeSeq canonical) {
    if (entries_.count(word))
        throw InvalidArgs("word '" + word + "' already defined");
    LexEntry e;
    e.word = word;
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    e.pos_tags = std::move(tags);
    e.canonical = std::move(canonical);
    validate_entry(e);
    entries_.emplace(word, std::move(e));
}

void Lexicon::add_realization(const std::string& word, const PhonemeSeq& seq, int count) {
    auto it = entries_.find(word);
    if (it == entries_.end()) throw UnknownWord(word);
    if (seq.empty() || count < 1) throw InvalidArgs("bad realization for '" + word + "'");
    LexEntry& e = it->second;
    // A lone canonical seed gives way to the first real observation.
    if (e.realizations.size() == 1 && e.realizations[0].seeded)
        e.realizations.clear();
    for (auto& r : e.realizations) {
        if (r.phonemes == seq) {
            r.freq += count;
            return;
        }
    }
    e.realizations.push_back(Realization{seq, count, false});
}

void Lexicon::seed_canonical_realizations() {
    for (auto& [word, e] : entries_)
        if (e.realizations.empty())
            e.realizations.push_back(Realization{e.canonical, 1, true});
}

const LexEntry& Lexicon::at(const std::string& word) const {
    auto it = entries_.find(word);
    if (it == entries_.end()) throw UnknownWord(word);
    return it->second;
}

bool Lexicon::is_valid_pairing(const std::string& word, const std::string& tag) const {
    auto it = entries_.find(word);
    return it != entries_.end() && it->second.has_tag(tag);
}

std::vector<std::string> Lexicon::words_by_length(int min_ph, int max_ph) const {
    if (min_ph <= 0 || min_ph > max_ph)
        throw InvalidArgs("words_by_length: need 0 < min_ph <= max_ph");
    std::vector<std::string> out;
    for (const auto& [word, e] : entries_) {
        for (const auto& r : e.realizations) {
            int n = static_cast<int>(r.phonemes.size());
            if (n >= min_ph && n <= max_ph) {
                out.push_back(word);
                break;
            }
        }
    }
    return out;
}

std::vector<std::string> Lexicon::tag_universe() const {
    std::vector<std::string> tags;
    for (const auto& [word, e] : entries_)
        tags.insert(tags.end(), e.pos_tags.begin(), e.pos_tags.end());
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return tags;
}

int Lexicon::total_realizations() const {
    int n = 0;
    for (const auto& [word, e] : entries_) n += static_cast<int>(e.realizations.size());
    return n;
}

namespace {

// Splits "a,b,c" into sorted unique tags.
std::vector<std::string> parse_tags(const std::string& field) {
    std::vector<std::string> tags;
    std::string cur;
    std::istringstream ss(field);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) tags.push_back(cur);
    return tags;
}

} // namespace

Lexicon Lexicon::load(const std::filesystem::path& file, const PhonemeInventory& inv) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open lexicon file: " + file.string());
    Lexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Skip blanks.
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto gt = line.find('>');
        auto bar = line.find('|');
        if (bar != std::string::npos && (gt == std::string::npos || bar < gt)) {
            // Entry line: word|tags|phonemes
            auto bar2 = line.find('|', bar + 1);
            if (bar2 == std::string::npos)
                throw ParseError(line_no, "expected 'word|tags|phonemes'");
            std::string word = line.substr(0, bar);
            std::string tags = line.substr(bar + 1, bar2 - bar - 1);
            std::string phon = line.substr(bar2 + 1);
            if (word.empty()) throw ParseError(line_no, "empty word");
            try {
                lex.add_entry(word, parse_tags(tags), parse_phoneme_seq(phon, inv));
            } catch (const InvalidArgs& e) {
                throw ParseError(line_no, e.what());
            } catch (const UnknownPhoneme& e) {
                throw ParseError(line_no, e.what());
            } catch (const EmptyEntry&) {
                throw EmptyEntry(word);
            }
        } else if (gt != std::string::npos) {
            // Realization line: word> ph ph ph [count]
            std::string word = line.substr(0, gt);
            std::vector<std::string> toks = split_symbols(line.substr(gt + 1));
            if (word.empty() || toks.empty())
                throw ParseError(line_no, "expected 'word> ph ph ph [count]'");
            int count = 1;
            const std::string& last = toks.back();
            if (!last.empty() &&
                last.find_first_not_of("0123456789") == std::string::npos) {
                count = std::stoi(last);
                toks.pop_back();
                if (toks.empty()) throw ParseError(line_no, "realization has no phonemes");
            }
            for (std::size_t i = 0; i < toks.size(); ++i)
                if (!inv.contains(toks[i]))
                    throw ParseError(line_no, "unknown phoneme '" + toks[i] + "'");
            try {
                lex.add_realization(word, toks, count);
            } catch (const Error& e) {
                throw ParseError(line_no, e.what());
            }
        } else {
            throw ParseError(line_no, "unrecognized line");
        }
    }
    lex.seed_canonical_realizations();
    return lex;
}

std::string Lexicon::to_text() const {
    std::ostringstream out;
    for (const auto& [word, e] : entries_) {
        out << word << '|';
        for (std::size_t i = 0; i < e.pos_tags.size(); ++i) {
            if (i) out << ',';
            out << e.pos_tags[i];
        }
        out << '|' << join_symbols(e.canonical) << '\n';
        for (const auto& r : e.realizations)
            if (!r.seeded)
                out << word << "> " << join_symbols(r.phonemes) << ' ' << r.freq << '\n';
    }
    return out.str();
}

void Lexicon::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write lexicon file: " + file.string());
    out << to_text();
}

void load_realization_corpus(Lexicon& lex, const std::filesystem::path& file,
                             const PhonemeInventory& inv) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open realization corpus: " + file.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto gt = line.find('>');
        if (gt == std::string::npos)
            throw ParseError(line_no, "expected 'word> ph ph ph [count]'");
        std::string word = line.substr(0, gt);
        std::vector<std::string> toks = split_symbols(line.substr(gt + 1));
        if (word.empty() || toks.empty())
            throw ParseError(line_no, "expected 'word> ph ph ph [count]'");
        int count = 1;
        if (toks.back().find_first_not_of("0123456789") == std::string::npos) {
            count = std::stoi(toks.back());
            toks.pop_back();
            if (toks.empty()) throw ParseError(line_no, "realization has no phonemes");
        }
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (!inv.contains(toks[i])) throw ParseError(line_no, "unknown phoneme '" + toks[i] + "'");
        lex.add_realization(word, toks, count);
    }
}

std::vector<std::pair<PhonemeSeq, PhonemeSeq>> realization_pairs(const Lexicon& lex) {
    std::vector<std::pair<PhonemeSeq, PhonemeSeq>> pairs;
    for (const auto& [word, e] : lex.entries())
        for (const auto& r : e.realizations)
            if (!r.seeded)
                for (int k = 0; k < r.freq; ++k)
                    pairs.emplace_back(e.canonical, r.phonemes);
    return pairs;
}

std::map<std::string, std::vector<PhonemeSeq>> realization_db(const Lexicon& lex) {
    std::map<std::string, std::vector<PhonemeSeq>> db;
    for (const auto& [word, e] : lex.entries())
        for (const auto& r : e.realizations)
            if (!r.seeded)
                for (int k = 0; k < r.freq; ++k)
                    db[word].push_back(r.phonemes);
    return db;
}

} // namespace lexmml
