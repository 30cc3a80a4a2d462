#ifndef LEXMML_LEXICON_HPP
#define LEXMML_LEXICON_HPP

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lexmml/phoneme.hpp"

namespace lexmml {

// Reserved sentence-boundary symbols. No lexicon word or tag may use them.
inline constexpr const char* kEosWord = "eos";
inline constexpr const char* kEos1Tag = "eos1";
inline constexpr const char* kEos2Tag = "eos2";

// One pronunciation of a word together with its training frequency.
// Seeded realizations are canonical pronunciations injected so that a word
// with no training observations stays decodable; they are dropped as soon
// as real observations arrive and are not serialized.
struct Realization {
    PhonemeSeq phonemes;
    int freq = 1;
    bool seeded = false;
};

struct LexEntry {
    std::string word;
    std::vector<std::string> pos_tags;      // sorted, unique, non-empty
    std::vector<Realization> realizations;  // pairwise distinct sequences
    PhonemeSeq canonical;

    int total_freq() const;
    bool has_tag(const std::string& tag) const;
};

// Throws EmptyEntry / DuplicateRealization / InvalidArgs on violated invariants.
void validate_entry(const LexEntry& entry);

class Lexicon {
public:
    // File format, line oriented:
    //   word|tag1,tag2|ph ph ph       entry with canonical pronunciation
    //   word> ph ph ph [count]        observed realization (count defaults to 1)
    // Entries with no realization lines are seeded with their canonical form.
    static Lexicon load(const std::filesystem::path& file, const PhonemeInventory& inv);
    void save(const std::filesystem::path& file) const;
    std::string to_text() const;

    void add_entry(const std::string& word, std::vector<std::string> tags,
                   PhonemeSeq canonical);
    // Increments the frequency of an existing realization or appends a new
    // one with frequency `count`. Throws UnknownWord.
    void add_realization(const std::string& word, const PhonemeSeq& seq, int count = 1);
    // Gives every entry without observed realizations its canonical form.
    void seed_canonical_realizations();

    bool has(const std::string& word) const { return entries_.count(word) > 0; }
    const LexEntry& at(const std::string& word) const;  // throws UnknownWord
    bool is_valid_pairing(const std::string& word, const std::string& tag) const;

    // Words having at least one realization with length in [min_ph, max_ph].
    std::vector<std::string> words_by_length(int min_ph, int max_ph) const;

    const std::map<std::string, LexEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    // Sorted distinct tags over all entries.
    std::vector<std::string> tag_universe() const;
    int total_realizations() const;

private:
    std::map<std::string, LexEntry> entries_;
};

// Reads a realization corpus (lines of `word> ph ph ph [count]`) into `lex`.
void load_realization_corpus(Lexicon& lex, const std::filesystem::path& file,
                             const PhonemeInventory& inv);

// Training pairs (canonical, observed realization) expanded by frequency.
// Seeded realizations are skipped: they are not observations.
std::vector<std::pair<PhonemeSeq, PhonemeSeq>> realization_pairs(const Lexicon& lex);

// Realization instances per word, expanded by frequency, seeds skipped.
std::map<std::string, std::vector<PhonemeSeq>> realization_db(const Lexicon& lex);

} // namespace lexmml

#endif
