#ifndef LEXMML_NGRAM_LM_HPP
#define LEXMML_NGRAM_LM_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexmml/lexicon.hpp"

namespace lexmml {

// Only the Witten-Bell escape rule is supported: a context with n
// observations and d distinct successors gives a seen symbol probability
// count/(n+d) and reserves d/(n+d) for the escape event. An empty context
// escapes for free.
enum class EscapeScheme { WittenBell };

using TaggedSentence = std::vector<std::pair<std::string, std::string>>; // (word, tag)
using TaggedCorpus = std::vector<TaggedSentence>;

// One back-off level of one context: probabilities of the seen symbols plus
// the escape event. They sum to 1 whenever anything was seen.
struct LevelDist {
    std::map<std::string, double> seen;
    double escape = 1.0; // 1 for an empty context: escaping is free
};

LevelDist witten_bell_level(const std::map<std::string, int>& counts);

// PoS trigram model with escape-coded back-off:
// trigram -> bigram -> unigram -> uniform over the tag set.
class PosTrigramModel {
public:
    void set_tagset(std::vector<std::string> tags);
    // Counts one sentence's tags, prefixed with the (eos2, eos1) boundary.
    void observe(const std::vector<std::string>& sentence_tags);

    // -log2 of the backed-off P(tag | t2, t1), escape hops included.
    double code_length(const std::string& t2, const std::string& t1,
                       const std::string& tag) const;

    LevelDist trigram_dist(const std::string& t2, const std::string& t1) const;
    LevelDist bigram_dist(const std::string& t1) const;
    LevelDist unigram_dist() const;

    const std::vector<std::string>& tagset() const { return tagset_; }
    bool in_tagset(const std::string& tag) const { return tagset_index_.count(tag) > 0; }

    using TriKey = std::pair<std::string, std::string>;
    const std::map<TriKey, std::map<std::string, int>>& trigram_counts() const { return tri_; }
    const std::map<std::string, std::map<std::string, int>>& bigram_counts() const { return bi_; }
    const std::map<std::string, int>& unigram_counts() const { return uni_; }

    void set_counts(std::map<TriKey, std::map<std::string, int>> tri,
                    std::map<std::string, std::map<std::string, int>> bi,
                    std::map<std::string, int> uni);

private:
    std::map<TriKey, std::map<std::string, int>> tri_;
    std::map<std::string, std::map<std::string, int>> bi_;
    std::map<std::string, int> uni_;
    std::vector<std::string> tagset_;
    std::set<std::string> tagset_index_;
};

// Word model conditioned on (previous word, tag) with one back-off level to
// a per-tag unigram. Every lexicon (word, tag) pair holds a floor count of
// one, so the unigram level is a complete distribution and needs no escape.
class WordBigramModel {
public:
    void init_floor(const Lexicon& lex);
    void observe(const std::string& prev_word, const std::string& word,
                 const std::string& tag);

    // -log2 P(word | tag, prev_word); throws InvalidPairing for non-lexicon
    // (word, tag) pairs.
    double code_length(const std::string& prev_word, const std::string& tag,
                       const std::string& word) const;

    LevelDist bigram_dist(const std::string& prev_word, const std::string& tag) const;
    // The terminal unigram P(word | tag): maximum likelihood over the
    // floored counts, no escape.
    std::map<std::string, double> unigram_dist(const std::string& tag) const;

    using BiKey = std::pair<std::string, std::string>; // (prev_word, tag)
    const std::map<BiKey, std::map<std::string, int>>& bigram_counts() const { return bi_; }
    const std::map<std::string, std::map<std::string, int>>& unigram_counts() const { return uni_; }
    const std::set<std::pair<std::string, std::string>>& lexicon_pairs() const { return pairs_; }

    void set_counts(std::map<BiKey, std::map<std::string, int>> bi,
                    std::map<std::string, std::map<std::string, int>> uni,
                    std::set<std::pair<std::string, std::string>> pairs);

private:
    std::map<BiKey, std::map<std::string, int>> bi_;
    std::map<std::string, std::map<std::string, int>> uni_; // tag -> word -> count
    std::set<std::pair<std::string, std::string>> pairs_;   // valid (word, tag)
};

// Ablation model: word bigrams only, no part-of-speech information.
class WordOnlyModel {
public:
    void init_floor(const Lexicon& lex);
    void observe(const std::string& prev_word, const std::string& word);
    double code_length(const std::string& prev_word, const std::string& word) const;

    LevelDist bigram_dist(const std::string& prev_word) const;
    std::map<std::string, double> unigram_dist() const;

    const std::map<std::string, std::map<std::string, int>>& bigram_counts() const { return bi_; }
    const std::map<std::string, int>& unigram_counts() const { return uni_; }
    const std::set<std::string>& vocabulary() const { return vocab_; }

    void set_counts(std::map<std::string, std::map<std::string, int>> bi,
                    std::map<std::string, int> uni, std::set<std::string> vocab);

private:
    std::map<std::string, std::map<std::string, int>> bi_;
    std::map<std::string, int> uni_;
    std::set<std::string> vocab_;
};

struct LanguageModel {
    PosTrigramModel pos;
    WordBigramModel word;
    WordOnlyModel word_only;
};

// Trains all three tables. The tag set is the lexicon's tag universe;
// corpus tags outside it raise UnknownTag.
LanguageModel train_from_tagged_corpus(const TaggedCorpus& corpus, const Lexicon& lex);

// One factored term of the sentence code. The word is predicted from
// (tag, prev_word), the tag from the two previous tags.
struct LmFactor {
    std::string word;
    std::string tag;
    std::string prev_word;
    std::string prev_tag;   // t_{i-1}
    std::string prev2_tag;  // t_{i-2}
};

std::vector<LmFactor> lm_factors(const TaggedSentence& sentence);

double pos_code_length(const PosTrigramModel& m, const std::string& t2,
                       const std::string& t1, const std::string& tag);
double word_code_length(const WordBigramModel& m, const std::string& prev_word,
                        const std::string& tag, const std::string& word);
double sentence_lm_code_length(const LanguageModel& lm, const TaggedSentence& sentence);
double word_only_code_length(const WordOnlyModel& m, const std::vector<std::string>& words);

// Tagged corpus file: one sentence per line, tokens of the form word/TAG.
TaggedCorpus load_tagged_corpus(const std::filesystem::path& file);

} // namespace lexmml

#endif
