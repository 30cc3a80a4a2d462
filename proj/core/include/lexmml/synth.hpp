#ifndef LEXMML_SYNTH_HPP
#define LEXMML_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lexmml/lexicon.hpp"
#include "lexmml/ngram_lm.hpp"

namespace lexmml {

// Per-phoneme corruption rates. Deletion and substitution are drawn per
// position (p_sub + p_del must stay <= 1); insertions per gap.
struct CorruptionSpec {
    double p_sub = 0.0;
    double p_del = 0.0;
    double p_ins = 0.0;
    // Optional steering: replacement candidates per substituted symbol.
    std::map<std::string, std::vector<std::string>> confusion_bias;
    std::uint64_t seed = 1;
};

struct CorruptResult {
    PhonemeSeq seq;
    int ins = 0;
    int del = 0;
    int sub = 0;
};

CorruptResult corrupt(const PhonemeSeq& seq, const CorruptionSpec& spec,
                      const PhonemeInventory& inv);

// Sentence templates over tags plus a pronouncing word list per tag.
struct Grammar {
    std::vector<std::vector<std::string>> templates;
    std::map<std::string, std::vector<std::pair<std::string, PhonemeSeq>>> words_by_tag;
};

// Grammar file: `template TAG TAG ...` lines, then `tag TAG` blocks whose
// following lines are `word ph ph ...`.
Grammar load_grammar(const std::filesystem::path& file, const PhonemeInventory& inv);

Lexicon lexicon_from_grammar(const Grammar& grammar);

// n sentences drawn template-first, then one word per slot, uniformly.
// Deterministic given the seed; sentence i depends only on (seed, i).
TaggedCorpus generate_sentences(const Grammar& grammar, int n, std::uint64_t seed);

// Randomly built grammar for larger-scale runs.
struct RandomGrammarSpec {
    std::vector<std::string> tags = {"dt", "jj", "nn", "vb", "in"};
    int words_per_tag = 10;
    int min_word_len = 2;
    int max_word_len = 5;
    int n_templates = 4;
    int min_template_len = 3;
    int max_template_len = 6;
    std::uint64_t seed = 1;
};

Grammar random_grammar(const RandomGrammarSpec& spec, const PhonemeInventory& inv);

// A complete synthetic experiment: lexicon with realizations observed under
// pronunciation noise, a tagged training corpus, and corrupted test inputs
// with known words and boundaries.
struct DatasetSpec {
    int train_sentences = 200;
    int test_sentences = 100;
    CorruptionSpec pronunciation_noise;
    // Recognition noise ramps linearly over the test set between these two
    // total per-phoneme rates (split 60% substitution, 20% del, 20% ins).
    double recognition_noise_min = 0.0;
    double recognition_noise_max = 0.3;
    std::uint64_t seed = 1;
};

struct TestItem {
    PhonemeSeq input;
    std::vector<std::string> ref_words;
    std::vector<std::string> ref_tags;
    std::vector<int> ref_lens;
};

struct Dataset {
    Lexicon lexicon;
    TaggedCorpus train;
    std::vector<TestItem> test;
};

Dataset synthesize(const Grammar& grammar, const PhonemeInventory& inv,
                   const DatasetSpec& spec);

// Deterministic stream splitting for per-item generators.
std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t index);

} // namespace lexmml

#endif
