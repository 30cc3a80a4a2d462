#include "lexmml/synth.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace lexmml {

std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over the pair
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CorruptResult corrupt(const PhonemeSeq& seq, const CorruptionSpec& spec,
                      const PhonemeInventory& inv) {
    if (spec.p_sub < 0 || spec.p_del < 0 || spec.p_ins < 0 ||
        spec.p_sub + spec.p_del > 1.0 || spec.p_ins > 1.0)
        throw InvalidArgs("corrupt: bad rates");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);

    auto random_symbol = [&](const std::string& not_this) {
        for (;;) {
            const std::string& s = inv.symbols()[pick(rng)];
            if (s != not_this || inv.size() == 1) return s;
        }
    };
    auto substitute_for = [&](const std::string& sym) {
        auto it = spec.confusion_bias.find(sym);
        if (it != spec.confusion_bias.end() && !it->second.empty()) {
            std::uniform_int_distribution<std::size_t> b(0, it->second.size() - 1);
            return it->second[b(rng)];
        }
        return random_symbol(sym);
    };

    CorruptResult out;
    for (const auto& sym : seq) {
        double roll = u(rng);
        if (roll < spec.p_del) {
            out.del += 1;
            continue;
        }
        if (roll < spec.p_del + spec.p_sub) {
            out.seq.push_back(substitute_for(sym));
            out.sub += 1;
        } else {
            out.seq.push_back(sym);
        }
    }
    // One insertion chance per gap, ends included.
    PhonemeSeq with_ins;
    for (std::size_t g = 0; g <= out.seq.size(); ++g) {
        if (u(rng) < spec.p_ins) {
            with_ins.push_back(inv.symbols()[pick(rng)]);
            out.ins += 1;
        }
        if (g < out.seq.size()) with_ins.push_back(out.seq[g]);
    }
    out.seq = std::move(with_ins);
    return out;
}

Grammar load_grammar(const std::filesystem::path& file, const PhonemeInventory& inv) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open grammar file: " + file.string());
    Grammar g;
    std::string line;
    std::size_t line_no = 0;
    std::string current_tag;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head)) continue;
        if (head == "template") {
            std::vector<std::string> tags;
            std::string t;
            while (ss >> t) tags.push_back(t);
            if (tags.empty()) throw ParseError(line_no, "template with no tags");
            g.templates.push_back(std::move(tags));
        } else if (head == "tag") {
            if (!(ss >> current_tag)) throw ParseError(line_no, "tag block with no name");
            g.words_by_tag[current_tag];
        } else {
            if (current_tag.empty())
                throw ParseError(line_no, "word line before any tag block");
            PhonemeSeq seq;
            std::string ph;
            while (ss >> ph) {
                if (!inv.contains(ph))
                    throw ParseError(line_no, "unknown phoneme '" + ph + "'");
                seq.push_back(ph);
            }
            if (seq.empty()) throw ParseError(line_no, "word with no pronunciation");
            g.words_by_tag[current_tag].emplace_back(head, std::move(seq));
        }
    }
    if (g.templates.empty()) throw InvalidArgs("grammar has no templates");
    return g;
}

Lexicon lexicon_from_grammar(const Grammar& grammar) {
    // A word may appear under several tags, possibly with one pronunciation.
    std::map<std::string, std::pair<std::vector<std::string>, PhonemeSeq>> merged;
    for (const auto& [tag, words] : grammar.words_by_tag) {
        for (const auto& [word, seq] : words) {
            auto& slot = merged[word];
            slot.first.push_back(tag);
            if (slot.second.empty()) slot.second = seq;
        }
    }
    Lexicon lex;
    for (auto& [word, slot] : merged)
        lex.add_entry(word, std::move(slot.first), std::move(slot.second));
    lex.seed_canonical_realizations();
    return lex;
}

TaggedCorpus generate_sentences(const Grammar& grammar, int n, std::uint64_t seed) {
    if (grammar.templates.empty()) throw InvalidArgs("grammar has no templates");
    TaggedCorpus corpus;
    corpus.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::mt19937_64 rng(seed_mix(seed, static_cast<std::uint64_t>(i)));
        std::uniform_int_distribution<std::size_t> tpl(0, grammar.templates.size() - 1);
        const auto& tags = grammar.templates[tpl(rng)];
        TaggedSentence sentence;
        for (const auto& tag : tags) {
            auto it = grammar.words_by_tag.find(tag);
            if (it == grammar.words_by_tag.end() || it->second.empty())
                throw InvalidArgs("template tag '" + tag + "' has no words");
            std::uniform_int_distribution<std::size_t> w(0, it->second.size() - 1);
            sentence.emplace_back(it->second[w(rng)].first, tag);
        }
        corpus.push_back(std::move(sentence));
    }
    return corpus;
}

Grammar random_grammar(const RandomGrammarSpec& spec, const PhonemeInventory& inv) {
    if (spec.tags.empty() || spec.words_per_tag < 1)
        throw InvalidArgs("random_grammar: bad spec");
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<int> len(spec.min_word_len, spec.max_word_len);
    std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);

    Grammar g;
    std::set<PhonemeSeq> used;
    int serial = 0;
    for (const auto& tag : spec.tags) {
        for (int i = 0; i < spec.words_per_tag; ++i) {
            PhonemeSeq seq;
            do {
                seq.clear();
                int m = len(rng);
                for (int k = 0; k < m; ++k) seq.push_back(inv.symbols()[pick(rng)]);
            } while (!used.insert(seq).second);
            g.words_by_tag[tag].emplace_back(tag + std::to_string(serial++), seq);
        }
    }
    std::uniform_int_distribution<int> tlen(spec.min_template_len, spec.max_template_len);
    std::uniform_int_distribution<std::size_t> tpick(0, spec.tags.size() - 1);
    for (int t = 0; t < spec.n_templates; ++t) {
        std::vector<std::string> tpl;
        int m = tlen(rng);
        for (int k = 0; k < m; ++k) tpl.push_back(spec.tags[tpick(rng)]);
        g.templates.push_back(std::move(tpl));
    }
    return g;
}

Dataset synthesize(const Grammar& grammar, const PhonemeInventory& inv,
                   const DatasetSpec& spec) {
    Dataset ds;
    ds.lexicon = lexicon_from_grammar(grammar);
    ds.train = generate_sentences(grammar, spec.train_sentences, seed_mix(spec.seed, 1));

    // Realization corpus: every training occurrence contributes one observed
    // pronunciation of its word, canonical form passed through the
    // pronunciation noise.
    std::uint64_t item = 0;
    for (const auto& sentence : ds.train) {
        for (const auto& [word, tag] : sentence) {
            CorruptionSpec noise = spec.pronunciation_noise;
            noise.seed = seed_mix(spec.seed, 1000003 + item++);
            CorruptResult r = corrupt(ds.lexicon.at(word).canonical, noise, inv);
            if (r.seq.empty()) r.seq = ds.lexicon.at(word).canonical;
            ds.lexicon.add_realization(word, r.seq);
        }
    }

    TaggedCorpus raw_test =
        generate_sentences(grammar, spec.test_sentences, seed_mix(spec.seed, 2));
    std::uint64_t titem = 0;
    for (std::size_t s = 0; s < raw_test.size(); ++s) {
        double frac = raw_test.size() > 1
                          ? static_cast<double>(s) / static_cast<double>(raw_test.size() - 1)
                          : 0.0;
        double rate = spec.recognition_noise_min +
                      frac * (spec.recognition_noise_max - spec.recognition_noise_min);
        TestItem itemrec;
        for (const auto& [word, tag] : raw_test[s]) {
            const LexEntry& entry = ds.lexicon.at(word);
            // Frequency-weighted realization choice, then recognition noise.
            std::mt19937_64 rng(seed_mix(spec.seed, 2000003 + titem));
            int total = entry.total_freq();
            std::uniform_int_distribution<int> pickf(1, total);
            int roll = pickf(rng);
            const Realization* chosen = &entry.realizations.front();
            for (const auto& r : entry.realizations) {
                roll -= r.freq;
                if (roll <= 0) { chosen = &r; break; }
            }
            CorruptionSpec noise;
            noise.p_sub = 0.6 * rate;
            noise.p_del = 0.2 * rate;
            noise.p_ins = 0.2 * rate;
            noise.seed = seed_mix(spec.seed, 3000017 + titem);
            ++titem;
            CorruptResult r = corrupt(chosen->phonemes, noise, inv);
            if (r.seq.empty()) r.seq = chosen->phonemes;
            itemrec.ref_words.push_back(word);
            itemrec.ref_tags.push_back(tag);
            itemrec.ref_lens.push_back(static_cast<int>(r.seq.size()));
            itemrec.input.insert(itemrec.input.end(), r.seq.begin(), r.seq.end());
        }
        ds.test.push_back(std::move(itemrec));
    }
    return ds;
}

} // namespace lexmml
