#include <benchmark/benchmark.h>

#include "lexmml/search.hpp"
#include "lexmml/synth.hpp"

using namespace lexmml;

namespace {

// One mid-sized trained world shared by the decode benchmarks.
struct World {
    Models models;
    std::vector<PhonemeSeq> inputs;

    World() {
        models.inventory = PhonemeInventory(
            {"aa", "ae", "ah", "iy", "ih", "eh", "b", "d", "g", "k", "p", "t",
             "s", "sh", "z", "m", "n", "ng", "l", "r", "w"});
        std::map<std::string, std::string> g;
        for (const auto& v : {"aa", "ae", "ah", "iy", "ih", "eh"}) g[v] = "vowel";
        for (const auto& v : {"b", "d", "g", "k", "p", "t"}) g[v] = "stop";
        for (const auto& v : {"s", "sh", "z"}) g[v] = "fricative";
        for (const auto& v : {"m", "n", "ng"}) g[v] = "nasal";
        for (const auto& v : {"l", "r", "w"}) g[v] = "liquid-glide";
        models.groups = BroadGroupMap(g);

        RandomGrammarSpec gspec;
        gspec.words_per_tag = 40;
        gspec.min_word_len = 3;
        gspec.max_word_len = 6;
        gspec.seed = 21;
        Grammar grammar = random_grammar(gspec, models.inventory);

        DatasetSpec dspec;
        dspec.train_sentences = 150;
        dspec.test_sentences = 16;
        dspec.pronunciation_noise.p_sub = 0.05;
        dspec.recognition_noise_min = 0.05;
        dspec.recognition_noise_max = 0.15;
        dspec.seed = 22;
        Dataset ds = synthesize(grammar, models.inventory, dspec);

        models.lexicon = ds.lexicon;
        models.lm = train_from_tagged_corpus(ds.train, models.lexicon);
        SeqPairs pairs = realization_pairs(models.lexicon);
        models.costs = estimate_costs(pairs, models.inventory, models.groups, 3);
        models.confusion = estimate_confusions(pairs, models.costs, models.inventory);
        models.insertions =
            estimate_insertion_dist(realization_db(models.lexicon), models.costs, 23);
        models.classes = build_classes(models.lexicon, models.groups, 4, 16, 23);
        for (const auto& item : ds.test) inputs.push_back(item.input);
    }
};

World& world() {
    static World w;
    return w;
}

SearchConfig config(bool shortlist) {
    SearchConfig cfg;
    cfg.beam_bits = 8.0;
    cfg.max_beam = 8;
    cfg.slot_min_ph = 2;
    cfg.slot_max_ph = 12;
    cfg.shortlist_enabled = shortlist;
    return cfg;
}

void BM_decode_full_lexicon(benchmark::State& state) {
    World& w = world();
    SearchConfig cfg = config(false);
    std::size_t i = 0;
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(decode(w.inputs[i++ % w.inputs.size()], w.models, cfg));
        } catch (const NoHypothesis&) {
        }
    }
}
BENCHMARK(BM_decode_full_lexicon)->Unit(benchmark::kMillisecond);

void BM_decode_shortlist(benchmark::State& state) {
    World& w = world();
    SearchConfig cfg = config(true);
    std::size_t i = 0;
    for (auto _ : state) {
        try {
            benchmark::DoNotOptimize(decode(w.inputs[i++ % w.inputs.size()], w.models, cfg));
        } catch (const NoHypothesis&) {
        }
    }
}
BENCHMARK(BM_decode_shortlist)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
