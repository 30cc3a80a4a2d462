// Command-line front end: train | decode | eval | classes | synth.
//
// Exit codes: 0 success, 1 decode produced no hypothesis for some line,
// 2 usage / IO / validation failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "lexmml/codec.hpp"
#include "lexmml/eval.hpp"
#include "lexmml/search.hpp"
#include "lexmml/serialize.hpp"
#include "lexmml/synth.hpp"

namespace fs = std::filesystem;
using namespace lexmml;

namespace {

struct Config {
    fs::path inventory;
    fs::path broad_groups;
    fs::path lexicon;
    fs::path tagged_corpus;
    fs::path realization_corpus;
    fs::path model_dir = "models";

    SearchConfig search;
    std::string escape = "witten_bell";
    std::uint64_t seed = 1;
    int class_k_min = 1;
    int class_k_max = 40;

    double synth_pron_noise = 0.08;
    double synth_noise_min = 0.0;
    double synth_noise_max = 0.3;
    int synth_train_sentences = 200;
    int synth_test_sentences = 100;
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

Config load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open config file: " + file.string());
    Config cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw UsageError(file.string() + ":" + std::to_string(line_no) +
                                 ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "inventory") cfg.inventory = val;
            else if (key == "broad_groups") cfg.broad_groups = val;
            else if (key == "lexicon") cfg.lexicon = val;
            else if (key == "tagged_corpus") cfg.tagged_corpus = val;
            else if (key == "realization_corpus") cfg.realization_corpus = val;
            else if (key == "model_dir") cfg.model_dir = val;
            else if (key == "beam_bits") cfg.search.beam_bits = std::stod(val);
            else if (key == "max_beam") cfg.search.max_beam = std::stoul(val);
            else if (key == "slot_min_ph") cfg.search.slot_min_ph = std::stoi(val);
            else if (key == "slot_max_ph") cfg.search.slot_max_ph = std::stoi(val);
            else if (key == "slot_ratio") cfg.search.slot_ratio = std::stod(val);
            else if (key == "shortlist") cfg.search.shortlist_enabled = (val == "true" || val == "1");
            else if (key == "top_k") cfg.search.top_k = std::stoul(val);
            else if (key == "oracle_cap") cfg.search.oracle_cap = std::stoi(val);
            else if (key == "escape") cfg.escape = val;
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "class_k_min") cfg.class_k_min = std::stoi(val);
            else if (key == "class_k_max") cfg.class_k_max = std::stoi(val);
            else if (key == "synth_pron_noise") cfg.synth_pron_noise = std::stod(val);
            else if (key == "synth_noise_min") cfg.synth_noise_min = std::stod(val);
            else if (key == "synth_noise_max") cfg.synth_noise_max = std::stod(val);
            else if (key == "synth_train_sentences") cfg.synth_train_sentences = std::stoi(val);
            else if (key == "synth_test_sentences") cfg.synth_test_sentences = std::stoi(val);
            else throw UsageError(file.string() + ":" + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw UsageError(file.string() + ":" + std::to_string(line_no) +
                             ": bad value for '" + key + "'");
        }
    }
    return cfg;
}

void validate_config(const Config& cfg) {
    if (cfg.escape != "witten_bell")
        throw UsageError("unsupported escape scheme '" + cfg.escape + "'");
    if (cfg.search.beam_bits <= 0) throw UsageError("beam_bits must be positive");
    if (cfg.search.max_beam < 1) throw UsageError("max_beam must be at least 1");
    if (cfg.search.slot_min_ph < 1 || cfg.search.slot_max_ph < cfg.search.slot_min_ph)
        throw UsageError("need 1 <= slot_min_ph <= slot_max_ph");
    if (cfg.search.slot_ratio < 1.0) throw UsageError("slot_ratio must be >= 1");
    if (cfg.search.top_k < 1) throw UsageError("top_k must be at least 1");
    if (cfg.class_k_min < 1 || cfg.class_k_max < cfg.class_k_min)
        throw UsageError("need 1 <= class_k_min <= class_k_max");
}

Models load_static_inputs(const Config& cfg) {
    Models m;
    m.inventory = PhonemeInventory::load(cfg.inventory);
    m.groups = BroadGroupMap::load(cfg.broad_groups);
    if (!m.groups.covers(m.inventory))
        throw UsageError("broad-group map does not cover the inventory");
    m.lexicon = Lexicon::load(cfg.lexicon, m.inventory);
    return m;
}

std::string fnum(double x, int prec = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, x);
    return buf;
}

std::vector<std::string> read_nonblank_lines(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open file: " + file.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    return lines;
}

int cmd_train(const Config& cfg) {
    Models m = load_static_inputs(cfg);
    if (!cfg.realization_corpus.empty())
        load_realization_corpus(m.lexicon, cfg.realization_corpus, m.inventory);
    TaggedCorpus corpus = load_tagged_corpus(cfg.tagged_corpus);
    m.lm = train_from_tagged_corpus(corpus, m.lexicon);

    SeqPairs pairs = realization_pairs(m.lexicon);
    if (pairs.empty()) {
        // Nothing observed: fall back to identity pairs over the canonicals
        // so matches dominate the confusion table.
        for (const auto& [word, e] : m.lexicon.entries())
            pairs.emplace_back(e.canonical, e.canonical);
        m.costs = class_cost_model(m.inventory, m.groups);
    } else {
        m.costs = estimate_costs(pairs, m.inventory, m.groups);
    }
    m.confusion = estimate_confusions(pairs, m.costs, m.inventory);
    try {
        m.insertions = estimate_insertion_dist(realization_db(m.lexicon), m.costs, cfg.seed);
    } catch (const InsufficientData&) {
        m.insertions = InsertionCountDist::default_dist();
    }
    m.classes = build_classes(m.lexicon, m.groups, cfg.class_k_min, cfg.class_k_max,
                              cfg.seed);
    save_trained(m, cfg.model_dir);

    std::cout << "vocabulary: " << m.lexicon.size() << " words\n";
    std::cout << "realizations: " << m.lexicon.total_realizations() << '\n';
    std::cout << "classes: " << m.classes.size() << '\n';
    std::cout << "model dir: " << cfg.model_dir.string() << '\n';
    return 0;
}

int cmd_decode(const Config& cfg, const fs::path& input_file, bool breakdown,
               const fs::path& hyp_out) {
    Models m = load_static_inputs(cfg);
    load_trained(m, cfg.model_dir);

    std::vector<std::string> lines = read_nonblank_lines(input_file);
    std::ofstream hyp;
    if (!hyp_out.empty()) {
        hyp.open(hyp_out);
        if (!hyp) throw UsageError("cannot write hyp file: " + hyp_out.string());
    }

    bool any_failed = false;
    bool any_invalid = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        PhonemeSeq input;
        try {
            input = parse_phoneme_seq(lines[i], m.inventory);
        } catch (const UnknownPhoneme& e) {
            std::cerr << "line " << (i + 1) << ": " << e.what() << '\n';
            std::cout << "*** invalid input ***\n";
            if (hyp.is_open()) hyp << " | 0\n";
            any_invalid = true;
            continue;
        }
        try {
            auto hyps = decode(input, m, cfg.search);
            for (std::size_t k = 0; k < std::min(cfg.search.top_k, hyps.size()); ++k) {
                const SentenceHyp& h = hyps[k];
                std::string words;
                for (std::size_t w = 0; w < h.words.size(); ++w) {
                    if (w) words += ' ';
                    words += h.words[w].word;
                }
                double bpp = bits_per_phoneme(h, input.size());
                if (k == 0) {
                    std::cout << words << " | " << fnum(h.total_bits) << " | "
                              << fnum(bpp) << '\n';
                    if (hyp.is_open()) hyp << words << " | " << fnum(h.total_bits) << '\n';
                } else {
                    std::cout << "  #" << (k + 1) << ' ' << words << " | "
                              << fnum(h.total_bits) << " | " << fnum(bpp) << '\n';
                }
                if (breakdown && k == 0) std::cout << format_breakdown(h);
            }
        } catch (const NoHypothesis&) {
            std::cout << "*** no hypothesis ***\n";
            if (hyp.is_open()) hyp << " | 0\n";
            any_failed = true;
        }
    }
    if (any_invalid) return 2;
    return any_failed ? 1 : 0;
}

struct RefLine {
    std::vector<std::string> words;
    std::vector<int> lens;
};

RefLine parse_ref_line(const std::string& line, std::size_t line_no) {
    auto bar = line.find('|');
    if (bar == std::string::npos)
        throw ParseError(line_no, "reference line needs 'words | lengths'");
    RefLine r;
    r.words = split_symbols(line.substr(0, bar));
    for (const auto& tok : split_symbols(line.substr(bar + 1))) {
        try {
            r.lens.push_back(std::stoi(tok));
        } catch (const std::invalid_argument&) {
            throw ParseError(line_no, "bad segment length '" + tok + "'");
        }
    }
    if (r.words.empty() || r.words.size() != r.lens.size())
        throw ParseError(line_no, "word count and length count differ");
    return r;
}

std::pair<std::vector<std::string>, double> parse_hyp_line(const std::string& line) {
    auto bar = line.find('|');
    std::vector<std::string> words =
        split_symbols(bar == std::string::npos ? line : line.substr(0, bar));
    double bits = 0.0;
    if (bar != std::string::npos) {
        auto rest = split_symbols(line.substr(bar + 1));
        if (!rest.empty()) bits = std::stod(rest.front());
    }
    return {std::move(words), bits};
}

int cmd_eval(const Config& cfg, const fs::path& hyp_file, const fs::path& ref_file,
             const fs::path& input_file, const fs::path& hyp2_file,
             const fs::path& out_dir) {
    Models m = load_static_inputs(cfg);

    auto hyp_lines = read_nonblank_lines(hyp_file);
    auto ref_lines = read_nonblank_lines(ref_file);
    auto input_lines = read_nonblank_lines(input_file);
    if (hyp_lines.size() != ref_lines.size() || ref_lines.size() != input_lines.size())
        throw LineCountMismatch("hyp/ref/input line counts differ: " +
                                std::to_string(hyp_lines.size()) + "/" +
                                std::to_string(ref_lines.size()) + "/" +
                                std::to_string(input_lines.size()));
    std::vector<std::string> hyp2_lines;
    if (!hyp2_file.empty()) {
        hyp2_lines = read_nonblank_lines(hyp2_file);
        if (hyp2_lines.size() != ref_lines.size())
            throw LineCountMismatch("second hyp file line count differs");
    }

    CostModel unit = unit_cost_model();
    auto build_records = [&](const std::vector<std::string>& hyps) {
        std::vector<EvalRecord> records;
        for (std::size_t i = 0; i < hyps.size(); ++i) {
            EvalRecord rec;
            rec.id = std::to_string(i + 1);
            RefLine ref = parse_ref_line(ref_lines[i], i + 1);
            auto [hyp_words, bits] = parse_hyp_line(hyps[i]);
            PhonemeSeq input = parse_phoneme_seq(input_lines[i], m.inventory);
            rec.ref_words = ref.words;
            rec.hyp_words = hyp_words;
            WerCounts wc = word_error_rate(rec.hyp_words, rec.ref_words);
            rec.ins = wc.ins;
            rec.del = wc.del;
            rec.sub = wc.sub;
            rec.wer = wc.wer;
            rec.distortion = distortion_rate(input, ref.words, ref.lens, m.lexicon, unit);
            rec.bits_per_phoneme = bits / static_cast<double>(input.size());
            records.push_back(std::move(rec));
        }
        return records;
    };

    std::vector<EvalRecord> records = build_records(hyp_lines);
    std::vector<double> thresholds = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    auto rows = bucket_report(records, thresholds);

    std::optional<std::vector<BucketRow>> rows2;
    if (!hyp2_lines.empty())
        rows2 = bucket_report(build_records(hyp2_lines), thresholds);

    fs::create_directories(out_dir);
    {
        std::ofstream bucket(out_dir / "buckets.txt");
        bucket << format_bucket_table(rows, rows2 ? &*rows2 : nullptr);
    }
    {
        std::ofstream scatter(out_dir / "scatter.csv");
        scatter << scatter_csv(records);
    }

    double wer_sum = 0.0;
    for (const auto& r : records) wer_sum += r.wer;
    std::cout << "aggregate WER: "
              << fnum(100.0 * wer_sum / static_cast<double>(records.size()), 2) << "%\n";
    std::cout << format_bucket_table(rows, rows2 ? &*rows2 : nullptr);
    return 0;
}

int cmd_classes(const Config& cfg, const fs::path& out) {
    Models m = load_static_inputs(cfg);
    load_trained(m, cfg.model_dir);
    std::string dump = format_classes(m.classes);
    if (out.empty()) {
        std::cout << dump;
    } else {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write class dump: " + out.string());
        f << dump;
    }
    return 0;
}

int cmd_synth(const Config& cfg, const fs::path& grammar_file, const fs::path& out_dir) {
    PhonemeInventory inv = PhonemeInventory::load(cfg.inventory);
    Grammar grammar = load_grammar(grammar_file, inv);

    DatasetSpec spec;
    spec.train_sentences = cfg.synth_train_sentences;
    spec.test_sentences = cfg.synth_test_sentences;
    spec.pronunciation_noise.p_sub = cfg.synth_pron_noise * 0.6;
    spec.pronunciation_noise.p_del = cfg.synth_pron_noise * 0.2;
    spec.pronunciation_noise.p_ins = cfg.synth_pron_noise * 0.2;
    spec.recognition_noise_min = cfg.synth_noise_min;
    spec.recognition_noise_max = cfg.synth_noise_max;
    spec.seed = cfg.seed;

    Dataset ds = synthesize(grammar, inv, spec);
    fs::create_directories(out_dir);
    ds.lexicon.save(out_dir / "lexicon.txt");
    {
        std::ofstream f(out_dir / "train_tagged.txt");
        for (const auto& sentence : ds.train) {
            for (std::size_t i = 0; i < sentence.size(); ++i) {
                if (i) f << ' ';
                f << sentence[i].first << '/' << sentence[i].second;
            }
            f << '\n';
        }
    }
    {
        std::ofstream fi(out_dir / "test_inputs.txt");
        std::ofstream fr(out_dir / "test_refs.txt");
        for (const auto& item : ds.test) {
            fi << join_symbols(item.input) << '\n';
            for (std::size_t i = 0; i < item.ref_words.size(); ++i) {
                if (i) fr << ' ';
                fr << item.ref_words[i];
            }
            fr << " |";
            for (int len : item.ref_lens) fr << ' ' << len;
            fr << '\n';
        }
    }
    {
        std::ofstream f(out_dir / "config.txt");
        f << "inventory = " << cfg.inventory.string() << '\n';
        f << "broad_groups = " << cfg.broad_groups.string() << '\n';
        f << "lexicon = " << (out_dir / "lexicon.txt").string() << '\n';
        f << "tagged_corpus = " << (out_dir / "train_tagged.txt").string() << '\n';
        f << "model_dir = " << (out_dir / "models").string() << '\n';
        f << "seed = " << cfg.seed << '\n';
    }
    std::cout << "wrote " << ds.test.size() << " test sentences, lexicon of "
              << ds.lexicon.size() << " words to " << out_dir.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phoneme-sequence to sentence decoder built on two-part "
                 "message-length scoring"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file")->required();

    // Overrides shared by the subcommands; only applied when passed.
    std::optional<double> beam_bits;
    std::optional<std::size_t> top_k;
    std::optional<std::uint64_t> seed;
    bool no_shortlist = false;
    std::string lm_mode = "pos";
    app.add_option("--beam-bits", beam_bits, "beam width in bits");
    app.add_option("--top-k", top_k, "number of hypotheses to report");
    app.add_option("--seed", seed, "random seed override");
    app.add_flag("--no-shortlist", no_shortlist, "evaluate the whole lexicon");
    app.add_option("--lm", lm_mode, "language model: pos | word")
        ->check(CLI::IsMember({"pos", "word"}));

    auto* train = app.add_subcommand("train", "train all model tables");

    auto* decode_cmd = app.add_subcommand("decode", "decode phoneme sequences");
    std::string decode_input;
    std::string hyp_out;
    bool breakdown = false;
    decode_cmd->add_option("input", decode_input, "file of phoneme lines")->required();
    decode_cmd->add_flag("--breakdown", breakdown, "print per-word bit tables");
    decode_cmd->add_option("--hyp-out", hyp_out, "write machine-readable hypotheses");

    auto* eval_cmd = app.add_subcommand("eval", "score hypotheses against references");
    std::string eval_hyp, eval_ref, eval_input, eval_hyp2, eval_out = ".";
    eval_cmd->add_option("--hyp", eval_hyp, "hypothesis file")->required();
    eval_cmd->add_option("--ref", eval_ref, "reference file (words | lengths)")->required();
    eval_cmd->add_option("--input", eval_input, "input phoneme file")->required();
    eval_cmd->add_option("--hyp2", eval_hyp2, "second hypothesis file for comparison");
    eval_cmd->add_option("--out-dir", eval_out, "where to write buckets.txt / scatter.csv");

    auto* classes_cmd = app.add_subcommand("classes", "dump the equivalence classes");
    std::string classes_out;
    classes_cmd->add_option("--out", classes_out, "dump file (default stdout)");

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
    std::string grammar_file, synth_out = "synth";
    synth_cmd->add_option("--grammar", grammar_file, "grammar file")->required();
    synth_cmd->add_option("--out-dir", synth_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = load_config(config_path);
        if (beam_bits) cfg.search.beam_bits = *beam_bits;
        if (top_k) cfg.search.top_k = *top_k;
        if (seed) cfg.seed = *seed;
        if (no_shortlist) cfg.search.shortlist_enabled = false;
        cfg.search.lm_mode = lm_mode == "word" ? LmMode::WordBigramOnly : LmMode::PosTrigram;
        validate_config(cfg);

        if (train->parsed()) return cmd_train(cfg);
        if (decode_cmd->parsed()) return cmd_decode(cfg, decode_input, breakdown, hyp_out);
        if (eval_cmd->parsed())
            return cmd_eval(cfg, eval_hyp, eval_ref, eval_input, eval_hyp2, eval_out);
        if (classes_cmd->parsed()) return cmd_classes(cfg, classes_out);
        if (synth_cmd->parsed()) return cmd_synth(cfg, grammar_file, synth_out);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
