#include "lexmml/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lexmml {

namespace {

std::string full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read " + file.string());
    return in;
}

void expect_header(std::istream& in, const std::string& kind) {
    std::string name;
    int version = 0;
    if (!(in >> name >> version) || name != kind || version != 1)
        throw ParseError(1, "expected header '" + kind + " 1'");
}

} // namespace

void save_language_model(const LanguageModel& lm, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "lexmml-lm 1\n";
    out << "tagset " << lm.pos.tagset().size() << '\n';
    for (const auto& t : lm.pos.tagset()) out << t << '\n';

    std::size_t n = 0;
    for (const auto& [ctx, succ] : lm.pos.trigram_counts()) n += succ.size();
    out << "pos_trigram " << n << '\n';
    for (const auto& [ctx, succ] : lm.pos.trigram_counts())
        for (const auto& [tag, c] : succ)
            out << ctx.first << ' ' << ctx.second << ' ' << tag << ' ' << c << '\n';

    n = 0;
    for (const auto& [ctx, succ] : lm.pos.bigram_counts()) n += succ.size();
    out << "pos_bigram " << n << '\n';
    for (const auto& [ctx, succ] : lm.pos.bigram_counts())
        for (const auto& [tag, c] : succ) out << ctx << ' ' << tag << ' ' << c << '\n';

    out << "pos_unigram " << lm.pos.unigram_counts().size() << '\n';
    for (const auto& [tag, c] : lm.pos.unigram_counts()) out << tag << ' ' << c << '\n';

    n = 0;
    for (const auto& [ctx, succ] : lm.word.bigram_counts()) n += succ.size();
    out << "word_bigram " << n << '\n';
    for (const auto& [ctx, succ] : lm.word.bigram_counts())
        for (const auto& [w, c] : succ)
            out << ctx.first << ' ' << ctx.second << ' ' << w << ' ' << c << '\n';

    n = 0;
    for (const auto& [tag, row] : lm.word.unigram_counts()) n += row.size();
    out << "word_unigram " << n << '\n';
    for (const auto& [tag, row] : lm.word.unigram_counts())
        for (const auto& [w, c] : row) out << tag << ' ' << w << ' ' << c << '\n';

    out << "word_pairs " << lm.word.lexicon_pairs().size() << '\n';
    for (const auto& [w, tag] : lm.word.lexicon_pairs()) out << w << ' ' << tag << '\n';

    n = 0;
    for (const auto& [prev, succ] : lm.word_only.bigram_counts()) n += succ.size();
    out << "wordonly_bigram " << n << '\n';
    for (const auto& [prev, succ] : lm.word_only.bigram_counts())
        for (const auto& [w, c] : succ) out << prev << ' ' << w << ' ' << c << '\n';

    out << "wordonly_unigram " << lm.word_only.unigram_counts().size() << '\n';
    for (const auto& [w, c] : lm.word_only.unigram_counts()) out << w << ' ' << c << '\n';

    out << "wordonly_vocab " << lm.word_only.vocabulary().size() << '\n';
    for (const auto& w : lm.word_only.vocabulary()) out << w << '\n';
}

LanguageModel load_language_model(const std::filesystem::path& file) {
    auto in = open_in(file);
    expect_header(in, "lexmml-lm");
    auto read_count = [&](const std::string& section) {
        std::string name;
        std::size_t n = 0;
        if (!(in >> name >> n) || name != section)
            throw ParseError(0, "expected section '" + section + "'");
        return n;
    };

    LanguageModel lm;
    std::size_t n = read_count("tagset");
    std::vector<std::string> tags(n);
    for (auto& t : tags) in >> t;
    lm.pos.set_tagset(std::move(tags));

    std::map<PosTrigramModel::TriKey, std::map<std::string, int>> tri;
    n = read_count("pos_trigram");
    for (std::size_t i = 0; i < n; ++i) {
        std::string a, b, c;
        int cnt;
        in >> a >> b >> c >> cnt;
        tri[{a, b}][c] = cnt;
    }
    std::map<std::string, std::map<std::string, int>> bi;
    n = read_count("pos_bigram");
    for (std::size_t i = 0; i < n; ++i) {
        std::string a, b;
        int cnt;
        in >> a >> b >> cnt;
        bi[a][b] = cnt;
    }
    std::map<std::string, int> uni;
    n = read_count("pos_unigram");
    for (std::size_t i = 0; i < n; ++i) {
        std::string a;
        int cnt;
        in >> a >> cnt;
        uni[a] = cnt;
    }
    lm.pos.set_counts(std::move(tri), std::move(bi), std::move(uni));

    std::map<WordBigramModel::BiKey, std::map<std::string, int>> wbi;
    n = read_count("word_bigram");
    for (std::size_t i = 0; i < n; ++i) {
        std::string prev, tag, w;
        int cnt;
        in >> prev >> tag >> w >> cnt;
        wbi[{prev, tag}][w] = cnt;
    }
    std::map<std::string, std::map<std::string, int>> wuni;
    n = read_count("word_unigram");
    for (std::size_t i = 0; i < n; ++i) {
        std::string tag, w;
        int cnt;
        in >> tag >> w >> cnt;
        wuni[tag][w] = cnt;
    }
    std::set<std::pair<std::string, std::string>> pairs;
    n = read_count("word_pairs");
    for (std::size_t i = 0; i < n; ++i) {
        std::string w, tag;
        in >> w >> tag;
        pairs.insert({w, tag});
    }
    lm.word.set_counts(std::move(wbi), std::move(wuni), std::move(pairs));

    std::map<std::string, std::map<std::string, int>> obi;
    n = read_count("wordonly_bigram");
    for (std::size_t i = 0; i < n; ++i) {
        std::string prev, w;
        int cnt;
        in >> prev >> w >> cnt;
        obi[prev][w] = cnt;
    }
    std::map<std::string, int> ouni;
    n = read_count("wordonly_unigram");
    for (std::size_t i = 0; i < n; ++i) {
        std::string w;
        int cnt;
        in >> w >> cnt;
        ouni[w] = cnt;
    }
    std::set<std::string> vocab;
    n = read_count("wordonly_vocab");
    for (std::size_t i = 0; i < n; ++i) {
        std::string w;
        in >> w;
        vocab.insert(w);
    }
    lm.word_only.set_counts(std::move(obi), std::move(ouni), std::move(vocab));
    if (!in) throw ParseError(0, "truncated language model file");
    return lm;
}

void save_confusion_model(const ConfusionModel& m, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "lexmml-confusion 1\n";
    std::size_t n = 0;
    for (const auto& [intended, row] : m.rows()) n += row.size();
    out << "cells " << n << '\n';
    for (const auto& [intended, row] : m.rows())
        for (const auto& [observed, p] : row)
            out << intended << ' ' << observed << ' ' << full(p) << '\n';
}

ConfusionModel load_confusion_model(const std::filesystem::path& file) {
    auto in = open_in(file);
    expect_header(in, "lexmml-confusion");
    std::string name;
    std::size_t n;
    if (!(in >> name >> n) || name != "cells") throw ParseError(0, "expected 'cells'");
    ConfusionModel m;
    for (std::size_t i = 0; i < n; ++i) {
        std::string a, b;
        double p;
        in >> a >> b >> p;
        m.set_prob(a, b, p);
    }
    if (!in) throw ParseError(0, "truncated confusion file");
    return m;
}

void save_insertion_dist(const InsertionCountDist& d, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "lexmml-insertions 1\n";
    out << "probs " << d.probs().size() << '\n';
    for (double p : d.probs()) out << full(p) << '\n';
    out << "tail " << full(d.tail_mass()) << '\n';
    out << "tallies " << d.tallies().size() << '\n';
    for (auto t : d.tallies()) out << t << '\n';
}

InsertionCountDist load_insertion_dist(const std::filesystem::path& file) {
    auto in = open_in(file);
    expect_header(in, "lexmml-insertions");
    std::string name;
    std::size_t n;
    if (!(in >> name >> n) || name != "probs") throw ParseError(0, "expected 'probs'");
    std::vector<double> probs(n);
    for (auto& p : probs) in >> p;
    double tail;
    if (!(in >> name >> tail) || name != "tail") throw ParseError(0, "expected 'tail'");
    InsertionCountDist d(std::move(probs), tail);
    if (in >> name >> n && name == "tallies") {
        std::vector<std::int64_t> tallies(n);
        for (auto& t : tallies) in >> t;
        d.set_tallies(std::move(tallies));
    }
    return d;
}

void save_cost_model(const CostModel& m, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "lexmml-costs 1\n";
    out << "defaults " << full(m.default_sub()) << ' ' << full(m.default_ins()) << ' '
        << full(m.default_del()) << '\n';
    out << "sub " << m.sub_table().size() << '\n';
    for (const auto& [key, c] : m.sub_table())
        out << key.first << ' ' << key.second << ' ' << full(c) << '\n';
    out << "ins " << m.ins_table().size() << '\n';
    for (const auto& [key, c] : m.ins_table()) out << key << ' ' << full(c) << '\n';
    out << "del " << m.del_table().size() << '\n';
    for (const auto& [key, c] : m.del_table()) out << key << ' ' << full(c) << '\n';
}

CostModel load_cost_model(const std::filesystem::path& file) {
    auto in = open_in(file);
    expect_header(in, "lexmml-costs");
    std::string name;
    double ds, di, dd;
    if (!(in >> name >> ds >> di >> dd) || name != "defaults")
        throw ParseError(0, "expected 'defaults'");
    CostModel m(ds, di, dd);
    std::size_t n;
    if (!(in >> name >> n) || name != "sub") throw ParseError(0, "expected 'sub'");
    for (std::size_t i = 0; i < n; ++i) {
        std::string a, b;
        double c;
        in >> a >> b >> c;
        m.set_sub(a, b, c);
    }
    if (!(in >> name >> n) || name != "ins") throw ParseError(0, "expected 'ins'");
    for (std::size_t i = 0; i < n; ++i) {
        std::string a;
        double c;
        in >> a >> c;
        m.set_ins(a, c);
    }
    if (!(in >> name >> n) || name != "del") throw ParseError(0, "expected 'del'");
    for (std::size_t i = 0; i < n; ++i) {
        std::string a;
        double c;
        in >> a >> c;
        m.set_del(a, c);
    }
    if (!in) throw ParseError(0, "truncated cost file");
    return m;
}

void save_class_model(const ClassModel& m, const std::filesystem::path& file) {
    auto out = open_out(file);
    out << "lexmml-classes 1\n";
    out << format_classes(m);
}

ClassModel load_class_model(const std::filesystem::path& file) {
    auto in = open_in(file);
    expect_header(in, "lexmml-classes");
    std::vector<EquivalenceClass> classes;
    std::string line;
    std::getline(in, line); // rest of header line
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head)) continue;
        if (head == "class") {
            EquivalenceClass c;
            ss >> c.id;
            classes.push_back(std::move(c));
        } else if (head == "centroid") {
            if (classes.empty()) throw ParseError(0, "centroid before class");
            std::string g;
            while (ss >> g) classes.back().centroid.push_back(g);
        } else if (head == "member") {
            if (classes.empty()) throw ParseError(0, "member before class");
            ClassMember mbr;
            ss >> mbr.word >> mbr.realization_index;
            classes.back().members.push_back(std::move(mbr));
        } else {
            throw ParseError(0, "unexpected token '" + head + "' in class file");
        }
    }
    return ClassModel(std::move(classes));
}

void save_trained(const Models& models, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_language_model(models.lm, dir / kLmFile);
    save_confusion_model(models.confusion, dir / kConfusionFile);
    save_insertion_dist(models.insertions, dir / kInsertionsFile);
    save_cost_model(models.costs, dir / kCostsFile);
    save_class_model(models.classes, dir / kClassesFile);
}

void load_trained(Models& models, const std::filesystem::path& dir) {
    models.lm = load_language_model(dir / kLmFile);
    models.confusion = load_confusion_model(dir / kConfusionFile);
    models.insertions = load_insertion_dist(dir / kInsertionsFile);
    models.costs = load_cost_model(dir / kCostsFile);
    models.classes = load_class_model(dir / kClassesFile);
}

} // namespace lexmml
