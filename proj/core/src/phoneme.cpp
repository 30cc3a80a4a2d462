#include "lexmml/phoneme.hpp"

#include <fstream>
#include <sstream>

namespace lexmml {

std::string join_symbols(const std::vector<std::string>& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ' ';
        out += seq[i];
    }
    return out;
}

std::vector<std::string> split_symbols(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

PhonemeInventory::PhonemeInventory(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const std::string& s = symbols_[i];
        if (s.empty() || s == kGap)
            throw InvalidArgs("invalid inventory symbol at position " + std::to_string(i));
        if (!index_.insert(s).second)
            throw InvalidArgs("duplicate inventory symbol '" + s + "'");
    }
}

PhonemeInventory PhonemeInventory::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open inventory file: " + file.string());
    std::vector<std::string> symbols;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tok;
        if (ss >> tok) symbols.push_back(tok);
    }
    return PhonemeInventory(std::move(symbols));
}

PhonemeSeq parse_phoneme_seq(const std::string& text, const PhonemeInventory& inv) {
    PhonemeSeq seq = split_symbols(text);
    if (seq.empty()) throw InvalidArgs("empty phoneme sequence");
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (!inv.contains(seq[i])) throw UnknownPhoneme(seq[i], i);
    return seq;
}

BroadGroupMap::BroadGroupMap(std::map<std::string, std::string> mapping)
    : mapping_(std::move(mapping)) {}

BroadGroupMap BroadGroupMap::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open broad-group file: " + file.string());
    std::map<std::string, std::string> mapping;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string sym, group, extra;
        if (!(ss >> sym)) continue; // blank line
        if (!(ss >> group)) throw ParseError(line_no, "expected '<symbol> <group>'");
        if (ss >> extra) throw ParseError(line_no, "trailing token '" + extra + "'");
        mapping[sym] = group;
    }
    return BroadGroupMap(std::move(mapping));
}

const std::string& BroadGroupMap::group_of(const std::string& phoneme) const {
    auto it = mapping_.find(phoneme);
    if (it == mapping_.end()) throw UnknownPhoneme(phoneme, 0);
    return it->second;
}

bool BroadGroupMap::covers(const PhonemeInventory& inv) const {
    for (const auto& s : inv.symbols())
        if (!mapping_.count(s)) return false;
    return true;
}

BroadGroupSeq to_broad_groups(const PhonemeSeq& seq, const BroadGroupMap& map) {
    BroadGroupSeq out;
    out.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        auto it = map.mapping().find(seq[i]);
        if (it == map.mapping().end()) throw UnknownPhoneme(seq[i], i);
        out.push_back(it->second);
    }
    return out;
}

} // namespace lexmml
