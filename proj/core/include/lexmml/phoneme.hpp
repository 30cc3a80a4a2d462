#ifndef LEXMML_PHONEME_HPP
#define LEXMML_PHONEME_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexmml/errors.hpp"

namespace lexmml {

// Gap marker used in alignments. Never a valid inventory symbol.
inline constexpr const char* kGap = "-";

// A phoneme sequence is a list of ARPAbet-style symbols ("ax", "dh", ...).
using PhonemeSeq = std::vector<std::string>;
using BroadGroupSeq = std::vector<std::string>;

std::string join_symbols(const std::vector<std::string>& seq);
std::vector<std::string> split_symbols(const std::string& text);

// The set of phoneme symbols known to the system. Loaded from a file with
// one symbol per line; immutable afterwards.
class PhonemeInventory {
public:
    PhonemeInventory() = default;
    explicit PhonemeInventory(std::vector<std::string> symbols);

    static PhonemeInventory load(const std::filesystem::path& file);

    bool contains(const std::string& symbol) const { return index_.count(symbol) > 0; }
    const std::vector<std::string>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }

private:
    std::vector<std::string> symbols_;
    std::set<std::string> index_;
};

// Parses a whitespace-separated symbol string, validating every token.
PhonemeSeq parse_phoneme_seq(const std::string& text, const PhonemeInventory& inv);

// Total mapping phoneme symbol -> broad sound group label (vowel, stop, ...).
class BroadGroupMap {
public:
    BroadGroupMap() = default;
    explicit BroadGroupMap(std::map<std::string, std::string> mapping);

    // File format: one "<symbol> <group>" pair per line.
    static BroadGroupMap load(const std::filesystem::path& file);

    const std::string& group_of(const std::string& phoneme) const;
    bool has(const std::string& phoneme) const { return mapping_.count(phoneme) > 0; }
    // True when every inventory symbol has a group.
    bool covers(const PhonemeInventory& inv) const;
    const std::map<std::string, std::string>& mapping() const { return mapping_; }

private:
    std::map<std::string, std::string> mapping_;
};

BroadGroupSeq to_broad_groups(const PhonemeSeq& seq, const BroadGroupMap& map);

} // namespace lexmml

#endif
