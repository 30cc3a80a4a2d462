#ifndef LEXMML_ERRORS_HPP
#define LEXMML_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexmml {

// Base type for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UnknownPhoneme : public Error {
public:
    UnknownPhoneme(std::string sym, std::size_t pos)
        : Error("unknown phoneme '" + sym + "' at position " + std::to_string(pos)),
          symbol(std::move(sym)), position(pos) {}
    std::string symbol;
    std::size_t position;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line_no, const std::string& msg)
        : Error("parse error at line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
    std::size_t line;
};

class DuplicateRealization : public Error {
public:
    explicit DuplicateRealization(std::string w)
        : Error("duplicate realization for word '" + w + "'"), word(std::move(w)) {}
    std::string word;
};

class EmptyEntry : public Error {
public:
    explicit EmptyEntry(std::string w)
        : Error("lexicon entry '" + w + "' has no tags or no pronunciation"),
          word(std::move(w)) {}
    std::string word;
};

class UnknownWord : public Error {
public:
    explicit UnknownWord(std::string w)
        : Error("word '" + w + "' is not in the lexicon"), word(std::move(w)) {}
    std::string word;
};

class UnknownTag : public Error {
public:
    explicit UnknownTag(std::string t)
        : Error("tag '" + t + "' is not in the tag set"), tag(std::move(t)) {}
    std::string tag;
};

class InvalidPairing : public Error {
public:
    InvalidPairing(std::string w, std::string t)
        : Error("word '" + w + "' cannot carry tag '" + t + "'"),
          word(std::move(w)), tag(std::move(t)) {}
    std::string word;
    std::string tag;
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

class InvalidArgs : public Error {
public:
    explicit InvalidArgs(const std::string& msg) : Error(msg) {}
};

class MissingProbability : public Error {
public:
    MissingProbability(const std::string& intended, const std::string& observed)
        : Error("no confusion probability for observed '" + observed +
                "' given intended '" + intended + "'") {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

class NoHypothesis : public Error {
public:
    explicit NoHypothesis(const std::string& msg) : Error(msg) {}
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

class LineCountMismatch : public Error {
public:
    explicit LineCountMismatch(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace lexmml

#endif
