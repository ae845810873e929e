#pragma once
#ifndef CFPROB_ERRORS_HPP
#define CFPROB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfprob {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected, std::string found)
        : Error("syntax error at position " + std::to_string(position) + ": expected " + expected +
                ", found " + found),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class UnknownAtom : public Error {
public:
    explicit UnknownAtom(std::string name)
        : Error("unknown atom '" + name + "'"), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class InvalidVocabulary : public Error {
public:
    using Error::Error;
};

class VocabularyTooLarge : public InvalidVocabulary {
public:
    VocabularyTooLarge(std::size_t size, std::size_t limit)
        : InvalidVocabulary("vocabulary has " + std::to_string(size) + " atoms, limit is " +
                            std::to_string(limit)) {}
};

/// A model violates its structural invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Conditioning on a sentence with possibility 0.
class ImpossibleCondition : public Error {
public:
    ImpossibleCondition() : Error("condition is impossible (possibility 0)") {}
};

class EmptySelection : public Error {
public:
    using Error::Error;
};

class ZeroShareDenominator : public Error {
public:
    using Error::Error;
};

/// Malformed model or policy file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cfprob

#endif  // CFPROB_ERRORS_HPP
