#ifndef MTR_ERRORS_HPP
#define MTR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mtr {

// Base for all library errors that a caller can sensibly handle. Internal
// invariant violations (e.g. a non-integer charpoly coefficient) use
// std::logic_error instead: those are bugs, not inputs.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NonSquare : public Error {
public:
    explicit NonSquare(const std::string& msg) : Error(msg) {}
};

class WrongDimension : public Error {
public:
    explicit WrongDimension(const std::string& msg) : Error(msg) {}
};

class NotUnimodular : public Error {
public:
    explicit NotUnimodular(const std::string& msg) : Error(msg) {}
};

class NegativePowerOfNonUnimodular : public Error {
public:
    explicit NegativePowerOfNonUnimodular(const std::string& msg) : Error(msg) {}
};

class DegreeTooLarge : public Error {
public:
    explicit DegreeTooLarge(const std::string& msg) : Error(msg) {}
};

class NotIrreducible : public Error {
public:
    explicit NotIrreducible(const std::string& msg) : Error(msg) {}
};

class InvalidWitness : public Error {
public:
    explicit InvalidWitness(const std::string& msg) : Error(msg) {}
};

class NoWitnessFound : public Error {
public:
    explicit NoWitnessFound(const std::string& msg) : Error(msg) {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(const std::string& msg) : Error(msg) {}
};

class RepeatedEigenvalue : public Error {
public:
    explicit RepeatedEigenvalue(const std::string& msg) : Error(msg) {}
};

class ModuliNotDistinct : public Error {
public:
    explicit ModuliNotDistinct(const std::string& msg) : Error(msg) {}
};

class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

class ToleranceExceeded : public Error {
public:
    explicit ToleranceExceeded(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " (line " + std::to_string(line) + ", column "
                + std::to_string(column) + ")"),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

} // namespace mtr

#endif
