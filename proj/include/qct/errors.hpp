#ifndef QCT_ERRORS_HPP
#define QCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qct {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad vertex ids, invalid tournaments, broken chains.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// A product or construction would exceed the configured carrier cap.
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

// A search or game evaluation ran out of its node budget.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

struct NotStronglyConnected : Error {
    explicit NotStronglyConnected(const std::string& what) : Error(what) {}
};

struct NotTransitive : Error {
    explicit NotTransitive(const std::string& what) : Error(what) {}
};

// Text input (graph files, sentence files) that does not parse.
struct ParseError : Error {
    ParseError(const std::string& what, int line, int column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line(line), column(column) {}
    int line;
    int column;
};

// An engine was asked to handle an input outside its contract
// (e.g. the implication-system solver on a template it does not cover).
struct EngineRefusal : Error {
    explicit EngineRefusal(const std::string& what) : Error(what) {}
};

// A verified structural fact that the theory guarantees failed to hold.
// This is never swallowed: it signals a bug or a genuine counterexample.
struct InternalCheckFailure : Error {
    explicit InternalCheckFailure(const std::string& what) : Error(what) {}
};

} // namespace qct

#endif
