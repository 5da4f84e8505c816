#include "bentail/errors.hpp"

namespace bentail {

SyntaxError::SyntaxError(std::size_t offset_, std::string expected_)
    : Error("syntax error at offset " + std::to_string(offset_) + ": expected " + expected_),
      offset(offset_),
      expected(std::move(expected_)) {}

UnknownAtomError::UnknownAtomError(const std::string& name_)
    : Error("unknown atom '" + name_ + "' (signature is sealed)"), name(name_) {}

AtomNotInWorldError::AtomNotInWorldError(const std::string& name_)
    : Error("atom '" + name_ + "' is not part of the world's signature"), name(name_) {}

MissingColumnError::MissingColumnError(const std::string& column_)
    : Error("column '" + column_ + "' not found in CSV header"), column(column_) {}

MalformedRowError::MalformedRowError(std::size_t row_, const std::string& what_)
    : Error("row " + std::to_string(row_) + ": " + what_), row(row_) {}

UnknownColumnError::UnknownColumnError(const std::string& column_)
    : Error("unknown column '" + column_ + "'"), column(column_) {}

}  // namespace bentail
