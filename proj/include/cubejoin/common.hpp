#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubejoin {

using Value = std::int64_t;

enum class CmpOp { Lt, Le, Gt, Ge, Ne };

inline bool eval_cmp(Value lhs, CmpOp op, Value rhs) {
    switch (op) {
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Gt: return lhs > rhs;
        case CmpOp::Ge: return lhs >= rhs;
        case CmpOp::Ne: return lhs != rhs;
    }
    return false;
}

inline const char* cmp_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

// Raised for malformed query text and for semantic query errors
// (unknown table, unbound attribute, arity mismatch).
class QueryError : public std::runtime_error {
  public:
    QueryError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    explicit QueryError(const std::string& message)
        : std::runtime_error(message), position_(std::string::npos) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

// Raised for file and CSV ingestion problems; carries the 1-based line number
// when the problem is tied to a specific input line.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace cubejoin
