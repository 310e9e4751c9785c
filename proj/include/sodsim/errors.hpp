#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sodsim {

struct PastEventError : std::logic_error {
  using std::logic_error::logic_error;
};

struct UnknownNodeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotMemberError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoHealthyMembersError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoProposalsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoViableOptionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleTaskError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownKeyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StoreCorruptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VersionMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a simulation invariant fails; names the invariant.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& invariant)
      : std::logic_error("invariant violated: " + invariant), invariant_name(invariant) {}
  std::string invariant_name;
};

struct ParseError : std::runtime_error {
  ParseError(int line_, int column_, const std::string& message_)
      : std::runtime_error("line " + std::to_string(line_) + ":" + std::to_string(column_) + ": " +
                           message_),
        line(line_),
        column(column_),
        message(message_) {}
  int line;
  int column;
  std::string message;
};

}  // namespace sodsim
