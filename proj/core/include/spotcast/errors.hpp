#ifndef SPOTCAST_ERRORS_HPP_
#define SPOTCAST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace spotcast {

// Base class for all spotcast errors so callers can catch one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class MissingColumn : public Error {
 public:
  explicit MissingColumn(const std::string& column)
      : Error("missing column: " + column), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class UnparsableRow : public Error {
 public:
  UnparsableRow(long row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

class NonMonotonicTimestamps : public Error {
 public:
  explicit NonMonotonicTimestamps(const std::string& msg) : Error(msg) {}
};

class AmbiguityUnresolvable : public Error {
 public:
  explicit AmbiguityUnresolvable(const std::string& msg) : Error(msg) {}
};

class DegenerateSeries : public Error {
 public:
  explicit DegenerateSeries(const std::string& msg) : Error(msg) {}
};

class SampleTooShort : public Error {
 public:
  explicit SampleTooShort(const std::string& msg) : Error(msg) {}
};

class NonFiniteInput : public Error {
 public:
  explicit NonFiniteInput(const std::string& msg) : Error(msg) {}
};

class RankCollapse : public Error {
 public:
  explicit RankCollapse(const std::string& msg) : Error(msg) {}
};

class HistoryTooShort : public Error {
 public:
  explicit HistoryTooShort(const std::string& msg) : Error(msg) {}
};

class HolidayCoverage : public Error {
 public:
  explicit HolidayCoverage(const std::string& msg) : Error(msg) {}
};

class MissingInput : public Error {
 public:
  explicit MissingInput(const std::string& msg) : Error(msg) {}
};

}  // namespace spotcast

#endif  // SPOTCAST_ERRORS_HPP_
