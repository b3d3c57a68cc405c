#ifndef INFOFLOW_FRAME_FILE_HPP_
#define INFOFLOW_FRAME_FILE_HPP_

#include <string>
#include <string_view>

#include "infoflow/purge.hpp"
#include "infoflow/scenarios.hpp"

namespace infoflow {

// Raised with 1-based line and column of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Line-oriented frame files; the grammar is described in docs/frame-format.md.
// The parsed frame is validated (Error on violations) unless `validate` is
// false.
Scenario parse_frame_file(std::string_view text, bool validate = true);
// Throws Error for blurs that have no textual form (key functions).
std::string write_frame_file(const Scenario& doc);

MachineSpec parse_machine_file(std::string_view text);
std::string write_machine_file(const MachineSpec& m);

}  // namespace infoflow

#endif  // INFOFLOW_FRAME_FILE_HPP_
