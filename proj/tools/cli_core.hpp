#pragma once

// Parsing and formatting helpers shared by the abxs command-line tool and its
// tests: locale-independent numbers, dB values, value lists and ranges, CSV.

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace abxs::cli {

/// Bad command-line input; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a real number with '.' as decimal separator; accepts inf, -inf.
double parse_number(std::string_view text, std::string_view what);

/// dB -> linear as 10^(dB/10); "-inf" gives 0.
double db_to_linear(double db);

/// A flag value: a single number, a comma list (one curve per entry) or a
/// range start:step:stop (the swept variable).
struct ValueSpec {
  std::vector<double> values;
  bool is_range = false;
};

/// Range values are start + i * step for i = 0, 1, ... while <= stop (with a
/// small tolerance so decimal steps land on stop).
ValueSpec parse_values(std::string_view text, std::string_view what);

/// 17 significant digits (always round-trips), independent of the global
/// locale.
std::string format_double(double x);

/// Entries of a key=value config file. Blank lines and lines starting with
/// '#' are skipped; surrounding spaces and double quotes around values are
/// stripped. Throws UsageError on a line without '='.
std::vector<std::pair<std::string, std::string>> read_config(std::istream& in, std::string_view source);

/// Replaces "--config FILE" (or "--config=FILE") in `args` by the file's
/// entries as "--key=value" flags. Keys already given on the command line win.
/// A value of true gives the bare flag "--key"; false drops the entry.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double x);
  CsvWriter& field(long long x);
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace abxs::cli
