#include "cli_core.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace abxs::cli {

double parse_number(std::string_view text, std::string_view what) {
  std::string_view t = text;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size() || std::isnan(v)) {
    throw UsageError(std::string(what) + ": cannot parse '" + std::string(text) + "' as a number");
  }
  return v;
}

double db_to_linear(double db) {
  if (std::isinf(db) && db < 0) return 0.0;
  return std::pow(10.0, db / 10.0);
}

ValueSpec parse_values(std::string_view text, std::string_view what) {
  ValueSpec spec;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    for (;;) {
      const auto colon = text.find(':', pos);
      parts.push_back(text.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
      if (colon == std::string_view::npos) break;
      pos = colon + 1;
    }
    if (parts.size() != 3) {
      throw UsageError(std::string(what) + ": range must be start:step:stop, got '" + std::string(text) + "'");
    }
    const double start = parse_number(parts[0], what);
    const double step = parse_number(parts[1], what);
    const double stop = parse_number(parts[2], what);
    if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(stop)) {
      throw UsageError(std::string(what) + ": range bounds must be finite");
    }
    if (!(step > 0)) throw UsageError(std::string(what) + ": range step must be > 0");
    if (start > stop) throw UsageError(std::string(what) + ": range start must be <= stop");
    const double span = (stop - start) / step;
    const auto count = static_cast<long long>(std::floor(span + 1e-9)) + 1;
    if (count > 1'000'000) throw UsageError(std::string(what) + ": range has too many points");
    for (long long i = 0; i < count; ++i) spec.values.push_back(start + static_cast<double>(i) * step);
    spec.is_range = true;
    return spec;
  }
  std::size_t pos = 0;
  for (;;) {
    const auto comma = text.find(',', pos);
    spec.values.push_back(
        parse_number(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos), what));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return spec;
}

namespace {

std::string_view trim(std::string_view t) {
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t' || t.back() == '\r')) t.remove_suffix(1);
  return t;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(std::istream& in, std::string_view source) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    const std::string_view key = eq == std::string_view::npos ? t : trim(t.substr(0, eq));
    if (eq == std::string_view::npos || key.empty()) {
      throw UsageError(std::string(source) + ":" + std::to_string(number) + ": expected key=value");
    }
    std::string_view value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (path.empty()) return kept;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  auto given = [&kept](const std::string& flag) {
    for (const auto& a : kept) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  for (const auto& [key, value] : read_config(in, path)) {
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value == "true") {
      kept.push_back(flag);
    } else if (value != "false") {
      kept.push_back(flag + "=" + value);
    }
  }
  return kept;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

CsvWriter& CsvWriter::field(std::string_view text) {
  if (!first_) out_ << ',';
  first_ = false;
  out_ << text;
  return *this;
}

CsvWriter& CsvWriter::field(double x) { return field(format_double(x)); }

CsvWriter& CsvWriter::field(long long x) { return field(std::to_string(x)); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

}  // namespace abxs::cli
