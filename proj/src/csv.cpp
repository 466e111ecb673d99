#include "logconvex/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace logconvex {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::array<std::string_view, 2> split_two(std::string_view line, const std::string& where) {
  const auto comma = line.find(',');
  if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
    throw InputError(where + ": expected exactly two comma-separated fields");
  return {trim(line.substr(0, comma)), trim(line.substr(comma + 1))};
}

double to_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw InputError(where + ": '" + std::string(s) + "' is not a finite number");
  return v;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

template <typename Fn>
auto with_input(const std::string& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return fn(in);
}

Grid checked_grid(const Eigen::ArrayXd& x, const std::string& source) {
  try {
    return Grid(x);
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

TwoColumnTable parse_two_column_csv(std::istream& in, const std::string& source) {
  TwoColumnTable t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> a, b;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto fields = split_two(view, where);
    if (!have_header) {
      t.first_header = fields[0];
      t.second_header = fields[1];
      have_header = true;
      continue;
    }
    a.push_back(to_double(fields[0], where));
    b.push_back(to_double(fields[1], where));
  }
  if (in.bad()) throw IoError("failed reading " + source);
  if (!have_header) throw InputError(source + ": empty file");
  if (a.size() < 2) throw InputError(source + ": needs at least two data rows");
  t.first = Eigen::Map<const Eigen::ArrayXd>(a.data(), static_cast<Eigen::Index>(a.size()));
  t.second = Eigen::Map<const Eigen::ArrayXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  return t;
}

TwoColumnTable read_two_column_csv(const std::string& path) {
  return with_input(path, [&](std::istream& in) { return parse_two_column_csv(in, path); });
}

SampledFunction parse_function_csv(std::istream& in, const std::string& source) {
  TwoColumnTable t = parse_two_column_csv(in, source);
  if (t.first_header != "x" || t.second_header != "value")
    throw InputError(source + ": expected header 'x,value'");
  return SampledFunction(checked_grid(t.first, source), std::move(t.second));
}

SampledFunction read_function_csv(const std::string& path) {
  return with_input(path, [&](std::istream& in) { return parse_function_csv(in, path); });
}

void write_function_csv(std::ostream& out, const SampledFunction& f, const std::string& x_header,
                        const std::string& value_header) {
  out << x_header << ',' << value_header << '\n';
  for (Eigen::Index i = 0; i < f.size(); ++i) out << format_double(f.x(i)) << ',' << format_double(f.value(i)) << '\n';
}

void write_function_csv(const std::string& path, const SampledFunction& f) {
  auto out = open_for_write(path);
  write_function_csv(out, f);
  finish_write(out, path);
}

RadialWeight parse_weight_csv(std::istream& in, const std::string& source) {
  TwoColumnTable t = parse_two_column_csv(in, source);
  if (t.first_header != "y") throw InputError(source + ": first column must be 'y'");
  const Grid grid = checked_grid(t.first, source);
  if (t.second_header == "log_profile") return weight_from_log_profile(SampledFunction(grid, std::move(t.second)));
  if (t.second_header == "weight") {
    try {
      return log_profile_of_weight(grid, t.second);
    } catch (const std::invalid_argument& e) {
      throw InputError(source + ": " + e.what());
    }
  }
  throw InputError(source + ": second column must be 'weight' or 'log_profile'");
}

RadialWeight read_weight_csv(const std::string& path) {
  return with_input(path, [&](std::istream& in) { return parse_weight_csv(in, path); });
}

void write_weight_csv(std::ostream& out, const RadialWeight& w, bool as_log_profile) {
  if (as_log_profile) {
    write_function_csv(out, w.log_profile(), "y", "log_profile");
    return;
  }
  write_function_csv(out, SampledFunction(w.grid(), w.weights()), "y", "weight");
}

void write_weight_csv(const std::string& path, const RadialWeight& w, bool as_log_profile) {
  auto out = open_for_write(path);
  write_weight_csv(out, w, as_log_profile);
  finish_write(out, path);
}

}  // namespace logconvex
