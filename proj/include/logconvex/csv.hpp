#pragma once

// Two-column CSV files: `x,value` for sampled functions, `y,weight` or
// `y,log_profile` for radial weights. Numbers are written with 17
// significant digits, so a write-read cycle reproduces every double.

#include "logconvex/funcspace.hpp"
#include "logconvex/weighted.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace logconvex {

/// Malformed file content.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file that cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TwoColumnTable {
  std::string first_header;
  std::string second_header;
  Eigen::ArrayXd first;
  Eigen::ArrayXd second;
};

std::string format_double(double x);

/// `source` names the stream in error messages.
TwoColumnTable parse_two_column_csv(std::istream& in, const std::string& source);
TwoColumnTable read_two_column_csv(const std::string& path);

/// Header `x,value`.
SampledFunction read_function_csv(const std::string& path);
SampledFunction parse_function_csv(std::istream& in, const std::string& source);
void write_function_csv(std::ostream& out, const SampledFunction& f, const std::string& x_header = "x",
                        const std::string& value_header = "value");
void write_function_csv(const std::string& path, const SampledFunction& f);

/// Header `y,weight` (positive values) or `y,log_profile`.
RadialWeight read_weight_csv(const std::string& path);
RadialWeight parse_weight_csv(std::istream& in, const std::string& source);
void write_weight_csv(std::ostream& out, const RadialWeight& w, bool as_log_profile = false);
void write_weight_csv(const std::string& path, const RadialWeight& w, bool as_log_profile = false);

}  // namespace logconvex
