#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "streambench/harness.hpp"
#include "streambench/model.hpp"

namespace streambench::report {

inline constexpr const char* kCsvHeader = "test,order,K,n_elements,nl,ng,bytes,trials,elapsed_s,bandwidth_GBps";

/// Thrown by the readers; line() is 1-based and counts the header.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// %.17g so every double survives a write/read round trip bit for bit.
std::string format_double(double v);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const harness::BandwidthSample& s);
void write_csv(std::ostream& os, const std::vector<harness::BandwidthSample>& samples);
std::vector<harness::BandwidthSample> read_csv(std::istream& is);

/// Samples as a JSON array using the CSV column names as keys.
void write_samples_json(std::ostream& os, const std::vector<harness::BandwidthSample>& samples);

/// One entry of the fit report, per (test, order) group.
struct FitReport {
  BsTest test = BsTest::BS1;
  std::optional<int> order;
  model::ModelFit fit;
  /// Extra efficiency fraction requested on the command line, if not 0.8.
  std::optional<double> eff;
};

void write_fit_json(std::ostream& os, const std::vector<FitReport>& reports);
void write_fit_csv(std::ostream& os, const std::vector<FitReport>& reports);
/// Reads what write_fit_json writes.
std::vector<FitReport> read_fit_json(std::istream& is);

/// Groups samples by (test, order) in first-seen order and fits each group.
std::vector<FitReport> fit_groups(const std::vector<harness::BandwidthSample>& samples,
                                  const model::FitOptions& opts, std::optional<double> eff = {});

}  // namespace streambench::report
