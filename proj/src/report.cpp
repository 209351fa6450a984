#include "streambench/report.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace streambench::report {

using harness::BandwidthSample;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_header(std::ostream& os) { os << kCsvHeader << '\n'; }

namespace {

template <class T>
std::string opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_int(const std::string& field, std::size_t line, const char* column) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end)
    throw ParseError(line, std::string("bad integer in column ") + column + ": '" + field + "'");
  return value;
}

template <class T>
std::optional<T> parse_opt_int(const std::string& field, std::size_t line, const char* column) {
  if (field.empty()) return std::nullopt;
  return parse_int<T>(field, line, column);
}

double parse_double(const std::string& field, std::size_t line, const char* column) {
  if (field.empty()) throw ParseError(line, std::string("empty value in column ") + column);
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size())
    throw ParseError(line, std::string("bad number in column ") + column + ": '" + field + "'");
  return v;
}

}  // namespace

void write_csv_row(std::ostream& os, const BandwidthSample& s) {
  os << test_name(s.test) << ',' << opt(s.order) << ',' << opt(s.K) << ',' << opt(s.n_elements) << ','
     << opt(s.nl) << ',' << opt(s.ng) << ',' << s.bytes << ',' << s.trials << ',' << format_double(s.elapsed_s)
     << ',' << format_double(s.bandwidth_GBps) << '\n';
}

void write_csv(std::ostream& os, const std::vector<BandwidthSample>& samples) {
  write_csv_header(os);
  for (const auto& s : samples) write_csv_row(os, s);
}

std::vector<BandwidthSample> read_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) throw ParseError(1, "missing header");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError(1, "unexpected header '" + line + "'");

  std::vector<BandwidthSample> out;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 10)
      throw ParseError(lineno, "expected 10 fields, found " + std::to_string(f.size()));
    BandwidthSample s;
    try {
      s.test = parse_test(f[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    s.order = parse_opt_int<int>(f[1], lineno, "order");
    s.K = parse_opt_int<int>(f[2], lineno, "K");
    s.n_elements = parse_opt_int<std::int64_t>(f[3], lineno, "n_elements");
    s.nl = parse_opt_int<std::int64_t>(f[4], lineno, "nl");
    s.ng = parse_opt_int<std::int64_t>(f[5], lineno, "ng");
    s.bytes = parse_int<std::uint64_t>(f[6], lineno, "bytes");
    s.trials = parse_int<int>(f[7], lineno, "trials");
    s.elapsed_s = parse_double(f[8], lineno, "elapsed_s");
    s.bandwidth_GBps = parse_double(f[9], lineno, "bandwidth_GBps");
    if (s.trials < 1) throw ParseError(lineno, "trials must be >= 1");
    if (is_mesh_test(s.test) != s.order.has_value())
      throw ParseError(lineno, "order must be set exactly for bs6/bs7");
    out.push_back(s);
  }
  return out;
}

namespace {
template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}
}  // namespace

void write_samples_json(std::ostream& os, const std::vector<BandwidthSample>& samples) {
  json arr = json::array();
  for (const auto& s : samples) {
    arr.push_back({{"test", test_name(s.test)},
                   {"order", opt_json(s.order)},
                   {"K", opt_json(s.K)},
                   {"n_elements", opt_json(s.n_elements)},
                   {"nl", opt_json(s.nl)},
                   {"ng", opt_json(s.ng)},
                   {"bytes", s.bytes},
                   {"trials", s.trials},
                   {"elapsed_s", s.elapsed_s},
                   {"bandwidth_GBps", s.bandwidth_GBps}});
  }
  os << arr.dump(2) << '\n';
}

void write_fit_json(std::ostream& os, const std::vector<FitReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json o = json::object();
    o["test"] = test_name(r.test);
    o["order"] = opt_json(r.order);
    o["T0_s"] = r.fit.T0;
    o["Wmax_Bps"] = r.fit.Wmax;
    o["B80_bytes"] = model::efficiency_point(r.fit, 0.8);
    o["r2"] = r.fit.r2;
    o["n_points"] = r.fit.n_points;
    o["clamped_T0"] = r.fit.clamped_T0;
    if (r.eff) {
      o["eff"] = *r.eff;
      o["Beff_bytes"] = model::efficiency_point(r.fit, *r.eff);
    }
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

void write_fit_csv(std::ostream& os, const std::vector<FitReport>& reports) {
  os << "test,order,T0_s,Wmax_Bps,B80_bytes,r2,n_points,clamped_T0\n";
  for (const auto& r : reports)
    os << test_name(r.test) << ',' << opt(r.order) << ',' << format_double(r.fit.T0) << ','
       << format_double(r.fit.Wmax) << ',' << format_double(model::efficiency_point(r.fit, 0.8)) << ','
       << format_double(r.fit.r2) << ',' << r.fit.n_points << ',' << (r.fit.clamped_T0 ? "true" : "false")
       << '\n';
}

std::vector<FitReport> read_fit_json(std::istream& is) {
  const json arr = json::parse(is);
  if (!arr.is_array()) throw std::invalid_argument("fit report: top level must be an array");
  std::vector<FitReport> out;
  for (const auto& o : arr) {
    FitReport r;
    r.test = parse_test(o.at("test").get<std::string>());
    if (!o.at("order").is_null()) r.order = o.at("order").get<int>();
    r.fit.T0 = o.at("T0_s").get<double>();
    r.fit.Wmax = o.at("Wmax_Bps").get<double>();
    r.fit.r2 = o.at("r2").get<double>();
    r.fit.n_points = o.at("n_points").get<std::size_t>();
    r.fit.clamped_T0 = o.at("clamped_T0").get<bool>();
    if (o.contains("eff")) r.eff = o.at("eff").get<double>();
    out.push_back(r);
  }
  return out;
}

std::vector<FitReport> fit_groups(const std::vector<BandwidthSample>& samples, const model::FitOptions& opts,
                                  std::optional<double> eff) {
  using Key = std::pair<BsTest, int>;
  std::vector<Key> order;
  std::map<Key, std::vector<BandwidthSample>> groups;
  for (const auto& s : samples) {
    const Key key{s.test, s.order.value_or(-1)};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(s);
  }
  std::vector<FitReport> out;
  for (const Key& key : order) {
    FitReport r;
    r.test = key.first;
    if (key.second >= 0) r.order = key.second;
    try {
      r.fit = model::fit_model(groups[key], opts);
    } catch (const std::exception& e) {
      std::string label(test_name(key.first));
      if (r.order) label += " order " + std::to_string(*r.order);
      throw std::runtime_error(label + ": " + e.what());
    }
    r.eff = eff;
    out.push_back(r);
  }
  return out;
}

}  // namespace streambench::report
