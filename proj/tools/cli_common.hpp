#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "ladderkit/params.hpp"

namespace ladderkit::cli {

using Row = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// exit-code contract: 0 success, 1 verification failure, 2 usage or config
// error, 3 mathematical degeneracy
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegeneracy = 3;

struct usage_error : std::invalid_argument {
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

/// 17-significant-digit formatting; fixed across platforms so CSV output
/// is byte-reproducible.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_cell(const Row::value_type& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) return fmt17(v.get<double>());
  return v.dump();
}

struct RunConfig {
  std::string family_token = "CHG";
  std::string alpha_str = "2.5";
  std::string beta_str = "0.5";
  std::string zeta_str = "0.5";
  std::string t_start_str = "0.25";
  std::string t_stop_str = "0.85";
  int t_count = 7;
  double tol = 1e-13;
  std::string format = "csv";
  std::string seed_c_str = "1,0";
  std::string path_str;
  std::string step_token_str = "a+";
  std::string suite = "all";
  bool inject_defect = false;
  std::string config_path;

  Family family() const {
    if (family_token == "CHG" || family_token == "chg") return Family::Chg;
    if (family_token == "HG" || family_token == "hg") return Family::Hg;
    throw usage_error("unknown family '" + family_token + "' (expected CHG or HG)");
  }

  ParamPoint point() const {
    const double a = parse_decimal(alpha_str, "alpha");
    const double b = parse_decimal(beta_str, "beta");
    if (family() == Family::Chg) return ParamPoint::chg({a, 0}, {b, 0});
    return ParamPoint::hg({a, 0}, {b, 0}, {parse_decimal(zeta_str, "zeta"), 0});
  }

  Complex seed_c() const {
    const auto comma = seed_c_str.find(',');
    if (comma == std::string::npos)
      return {parse_decimal(seed_c_str, "seed constant"), 0.0};
    return {parse_decimal(seed_c_str.substr(0, comma), "seed constant"),
            parse_decimal(seed_c_str.substr(comma + 1), "seed constant")};
  }

  static constexpr double kTFloor = 1e-6;

  std::vector<double> t_grid() const {
    const double start = parse_decimal(t_start_str, "t-start");
    const double stop = parse_decimal(t_stop_str, "t-stop");
    if (t_count < 1) throw usage_error("t-count must be at least 1");
    if (tol <= 0.0) throw usage_error("tolerance must be positive");
    if (t_count > 1 && start > stop)
      throw usage_error("t-start must not exceed t-stop");
    if (start < 0.0) throw usage_error("t grid must not start below 0");
    const double last = t_count > 1 ? stop : start;
    if (family() == Family::Hg && last >= 1.0)
      throw usage_error("t grid must stay below 1 for the HG family");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(t_count));
    if (t_count == 1) {
      grid.push_back(std::max(start, kTFloor));
      return grid;
    }
    const double h = (stop - start) / (t_count - 1);
    // grid values are floored at 1e-6 so a requested t = 0 evaluates just
    // inside the domain
    for (int i = 0; i < t_count; ++i) grid.push_back(std::max(start + h * i, kTFloor));
    return grid;
  }

  Row echo() const {
    Row r;
    r["family"] = family_token;
    r["alpha"] = alpha_str;
    r["beta"] = beta_str;
    if (family() == Family::Hg) r["zeta"] = zeta_str;
    r["t-start"] = t_start_str;
    r["t-stop"] = t_stop_str;
    r["t-count"] = t_count;
    r["tol"] = tol;
    r["format"] = format;
    r["seed-c"] = seed_c_str;
    return r;
  }

private:
  static double parse_decimal(const std::string& s, const char* what) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw usage_error(std::string("cannot parse ") + what + " value '" + s + "'");
    }
  }
};

/// Emits rows as CSV (LF line endings, header first) or as a JSON document
/// with a metadata header that echoes the configuration.
void emit(const RunConfig& config, const std::string& command,
          const std::vector<Row>& rows, std::FILE* out);

}  // namespace ladderkit::cli
