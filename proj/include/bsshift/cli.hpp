#ifndef BSSHIFT_CLI_HPP
#define BSSHIFT_CLI_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "bsshift/approx.hpp"
#include "bsshift/floquet.hpp"
#include "bsshift/json_io.hpp"
#include "bsshift/series.hpp"

namespace bsshift::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class ExitCode : int { Ok = 0, Usage = 2, Numerical = 3 };

enum class Format { Text, Csv, Json };

enum class MethodKind { Pt, Extrap, Rwa, Asymptotic, Floquet };

/// A requested method with its order resolved (order is ignored for rwa,
/// asymptotic and floquet).
struct MethodSpec {
  MethodKind kind;
  int order = 8;

  /// Column / CSV name, e.g. "extrap8", "pt6", "numerical".
  std::string name() const {
    switch (kind) {
      case MethodKind::Pt: return "pt" + std::to_string(order);
      case MethodKind::Extrap: return "extrap" + std::to_string(order);
      case MethodKind::Rwa: return "rwa";
      case MethodKind::Asymptotic: return "asymptotic";
      case MethodKind::Floquet: return "numerical";
    }
    return "?";
  }

  friend bool operator==(const MethodSpec& a, const MethodSpec& b) {
    if (a.kind != b.kind) return false;
    return (a.kind == MethodKind::Pt || a.kind == MethodKind::Extrap) ? a.order == b.order : true;
  }
};

/// Accepts pt, ptN, extrap, extrapN, rwa, asymptotic, floquet, numerical.
/// Bare pt / extrap take `default_order`.
inline MethodSpec parse_method(const std::string& token, int default_order) {
  auto with_order = [&](MethodKind kind, const std::string& suffix) {
    int order = default_order;
    if (!suffix.empty()) {
      if (suffix.size() != 1 || suffix[0] < '0' || suffix[0] > '9') {
        throw std::invalid_argument("unknown method '" + token + "'");
      }
      order = suffix[0] - '0';
    }
    detail::require_supported_order(order, token.c_str());
    return MethodSpec{kind, order};
  };
  if (token.rfind("extrap", 0) == 0) return with_order(MethodKind::Extrap, token.substr(6));
  if (token.rfind("pt", 0) == 0) return with_order(MethodKind::Pt, token.substr(2));
  if (token == "rwa") return {MethodKind::Rwa, 0};
  if (token == "asymptotic") return {MethodKind::Asymptotic, 0};
  if (token == "floquet" || token == "numerical") return {MethodKind::Floquet, 0};
  throw std::invalid_argument("unknown method '" + token + "'");
}

inline std::vector<MethodSpec> parse_methods(const std::vector<std::string>& tokens, int default_order) {
  std::vector<MethodSpec> out;
  for (const auto& t : tokens) {
    const MethodSpec m = parse_method(t, default_order);
    if (std::find(out.begin(), out.end(), m) == out.end()) {
      out.push_back(m);
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("no methods requested");
  }
  return out;
}

inline ShiftReport compute(const MethodSpec& m, const RabiParams& p, const FloquetConfig& cfg) {
  switch (m.kind) {
    case MethodKind::Pt: return pt_shift(p, m.order);
    case MethodKind::Extrap: return extrapolated_shift(p, m.order);
    case MethodKind::Rwa: return rwa_shift(p);
    case MethodKind::Asymptotic: return asymptotic_shift(p);
    case MethodKind::Floquet: return find_resonance(p, cfg);
  }
  throw std::logic_error("compute: unhandled method");
}

/// "%.6f", the fixed precision of all text and CSV output.
inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Shortest "%g" form, always with a decimal point ("1.0", "3.5").
inline std::string ratio_str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) {
    s += ".0";
  }
  return s;
}

inline std::string diagnostics_str(const Diagnostics& d) {
  return to_json(d).dump();
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results come back
/// in input order; an exception in one task is stored for that slot only.
template <typename T>
std::vector<std::variant<T, std::exception_ptr>> parallel_map(std::size_t n, int threads,
                                                              const std::function<T(std::size_t)>& fn) {
  std::vector<std::variant<T, std::exception_ptr>> out(n, std::exception_ptr{});
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        out[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }
  return out;
}

inline std::string describe(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const FloquetError& f) {
    return std::string(f.what()) + " " + diagnostics_str(f.diagnostics());
  } catch (const std::exception& x) {
    return x.what();
  } catch (...) {
    return "unknown error";
  }
}

struct FloquetFlags {
  std::optional<int> n_photon;
  std::optional<double> omega_tol;
  double truncation_rtol = 1e-5;
  int max_n_photon = 200;
  double bracket_width = 0.1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--n-photon", n_photon, "Initial photon blocks per side (default: A/omega + 10)");
    cmd.add_option("--omega-tol", omega_tol, "Absolute tolerance on the resonance (default: 1e-6 omega0)");
    cmd.add_option("--truncation-rtol", truncation_rtol, "Relative truncation convergence tolerance")
        ->capture_default_str();
    cmd.add_option("--max-n-photon", max_n_photon, "Hard cap on photon blocks")->capture_default_str();
    cmd.add_option("--bracket-width", bracket_width, "Relative half-width of the search bracket")
        ->capture_default_str();
  }

  FloquetConfig config() const {
    FloquetConfig c;
    c.n_photon = n_photon;
    c.omega_tol = omega_tol;
    c.truncation_rtol = truncation_rtol;
    c.max_n_photon = max_n_photon;
    c.bracket_width = bracket_width;
    c.validate();
    return c;
  }

  Json to_json() const {
    Json j;
    j["n_photon"] = n_photon ? Json(*n_photon) : Json(nullptr);
    j["omega_tol"] = omega_tol ? Json(*omega_tol) : Json(nullptr);
    j["truncation_rtol"] = truncation_rtol;
    j["max_n_photon"] = max_n_photon;
    j["bracket_width"] = bracket_width;
    return j;
  }
};

inline Json envelope(Json rows, Json config) {
  Json j;
  j["rows"] = std::move(rows);
  j["config"] = std::move(config);
  j["version"] = kVersion;
  return j;
}

inline void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- shift

struct ShiftOptions {
  double omega0 = 1.0;
  double amplitude = 0.0;
  std::vector<std::string> methods{"extrap"};
  int order = 8;
  FloquetFlags floquet;
};

inline int cmd_shift(const ShiftOptions& o, Format fmt, int parallel, std::ostream& out, std::ostream& err) {
  const RabiParams p(o.omega0, o.amplitude);
  const auto methods = parse_methods(o.methods, o.order);
  const FloquetConfig cfg = o.floquet.config();

  auto results = parallel_map<ShiftReport>(methods.size(), parallel,
                                           [&](std::size_t i) { return compute(methods[i], p, cfg); });
  int code = static_cast<int>(ExitCode::Ok);
  std::vector<ShiftReport> reports;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (auto* e = std::get_if<std::exception_ptr>(&results[i])) {
      err << "error: " << methods[i].name() << ": " << describe(*e) << '\n';
      code = static_cast<int>(ExitCode::Numerical);
    } else {
      reports.push_back(std::get<ShiftReport>(results[i]));
    }
  }

  switch (fmt) {
    case Format::Text:
      out << std::left << std::setw(12) << "method" << std::setw(14) << "omega0" << std::setw(14) << "amplitude"
          << std::setw(14) << "shift" << "resonance\n";
      for (const auto& r : reports) {
        out << std::setw(12) << to_string(r.method) << std::setw(14) << fixed6(r.params.omega0()) << std::setw(14)
            << fixed6(r.params.amplitude()) << std::setw(14) << fixed6(r.shift) << fixed6(r.resonance()) << '\n';
      }
      break;
    case Format::Csv:
      out << "method,omega0,amplitude,shift,resonance\n";
      for (const auto& r : reports) {
        out << to_string(r.method) << ',' << fixed6(r.params.omega0()) << ',' << fixed6(r.params.amplitude()) << ','
            << fixed6(r.shift) << ',' << fixed6(r.resonance()) << '\n';
      }
      break;
    case Format::Json: {
      Json rows = Json::array();
      for (const auto& r : reports) rows.push_back(to_json(r));
      Json config;
      config["omega0"] = o.omega0;
      config["amplitude"] = o.amplitude;
      config["floquet"] = o.floquet.to_json();
      write_json(out, envelope(std::move(rows), std::move(config)));
      break;
    }
  }
  return code;
}

// ---------------------------------------------------------------- table

/// Ratios A/omega0 tabulated in the reference comparison table.
inline std::vector<double> default_table_ratios() {
  return {1.0, 3.5, 6.0, 8.5, 11.0, 13.5, 16.0, 18.5, 21.0};
}

struct TableOptions {
  std::vector<double> ratios = default_table_ratios();
  std::vector<std::string> methods{"numerical", "extrap6", "extrap8"};
  bool fast = false;
  FloquetFlags floquet;
};

/// One table line; cells hold relative shifts, or nothing when that cell failed.
struct TableRow {
  double ratio = 0.0;
  std::vector<std::optional<double>> cells;
};

inline std::vector<MethodSpec> table_methods(const TableOptions& o) {
  std::vector<MethodSpec> methods = parse_methods(o.methods, 8);
  if (o.fast) {
    const MethodSpec extrap8{MethodKind::Extrap, 8};
    const bool has_extrap8 = std::find(methods.begin(), methods.end(), extrap8) != methods.end();
    std::vector<MethodSpec> swapped;
    for (const auto& m : methods) {
      if (m.kind != MethodKind::Floquet) {
        swapped.push_back(m);
      } else if (!has_extrap8) {
        swapped.push_back(extrap8);
      }
    }
    methods = std::move(swapped);
  }
  return methods;
}

inline int cmd_table(const TableOptions& o, Format fmt, int parallel, std::ostream& out, std::ostream& err) {
  for (double r : o.ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("table: ratios must be finite and > 0");
    }
  }
  const auto methods = table_methods(o);
  const FloquetConfig cfg = o.floquet.config();
  const std::size_t cols = methods.size();

  // One task per cell; output is assembled in input order.
  auto results = parallel_map<double>(o.ratios.size() * cols, parallel, [&](std::size_t i) {
    const RabiParams p(1.0, o.ratios[i / cols]);
    return compute(methods[i % cols], p, cfg).shift;
  });

  int code = static_cast<int>(ExitCode::Ok);
  std::vector<TableRow> rows;
  for (std::size_t r = 0; r < o.ratios.size(); ++r) {
    TableRow row{o.ratios[r], {}};
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& cell = results[r * cols + c];
      if (auto* e = std::get_if<std::exception_ptr>(&cell)) {
        err << "error: ratio " << ratio_str(row.ratio) << ", " << methods[c].name() << ": " << describe(*e) << '\n';
        code = static_cast<int>(ExitCode::Numerical);
        row.cells.emplace_back();
      } else {
        row.cells.emplace_back(std::get<double>(cell));
      }
    }
    rows.push_back(std::move(row));
  }

  auto cell_str = [](const std::optional<double>& v) { return v ? fixed6(*v) : std::string("ERR"); };
  switch (fmt) {
    case Format::Text:
      out << std::left << std::setw(10) << "A/omega0";
      for (const auto& m : methods) out << std::setw(14) << m.name();
      out << '\n';
      for (const auto& row : rows) {
        out << std::setw(10) << ratio_str(row.ratio);
        for (const auto& v : row.cells) out << std::setw(14) << cell_str(v);
        out << '\n';
      }
      break;
    case Format::Csv:
      out << "ratio";
      for (const auto& m : methods) out << ',' << m.name();
      out << '\n';
      for (const auto& row : rows) {
        out << ratio_str(row.ratio);
        for (const auto& v : row.cells) out << ',' << cell_str(v);
        out << '\n';
      }
      break;
    case Format::Json: {
      Json jrows = Json::array();
      for (const auto& row : rows) {
        Json jr;
        jr["ratio"] = row.ratio;
        for (std::size_t c = 0; c < cols; ++c) {
          jr[methods[c].name()] = row.cells[c] ? Json(*row.cells[c]) : Json(nullptr);
        }
        jrows.push_back(std::move(jr));
      }
      Json config;
      config["omega0"] = 1.0;
      Json names = Json::array();
      for (const auto& m : methods) names.push_back(m.name());
      config["methods"] = std::move(names);
      config["fast"] = o.fast;
      config["floquet"] = o.floquet.to_json();
      write_json(out, envelope(std::move(jrows), std::move(config)));
      break;
    }
  }
  return code;
}

// ---------------------------------------------------------------- coeffs

inline int cmd_coeffs(int order, Format fmt, std::ostream& out) {
  const ExtrapolationFormula f = derive_formula(order);
  const double divisor = asymptotic_divisor(f);
  char divisor_buf[32];
  std::snprintf(divisor_buf, sizeof divisor_buf, "%.6g", divisor);
  const auto radicand = f.radicand_strings();

  switch (fmt) {
    case Format::Text:
      out << "order " << order << '\n';
      out << "radicand coefficients of (A/omega0)^0, ^2, ...:";
      for (const auto& c : radicand) out << ' ' << c;
      out << '\n';
      out << "asymptotic divisor: " << divisor_buf << '\n';
      break;
    case Format::Csv:
      out << "power,coefficient\n";
      for (std::size_t k = 0; k < radicand.size(); ++k) out << 2 * k << ',' << radicand[k] << '\n';
      out << "divisor," << divisor_buf << '\n';
      break;
    case Format::Json: {
      Json rows = Json::array();
      rows.push_back(to_json(f));
      Json config;
      config["order"] = order;
      write_json(out, envelope(std::move(rows), std::move(config)));
      break;
    }
  }
  return static_cast<int>(ExitCode::Ok);
}

// ---------------------------------------------------------------- scan

struct ScanOptions {
  double omega0 = 1.0;
  double a_min = 0.0;
  double a_max = 1.0;
  int points = 11;
  std::vector<std::string> methods{"extrap8"};
  int order = 8;
  FloquetFlags floquet;
};

inline std::vector<double> amplitude_grid(double a_min, double a_max, int points) {
  if (!(a_min >= 0.0) || !(a_max > a_min) || !std::isfinite(a_max)) {
    throw std::invalid_argument("scan: need 0 <= a_min < a_max");
  }
  if (points < 2) {
    throw std::invalid_argument("scan: points must be >= 2");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (a_max - a_min) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = a_min + i * step;
  grid.back() = a_max;
  return grid;
}

inline int cmd_scan(const ScanOptions& o, Format fmt, int parallel, std::ostream& out, std::ostream& err) {
  const auto grid = amplitude_grid(o.a_min, o.a_max, o.points);
  const auto methods = parse_methods(o.methods, o.order);
  const FloquetConfig cfg = o.floquet.config();
  const RabiParams base(o.omega0, 0.0);
  const std::size_t cols = methods.size();

  auto results = parallel_map<double>(grid.size() * cols, parallel, [&](std::size_t i) {
    return compute(methods[i % cols], RabiParams(base.omega0(), grid[i / cols]), cfg).shift;
  });

  int code = static_cast<int>(ExitCode::Ok);
  Json jrows = Json::array();
  if (fmt == Format::Csv) out << "amplitude,method,shift\n";
  if (fmt == Format::Text) {
    out << std::left << std::setw(14) << "amplitude" << std::setw(14) << "method" << "shift\n";
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double a = grid[i / cols];
    const std::string name = methods[i % cols].name();
    std::optional<double> shift;
    if (auto* e = std::get_if<std::exception_ptr>(&results[i])) {
      err << "error: amplitude " << fixed6(a) << ", " << name << ": " << describe(*e) << '\n';
      code = static_cast<int>(ExitCode::Numerical);
    } else {
      shift = std::get<double>(results[i]);
    }
    const std::string s = shift ? fixed6(*shift) : std::string("ERR");
    switch (fmt) {
      case Format::Text:
        out << std::setw(14) << fixed6(a) << std::setw(14) << name << s << '\n';
        break;
      case Format::Csv:
        out << fixed6(a) << ',' << name << ',' << s << '\n';
        break;
      case Format::Json: {
        Json jr;
        jr["amplitude"] = a;
        jr["method"] = name;
        jr["shift"] = shift ? Json(*shift) : Json(nullptr);
        jrows.push_back(std::move(jr));
        break;
      }
    }
  }
  if (fmt == Format::Json) {
    Json config;
    config["omega0"] = o.omega0;
    config["a_min"] = o.a_min;
    config["a_max"] = o.a_max;
    config["points"] = o.points;
    config["floquet"] = o.floquet.to_json();
    write_json(out, envelope(std::move(jrows), std::move(config)));
  }
  return code;
}

// ---------------------------------------------------------------- entry

/// Full command line: argv[0] is the program name. Returns the exit code.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bloch-Siegert shift of the Rabi model: closed-form approximations and Floquet reference",
               argv.empty() ? "bsshift" : argv.front()};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string format = "text";
  int parallel = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

  ShiftOptions shift;
  auto* shift_cmd = app.add_subcommand("shift", "Compute the shift for one (omega0, A)");
  shift_cmd->fallthrough();
  shift_cmd->add_option("--omega0", shift.omega0, "Level splitting")->required();
  shift_cmd->add_option("--amplitude", shift.amplitude, "Drive amplitude A")->required();
  shift_cmd->add_option("--method,--methods", shift.methods,
                        "pt, extrap, rwa, asymptotic, floquet (ptN / extrapN pick the order)")
      ->delimiter(',')
      ->capture_default_str();
  shift_cmd->add_option("--order", shift.order, "Order for bare pt / extrap")->capture_default_str();
  shift.floquet.add_to(*shift_cmd);

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "Relative shifts for a list of A/omega0 ratios (omega0 = 1)");
  table_cmd->fallthrough();
  table_cmd->add_option("--ratios", table.ratios, "A/omega0 values")->delimiter(',');
  table_cmd->add_option("--methods", table.methods, "Columns")->delimiter(',')->capture_default_str();
  table_cmd->add_flag("--fast", table.fast, "Replace the numerical column by extrap8");
  table.floquet.add_to(*table_cmd);

  int coeff_order = 8;
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Exact radicand coefficients of a closed form");
  coeffs_cmd->fallthrough();
  coeffs_cmd->add_option("--order", coeff_order, "2, 4, 6 or 8")->capture_default_str();

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Shift versus amplitude on an even grid");
  scan_cmd->fallthrough();
  scan_cmd->add_option("--omega0", scan.omega0, "Level splitting")->capture_default_str();
  scan_cmd->add_option("--a-min", scan.a_min, "Smallest amplitude")->capture_default_str();
  scan_cmd->add_option("--a-max", scan.a_max, "Largest amplitude")->capture_default_str();
  scan_cmd->add_option("--points", scan.points, "Grid points")->capture_default_str();
  scan_cmd->add_option("--method,--methods", scan.methods, "Methods")->delimiter(',')->capture_default_str();
  scan_cmd->add_option("--order", scan.order, "Order for bare pt / extrap")->capture_default_str();
  scan.floquet.add_to(*scan_cmd);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);  // --help / --version
      return static_cast<int>(ExitCode::Ok);
    }
    err << "usage error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  }

  const Format fmt = format == "csv" ? Format::Csv : (format == "json" ? Format::Json : Format::Text);
  try {
    if (*shift_cmd) return cmd_shift(shift, fmt, parallel, out, err);
    if (*table_cmd) return cmd_table(table, fmt, parallel, out, err);
    if (*coeffs_cmd) return cmd_coeffs(coeff_order, fmt, out);
    if (*scan_cmd) return cmd_scan(scan, fmt, parallel, out, err);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  } catch (const FloquetError& e) {
    err << "error: " << e.what() << ' ' << diagnostics_str(e.diagnostics()) << '\n';
    return static_cast<int>(ExitCode::Numerical);
  }
  return static_cast<int>(ExitCode::Usage);
}

}  // namespace bsshift::cli

#endif  // BSSHIFT_CLI_HPP
