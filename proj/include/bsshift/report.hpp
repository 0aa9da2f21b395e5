#ifndef BSSHIFT_REPORT_HPP
#define BSSHIFT_REPORT_HPP

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bsshift {

/// Level splitting omega0 and drive amplitude A of the Rabi Hamiltonian
///   H(t) = omega0/2 sigma_z + A/2 cos(omega t) sigma_x.
class RabiParams {
public:
  RabiParams(double omega0, double amplitude) : omega0_(omega0), amplitude_(amplitude) {
    if (!std::isfinite(omega0) || omega0 <= 0.0) {
      throw std::invalid_argument("RabiParams: omega0 must be finite and > 0");
    }
    if (!std::isfinite(amplitude) || amplitude < 0.0) {
      throw std::invalid_argument("RabiParams: amplitude must be finite and >= 0");
    }
  }

  double omega0() const noexcept { return omega0_; }
  double amplitude() const noexcept { return amplitude_; }
  /// Dimensionless drive strength A/omega0.
  double ratio() const noexcept { return amplitude_ / omega0_; }

  RabiParams scaled(double lambda) const { return RabiParams(lambda * omega0_, lambda * amplitude_); }

private:
  double omega0_;
  double amplitude_;
};

enum class Method {
  PT2,
  PT4,
  PT6,
  PT8,
  EXTRAP2,
  EXTRAP4,
  EXTRAP6,
  EXTRAP8,
  RWA,
  ASYMPTOTIC,
  FLOQUET,
};

inline constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::PT2: return "PT2";
    case Method::PT4: return "PT4";
    case Method::PT6: return "PT6";
    case Method::PT8: return "PT8";
    case Method::EXTRAP2: return "EXTRAP2";
    case Method::EXTRAP4: return "EXTRAP4";
    case Method::EXTRAP6: return "EXTRAP6";
    case Method::EXTRAP8: return "EXTRAP8";
    case Method::RWA: return "RWA";
    case Method::ASYMPTOTIC: return "ASYMPTOTIC";
    case Method::FLOQUET: return "FLOQUET";
  }
  return "UNKNOWN";
}

inline Method pt_method(int order) {
  switch (order) {
    case 2: return Method::PT2;
    case 4: return Method::PT4;
    case 6: return Method::PT6;
    case 8: return Method::PT8;
    default: throw std::invalid_argument("pt order must be one of 2, 4, 6, 8");
  }
}

inline Method extrap_method(int order) {
  switch (order) {
    case 2: return Method::EXTRAP2;
    case 4: return Method::EXTRAP4;
    case 6: return Method::EXTRAP6;
    case 8: return Method::EXTRAP8;
    default: throw std::invalid_argument("extrapolation order must be one of 2, 4, 6, 8");
  }
}

using DiagnosticValue = std::variant<long long, double, std::string, std::vector<double>>;
using Diagnostics = std::map<std::string, DiagnosticValue>;

/// Result of one shift computation. The resonance frequency is derived from
/// the shift, never stored separately.
struct ShiftReport {
  Method method;
  RabiParams params;
  double shift = 0.0;
  Diagnostics diagnostics;

  double resonance() const noexcept { return params.omega0() + shift; }

  template <typename T>
  std::optional<T> diagnostic(const std::string& key) const {
    const auto it = diagnostics.find(key);
    if (it == diagnostics.end()) {
      return std::nullopt;
    }
    if (const T* v = std::get_if<T>(&it->second)) {
      return *v;
    }
    return std::nullopt;
  }
};

/// Informational driving-regime label for A/omega0.
inline std::string regime_label(double ratio) {
  if (ratio < 0.5) return "weak";
  if (ratio > 5.0) return "strong";
  return "intermediate";
}

}  // namespace bsshift

#endif  // BSSHIFT_REPORT_HPP
