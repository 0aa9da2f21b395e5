#ifndef BSSHIFT_FLOQUET_HPP
#define BSSHIFT_FLOQUET_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bsshift/approx.hpp"
#include "bsshift/golden_section.hpp"
#include "bsshift/report.hpp"
#include "bsshift/symmetric_eigen.hpp"

namespace bsshift {

enum class Spin : int { Down = 0, Up = 1 };

/// Largest Floquet matrix build_floquet_matrix will allocate by default.
inline constexpr Eigen::Index kMaxFloquetDimension = 2 * (2 * 400 + 1);

struct FloquetConfig {
  /// Photon blocks kept on each side of k = 0. Unset: ceil(A/omega) + 10.
  std::optional<int> n_photon;
  /// Absolute tolerance on omega_res. Unset: 1e-6 * omega0.
  std::optional<double> omega_tol;
  double truncation_rtol = 1e-5;
  int max_n_photon = 200;
  /// Relative half-width of the search bracket around the seed.
  double bracket_width = 0.1;
  int photon_step = 5;

  void validate() const {
    if (n_photon && *n_photon < 1) {
      throw std::invalid_argument("FloquetConfig: n_photon must be >= 1");
    }
    if (max_n_photon < 1 || (n_photon && max_n_photon < *n_photon)) {
      throw std::invalid_argument("FloquetConfig: max_n_photon must be >= n_photon");
    }
    if (omega_tol && !(*omega_tol > 0.0)) {
      throw std::invalid_argument("FloquetConfig: omega_tol must be > 0");
    }
    if (!(truncation_rtol > 0.0)) {
      throw std::invalid_argument("FloquetConfig: truncation_rtol must be > 0");
    }
    if (!(bracket_width > 0.0 && bracket_width < 1.0)) {
      throw std::invalid_argument("FloquetConfig: bracket_width must be in (0, 1)");
    }
    if (photon_step < 1) {
      throw std::invalid_argument("FloquetConfig: photon_step must be >= 1");
    }
  }
};

/// Thrown when the resonance search fails; carries what was known at the time.
class FloquetError : public std::runtime_error {
public:
  FloquetError(const std::string& what, Diagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

private:
  Diagnostics diagnostics_;
};

/// Position of |spin, k> in the truncated Floquet basis, k in [-n_photon, n_photon].
inline Eigen::Index floquet_index(Spin spin, int k, int n_photon) {
  return 2 * static_cast<Eigen::Index>(k + n_photon) + static_cast<Eigen::Index>(spin);
}

inline int default_photon_count(double amplitude, double omega) {
  return static_cast<int>(std::ceil(amplitude / omega)) + 10;
}

/// Time-independent Floquet matrix of H(t) = omega0/2 sigma_z + A/2 cos(omega t) sigma_x.
///
/// Diagonal: (+-omega0/2 + k omega) for spin up/down in photon block k.
/// cos(omega t) = (e^{i omega t} + e^{-i omega t})/2 couples blocks k and
/// k +- 1 through (A/4) sigma_x.
inline Eigen::MatrixXd build_floquet_matrix(const RabiParams& p, double omega, int n_photon,
                                            Eigen::Index max_dimension = kMaxFloquetDimension) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("build_floquet_matrix: omega must be finite and > 0");
  }
  if (n_photon < 1) {
    throw std::invalid_argument("build_floquet_matrix: n_photon must be >= 1");
  }
  const Eigen::Index dim = 2 * (2 * static_cast<Eigen::Index>(n_photon) + 1);
  if (dim > max_dimension) {
    throw std::length_error("build_floquet_matrix: dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(max_dimension));
  }
  const double half = 0.5 * p.omega0();
  const double coupling = 0.25 * p.amplitude();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = -n_photon; k <= n_photon; ++k) {
    const Eigen::Index down = floquet_index(Spin::Down, k, n_photon);
    const Eigen::Index up = floquet_index(Spin::Up, k, n_photon);
    m(down, down) = -half + k * omega;
    m(up, up) = half + k * omega;
    if (k < n_photon) {
      const Eigen::Index down_next = floquet_index(Spin::Down, k + 1, n_photon);
      const Eigen::Index up_next = floquet_index(Spin::Up, k + 1, n_photon);
      m(down, up_next) = m(up_next, down) = coupling;
      m(up, down_next) = m(down_next, up) = coupling;
    }
  }
  return m;
}

struct FloquetSpectrum {
  Eigen::VectorXd quasienergies;  // ascending
  Eigen::MatrixXd eigenvectors;   // columns, rows indexed by floquet_index
  int n_photon = 0;
  int sweeps = 0;

  double component(Spin spin, int k, Eigen::Index state) const {
    return eigenvectors(floquet_index(spin, k, n_photon), state);
  }
};

inline FloquetSpectrum quasienergy_spectrum(const Eigen::MatrixXd& m) {
  if (m.rows() % 2 != 0 || (m.rows() / 2) % 2 != 1) {
    throw std::invalid_argument("quasienergy_spectrum: dimension must be 2(2n+1)");
  }
  SymmetricEigenResult eig = symmetric_eigen(m);
  FloquetSpectrum s;
  s.quasienergies = std::move(eig.values);
  s.eigenvectors = std::move(eig.vectors);
  s.n_photon = static_cast<int>((m.rows() / 2 - 1) / 2);
  s.sweeps = eig.sweeps;
  return s;
}

struct TransitionProbabilities {
  double to_up = 0.0;    // long-time average of P(down -> up)
  double to_down = 0.0;  // long-time average of P(down -> down)
};

/// Long-time averages starting from |down> in photon block 0, averaged over
/// the initial phase of the drive:
///   P(down -> s) = sum_lambda sum_k |<s,k|lambda>|^2 |<lambda|down,0>|^2.
inline TransitionProbabilities transition_probabilities(const FloquetSpectrum& s) {
  TransitionProbabilities out;
  const Eigen::Index start = floquet_index(Spin::Down, 0, s.n_photon);
  for (Eigen::Index lambda = 0; lambda < s.eigenvectors.cols(); ++lambda) {
    const double w0 = s.eigenvectors(start, lambda) * s.eigenvectors(start, lambda);
    double up = 0.0;
    double down = 0.0;
    for (int k = -s.n_photon; k <= s.n_photon; ++k) {
      const double cu = s.component(Spin::Up, k, lambda);
      const double cd = s.component(Spin::Down, k, lambda);
      up += cu * cu;
      down += cd * cd;
    }
    out.to_up += up * w0;
    out.to_down += down * w0;
  }
  return out;
}

inline double time_avg_transition_prob(const RabiParams& p, double omega, int n_photon) {
  return transition_probabilities(quasienergy_spectrum(build_floquet_matrix(p, omega, n_photon))).to_up;
}

inline double time_avg_transition_prob(const RabiParams& p, double omega, const FloquetConfig& cfg) {
  cfg.validate();
  return time_avg_transition_prob(p, omega, cfg.n_photon.value_or(default_photon_count(p.amplitude(), omega)));
}

namespace detail {

struct PeakSearch {
  double omega = 0.0;
  double peak = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int evals = 0;
  bool at_edge = false;
};

inline PeakSearch search_peak(const RabiParams& p, int n_photon, double lo, double hi, double tol) {
  auto prob = [&](double omega) { return time_avg_transition_prob(p, omega, n_photon); };
  const GoldenSectionResult g = golden_section_maximize(prob, lo, hi, tol);
  PeakSearch s;
  s.omega = g.x;
  s.peak = g.value;
  s.lo = lo;
  s.hi = hi;
  s.evals = g.evals;
  s.at_edge = (g.x - lo) < 2.0 * tol || (hi - g.x) < 2.0 * tol;
  return s;
}

}  // namespace detail

/// Locates omega_res as the maximum of the time-averaged transition
/// probability. The bracket is seeded from the order-8 closed form, and the
/// photon truncation grows by photon_step until omega_res is stable to
/// truncation_rtol.
inline ShiftReport find_resonance(const RabiParams& p, const FloquetConfig& cfg = {}) {
  cfg.validate();
  ShiftReport report{Method::FLOQUET, p, 0.0, {}};
  if (p.amplitude() == 0.0) {
    report.diagnostics["n_photon_final"] = 0LL;
    report.diagnostics["peak_prob"] = 0.0;
    report.diagnostics["bracket"] = std::vector<double>{p.omega0(), p.omega0()};
    report.diagnostics["evals"] = 0LL;
    return report;
  }

  const double seed = p.omega0() + extrapolated_shift_value(p.omega0(), p.amplitude(), 8);
  const double tol = cfg.omega_tol.value_or(1e-6 * p.omega0());
  int n_photon = cfg.n_photon.value_or(default_photon_count(p.amplitude(), seed));
  double width = cfg.bracket_width;
  bool widened = false;
  long long evals = 0;

  auto diagnostics_so_far = [&](const detail::PeakSearch& s) {
    Diagnostics d;
    d["n_photon_final"] = static_cast<long long>(n_photon);
    d["peak_prob"] = s.peak;
    d["bracket"] = std::vector<double>{s.lo, s.hi};
    d["evals"] = evals;
    d["omega_at_failure"] = s.omega;
    return d;
  };

  auto search = [&]() {
    if (n_photon > cfg.max_n_photon) {
      Diagnostics d;
      d["n_photon_final"] = static_cast<long long>(n_photon);
      d["evals"] = evals;
      throw FloquetError("find_resonance: truncation did not converge within max_n_photon = " +
                             std::to_string(cfg.max_n_photon),
                         std::move(d));
    }
    for (;;) {
      const double lo = seed * (1.0 - width);
      const double hi = seed * (1.0 + width);
      detail::PeakSearch s = detail::search_peak(p, n_photon, lo, hi, tol);
      evals += s.evals;
      if (!s.at_edge) {
        return s;
      }
      if (widened || width * 2.0 >= 1.0) {
        throw FloquetError("find_resonance: transition probability has no interior maximum in bracket",
                           diagnostics_so_far(s));
      }
      width *= 2.0;
      widened = true;
    }
  };

  detail::PeakSearch previous = search();
  for (;;) {
    n_photon += cfg.photon_step;
    detail::PeakSearch current = search();
    const double change = std::abs(current.omega - previous.omega) / current.omega;
    if (change < cfg.truncation_rtol) {
      report.shift = current.omega - p.omega0();
      report.diagnostics["n_photon_final"] = static_cast<long long>(n_photon);
      report.diagnostics["peak_prob"] = current.peak;
      report.diagnostics["bracket"] = std::vector<double>{current.lo, current.hi};
      report.diagnostics["evals"] = evals;
      report.diagnostics["truncation_change"] = change;
      report.diagnostics["regime"] = regime_label(p.ratio());
      return report;
    }
    previous = current;
  }
}

}  // namespace bsshift

#endif  // BSSHIFT_FLOQUET_HPP
