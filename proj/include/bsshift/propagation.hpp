#ifndef BSSHIFT_PROPAGATION_HPP
#define BSSHIFT_PROPAGATION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bsshift/report.hpp"

namespace bsshift {

class StepSizeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PropagationConfig {
  int n_periods = 500;
  int steps_per_period = 256;
  /// Initial drive phases sampled uniformly over one period.
  int n_phases = 16;
  /// Accept once halving the step changes the average by less than this.
  double halving_tol = 1e-6;
  int max_steps_per_period = 1 << 14;
  double norm_tol = 1e-6;
};

/// Two-component state, index 0 = |down>, 1 = |up>.
using Spinor = std::array<std::complex<double>, 2>;

struct SinglePhaseEvolution {
  double avg_up = 0.0;     // mean of |<up|psi>|^2 over all steps
  double norm_drift = 0.0; // | ||psi(T)||^2 - 1 |
  Spinor final_state{};
};

/// RK4 integration of i d/dt psi = H(t) psi from psi(t0) = |down>, with
/// H(t) = omega0/2 sigma_z + A/2 cos(omega t) sigma_x and
/// t0 = phase * 2 pi / omega. Samples |<up|psi>|^2 after every step.
inline SinglePhaseEvolution evolve_single_phase(const RabiParams& p, double omega, int n_periods,
                                                int steps_per_period, double phase = 0.0) {
  const double period = 2.0 * std::numbers::pi / omega;
  const double h = period / steps_per_period;
  const double half_w0 = 0.5 * p.omega0();
  const double half_a = 0.5 * p.amplitude();
  const std::complex<double> minus_i(0.0, -1.0);

  auto rhs = [&](double t, const Spinor& s) -> Spinor {
    const double c = half_a * std::cos(omega * t);
    return {minus_i * (-half_w0 * s[0] + c * s[1]), minus_i * (c * s[0] + half_w0 * s[1])};
  };
  auto axpy = [](const Spinor& s, double a, const Spinor& k) -> Spinor {
    return {s[0] + a * k[0], s[1] + a * k[1]};
  };

  Spinor psi{1.0, 0.0};
  const double t0 = phase * period;
  const long long steps = static_cast<long long>(n_periods) * steps_per_period;
  double acc = 0.0;
  for (long long i = 0; i < steps; ++i) {
    // t from the step count, not accumulated, so long runs do not drift in phase.
    const double t = t0 + static_cast<double>(i) * h;
    const Spinor k1 = rhs(t, psi);
    const Spinor k2 = rhs(t + 0.5 * h, axpy(psi, 0.5 * h, k1));
    const Spinor k3 = rhs(t + 0.5 * h, axpy(psi, 0.5 * h, k2));
    const Spinor k4 = rhs(t + h, axpy(psi, h, k3));
    for (int j = 0; j < 2; ++j) {
      psi[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    acc += std::norm(psi[1]);
  }
  SinglePhaseEvolution out;
  out.avg_up = acc / static_cast<double>(steps);
  out.norm_drift = std::abs(std::norm(psi[0]) + std::norm(psi[1]) - 1.0);
  out.final_state = psi;
  return out;
}

struct DirectEvolution {
  double probability = 0.0;
  int steps_per_period = 0;  // the accepted (finer) step count
  double max_norm_drift = 0.0;
  double halving_change = 0.0;
};

namespace detail {

inline DirectEvolution phase_averaged(const RabiParams& p, double omega, int n_periods, int steps_per_period,
                                      int n_phases) {
  DirectEvolution r;
  r.steps_per_period = steps_per_period;
  for (int j = 0; j < n_phases; ++j) {
    const SinglePhaseEvolution e =
        evolve_single_phase(p, omega, n_periods, steps_per_period, static_cast<double>(j) / n_phases);
    r.probability += e.avg_up;
    r.max_norm_drift = std::max(r.max_norm_drift, e.norm_drift);
  }
  r.probability /= n_phases;
  return r;
}

}  // namespace detail

/// Time- and drive-phase-averaged P(down -> up) by direct propagation.
/// The step count doubles until halving the step changes the result by less
/// than cfg.halving_tol; the finer of the last two runs is returned.
inline DirectEvolution direct_evolution(const RabiParams& p, double omega, const PropagationConfig& cfg = {}) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("direct_evolution: omega must be finite and > 0");
  }
  if (cfg.n_periods < 100) {
    throw std::invalid_argument("direct_evolution: n_periods must be >= 100");
  }
  if (cfg.steps_per_period < 4 || cfg.n_phases < 1) {
    throw std::invalid_argument("direct_evolution: steps_per_period >= 4 and n_phases >= 1 required");
  }
  int spp = cfg.steps_per_period;
  DirectEvolution coarse = detail::phase_averaged(p, omega, cfg.n_periods, spp, cfg.n_phases);
  for (;;) {
    if (2 * spp > cfg.max_steps_per_period) {
      throw StepSizeError("direct_evolution: no step-size convergence up to " +
                          std::to_string(cfg.max_steps_per_period) + " steps per period");
    }
    DirectEvolution fine = detail::phase_averaged(p, omega, cfg.n_periods, 2 * spp, cfg.n_phases);
    fine.halving_change = std::abs(fine.probability - coarse.probability);
    if (fine.halving_change < cfg.halving_tol) {
      if (fine.max_norm_drift > cfg.norm_tol) {
        throw StepSizeError("direct_evolution: norm drift " + std::to_string(fine.max_norm_drift) +
                            " exceeds tolerance");
      }
      return fine;
    }
    coarse = fine;
    spp *= 2;
  }
}

inline double direct_evolution_prob(const RabiParams& p, double omega, int n_periods, int steps_per_period) {
  PropagationConfig cfg;
  cfg.n_periods = n_periods;
  cfg.steps_per_period = steps_per_period;
  return direct_evolution(p, omega, cfg).probability;
}

}  // namespace bsshift

#endif  // BSSHIFT_PROPAGATION_HPP
