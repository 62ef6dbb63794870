// processes.hpp
// Physical processes acting on two-qubit states: uniform acceleration of
// either qubit, local non-Markovian noise described by Kraus operators, and
// entanglement swapping through a Bell-state projection.

#pragma once

#include <vector>

#include "neur/qstate.hpp"

namespace neur {

/// Acceleration parameters of qubits A and B, each in [0, pi/4].
struct AccelerationParams {
  double r_a = 0.0;
  double r_b = 0.0;

  void validate() const;
};

/// Time is measured as the dimensionless pair (g/gamma, gamma*t).
struct ChannelParams {
  double g_over_gamma = 0.1;
  double gamma_t = 0.0;

  void validate() const;
};

namespace tolerance {
inline constexpr double kCompleteness = 1e-12;
inline constexpr double kOutcomeProbability = 1e-12;
}  // namespace tolerance

class KrausChannel {
 public:
  /// Throws Error{InvalidParameters} unless sum K^dagger K = I elementwise
  /// within tolerance::kCompleteness.
  static KrausChannel from_operators(std::vector<Mat2> ops);
  static KrausChannel identity();

  const std::vector<Mat2>& operators() const noexcept { return ops_; }

  /// Largest elementwise deviation of sum K^dagger K from the identity.
  double completeness_error() const;

 private:
  explicit KrausChannel(std::vector<Mat2> ops) : ops_(std::move(ops)) {}
  std::vector<Mat2> ops_;
};

/// Closed-form accelerated state of the nu-family bell_mixture(nu).
TwoQubitDensity accelerate(double nu, const AccelerationParams& acc);

/// Same state computed by lifting each qubit into its two Rindler regions,
/// forming the pure-state mixture in the enlarged space, and tracing out
/// region II of both qubits.
TwoQubitDensity accelerate_oracle(double nu, const AccelerationParams& acc);

/// Excited-state survival probability e^{-gt}[cos(lt/2) + (g/l) sin(lt/2)]^2,
/// l = sqrt(g(2 gamma - g)). Requires g/gamma < 2.
double amplitude_damping_survival(const ChannelParams& cp);

/// Coherence factor exp{-gamma/2 (t + (e^{-gt} - 1)/g)}.
double dephasing_factor(const ChannelParams& cp);

/// {|0><0| + sqrt(P)|1><1|, sqrt(1-P)|0><1|}; the identity map at gamma_t = 0.
KrausChannel amplitude_damping_kraus(const ChannelParams& cp);

/// {|0><0| + P|1><1|, sqrt(1-P^2)|1><1|}.
KrausChannel dephasing_kraus(const ChannelParams& cp);

/// sum_ij (K_i^A (x) K_j^B) rho (K_i^A (x) K_j^B)^dagger.
TwoQubitDensity apply_local_channel(const TwoQubitDensity& rho, const KrausChannel& ch_a,
                                    const KrausChannel& ch_b);

/// Post-selected state of qubits 1 and 4 after projecting qubits 2,3 of
/// rho12 (x) rho34 onto the given Bell state. Throws
/// Error{ZeroProbabilityOutcome} when that outcome has probability below
/// tolerance::kOutcomeProbability.
TwoQubitDensity bell_project_swap(const TwoQubitDensity& rho12, const TwoQubitDensity& rho34,
                                  BellIndex which);

/// Probability of the Bell outcome used by bell_project_swap.
double bell_outcome_probability(const TwoQubitDensity& rho12, const TwoQubitDensity& rho34,
                                BellIndex which);

}  // namespace neur
