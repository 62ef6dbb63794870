// measures.hpp
// Pauli-basis outcome statistics, conditional Shannon entropies, the
// entropic-uncertainty steering functional and quantifier, and the
// conditional entropy-squeezing factors built on top of them.
//
// All entropies are in nats.

#pragma once

#include <array>
#include <numbers>
#include <span>

#include "neur/qstate.hpp"

namespace neur {

enum class PauliAxis { X, Y, Z };

inline constexpr std::array<PauliAxis, 3> kAllAxes{PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

const char* to_string(PauliAxis axis) noexcept;

/// Eigenvectors of the Pauli operator, +1 eigenvalue first. Y uses
/// (|0> +- i|1>)/sqrt2.
std::array<Vec2, 2> pauli_eigenvectors(PauliAxis axis);

inline constexpr double kLn2 = std::numbers::ln2;
/// Qubit steering bound 2 ln 2.
inline constexpr double kSteeringBound = 2.0 * kLn2;
/// Functional value reached by Bell states, 6 ln 2.
inline constexpr double kFunctionalMax = 6.0 * kLn2;

namespace tolerance {
inline constexpr double kProbabilityClamp = 1e-10;
inline constexpr double kPathAgreement = 1e-9;
/// Functional excess over 2 ln 2 below which the state counts as unsteerable.
inline constexpr double kSteeringZero = 1e-12;
/// Squeezing factors at or below this are reported as exactly zero.
inline constexpr double kSqueezingZero = 1e-12;
}  // namespace tolerance

/// Outcome probabilities for (A,B) = (1,1),(1,2),(2,1),(2,2), where 1 is the
/// +1 eigenvector.
struct JointDistribution {
  std::array<double, 4> p{};
};

struct MarginalDistribution {
  std::array<double, 2> p{};
};

/// Coefficients x_ij (i = axis X,Y,Z; j = outcome) and a_k of the closed-form
/// functional. Row i holds 4*P_i - 1 with outcomes ordered ++, --, +-, -+ for
/// X and Y and 00, 01, 10, 11 for Z.
struct XCoefficients {
  std::array<std::array<double, 4>, 3> x{};
  std::array<double, 2> a{};
};

struct SteeringReport {
  std::array<double, 3> h_cond{};  // X, Y, Z
  double i_ab = 0.0;
  double s = 0.0;
  std::array<double, 3> xi{};  // X, Y, Z
  double e_x = 0.0;
  double e_y = 0.0;
  double z = 0.0;
};

JointDistribution joint_distribution(const TwoQubitDensity& rho, PauliAxis axis);
MarginalDistribution marginal_distribution(const SingleQubitDensity& rho_a, PauliAxis axis);

/// -sum p ln p with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> p);

/// H(sigma_B | sigma_A) for the same Pauli axis on both sides. May be negative.
double conditional_entropy(const TwoQubitDensity& rho, PauliAxis axis);

XCoefficients x_coefficients(const XStateParams& p);

/// Closed-form steering functional I_AB of an X-state.
double steering_functional(const XStateParams& p);

/// The same functional through measured entropies: 6 ln2 - 2 sum_i H_i.
/// Valid for any two-qubit state.
double steering_functional_from_entropies(const TwoQubitDensity& rho);

/// Right-hand side of the even-N entropic steering bound.
double neur_bound(int n);

/// max{0, (i_ab - 2 ln2) / (6 ln2 - 2 ln2)}, capped at 1.
double steering_from_functional(double i_ab);

double one_way_steering(const XStateParams& p);

/// exp of the conditional entropy; lies in [1/2, 2].
double xi(const TwoQubitDensity& rho, PauliAxis axis);

/// max{0, 2/sqrt(Xi_z) - Xi_axis}; axis must be X or Y.
double squeezing_factor(const TwoQubitDensity& rho, PauliAxis axis);

/// Average of the X and Y squeezing factors.
double steerability_z(const TwoQubitDensity& rho);

/// Every derived quantity for one state. For X-states the functional is
/// computed both in closed form and through the entropy identity; a mismatch
/// beyond tolerance::kPathAgreement throws Error{PathDisagreement}.
SteeringReport full_report(const TwoQubitDensity& rho);

}  // namespace neur
