// measures.cpp

#include "neur/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "neur/error.hpp"

namespace neur {

namespace {

// Clamps sub-tolerance excursions outside [0,1]; a clamped distribution is
// renormalized, an untouched one is returned bit-for-bit.
template <std::size_t N>
std::array<double, N> clean_distribution(const std::array<double, N>& raw) {
  std::array<double, N> out{};
  double total = 0.0;
  bool clamped = false;
  for (std::size_t i = 0; i < N; ++i) {
    if (raw[i] < -tolerance::kProbabilityClamp) {
      std::ostringstream os;
      os << "outcome " << i << " has probability " << raw[i];
      throw Error(ErrorKind::NegativeProbability, os.str());
    }
    out[i] = std::clamp(raw[i], 0.0, 1.0);
    clamped = clamped || out[i] != raw[i];
    total += out[i];
  }
  if (clamped) {
    for (double& v : out) v /= total;
  }
  return out;
}

Vec4 product_vector(const Vec2& a, const Vec2& b) {
  return Vec4(a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1));
}

double expectation(const Mat2& m, const Vec2& v) { return (v.adjoint() * m * v)(0, 0).real(); }

double expectation(const Mat4& m, const Vec4& v) { return (v.adjoint() * m * v)(0, 0).real(); }

// (1+x) ln(1+x) with the zero-argument term dropped.
double xlogx_shifted(double x) {
  const double y = 1.0 + x;
  return y > 0.0 ? y * std::log(y) : 0.0;
}

}  // namespace

const char* to_string(PauliAxis axis) noexcept {
  switch (axis) {
    case PauliAxis::X: return "x";
    case PauliAxis::Y: return "y";
    case PauliAxis::Z: return "z";
  }
  return "?";
}

std::array<Vec2, 2> pauli_eigenvectors(PauliAxis axis) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  switch (axis) {
    case PauliAxis::X: return {Vec2(h, h), Vec2(h, -h)};
    case PauliAxis::Y: return {Vec2(h, h * i), Vec2(h, -h * i)};
    case PauliAxis::Z: return {Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  }
  throw Error(ErrorKind::InvalidParameters, "unknown Pauli axis");
}

JointDistribution joint_distribution(const TwoQubitDensity& rho, PauliAxis axis) {
  const auto basis = pauli_eigenvectors(axis);
  std::array<double, 4> raw{};
  for (int n = 0; n < 2; ++n) {
    for (int m = 0; m < 2; ++m) {
      const Vec4 v = product_vector(basis[n], basis[m]);
      raw[2 * n + m] = expectation(rho.matrix(), v);
    }
  }
  return JointDistribution{clean_distribution(raw)};
}

MarginalDistribution marginal_distribution(const SingleQubitDensity& rho_a, PauliAxis axis) {
  const auto basis = pauli_eigenvectors(axis);
  const std::array<double, 2> raw{expectation(rho_a.matrix(), basis[0]),
                                  expectation(rho_a.matrix(), basis[1])};
  return MarginalDistribution{clean_distribution(raw)};
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double conditional_entropy(const TwoQubitDensity& rho, PauliAxis axis) {
  const auto joint = joint_distribution(rho, axis);
  const auto marginal = marginal_distribution(partial_trace_b(rho), axis);
  return shannon_entropy(joint.p) - shannon_entropy(marginal.p);
}

XCoefficients x_coefficients(const XStateParams& p) {
  XCoefficients c;
  const double sum = 2.0 * (p.c14 + p.c23);
  const double diff = 2.0 * (p.c23 - p.c14);
  c.x[0] = {sum, sum, -sum, -sum};
  c.x[1] = {diff, diff, -diff, -diff};
  const std::array<double, 4> d{p.d1, p.d2, p.d3, p.d4};
  const double total = p.d1 + p.d2 + p.d3 + p.d4;
  for (std::size_t j = 0; j < 4; ++j) c.x[2][j] = 3.0 * d[j] - (total - d[j]);
  const double bias = p.d1 + p.d2 - p.d3 - p.d4;
  c.a = {-bias, bias};
  return c;
}

double steering_functional(const XStateParams& p) {
  p.validate();
  const auto c = x_coefficients(p);
  double joint = 0.0;
  for (const auto& row : c.x) {
    for (double x : row) joint += 0.5 * xlogx_shifted(x);
  }
  double marginal = 0.0;
  for (double a : c.a) marginal += xlogx_shifted(a);
  return joint - marginal;
}

double steering_functional_from_entropies(const TwoQubitDensity& rho) {
  double total = 0.0;
  for (PauliAxis axis : kAllAxes) total += conditional_entropy(rho, axis);
  return kFunctionalMax - 2.0 * total;
}

double neur_bound(int n) {
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorKind::InvalidParameters,
                "dimension must be an even integer >= 2, got " + std::to_string(n));
  }
  const double half = n / 2.0;
  return half * std::log(half) + (1.0 + half) * std::log(1.0 + half);
}

double steering_from_functional(double i_ab) {
  const double excess = i_ab - kSteeringBound;
  if (excess <= tolerance::kSteeringZero) return 0.0;
  return std::min(1.0, excess / (kFunctionalMax - kSteeringBound));
}

double one_way_steering(const XStateParams& p) {
  return steering_from_functional(steering_functional(p));
}

double xi(const TwoQubitDensity& rho, PauliAxis axis) {
  return std::exp(conditional_entropy(rho, axis));
}

namespace {

double squeezing_from_xi(double xi_z, double xi_axis) {
  const double e = 2.0 / std::sqrt(xi_z) - xi_axis;
  return e <= tolerance::kSqueezingZero ? 0.0 : e;
}

}  // namespace

double squeezing_factor(const TwoQubitDensity& rho, PauliAxis axis) {
  if (axis == PauliAxis::Z) {
    throw Error(ErrorKind::InvalidParameters, "squeezing factor is defined for X and Y only");
  }
  return squeezing_from_xi(xi(rho, PauliAxis::Z), xi(rho, axis));
}

double steerability_z(const TwoQubitDensity& rho) {
  const double e_x = squeezing_factor(rho, PauliAxis::X);
  const double e_y = squeezing_factor(rho, PauliAxis::Y);
  return std::max(0.0, 0.5 * (e_x + e_y));
}

SteeringReport full_report(const TwoQubitDensity& rho) {
  SteeringReport r;
  for (std::size_t i = 0; i < kAllAxes.size(); ++i) {
    r.h_cond[i] = conditional_entropy(rho, kAllAxes[i]);
    r.xi[i] = std::exp(r.h_cond[i]);
  }
  const double from_entropies = kFunctionalMax - 2.0 * (r.h_cond[0] + r.h_cond[1] + r.h_cond[2]);
  if (rho.is_x_state()) {
    r.i_ab = steering_functional(rho.x_params());
    if (std::abs(r.i_ab - from_entropies) > tolerance::kPathAgreement) {
      std::ostringstream os;
      os.precision(17);
      os << "closed-form functional " << r.i_ab << " vs entropy identity " << from_entropies;
      throw Error(ErrorKind::PathDisagreement, os.str());
    }
  } else {
    r.i_ab = from_entropies;
  }
  r.s = steering_from_functional(r.i_ab);
  r.e_x = squeezing_from_xi(r.xi[2], r.xi[0]);
  r.e_y = squeezing_from_xi(r.xi[2], r.xi[1]);
  r.z = std::max(0.0, 0.5 * (r.e_x + r.e_y));
  return r;
}

}  // namespace neur
