// qstate.hpp
// One-, two- and four-qubit density operators in the computational basis.
//
// Basis order is |00>,|01>,|10>,|11> with qubit A as the left Kronecker
// factor. Every density type validates Hermiticity, unit trace and positive
// semidefiniteness on construction and is immutable afterwards.

#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace neur {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<Complex, 16, 16>;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

namespace tolerance {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kEigenvalue = -1e-10;
inline constexpr double kXParams = 1e-12;
}  // namespace tolerance

/// The six real numbers of a two-qubit X-state: the diagonal d1..d4 and the
/// anti-diagonal coherences <00|rho|11> = c14 and <01|rho|10> = c23.
struct XStateParams {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d4 = 0.0;
  double c14 = 0.0;
  double c23 = 0.0;

  /// Throws Error{InvalidParameters} naming the first violated condition.
  void validate() const;

  bool operator==(const XStateParams&) const = default;
};

class SingleQubitDensity {
 public:
  /// Validates and wraps a 2x2 matrix.
  static SingleQubitDensity from_matrix(const Mat2& m);

  const Mat2& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  explicit SingleQubitDensity(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

class TwoQubitDensity {
 public:
  static TwoQubitDensity from_matrix(const Mat4& m);

  const Mat4& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  /// True when every entry off the diagonal and anti-diagonal is below `tol`
  /// and the remaining entries are real to within `tol`.
  bool is_x_state(double tol = tolerance::kXParams) const;

  /// Reads back the six X-state entries. Throws Error{InvalidState} if the
  /// operator is not a real X-state.
  XStateParams x_params(double tol = tolerance::kXParams) const;

 private:
  explicit TwoQubitDensity(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

/// Density operator of qubits 1,2,3,4 (qubit 1 leftmost).
class FourQubitDensity {
 public:
  static FourQubitDensity from_matrix(const Mat16& m);

  const Mat16& matrix() const noexcept { return m_; }

 private:
  explicit FourQubitDensity(const Mat16& m) : m_(m) {}
  Mat16 m_;
};

/// psi = (|00>+|11>)/sqrt2, phi = (|01>+|10>)/sqrt2 and their minus-sign
/// partners.
enum class BellIndex { Psi, Phi, PsiMinus, PhiMinus };

Vec4 bell_vector(BellIndex which);
const char* to_string(BellIndex which) noexcept;

TwoQubitDensity from_x_params(const XStateParams& p);

/// nu |phi><phi| + (1 - nu) |psi><psi|.
XStateParams bell_mixture(double nu);

SingleQubitDensity partial_trace_b(const TwoQubitDensity& rho);

FourQubitDensity tensor(const TwoQubitDensity& a, const TwoQubitDensity& b);

/// Deterministic valid X-state for property tests.
XStateParams random_x_state(std::uint64_t seed);

/// Eigenvalues of an X-state from its two 2x2 blocks {(d1,d4,c14),(d2,d3,c23)}.
std::array<double, 4> x_block_eigenvalues(const XStateParams& p);

/// Pure-state projector |v><v| for a normalized vector.
TwoQubitDensity pure_state(const Vec4& v);

}  // namespace neur
