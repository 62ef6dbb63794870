// qstate.cpp

#include "neur/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "neur/error.hpp"

namespace neur {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameters: return "invalid-parameters";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::NegativeProbability: return "negative-probability";
    case ErrorKind::PathDisagreement: return "path-disagreement";
    case ErrorKind::InvalidRate: return "invalid-rate";
    case ErrorKind::ZeroProbabilityOutcome: return "zero-probability-outcome";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

template <typename Matrix>
void validate_density(const Matrix& m, const char* what) {
  const auto n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tolerance::kHermitian) {
        std::ostringstream os;
        os << what << " is not Hermitian at (" << i << "," << j << ")";
        throw Error(ErrorKind::InvalidState, os.str());
      }
    }
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tolerance::kTrace) {
    std::ostringstream os;
    os << what << " has trace " << tr.real() << "+" << tr.imag() << "i";
    throw Error(ErrorKind::InvalidState, os.str());
  }
  // Symmetrize before solving so that sub-tolerance asymmetry cannot leak in.
  const Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < tolerance::kEigenvalue) {
    std::ostringstream os;
    os << what << " has negative eigenvalue " << min_eig;
    throw Error(ErrorKind::InvalidState, os.str());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidParameters, message);
}

}  // namespace

void XStateParams::validate() const {
  const std::array<double, 6> all{d1, d2, d3, d4, c14, c23};
  for (double v : all) require(std::isfinite(v), "non-finite X-state entry");
  const std::array<double, 4> diag{d1, d2, d3, d4};
  for (std::size_t i = 0; i < diag.size(); ++i) {
    require(diag[i] >= -tolerance::kXParams && diag[i] <= 1.0 + tolerance::kXParams,
            "diagonal d" + std::to_string(i + 1) + " outside [0,1]");
  }
  require(std::abs(d1 + d2 + d3 + d4 - 1.0) <= tolerance::kXParams,
          "diagonal entries do not sum to 1");
  require(c14 * c14 <= d1 * d4 + tolerance::kXParams, "c14^2 exceeds d1*d4");
  require(c23 * c23 <= d2 * d3 + tolerance::kXParams, "c23^2 exceeds d2*d3");
}

SingleQubitDensity SingleQubitDensity::from_matrix(const Mat2& m) {
  validate_density(m, "single-qubit density");
  return SingleQubitDensity(m);
}

TwoQubitDensity TwoQubitDensity::from_matrix(const Mat4& m) {
  validate_density(m, "two-qubit density");
  return TwoQubitDensity(m);
}

FourQubitDensity FourQubitDensity::from_matrix(const Mat16& m) {
  validate_density(m, "four-qubit density");
  return FourQubitDensity(m);
}

bool TwoQubitDensity::is_x_state(double tol) const {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool on_x = (i == j) || (i + j == 3);
      if (on_x) {
        if (std::abs(m_(i, j).imag()) > tol) return false;
      } else if (std::abs(m_(i, j)) > tol) {
        return false;
      }
    }
  }
  return true;
}

XStateParams TwoQubitDensity::x_params(double tol) const {
  if (!is_x_state(tol)) {
    throw Error(ErrorKind::InvalidState, "operator is not a real X-state");
  }
  // The anti-diagonal pairs are averaged; Hermiticity makes them equal.
  return XStateParams{m_(0, 0).real(),
                      m_(1, 1).real(),
                      m_(2, 2).real(),
                      m_(3, 3).real(),
                      0.5 * (m_(0, 3).real() + m_(3, 0).real()),
                      0.5 * (m_(1, 2).real() + m_(2, 1).real())};
}

Vec4 bell_vector(BellIndex which) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (which) {
    case BellIndex::Psi: return Vec4(h, 0.0, 0.0, h);
    case BellIndex::Phi: return Vec4(0.0, h, h, 0.0);
    case BellIndex::PsiMinus: return Vec4(h, 0.0, 0.0, -h);
    case BellIndex::PhiMinus: return Vec4(0.0, h, -h, 0.0);
  }
  throw Error(ErrorKind::InvalidParameters, "unknown Bell index");
}

const char* to_string(BellIndex which) noexcept {
  switch (which) {
    case BellIndex::Psi: return "psi";
    case BellIndex::Phi: return "phi";
    case BellIndex::PsiMinus: return "psi-minus";
    case BellIndex::PhiMinus: return "phi-minus";
  }
  return "unknown";
}

TwoQubitDensity from_x_params(const XStateParams& p) {
  p.validate();
  Mat4 m = Mat4::Zero();
  m(0, 0) = p.d1;
  m(1, 1) = p.d2;
  m(2, 2) = p.d3;
  m(3, 3) = p.d4;
  m(0, 3) = m(3, 0) = p.c14;
  m(1, 2) = m(2, 1) = p.c23;
  return TwoQubitDensity::from_matrix(m);
}

XStateParams bell_mixture(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw Error(ErrorKind::InvalidParameters, "nu must lie in [0,1], got " + std::to_string(nu));
  }
  const double outer = (1.0 - nu) / 2.0;
  const double inner = nu / 2.0;
  return XStateParams{outer, inner, inner, outer, outer, inner};
}

SingleQubitDensity partial_trace_b(const TwoQubitDensity& rho) {
  Mat2 out = Mat2::Zero();
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      for (int k = 0; k < 2; ++k) out(m, n) += rho(2 * m + k, 2 * n + k);
    }
  }
  return SingleQubitDensity::from_matrix(out);
}

FourQubitDensity tensor(const TwoQubitDensity& a, const TwoQubitDensity& b) {
  Mat16 out;
  const Mat4& ma = a.matrix();
  const Mat4& mb = b.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = ma(i, j) * mb;
  }
  return FourQubitDensity::from_matrix(out);
}

XStateParams random_x_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Exponential variates normalized to 1 are uniform on the simplex.
  std::exponential_distribution<double> expo(1.0);
  std::array<double, 4> d{};
  for (double& v : d) v = expo(rng);
  const double total = d[0] + d[1] + d[2] + d[3];
  for (double& v : d) v /= total;

  const double b14 = std::sqrt(d[0] * d[3]);
  const double b23 = std::sqrt(d[1] * d[2]);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double c14 = b14 * unit(rng);
  const double c23 = b23 * unit(rng);
  return XStateParams{d[0], d[1], d[2], d[3], c14, c23};
}

std::array<double, 4> x_block_eigenvalues(const XStateParams& p) {
  auto block = [](double a, double b, double c) {
    const double mean = 0.5 * (a + b);
    const double radius = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
    return std::pair{mean - radius, mean + radius};
  };
  const auto [o1, o2] = block(p.d1, p.d4, p.c14);
  const auto [i1, i2] = block(p.d2, p.d3, p.c23);
  std::array<double, 4> out{o1, o2, i1, i2};
  std::sort(out.begin(), out.end());
  return out;
}

TwoQubitDensity pure_state(const Vec4& v) {
  return TwoQubitDensity::from_matrix(v * v.adjoint());
}

}  // namespace neur
