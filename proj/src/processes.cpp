// processes.cpp

#include "neur/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "neur/error.hpp"

namespace neur {

namespace {

constexpr double kMaxAcceleration = std::numbers::pi / 4.0;

void check_nu(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw Error(ErrorKind::InvalidParameters, "nu must lie in [0,1], got " + std::to_string(nu));
  }
}

}  // namespace

void AccelerationParams::validate() const {
  for (double r : {r_a, r_b}) {
    if (!(r >= 0.0 && r <= kMaxAcceleration)) {
      throw Error(ErrorKind::InvalidParameters,
                  "acceleration parameter must lie in [0, pi/4], got " + std::to_string(r));
    }
  }
}

void ChannelParams::validate() const {
  if (!(g_over_gamma > 0.0) || !std::isfinite(g_over_gamma)) {
    throw Error(ErrorKind::InvalidParameters, "g/gamma must be positive");
  }
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) {
    throw Error(ErrorKind::InvalidParameters, "gamma*t must be non-negative");
  }
}

KrausChannel KrausChannel::from_operators(std::vector<Mat2> ops) {
  KrausChannel ch(std::move(ops));
  if (ch.ops_.empty()) throw Error(ErrorKind::InvalidParameters, "empty Kraus set");
  const double err = ch.completeness_error();
  if (err > tolerance::kCompleteness) {
    std::ostringstream os;
    os << "Kraus operators violate completeness by " << err;
    throw Error(ErrorKind::InvalidParameters, os.str());
  }
  return ch;
}

KrausChannel KrausChannel::identity() { return KrausChannel({Mat2::Identity()}); }

double KrausChannel::completeness_error() const {
  Mat2 sum = Mat2::Zero();
  for (const Mat2& k : ops_) sum += k.adjoint() * k;
  return (sum - Mat2::Identity()).cwiseAbs().maxCoeff();
}

TwoQubitDensity accelerate(double nu, const AccelerationParams& acc) {
  check_nu(nu);
  acc.validate();
  const double ca = std::cos(acc.r_a), sa = std::sin(acc.r_a);
  const double cb = std::cos(acc.r_b), sb = std::sin(acc.r_b);
  // Half-weights of the |00>+|11> and |01>+|10> components.
  const double w = (1.0 - nu) / 2.0;
  const double v = nu / 2.0;

  XStateParams p;
  p.d1 = w * ca * ca * cb * cb;
  p.d2 = ca * ca * (w * sb * sb + v);
  p.d3 = cb * cb * (w * sa * sa + v);
  p.d4 = sa * sa * (w * sb * sb + v) + v * sb * sb + w;
  p.c14 = w * ca * cb;
  p.c23 = v * ca * cb;

  const double trace = p.d1 + p.d2 + p.d3 + p.d4;
  if (std::abs(trace - 1.0) > tolerance::kTrace) {
    throw Error(ErrorKind::PathDisagreement, "accelerated state trace " + std::to_string(trace));
  }
  return from_x_params(p);
}

TwoQubitDensity accelerate_oracle(double nu, const AccelerationParams& acc) {
  check_nu(nu);
  acc.validate();
  using Vec16 = Eigen::Matrix<Complex, 16, 1>;

  // Single-qubit Minkowski basis state in the (region I, region II) pair,
  // index 2*I + II.
  auto lift = [](int bit, double r) {
    Vec4 out = Vec4::Zero();
    if (bit == 0) {
      out(0) = std::cos(r);  // |0>_I |0>_II
      out(3) = std::sin(r);  // |1>_I |1>_II
    } else {
      out(2) = 1.0;  // |1>_I |0>_II
    }
    return out;
  };
  // Ordering of the enlarged space: (A_I, A_II, B_I, B_II).
  auto lift_state = [&](const Vec4& two_qubit) {
    Vec16 out = Vec16::Zero();
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Complex amp = two_qubit(2 * a + b);
        if (amp == Complex(0.0)) continue;
        const Vec4 la = lift(a, acc.r_a);
        const Vec4 lb = lift(b, acc.r_b);
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) out(4 * i + j) += amp * la(i) * lb(j);
        }
      }
    }
    return out;
  };

  const Vec16 phi = lift_state(bell_vector(BellIndex::Phi));
  const Vec16 psi = lift_state(bell_vector(BellIndex::Psi));
  const Mat16 big = nu * phi * phi.adjoint() + (1.0 - nu) * psi * psi.adjoint();

  // Trace out A_II and B_II: index = 8 aI + 4 aII + 2 bI + bII.
  Mat4 out = Mat4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          for (int ea = 0; ea < 2; ++ea)
            for (int eb = 0; eb < 2; ++eb) {
              out(2 * a + b, 2 * a2 + b2) +=
                  big(8 * a + 4 * ea + 2 * b + eb, 8 * a2 + 4 * ea + 2 * b2 + eb);
            }
  return TwoQubitDensity::from_matrix(out);
}

double amplitude_damping_survival(const ChannelParams& cp) {
  cp.validate();
  const double g = cp.g_over_gamma;
  if (g >= 2.0) {
    throw Error(ErrorKind::InvalidRate,
                "amplitude damping requires g/gamma < 2, got " + std::to_string(g));
  }
  const double lambda = std::sqrt(g * (2.0 - g));
  const double half_phase = 0.5 * lambda * cp.gamma_t;
  const double bracket = std::cos(half_phase) + (g / lambda) * std::sin(half_phase);
  const double p = std::exp(-g * cp.gamma_t) * bracket * bracket;
  return std::clamp(p, 0.0, 1.0);
}

double dephasing_factor(const ChannelParams& cp) {
  cp.validate();
  const double g = cp.g_over_gamma;
  const double t = cp.gamma_t;
  return std::exp(-0.5 * (t + std::expm1(-g * t) / g));
}

KrausChannel amplitude_damping_kraus(const ChannelParams& cp) {
  const double p = amplitude_damping_survival(cp);
  Mat2 k1 = Mat2::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = std::sqrt(p);
  Mat2 k2 = Mat2::Zero();
  k2(0, 1) = std::sqrt(1.0 - p);
  return KrausChannel::from_operators({k1, k2});
}

KrausChannel dephasing_kraus(const ChannelParams& cp) {
  const double p = dephasing_factor(cp);
  Mat2 k1 = Mat2::Zero();
  k1(0, 0) = 1.0;
  k1(1, 1) = p;
  Mat2 k2 = Mat2::Zero();
  k2(1, 1) = std::sqrt(std::max(0.0, 1.0 - p * p));
  return KrausChannel::from_operators({k1, k2});
}

namespace {

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Mat16 middle_projector(BellIndex which) {
  const Vec4 v = bell_vector(which);
  const Mat4 proj = v * v.adjoint();
  Mat16 m = Mat16::Zero();
  // I (x) P (x) I with index 8 q1 + 4 q2 + 2 q3 + q4.
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q4 = 0; q4 < 2; ++q4)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(8 * q1 + 2 * i + q4, 8 * q1 + 2 * j + q4) = proj(i, j);
  return m;
}

Mat16 projected(const TwoQubitDensity& rho12, const TwoQubitDensity& rho34, BellIndex which) {
  const Mat16 m = middle_projector(which);
  return m * tensor(rho12, rho34).matrix() * m.adjoint();
}

}  // namespace

TwoQubitDensity apply_local_channel(const TwoQubitDensity& rho, const KrausChannel& ch_a,
                                    const KrausChannel& ch_b) {
  Mat4 out = Mat4::Zero();
  for (const Mat2& ka : ch_a.operators()) {
    for (const Mat2& kb : ch_b.operators()) {
      const Mat4 k = kron(ka, kb);
      out += k * rho.matrix() * k.adjoint();
    }
  }
  return TwoQubitDensity::from_matrix(out);
}

double bell_outcome_probability(const TwoQubitDensity& rho12, const TwoQubitDensity& rho34,
                                BellIndex which) {
  return projected(rho12, rho34, which).trace().real();
}

TwoQubitDensity bell_project_swap(const TwoQubitDensity& rho12, const TwoQubitDensity& rho34,
                                  BellIndex which) {
  const Mat16 post = projected(rho12, rho34, which);
  const double prob = post.trace().real();
  if (prob < tolerance::kOutcomeProbability) {
    std::ostringstream os;
    os << "Bell outcome " << to_string(which) << " has probability " << prob;
    throw Error(ErrorKind::ZeroProbabilityOutcome, os.str());
  }
  Mat4 out = Mat4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int d = 0; d < 2; ++d)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int d2 = 0; d2 < 2; ++d2)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
              out(2 * a + d, 2 * a2 + d2) += post(8 * a + 4 * b + 2 * c + d, 8 * a2 + 4 * b + 2 * c + d2);
            }
  return TwoQubitDensity::from_matrix(out / prob);
}

}  // namespace neur
