#include "pcgeur/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance for snapping floating-point coordinates that land on a bin edge.
constexpr double kEdgeSnap = 1e-9;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

BinSpec::BinSpec(double T, int d, double origin)
    : period(T), outcomes(d), offset(origin) {
  require(T > 0.0, "BinSpec: period must be positive");
  require(d >= 2, "BinSpec: outcome count must be at least 2");
  require(std::isfinite(origin), "BinSpec: offset must be finite");
}

int bin_index(double z, const BinSpec& spec) {
  const double s = spec.bin_width();
  double t = std::fmod(z - spec.offset, spec.period);
  if (t < 0.0) t += spec.period;
  long k = static_cast<long>(std::floor(t / s + kEdgeSnap));
  k %= spec.outcomes;
  if (k < 0) k += spec.outcomes;
  return static_cast<int>(k);
}

int mask_value(double z, const BinSpec& spec, int k) {
  require(k >= 0 && k < spec.outcomes, "mask_value: bin index out of range");
  return bin_index(z, spec) == k ? 1 : 0;
}

std::complex<double> fourier_coefficient(int k, int harmonic, int d) {
  require(harmonic != 0, "fourier_coefficient: harmonic must be nonzero");
  require(k >= 0 && k < d, "fourier_coefficient: bin index out of range");
  if (harmonic % d == 0) return {0.0, 0.0};
  const double x = kTwoPi * harmonic / d;
  const std::complex<double> numer = 1.0 - std::polar(1.0, -x);
  const std::complex<double> denom(0.0, kTwoPi * harmonic);
  return numer / denom * std::polar(1.0, -x * k);
}

double reconstruct_mask(const BinSpec& spec, int k, double z, int n_max) {
  require(k >= 0 && k < spec.outcomes,
          "reconstruct_mask: bin index out of range");
  require(n_max >= 0, "reconstruct_mask: truncation order must be >= 0");
  const double u = kTwoPi * (z - spec.offset) / spec.period;
  double acc = 1.0 / spec.outcomes;
  // Summing +N and -N together keeps the partial sum real.
  const std::complex<double> step = std::polar(1.0, u);
  std::complex<double> phase = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    phase *= step;
    acc += 2.0 * std::real(fourier_coefficient(k, n, spec.outcomes) * phase);
  }
  return acc;
}

std::string MubCheck::reason() const {
  switch (failure) {
    case MubFailure::None:
      return "ok";
    case MubFailure::DegenerateAngle:
      return "degenerate-angle";
    case MubFailure::NonIntegerM:
      return "non-integer-M";
    case MubFailure::CoprimalityFailure:
      return "coprimality-failure";
  }
  return "unknown";
}

MubCheck check_mub(double period_theta, double period_theta_prime,
                   double dtheta, int d) {
  require(period_theta > 0.0 && period_theta_prime > 0.0,
          "check_mub: periods must be positive");
  require(d >= 2, "check_mub: outcome count must be at least 2");

  MubCheck result;
  const double sine = std::sin(dtheta);
  if (std::abs(sine) < 1e-12) {
    result.failure = MubFailure::DegenerateAngle;
    return result;
  }
  result.m_raw =
      kTwoPi * d * std::abs(sine) / (period_theta * period_theta_prime);
  const double rounded = std::round(result.m_raw);
  result.m = static_cast<int>(rounded);
  if (rounded < 1.0 ||
      std::abs(result.m_raw - rounded) > 1e-9 * std::max(1.0, result.m_raw)) {
    result.failure = MubFailure::NonIntegerM;
    return result;
  }
  // Literal loop from the unbiasedness condition; equivalent to gcd(M, d) = 1.
  for (int n = 1; n < d; ++n) {
    if ((static_cast<long>(result.m) * n) % d == 0) {
      result.failure = MubFailure::CoprimalityFailure;
      return result;
    }
  }
  result.valid = true;
  return result;
}

SchemeInvalidError::SchemeInvalidError(const MubCheck& check,
                                       const std::string& what)
    : std::runtime_error(what), check_(check) {}

PcgScheme make_scheme(int d, double theta, double theta_prime, int m,
                      double period_theta, double offset_theta,
                      double offset_theta_prime) {
  require(d >= 2, "make_scheme: outcome count must be at least 2");
  require(m >= 1, "make_scheme: M must be a positive integer");
  require(period_theta > 0.0, "make_scheme: period must be positive");

  const double sine = std::sin(theta - theta_prime);
  if (std::abs(sine) < 1e-12) {
    MubCheck check;
    check.failure = MubFailure::DegenerateAngle;
    throw SchemeInvalidError(check, "make_scheme: parallel quadratures");
  }
  const double period_prime =
      kTwoPi * d * std::abs(sine) / (m * period_theta);

  const MubCheck check = check_mub(period_theta, period_prime,
                                   theta - theta_prime, d);
  if (!check.valid) {
    throw SchemeInvalidError(check, "make_scheme: " + check.reason());
  }

  PcgScheme scheme;
  scheme.theta = theta;
  scheme.theta_prime = theta_prime;
  scheme.bins_theta = BinSpec(period_theta, d, offset_theta);
  scheme.bins_theta_prime = BinSpec(period_prime, d, offset_theta_prime);
  scheme.m = m;
  return scheme;
}

IntervalSet bin_intervals(const BinSpec& spec, int k, double half_width) {
  require(k >= 0 && k < spec.outcomes,
          "bin_intervals: bin index out of range");
  require(half_width > 0.0, "bin_intervals: domain half-width must be > 0");

  const double s = spec.bin_width();
  const double L = half_width;
  IntervalSet out;
  const long j_lo =
      static_cast<long>(std::floor((-L - spec.offset - k * s) / spec.period)) -
      1;
  const long j_hi =
      static_cast<long>(std::ceil((L - spec.offset - k * s) / spec.period)) + 1;
  for (long j = j_lo; j <= j_hi; ++j) {
    const double lo = spec.offset + k * s + j * spec.period;
    const double hi = lo + s;
    const double a = std::max(lo, -L);
    const double b = std::min(hi, L);
    if (a < b) out.push_back({a, b});
  }
  std::sort(out.begin(), out.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace pcg
