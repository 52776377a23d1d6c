#include "pcgeur/phasespace.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace pcg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::uint64_t bits(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof(u));
  return u;
}

void renormalize(WaveFunction& psi) {
  double n2 = 0.0;
  for (const auto& a : psi.amp) n2 += std::norm(a);
  n2 *= psi.grid.dq;
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::runtime_error("wavefunction has zero or non-finite norm");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : psi.amp) a *= scale;
}

}  // namespace

Grid::Grid(int points, double spacing) : n(points), dq(spacing) {
  require(points > 0 && points % 2 == 0, "Grid: point count must be even");
  require(spacing > 0.0, "Grid: spacing must be positive");
}

double WaveFunction::norm() const {
  double n2 = 0.0;
  for (const auto& a : amp) n2 += std::norm(a);
  return std::sqrt(n2 * grid.dq);
}

void validate_ensemble(const Ensemble& rho) {
  require(!rho.members.empty(), "Ensemble: no members");
  double total = 0.0;
  for (const auto& [w, psi] : rho.members) {
    require(w >= 0.0, "Ensemble: weights must be nonnegative");
    require(psi.grid == rho.members.front().second.grid,
            "Ensemble: members must share a grid");
    require(std::abs(psi.theta - rho.members.front().second.theta) < 1e-12,
            "Ensemble: members must share a direction");
    total += w;
  }
  require(std::abs(total - 1.0) < 1e-12, "Ensemble: weights must sum to 1");
}

const BinSpec& bins_for(const PcgScheme& scheme, Direction dir) {
  return dir == Direction::Theta ? scheme.bins_theta
                                 : scheme.bins_theta_prime;
}

double angle_for(const PcgScheme& scheme, Direction dir) {
  return dir == Direction::Theta ? scheme.theta : scheme.theta_prime;
}

WaveFunction hermite_gauss(int n, const Grid& grid) {
  require(n >= 0, "hermite_gauss: mode index must be >= 0");
  const double needed = std::sqrt(2.0 * n + 1.0) + 5.0;
  if (grid.half_width() < needed) {
    throw std::domain_error(
        "hermite_gauss: grid does not cover the classical turning points");
  }
  WaveFunction psi;
  psi.grid = grid;
  psi.amp.resize(grid.n);
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (int j = 0; j < grid.n; ++j) {
    const double q = grid.point(j);
    double hm2 = 0.0;
    double hm1 = c0 * std::exp(-0.5 * q * q);
    for (int m = 1; m <= n; ++m) {
      const double h = q * std::sqrt(2.0 / m) * hm1 -
                       std::sqrt((m - 1.0) / m) * hm2;
      hm2 = hm1;
      hm1 = h;
    }
    psi.amp[j] = hm1;
  }
  renormalize(psi);
  return psi;
}

WaveFunction gaussian(double center, double sigma, double momentum,
                      const Grid& grid) {
  require(sigma > 0.0, "gaussian: width must be positive");
  if (grid.half_width() < std::abs(center) + 8.0 * sigma) {
    throw std::domain_error("gaussian: grid does not cover center +/- 8 sigma");
  }
  WaveFunction psi;
  psi.grid = grid;
  psi.amp.resize(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double q = grid.point(j);
    const double u = (q - center) / sigma;
    psi.amp[j] = std::polar(std::exp(-0.25 * u * u), momentum * q);
  }
  renormalize(psi);
  return psi;
}

WaveFunction bin_localized_state(const PcgScheme& scheme, Direction dir, int k,
                                 const Grid& grid) {
  const BinSpec& spec = bins_for(scheme, dir);
  require(k >= 0 && k < spec.outcomes,
          "bin_localized_state: bin index out of range");
  const double s = spec.bin_width();
  if (s < 4.0 * grid.dq) {
    throw std::invalid_argument(
        "bin_localized_state: bin narrower than 4 grid spacings");
  }
  // Sub-interval of O_k closest to the origin.
  const double j0 =
      std::round((-spec.offset - k * s - 0.5 * s) / spec.period);
  const double lo = spec.offset + k * s + j0 * spec.period;
  const double hi = lo + s;
  if (lo < -grid.half_width() || hi > grid.half_width()) {
    throw std::domain_error(
        "bin_localized_state: nearest sub-interval does not fit the grid");
  }
  const double mid = 0.5 * (lo + hi);
  const double w = 0.8 * s;
  WaveFunction psi;
  psi.grid = grid;
  psi.theta = angle_for(scheme, dir);
  psi.amp.resize(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double u = (grid.point(j) - mid) / w;
    if (std::abs(u) < 0.5) {
      const double c = std::cos(std::numbers::pi * u);
      psi.amp[j] = c * c;
    }
  }
  renormalize(psi);
  return psi;
}

WaveFunction random_superposition(int n_max, std::uint64_t seed,
                                  const Grid& grid) {
  require(n_max >= 1, "random_superposition: mode cutoff must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::complex<double>> coeff(n_max);
  for (auto& c : coeff) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = {re, im};
  }
  WaveFunction psi;
  psi.grid = grid;
  psi.amp.assign(grid.n, 0.0);
  for (int n = 0; n < n_max; ++n) {
    const WaveFunction mode = hermite_gauss(n, grid);
    for (int j = 0; j < grid.n; ++j) psi.amp[j] += coeff[n] * mode.amp[j];
  }
  renormalize(psi);
  return psi;
}

namespace {

struct KernelKey {
  int n;
  std::uint64_t dq_bits;
  std::uint64_t dtheta_bits;

  friend bool operator<(const KernelKey& a, const KernelKey& b) {
    return std::tie(a.n, a.dq_bits, a.dtheta_bits) <
           std::tie(b.n, b.dq_bits, b.dtheta_bits);
  }
};

std::shared_mutex kernel_mutex;
std::map<KernelKey, std::unique_ptr<std::vector<std::complex<double>>>>
    kernel_cache;

std::vector<std::complex<double>> build_kernel(const Grid& grid,
                                               double dtheta) {
  const double sine = std::sin(dtheta);
  const double cotan = std::cos(dtheta) / sine;
  // Principal-branch prefactor sqrt(-i e^{i dtheta} / (2 pi sin dtheta)).
  const std::complex<double> pref = std::sqrt(
      std::complex<double>(0.0, -1.0) * std::polar(1.0, dtheta) /
      (kTwoPi * sine));
  const int n = grid.n;
  std::vector<std::complex<double>> kernel(static_cast<size_t>(n) * n);
  std::vector<std::complex<double>> chirp(n);
  for (int j = 0; j < n; ++j) {
    const double q = grid.point(j);
    chirp[j] = std::polar(1.0, 0.5 * cotan * q * q);
  }
  // Row = output sample, column = input sample. The transform applies the
  // conjugated kernel F*(q_in, q_out); the dq quadrature weight is folded in.
  const std::complex<double> row_pref = std::conj(pref) * grid.dq;
  for (int b = 0; b < n; ++b) {
    const double qb = grid.point(b);
    const std::complex<double> cb = std::conj(chirp[b]) * row_pref;
    for (int a = 0; a < n; ++a) {
      const double qa = grid.point(a);
      kernel[static_cast<size_t>(b) * n + a] =
          cb * std::conj(chirp[a]) * std::polar(1.0, qa * qb / sine);
    }
  }
  return kernel;
}

}  // namespace

const std::vector<std::complex<double>>& frft_kernel(const Grid& grid,
                                                     double dtheta) {
  if (std::abs(std::sin(dtheta)) < 1e-12) {
    throw std::invalid_argument("frft: degenerate angle (sin dtheta == 0)");
  }
  const KernelKey key{grid.n, bits(grid.dq), bits(dtheta)};
  {
    std::shared_lock lock(kernel_mutex);
    auto it = kernel_cache.find(key);
    if (it != kernel_cache.end()) return *it->second;
  }
  auto built = std::make_unique<std::vector<std::complex<double>>>(
      build_kernel(grid, dtheta));
  std::unique_lock lock(kernel_mutex);
  auto [it, inserted] = kernel_cache.emplace(key, std::move(built));
  return *it->second;
}

WaveFunction frft(const WaveFunction& psi, double dtheta, double norm_tol) {
  const auto& kernel = frft_kernel(psi.grid, dtheta);
  const int n = psi.grid.n;
  WaveFunction out;
  out.grid = psi.grid;
  out.theta = psi.theta - dtheta;
  out.amp.resize(n);
  for (int b = 0; b < n; ++b) {
    std::complex<double> acc = 0.0;
    const std::complex<double>* row = kernel.data() + static_cast<size_t>(b) * n;
    for (int a = 0; a < n; ++a) acc += row[a] * psi.amp[a];
    out.amp[b] = acc;
  }
  const double drift = std::abs(out.norm() - psi.norm());
  if (drift > norm_tol) {
    throw std::runtime_error(
        "frft: unitarity check failed (norm drift " + std::to_string(drift) +
        "); use a finer or wider grid");
  }
  return out;
}

std::complex<double> overlap(const WaveFunction& psi, const WaveFunction& phi) {
  require(psi.grid == phi.grid, "overlap: grid mismatch");
  require(std::abs(psi.theta - phi.theta) < 1e-9,
          "overlap: direction mismatch");
  std::complex<double> acc = 0.0;
  for (int j = 0; j < psi.grid.n; ++j) {
    acc += std::conj(psi.amp[j]) * phi.amp[j];
  }
  return acc * psi.grid.dq;
}

}  // namespace pcg
