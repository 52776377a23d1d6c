#include "pcgeur/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcg {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_direction(const WaveFunction& psi, const PcgScheme& scheme,
                     Direction dir) {
  const double diff =
      std::remainder(psi.theta - angle_for(scheme, dir), 2.0 * M_PI);
  if (std::abs(diff) > 1e-9) {
    throw std::invalid_argument(
        "measurement direction does not match the state's direction tag");
  }
}

double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

}  // namespace

ProbabilityVector make_probability_vector(std::vector<double> raw) {
  require(!raw.empty(), "probability vector is empty");
  double sum = 0.0;
  for (double& x : raw) {
    require(x >= -1e-12, "probability entry below -1e-12");
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  require(sum > 0.0, "probability vector sums to zero");
  for (double& x : raw) x /= sum;
  return ProbabilityVector{std::move(raw)};
}

std::vector<std::vector<std::pair<int, double>>> sample_bin_weights(
    const Grid& grid, const BinSpec& spec) {
  const int n = grid.n;
  const double dq = grid.dq;
  std::vector<std::vector<std::pair<int, double>>> weights(n);
  auto add = [&](int j, int bin, double w) {
    for (auto& [b, acc] : weights[j]) {
      if (b == bin) {
        acc += w;
        return;
      }
    }
    weights[j].emplace_back(bin, w);
  };

  std::vector<int> bin(n);
  for (int j = 0; j < n; ++j) bin[j] = bin_index(grid.point(j), spec);

  int j0 = 0;
  while (j0 < n) {
    int j1 = j0;
    while (j1 + 1 < n && bin[j1 + 1] == bin[j0]) ++j1;
    // Cells j0..j1 belong to bin[j0]; integrate over [q_j0, q_{j1}+dq).
    const int jmax = std::min(j1 + 1, n - 1);
    const int intervals = jmax - j0;
    if (intervals == 0) {
      add(j0, bin[j0], dq);
    } else if (intervals % 2 == 0) {
      // Composite Simpson over the run.
      add(j0, bin[j0], dq / 3.0);
      add(jmax, bin[j0], dq / 3.0);
      for (int j = j0 + 1; j < jmax; ++j) {
        add(j, bin[j0], ((j - j0) % 2 == 1 ? 4.0 : 2.0) * dq / 3.0);
      }
    } else {
      add(j0, bin[j0], 0.5 * dq);
      add(jmax, bin[j0], 0.5 * dq);
      for (int j = j0 + 1; j < jmax; ++j) add(j, bin[j0], dq);
    }
    if (j1 == n - 1) {
      // Trailing cell [q_{n-1}, q_{n-1}+dq) has no right sample.
      add(n - 1, bin[j0], dq);
    }
    j0 = j1 + 1;
  }
  return weights;
}

ProbabilityVector pcg_probabilities(const WaveFunction& psi,
                                    const PcgScheme& scheme, Direction dir) {
  check_direction(psi, scheme, dir);
  const BinSpec& spec = bins_for(scheme, dir);
  // Coverage gate on the plain grid mass: normalized states give exactly 1,
  // and mass rotated past the domain edge shows up as a shortfall.
  double mass = 0.0;
  for (int j = 0; j < psi.grid.n; ++j) mass += std::norm(psi.amp[j]);
  mass *= psi.grid.dq;
  if (std::abs(mass - 1.0) > 1e-4) {
    throw std::runtime_error(
        "pcg_probabilities: grid mass " + std::to_string(mass) +
        " deviates from 1; state not adequately covered by the grid");
  }
  const auto weights = sample_bin_weights(psi.grid, spec);
  std::vector<double> raw(spec.outcomes, 0.0);
  for (int j = 0; j < psi.grid.n; ++j) {
    const double f = std::norm(psi.amp[j]);
    for (const auto& [b, w] : weights[j]) raw[b] += w * f;
  }
  return make_probability_vector(std::move(raw));
}

ProbabilityVector ensemble_probabilities(const Ensemble& rho,
                                         const PcgScheme& scheme,
                                         Direction dir) {
  validate_ensemble(rho);
  std::vector<double> raw(bins_for(scheme, dir).outcomes, 0.0);
  for (const auto& [w, psi] : rho.members) {
    const ProbabilityVector p = pcg_probabilities(psi, scheme, dir);
    for (int k = 0; k < p.size(); ++k) raw[k] += w * p[k];
  }
  return make_probability_vector(std::move(raw));
}

double renyi_entropy(const ProbabilityVector& p, double alpha) {
  require(!std::isnan(alpha) && alpha >= 0.5,
          "renyi_entropy: order must lie in [1/2, infinity]");
  if (std::isinf(alpha)) {
    return -std::log(*std::max_element(p.p.begin(), p.p.end()));
  }
  if (alpha == 1.0) return shannon(p.p);
  double acc = 0.0;
  for (double x : p.p) {
    if (x > 0.0) acc += std::pow(x, alpha);
  }
  return std::log(acc) / (1.0 - alpha);
}

double conjugate_order(double alpha) {
  require(!std::isnan(alpha) && alpha >= 0.5,
          "conjugate_order: order must lie in [1/2, infinity]");
  if (std::isinf(alpha)) return 0.5;
  if (alpha == 0.5) return std::numeric_limits<double>::infinity();
  return alpha / (2.0 * alpha - 1.0);
}

ProbabilityVector JointDistribution::marginal_rows() const {
  std::vector<double> raw(rows, 0.0);
  for (int k = 0; k < rows; ++k) {
    for (int l = 0; l < cols; ++l) raw[k] += at(k, l);
  }
  return make_probability_vector(std::move(raw));
}

ProbabilityVector JointDistribution::marginal_cols() const {
  std::vector<double> raw(cols, 0.0);
  for (int k = 0; k < rows; ++k) {
    for (int l = 0; l < cols; ++l) raw[l] += at(k, l);
  }
  return make_probability_vector(std::move(raw));
}

JointDistribution make_joint_distribution(int rows, int cols,
                                          std::vector<double> raw) {
  require(rows >= 1 && cols >= 1, "joint distribution: bad shape");
  require(static_cast<int>(raw.size()) == rows * cols,
          "joint distribution: size mismatch");
  double sum = 0.0;
  for (double& x : raw) {
    require(x >= -1e-12, "joint distribution: entry below -1e-12");
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  require(std::abs(sum - 1.0) < 1e-6, "joint distribution: sum far from 1");
  for (double& x : raw) x /= sum;
  return JointDistribution{rows, cols, std::move(raw)};
}

double conditional_shannon(const JointDistribution& joint) {
  const double h_joint = shannon(joint.p);
  const double h_cond = h_joint - shannon(joint.marginal_cols().p);
  return std::max(h_cond, 0.0);
}

WaveFunction project_and_normalize(const WaveFunction& psi,
                                   const PcgScheme& scheme, Direction dir,
                                   int k) {
  check_direction(psi, scheme, dir);
  const BinSpec& spec = bins_for(scheme, dir);
  require(k >= 0 && k < spec.outcomes,
          "project_and_normalize: bin index out of range");
  WaveFunction out;
  out.grid = psi.grid;
  out.theta = psi.theta;
  out.amp.assign(psi.grid.n, 0.0);
  double mass = 0.0;
  for (int j = 0; j < psi.grid.n; ++j) {
    if (bin_index(psi.grid.point(j), spec) == k) {
      out.amp[j] = psi.amp[j];
      mass += std::norm(psi.amp[j]);
    }
  }
  mass *= psi.grid.dq;
  if (mass <= 1e-12) {
    throw std::runtime_error("project_and_normalize: empty bin");
  }
  const double scale = 1.0 / std::sqrt(mass);
  for (auto& a : out.amp) a *= scale;
  return out;
}

Grid aligned_grid(const PcgScheme& scheme, int points_per_bin,
                  double min_half_width) {
  require(points_per_bin >= 4, "aligned_grid: need at least 4 points per bin");
  require(min_half_width > 0.0, "aligned_grid: half-width must be positive");
  const double s = scheme.bins_theta.bin_width();
  const double s_prime = scheme.bins_theta_prime.bin_width();
  int m = points_per_bin;
  // Refine until the conjugate bin width is also an integer number of cells
  // (possible whenever the widths are commensurate).
  for (int f = 1; f <= 64; ++f) {
    const double cells = s_prime * points_per_bin * f / s;
    if (std::abs(cells - std::round(cells)) < 1e-6 && std::round(cells) >= 4) {
      m = points_per_bin * f;
      break;
    }
  }
  const double dq = s / m;
  const int half_points = static_cast<int>(std::ceil(min_half_width / dq));
  return Grid(2 * half_points, dq);
}

}  // namespace pcg
