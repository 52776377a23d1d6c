// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned here and nowhere overridden.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pcgeur/eur.hpp"
#include "pcgeur/measurement.hpp"
#include "pcgeur/phasespace.hpp"
#include "pcgeur/scheme.hpp"

using namespace pcg;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kOrders = {0.5, 2.0 / 3.0, 1.0, 2.0, kInf};

int thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("PCG_EUR_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n)
      n = static_cast<unsigned>(cap);
  }
  return static_cast<int>(n);
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_count(), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
}

// The test matrix: d in 2..5, M = 1, two angle pairs, symmetric periods.
std::vector<PcgScheme> matrix_schemes() {
  std::vector<PcgScheme> out;
  for (int d : {2, 3, 4, 5}) {
    for (auto [th, thp] :
         {std::pair{0.0, kPi / 2}, std::pair{kPi / 6, 2 * kPi / 3}}) {
      const double sine = std::abs(std::sin(th - thp));
      out.push_back(make_scheme(d, th, thp, 1,
                                std::sqrt(2.0 * kPi * d * sine)));
    }
  }
  return out;
}

Grid matrix_grid(const PcgScheme& scheme, int n_max) {
  const double coverage =
      std::max({std::sqrt(2.0 * n_max + 1.0) + 6.0,
                0.5 * scheme.bins_theta.period + scheme.bins_theta.bin_width(),
                0.5 * scheme.bins_theta_prime.period +
                    scheme.bins_theta_prime.bin_width(),
                10.0});
  return aligned_grid(scheme, 8, coverage);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// --- criterion 1: EUR deficits on the random-state matrix ------------------

bool criterion_eur_matrix(std::string& detail) {
  const auto schemes = matrix_schemes();
  double worst = kInf;
  for (const PcgScheme& scheme : schemes) {
    const Grid grid = matrix_grid(scheme, 10);
    std::vector<double> per_state(100, kInf);
    parallel_for(100, [&](int i) {
      WaveFunction psi = random_superposition(10, 1 + i, grid);
      psi.theta = scheme.theta;
      const ProbabilityVector p_theta =
          pcg_probabilities(psi, scheme, Direction::Theta);
      const ProbabilityVector p_prime = pcg_probabilities(
          frft(psi, scheme.delta()), scheme, Direction::ThetaPrime);
      double local = kInf;
      for (double alpha : kOrders) {
        const double sum = renyi_entropy(p_theta, alpha) +
                           renyi_entropy(p_prime, conjugate_order(alpha));
        local = std::min(local, sum - std::log(double(scheme.outcomes())));
      }
      per_state[i] = local;
    });
    for (double deficit : per_state) worst = std::min(worst, deficit);
  }
  detail = "worst deficit " + fmt(worst) + " over 8 schemes x 100 states x 5 "
           "orders (floor -2e-3)";
  return worst >= -2e-3;
}

// --- criterion 2: saturation by bin-localized states -----------------------

bool criterion_saturation(std::string& detail) {
  double worst_h = 0.0, worst_conj = 0.0;
  for (const PcgScheme& scheme : matrix_schemes()) {
    const Grid grid = localized_probe_grid(scheme);
    const double lnd = std::log(double(scheme.outcomes()));
    for (int k = 0; k < scheme.outcomes(); ++k) {
      const WaveFunction bump =
          bin_localized_state(scheme, Direction::Theta, k, grid);
      const ProbabilityVector p_theta =
          pcg_probabilities(bump, scheme, Direction::Theta);
      const ProbabilityVector p_prime = pcg_probabilities(
          frft(bump, scheme.delta()), scheme, Direction::ThetaPrime);
      for (double alpha : kOrders) {
        worst_h = std::max(worst_h, std::abs(renyi_entropy(p_theta, alpha)));
        worst_conj = std::max(
            worst_conj,
            std::abs(renyi_entropy(p_prime, conjugate_order(alpha)) - lnd));
      }
    }
  }
  detail = "max |H_alpha| " + fmt(worst_h) + " (<= 1e-6), max |H_beta - ln d| " +
           fmt(worst_conj) + " (<= 2e-3)";
  return worst_h <= 1e-6 && worst_conj <= 2e-3;
}

// --- criterion 3: operational mutual unbiasedness --------------------------

bool criterion_mub(std::string& detail) {
  double worst_valid = 0.0;
  for (const PcgScheme& scheme : matrix_schemes()) {
    const UniformityProbe probe =
        uniformity_probe(scheme, localized_probe_grid(scheme));
    worst_valid = std::max(worst_valid, probe.max_deviation);
  }

  double smallest_invalid = kInf;
  for (int d = 2; d <= 6; ++d) {
    for (int m = 2; m <= d; ++m) {
      if (std::gcd(m, d) == 1) continue;
      const UniformityProbe probe = invalid_scheme_probe(d, kPi / 2, m);
      smallest_invalid = std::min(smallest_invalid, probe.max_deviation);
    }
  }
  detail = "valid-scheme deviation " + fmt(worst_valid) +
           " (<= 2e-3); smallest non-coprime deviation " +
           fmt(smallest_invalid) + " (> 0.05)";
  return worst_valid <= 2e-3 && smallest_invalid > 0.05;
}

// --- criterion 4: Fourier structure of the masks ---------------------------

bool criterion_fourier(std::string& detail) {
  for (int d = 2; d <= 6; ++d) {
    for (int n = -10 * d; n <= 10 * d; ++n) {
      if (n == 0) continue;
      for (int k = 0; k < d; ++k) {
        const std::complex<double> c = fourier_coefficient(k, n, d);
        const bool zero = (c == std::complex<double>(0.0, 0.0));
        if (zero != (n % d == 0)) {
          detail = "f_{" + std::to_string(k) + "," + std::to_string(n) +
                   "} at d=" + std::to_string(d) + " breaks the d|N rule";
          return false;
        }
      }
    }
  }

  const BinSpec spec(2.0, 2);
  const int samples = 10000;
  double previous = 1e300;
  std::vector<double> l2s;
  for (int n_max : {10, 100, 1000}) {
    double l2 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double z = 2.0 * (i + 0.5) / samples;
      const double err =
          reconstruct_mask(spec, 0, z, n_max) - mask_value(z, spec, 0);
      l2 += err * err * (2.0 / samples);
    }
    l2 = std::sqrt(l2);
    l2s.push_back(l2);
    if (l2 >= previous) {
      detail = "L2 error not monotone at n_max=" + std::to_string(n_max);
      return false;
    }
    previous = l2;
  }

  const int n_max = 2000;
  const double exclusion = 10.0 * spec.period / n_max;
  const double s = spec.bin_width();
  double worst_pointwise = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z = 2.0 * (i + 0.5) / samples;
    const double t = std::fmod(z, s);
    if (std::min(t, s - t) <= exclusion) continue;
    worst_pointwise =
        std::max(worst_pointwise, std::abs(reconstruct_mask(spec, 0, z, n_max) -
                                           mask_value(z, spec, 0)));
  }
  detail = "zeros exhaustive (|N| <= 10d, d <= 6); L2 " + fmt(l2s[0]) + " > " +
           fmt(l2s[1]) + " > " + fmt(l2s[2]) + "; interior error " +
           fmt(worst_pointwise) + " (<= 0.01)";
  return worst_pointwise <= 0.01;
}

// --- criterion 5: fractional Fourier transform -----------------------------

bool criterion_frft(std::string& detail) {
  const Grid grid(512, 24.0 / 512);

  double worst_drift = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const WaveFunction psi = random_superposition(8, seed, grid);
    const WaveFunction out = frft(psi, 0.9);
    worst_drift = std::max(worst_drift, std::abs(out.norm() - psi.norm()));
  }

  const WaveFunction hg0 = hermite_gauss(0, grid);
  const WaveFunction two = frft(frft(hg0, kPi / 4), kPi / 4);
  const WaveFunction one = frft(hg0, kPi / 2);
  double comp = 0.0;
  for (int j = 0; j < grid.n; ++j) comp += std::norm(two.amp[j] - one.amp[j]);
  comp = std::sqrt(comp * grid.dq);

  double worst_mag = 0.0;
  for (int n : {0, 2, 6}) {
    const WaveFunction psi = hermite_gauss(n, grid);
    for (double dtheta : {kPi / 2, 0.7}) {
      const WaveFunction out = frft(psi, dtheta);
      for (int j = 0; j < grid.n; ++j) {
        worst_mag = std::max(
            worst_mag, std::abs(std::abs(out.amp[j]) - std::abs(psi.amp[j])));
      }
    }
  }

  const auto& kernel = frft_kernel(grid, kPi / 2);
  const double expected = 1.0 / std::sqrt(2.0 * kPi);
  double worst_prefactor = 0.0;
  for (size_t idx = 0; idx < kernel.size(); idx += 101) {
    worst_prefactor = std::max(
        worst_prefactor, std::abs(std::abs(kernel[idx]) / grid.dq - expected));
  }

  detail = "norm drift " + fmt(worst_drift) + " (<= 1e-8); composition L2 " +
           fmt(comp) + " (<= 1e-6); HG magnitude " + fmt(worst_mag) +
           " (<= 1e-6); Fourier prefactor " + fmt(worst_prefactor) +
           " (<= 1e-8)";
  return worst_drift <= 1e-8 && comp <= 1e-6 && worst_mag <= 1e-6 &&
         worst_prefactor <= 1e-8;
}

// --- criterion 6: continuous limit -----------------------------------------

bool criterion_limit(std::string& detail) {
  const std::vector<LimitRecord> records = limit_study(
      [](const Grid& g) { return hermite_gauss(0, g); }, 0.0, kPi / 2, 1.0,
      std::sqrt(2.0 * kPi), {4, 16, 64, 256}, 8);
  const double bound = std::log(2.0 * kPi);
  double worst_margin = kInf;
  double previous_gap = kInf;
  bool monotone = true;
  for (const LimitRecord& r : records) {
    worst_margin = std::min(worst_margin, r.rescaled_sum - r.discrete_bound);
    if (r.gap_theta > previous_gap) monotone = false;
    previous_gap = r.gap_theta;
  }
  const double final_gap = records.back().gap_theta;
  const double continuous = records.back().continuous_sum;
  const double ln_pi_e = std::log(kPi * std::exp(1.0));

  detail = "rescaled margin " + fmt(worst_margin) +
           " (>= -2e-3); gap(d=256) " + fmt(final_gap) +
           " (<= 0.01, non-increasing: " + (monotone ? "yes" : "no") +
           "); h1[x]+h1[p] " + fmt(continuous) + " (= ln(pi e) +/- 1e-3, > " +
           fmt(bound) + ")";
  return worst_margin >= -2e-3 && final_gap <= 0.01 && monotone &&
         std::abs(continuous - ln_pi_e) <= 1e-3 && continuous > bound;
}

// --- criterion 7: optimization probe ---------------------------------------

bool criterion_minimize(std::string& detail) {
  double worst_deficit = kInf;
  double worst_best_of_scheme = 0.0;
  for (const PcgScheme& scheme : matrix_schemes()) {
    double scheme_best = kInf;
    for (StateFamily family :
         {StateFamily::TwoGaussian, StateFamily::HermiteGauss}) {
      MinimizeOptions options;
      options.family = family;
      options.hg_modes = 10;
      options.budget = 500;
      options.restarts = 8;
      options.seed = 1;
      const MinimizeResult res = minimize_entropy_sum(scheme, 1.0, options);
      worst_deficit = std::min(worst_deficit, res.deficit);
      scheme_best = std::min(scheme_best, res.deficit);
    }
    worst_best_of_scheme = std::max(worst_best_of_scheme, scheme_best);
  }
  detail = "smallest deficit " + fmt(worst_deficit) +
           " (>= -2e-3); per-scheme best within " + fmt(worst_best_of_scheme) +
           " of ln d (<= 2e-3)";
  return worst_deficit >= -2e-3 && worst_best_of_scheme <= 2e-3;
}

// --- criterion 8: steering sanity ------------------------------------------

bool criterion_steering(std::string& detail) {
  int cases = 0;
  double worst_margin = kInf;
  for (int d : {2, 3}) {
    const PcgScheme scheme =
        make_scheme(d, 0.0, kPi / 2, 1, std::sqrt(2.0 * kPi * d));
    const Grid grid = localized_probe_grid(scheme, 1e-4);
    std::mt19937_64 rng(100 + d);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto mk = [&] {
      return gaussian(u(rng), 0.5 + 0.4 * std::abs(u(rng)), u(rng), grid);
    };
    for (int trial = 0; trial < 5; ++trial) {
      TwoModeEnsemble product;
      product.members.emplace_back(1.0, product_state(mk(), mk()));
      const WitnessReport wp =
          steering_witness(product, scheme, scheme.theta, scheme.theta_prime);
      TwoModeEnsemble mixture;
      mixture.members.emplace_back(0.5, product_state(mk(), mk()));
      mixture.members.emplace_back(0.5, product_state(mk(), mk()));
      const WitnessReport wm =
          steering_witness(mixture, scheme, scheme.theta, scheme.theta_prime);
      cases += 2;
      worst_margin = std::min({worst_margin, wp.sum - wp.bound,
                               wm.sum - wm.bound});
      if (wp.violated || wm.violated) {
        detail = "an uncorrelated case was flagged as steering (d=" +
                 std::to_string(d) + ", trial " + std::to_string(trial) + ")";
        return false;
      }
    }
  }
  detail = std::to_string(cases) + " uncorrelated cases, none flagged; " +
           "smallest margin above ln d " + fmt(worst_margin);
  return true;
}

// --- criterion 9: entropy closed forms --------------------------------------

bool criterion_closed_forms(std::string& detail) {
  const double renyi2 =
      renyi_entropy(make_probability_vector({0.75, 0.25}), 2.0);
  const double err_renyi = std::abs(renyi2 - std::log(8.0 / 5.0));

  const JointDistribution chain =
      make_joint_distribution(2, 2, {0.5, 0.0, 0.25, 0.25});
  const double expected_chain =
      0.75 * (-(2.0 / 3.0) * std::log(2.0 / 3.0) -
              (1.0 / 3.0) * std::log(1.0 / 3.0));
  const double err_chain = std::abs(conditional_shannon(chain) - expected_chain);

  const double err_beta = std::abs(conjugate_order(2.0) - 2.0 / 3.0);

  detail = "ln(8/5) err " + fmt(err_renyi) + ", chain-rule err " +
           fmt(err_chain) + ", beta(2) err " + fmt(err_beta) + " (all <= 1e-9)";
  return err_renyi <= 1e-9 && err_chain <= 1e-9 && err_beta <= 1e-9;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    bool (*fn)(std::string&);
  };
  const Criterion criteria[] = {
      {"EUR deficits on the random-state matrix", criterion_eur_matrix},
      {"saturation by bin-localized states", criterion_saturation},
      {"operational mutual unbiasedness", criterion_mub},
      {"mask Fourier structure", criterion_fourier},
      {"fractional Fourier transform", criterion_frft},
      {"continuous limit", criterion_limit},
      {"entropy-sum optimization probe", criterion_minimize},
      {"steering witness sanity", criterion_steering},
      {"entropy closed forms", criterion_closed_forms},
  };

  int failures = 0;
  for (size_t i = 0; i < std::size(criteria); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = criteria[i].fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("%s criterion %zu: %s — %s [%.1fs]\n",
                pass ? "PASS" : "FAIL", i + 1, criteria[i].label,
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
