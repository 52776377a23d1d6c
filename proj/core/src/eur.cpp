#include "pcgeur/eur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include "simplex.hpp"

namespace pcg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void validate_scheme(const PcgScheme& scheme) {
  require(scheme.bins_theta.outcomes == scheme.bins_theta_prime.outcomes,
          "scheme: both directions must share the outcome count");
  const MubCheck check =
      check_mub(scheme.bins_theta.period, scheme.bins_theta_prime.period,
                scheme.delta(), scheme.outcomes());
  if (!check.valid) {
    throw SchemeInvalidError(check, "scheme rejected: " + check.reason());
  }
}

void renormalize(WaveFunction& psi) {
  double n2 = 0.0;
  for (const auto& a : psi.amp) n2 += std::norm(a);
  n2 *= psi.grid.dq;
  if (!(n2 > 1e-30)) throw std::runtime_error("state has vanishing norm");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : psi.amp) a *= scale;
}

EurReport assemble_report(const ProbabilityVector& p_theta,
                          const ProbabilityVector& p_prime, int d,
                          double alpha) {
  const double beta = conjugate_order(alpha);
  EurReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.h_alpha = renyi_entropy(p_theta, alpha);
  report.h_beta = renyi_entropy(p_prime, beta);
  report.sum = report.h_alpha + report.h_beta;
  report.bound = std::log(static_cast<double>(d));
  report.deficit = report.sum - report.bound;
  return report;
}

}  // namespace

EurReport eur_report(const WaveFunction& psi, const PcgScheme& scheme,
                     double alpha) {
  validate_scheme(scheme);
  const ProbabilityVector p_theta =
      pcg_probabilities(psi, scheme, Direction::Theta);
  const WaveFunction rotated = frft(psi, scheme.delta());
  const ProbabilityVector p_prime =
      pcg_probabilities(rotated, scheme, Direction::ThetaPrime);
  return assemble_report(p_theta, p_prime, scheme.outcomes(), alpha);
}

EurReport eur_report(const Ensemble& rho, const PcgScheme& scheme,
                     double alpha) {
  validate_scheme(scheme);
  validate_ensemble(rho);
  Ensemble rotated;
  rotated.members.reserve(rho.members.size());
  for (const auto& [w, psi] : rho.members) {
    rotated.members.emplace_back(w, frft(psi, scheme.delta()));
  }
  const ProbabilityVector p_theta =
      ensemble_probabilities(rho, scheme, Direction::Theta);
  const ProbabilityVector p_prime =
      ensemble_probabilities(rotated, scheme, Direction::ThetaPrime);
  return assemble_report(p_theta, p_prime, scheme.outcomes(), alpha);
}

Grid localized_probe_grid(const PcgScheme& scheme, double tail_eps) {
  require(tail_eps > 0.0 && tail_eps < 1e-2,
          "localized_probe_grid: tail_eps out of range");
  const double s = scheme.bins_theta.bin_width();
  const double s_prime = scheme.bins_theta_prime.bin_width();
  const double w = 0.8 * std::min(s, s_prime);
  // The cosine-squared bump's rotated tail density falls like 1/q^6; the
  // mass beyond L is about 66 / (w^5 L^5).
  double half_width = 1.25 * std::pow(66.0 / (std::pow(w, 5) * tail_eps), 0.2);
  half_width = std::max({half_width,
                         0.5 * scheme.bins_theta.period + s,
                         0.5 * scheme.bins_theta_prime.period + s_prime, 8.0});
  const double dq_max = kTwoPi / (3.0 * half_width);
  const int m = std::max(4, static_cast<int>(std::ceil(s / dq_max)));
  return aligned_grid(scheme, m, half_width);
}

namespace {

// State with p_k = 1 spread over the n_sub sub-intervals of O_k closest to
// the origin. A single-interval state has vanishing autocorrelation at the
// shifts probing the unbiasedness condition, so multi-interval support is
// needed to witness its failure.
WaveFunction o_k_localized_state(const PcgScheme& scheme, Direction dir, int k,
                                 const Grid& grid, int n_sub,
                                 double phase_step) {
  const BinSpec& spec = bins_for(scheme, dir);
  const double s = spec.bin_width();
  IntervalSet intervals =
      bin_intervals(spec, k, grid.half_width() - 0.5 * grid.dq);
  // Full sub-intervals only, nearest the origin first.
  std::erase_if(intervals,
                [&](const Interval& iv) { return iv.hi - iv.lo < s - 1e-9; });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              return std::abs(a.lo + a.hi) < std::abs(b.lo + b.hi);
            });
  if (intervals.empty()) {
    throw std::domain_error("o_k_localized_state: no full sub-interval fits");
  }
  if (static_cast<int>(intervals.size()) > n_sub) intervals.resize(n_sub);

  WaveFunction psi;
  psi.grid = grid;
  psi.theta = angle_for(scheme, dir);
  psi.amp.assign(grid.n, 0.0);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const Interval& iv = intervals[i];
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double w = 0.8 * s;
    // Order sub-intervals by position so the phase ramps monotonically.
    const long rank = std::lround((mid - intervals[0].lo) / spec.period);
    const std::complex<double> coeff =
        std::polar(1.0, phase_step * static_cast<double>(rank));
    for (int j = 0; j < grid.n; ++j) {
      const double u = (grid.point(j) - mid) / w;
      if (std::abs(u) < 0.5) {
        const double c = std::cos(std::numbers::pi * u);
        psi.amp[j] += coeff * c * c;
      }
    }
  }
  renormalize(psi);
  return psi;
}

}  // namespace

UniformityProbe uniformity_probe(const PcgScheme& scheme, const Grid& grid,
                                 double norm_tol) {
  const int d = scheme.outcomes();
  const double uniform = 1.0 / d;
  UniformityProbe probe;
  probe.per_bin.resize(d, 0.0);
  for (Direction dir : {Direction::Theta, Direction::ThetaPrime}) {
    const Direction conj_dir =
        dir == Direction::Theta ? Direction::ThetaPrime : Direction::Theta;
    const double dtheta =
        dir == Direction::Theta ? scheme.delta() : -scheme.delta();
    for (int k = 0; k < d; ++k) {
      double dev = 0.0;
      // Probe with a single bump plus three-interval states carrying two
      // different phase ramps; either quadrature alone can miss a failure
      // whose mask coefficients happen to be purely real or imaginary.
      struct Variant {
        int n_sub;
        double phase_step;
      };
      for (const Variant v : {Variant{1, 0.0}, Variant{3, 0.0},
                              Variant{3, 0.25 * M_PI}, Variant{3, 0.5 * M_PI}}) {
        // Multi-interval states carry three times the single-bump tail mass;
        // give the unitarity gate matching slack.
        const WaveFunction state =
            v.n_sub == 1
                ? bin_localized_state(scheme, dir, k, grid)
                : o_k_localized_state(scheme, dir, k, grid, v.n_sub,
                                      v.phase_step);
        const WaveFunction rotated =
            frft(state, dtheta,
                 v.n_sub == 1 ? norm_tol : std::max(norm_tol, 1e-5));
        const ProbabilityVector p =
            pcg_probabilities(rotated, scheme, conj_dir);
        for (int l = 0; l < d; ++l) {
          dev = std::max(dev, std::abs(p[l] - uniform));
        }
      }
      if (dir == Direction::Theta) probe.per_bin[k] = dev;
      probe.max_deviation = std::max(probe.max_deviation, dev);
    }
  }
  return probe;
}

UniformityProbe invalid_scheme_probe(int d, double dtheta, int m) {
  require(d >= 2 && m >= 1, "invalid_scheme_probe: bad parameters");
  const double sine = std::sin(dtheta);
  require(std::abs(sine) > 1e-12, "invalid_scheme_probe: degenerate angle");
  bool violates = false;
  for (int n = 1; n < d; ++n) {
    if ((static_cast<long>(m) * n) % d == 0) violates = true;
  }
  require(violates, "invalid_scheme_probe: M does not violate the condition");

  const double period = std::sqrt(kTwoPi * d * std::abs(sine) / m);
  PcgScheme scheme;
  scheme.theta = dtheta;
  scheme.theta_prime = 0.0;
  scheme.bins_theta = BinSpec(period, d);
  scheme.bins_theta_prime = BinSpec(period, d);
  scheme.m = m;
  const Grid grid = localized_probe_grid(scheme, 1e-4);
  return uniformity_probe(scheme, grid, 1e-3);
}

namespace {

struct FamilyContext {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> saturating_start;
  std::function<double(const std::vector<double>&)> objective;
};

std::vector<double> clamp_to_box(const std::vector<double>& x,
                                 const std::vector<double>& lo,
                                 const std::vector<double>& hi) {
  std::vector<double> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    y[i] = std::clamp(x[i], lo[i], hi[i]);
  }
  return y;
}

double entropy_sum_of(const WaveFunction& psi, const PcgScheme& scheme,
                      double alpha, double beta) {
  const ProbabilityVector p_theta =
      pcg_probabilities(psi, scheme, Direction::Theta);
  const WaveFunction rotated = frft(psi, scheme.delta());
  const ProbabilityVector p_prime =
      pcg_probabilities(rotated, scheme, Direction::ThetaPrime);
  return renyi_entropy(p_theta, alpha) + renyi_entropy(p_prime, beta);
}

double nearest_bin_zero_center(const BinSpec& spec) {
  const double s = spec.bin_width();
  const double j0 = std::round((-spec.offset - 0.5 * s) / spec.period);
  return spec.offset + j0 * spec.period + 0.5 * s;
}

FamilyContext make_two_gaussian_context(const PcgScheme& scheme, double alpha,
                                        double beta) {
  const double T = scheme.bins_theta.period;
  const double T_prime = scheme.bins_theta_prime.period;
  const double s = scheme.bins_theta.bin_width();
  const double sigma_min = s / 8.0;
  const double sigma_max = T / 4.0;

  const double half_width =
      std::max({2.5 * T, 0.5 * T_prime + 4.0 / sigma_min, 10.0});
  const double dq_max =
      std::min(sigma_min / 3.0, kTwoPi / (3.0 * half_width));
  const int m = std::max(4, static_cast<int>(std::ceil(s / dq_max)));
  const Grid grid = aligned_grid(scheme, m, half_width);

  FamilyContext ctx;
  ctx.lower = {-T / 2, std::log(sigma_min), -T_prime / 2,
               -T / 2, std::log(sigma_min), -T_prime / 2};
  ctx.upper = {T / 2, std::log(sigma_max), T_prime / 2,
               T / 2, std::log(sigma_max), T_prime / 2};
  const double c0 = nearest_bin_zero_center(scheme.bins_theta);
  const double lnsig0 = std::log(s / 8.0);
  ctx.saturating_start = {c0, lnsig0, 0.0, c0, lnsig0, 0.0};

  auto lo = ctx.lower;
  auto hi = ctx.upper;
  ctx.objective = [=](const std::vector<double>& raw) {
    const std::vector<double> x = clamp_to_box(raw, lo, hi);
    try {
      const WaveFunction g1 =
          gaussian(x[0], std::exp(x[1]), x[2], grid);
      const WaveFunction g2 =
          gaussian(x[3], std::exp(x[4]), x[5], grid);
      WaveFunction psi = g1;
      psi.theta = scheme.theta;
      for (int j = 0; j < grid.n; ++j) psi.amp[j] += g2.amp[j];
      renormalize(psi);
      return entropy_sum_of(psi, scheme, alpha, beta);
    } catch (const std::exception&) {
      return 50.0;
    }
  };
  return ctx;
}

FamilyContext make_hg_context(const PcgScheme& scheme, double alpha,
                              double beta, int modes) {
  const double s = scheme.bins_theta.bin_width();
  const double half_width = std::max(
      {std::sqrt(2.0 * modes + 1.0) + 6.0, 0.5 * scheme.bins_theta.period + s,
       0.5 * scheme.bins_theta_prime.period +
           scheme.bins_theta_prime.bin_width(),
       10.0});
  const double dq_max = std::min(0.04, kTwoPi / (3.0 * half_width));
  const int m = std::max(4, static_cast<int>(std::ceil(s / dq_max)));
  const Grid grid = aligned_grid(scheme, m, half_width);

  auto basis = std::make_shared<std::vector<WaveFunction>>();
  basis->reserve(modes);
  for (int n = 0; n < modes; ++n) basis->push_back(hermite_gauss(n, grid));

  FamilyContext ctx;
  ctx.lower.assign(2 * modes, -2.0);
  ctx.upper.assign(2 * modes, 2.0);
  ctx.saturating_start.assign(2 * modes, 0.0);
  ctx.saturating_start[0] = 1.0;

  auto lo = ctx.lower;
  auto hi = ctx.upper;
  ctx.objective = [=](const std::vector<double>& raw) {
    const std::vector<double> x = clamp_to_box(raw, lo, hi);
    try {
      WaveFunction psi;
      psi.grid = grid;
      psi.theta = scheme.theta;
      psi.amp.assign(grid.n, 0.0);
      for (int n = 0; n < modes; ++n) {
        const std::complex<double> c(x[2 * n], x[2 * n + 1]);
        for (int j = 0; j < grid.n; ++j) {
          psi.amp[j] += c * (*basis)[n].amp[j];
        }
      }
      renormalize(psi);
      return entropy_sum_of(psi, scheme, alpha, beta);
    } catch (const std::exception&) {
      return 50.0;
    }
  };
  return ctx;
}

}  // namespace

MinimizeResult minimize_entropy_sum(const PcgScheme& scheme, double alpha,
                                    const MinimizeOptions& options) {
  validate_scheme(scheme);
  require(options.budget >= 100, "minimize_entropy_sum: budget must be >= 100");
  require(options.restarts >= 1, "minimize_entropy_sum: need >= 1 restart");
  const double beta = conjugate_order(alpha);

  const FamilyContext ctx =
      options.family == StateFamily::TwoGaussian
          ? make_two_gaussian_context(scheme, alpha, beta)
          : make_hg_context(scheme, alpha, beta, options.hg_modes);

  const size_t dim = ctx.lower.size();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  MinimizeResult result;
  result.best_sum = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < options.restarts; ++restart) {
    std::vector<double> start(dim);
    if (restart == 0) {
      start = ctx.saturating_start;
    } else {
      for (size_t i = 0; i < dim; ++i) {
        start[i] = ctx.lower[i] + unit(rng) * (ctx.upper[i] - ctx.lower[i]);
      }
    }
    std::vector<double> step(dim);
    for (size_t i = 0; i < dim; ++i) {
      step[i] = 0.25 * (ctx.upper[i] - ctx.lower[i]);
      if (start[i] + step[i] > ctx.upper[i]) step[i] = -step[i];
    }
    const detail::SimplexResult sr =
        detail::nelder_mead(ctx.objective, start, step, options.budget);
    result.evaluations += sr.evaluations;
    if (sr.value < result.best_sum) {
      result.best_sum = sr.value;
      result.best_params = clamp_to_box(sr.x, ctx.lower, ctx.upper);
    }
  }
  result.deficit =
      result.best_sum - std::log(static_cast<double>(scheme.outcomes()));
  return result;
}

double continuous_renyi(const WaveFunction& psi, double alpha) {
  require(!std::isnan(alpha) && alpha >= 0.5,
          "continuous_renyi: order must lie in [1/2, infinity]");
  if (std::abs(psi.norm() - 1.0) > 1e-6) {
    throw std::runtime_error("continuous_renyi: state is not normalized");
  }
  const double dq = psi.grid.dq;
  if (std::isinf(alpha)) {
    double peak = 0.0;
    for (const auto& a : psi.amp) peak = std::max(peak, std::norm(a));
    return -std::log(peak);
  }
  if (alpha == 1.0) {
    double h = 0.0;
    for (const auto& a : psi.amp) {
      const double f = std::norm(a);
      if (f > 0.0) h -= f * std::log(f) * dq;
    }
    return h;
  }
  double acc = 0.0;
  for (const auto& a : psi.amp) {
    const double f = std::norm(a);
    if (f > 0.0) acc += std::pow(f, alpha) * dq;
  }
  return std::log(acc) / (1.0 - alpha);
}

std::vector<LimitRecord> limit_study(
    const std::function<WaveFunction(const Grid&)>& make_state, double theta,
    double theta_prime, double alpha, double scale_c,
    const std::vector<int>& d_list, int points_per_bin) {
  require(scale_c > 0.0, "limit_study: scaling constant must be positive");
  const double beta = conjugate_order(alpha);
  std::vector<LimitRecord> records;
  records.reserve(d_list.size());
  for (int d : d_list) {
    const PcgScheme scheme =
        make_scheme(d, theta, theta_prime, 1, scale_c * std::sqrt(d));
    const double s = scheme.bins_theta.bin_width();
    const int m = std::max(points_per_bin,
                           static_cast<int>(std::ceil(s / 0.05)));
    const Grid grid = aligned_grid(scheme, m, 10.0);

    WaveFunction psi = make_state(grid);
    psi.theta = theta;
    const ProbabilityVector p_theta =
        pcg_probabilities(psi, scheme, Direction::Theta);
    const WaveFunction rotated = frft(psi, scheme.delta());
    const ProbabilityVector p_prime =
        pcg_probabilities(rotated, scheme, Direction::ThetaPrime);

    LimitRecord rec;
    rec.d = d;
    rec.period_theta = scheme.bins_theta.period;
    rec.bin_width_theta = s;
    rec.bin_width_theta_prime = scheme.bins_theta_prime.bin_width();
    rec.h_alpha = renyi_entropy(p_theta, alpha);
    rec.h_beta = renyi_entropy(p_prime, beta);
    rec.rescaled_sum =
        rec.h_alpha + rec.h_beta + std::log(s * rec.bin_width_theta_prime);
    rec.discrete_bound =
        std::log(kTwoPi * std::abs(std::sin(scheme.delta())));
    rec.continuous_sum =
        continuous_renyi(psi, alpha) + continuous_renyi(rotated, beta);
    rec.gap_theta =
        std::abs(rec.h_alpha + std::log(s) - continuous_renyi(psi, alpha));
    records.push_back(rec);
  }
  return records;
}

TwoModeState product_state(const WaveFunction& a, const WaveFunction& b) {
  TwoModeState state;
  state.grid_a = a.grid;
  state.grid_b = b.grid;
  state.theta_a = a.theta;
  state.theta_b = b.theta;
  state.amp.resize(static_cast<size_t>(a.grid.n) * b.grid.n);
  for (int ia = 0; ia < a.grid.n; ++ia) {
    for (int ib = 0; ib < b.grid.n; ++ib) {
      state.amp[static_cast<size_t>(ia) * b.grid.n + ib] =
          a.amp[ia] * b.amp[ib];
    }
  }
  return state;
}

namespace {

void renormalize_two_mode(TwoModeState& state) {
  double n2 = 0.0;
  for (const auto& a : state.amp) n2 += std::norm(a);
  n2 *= state.grid_a.dq * state.grid_b.dq;
  if (!(n2 > 1e-30)) throw std::runtime_error("two-mode state has zero norm");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : state.amp) a *= scale;
}

double two_mode_norm(const TwoModeState& state) {
  double n2 = 0.0;
  for (const auto& a : state.amp) n2 += std::norm(a);
  return std::sqrt(n2 * state.grid_a.dq * state.grid_b.dq);
}

}  // namespace

TwoModeState two_mode_squeezed(double r, const Grid& grid) {
  TwoModeState state;
  state.grid_a = grid;
  state.grid_b = grid;
  state.amp.resize(static_cast<size_t>(grid.n) * grid.n);
  const double gp = std::exp(-2.0 * r) / 4.0;
  const double gm = std::exp(2.0 * r) / 4.0;
  for (int ia = 0; ia < grid.n; ++ia) {
    const double x = grid.point(ia);
    for (int ib = 0; ib < grid.n; ++ib) {
      const double y = grid.point(ib);
      state.amp[static_cast<size_t>(ia) * grid.n + ib] =
          std::exp(-gp * (x + y) * (x + y) - gm * (x - y) * (x - y));
    }
  }
  renormalize_two_mode(state);
  return state;
}

TwoModeState frft_party(const TwoModeState& state, int party, double dtheta) {
  require(party == 0 || party == 1, "frft_party: party must be 0 or 1");
  const Grid& grid = party == 0 ? state.grid_a : state.grid_b;
  const auto& kernel = frft_kernel(grid, dtheta);
  const int na = state.grid_a.n;
  const int nb = state.grid_b.n;
  TwoModeState out = state;
  if (party == 0) {
    out.theta_a -= dtheta;
    for (int ib = 0; ib < nb; ++ib) {
      for (int oa = 0; oa < na; ++oa) {
        std::complex<double> acc = 0.0;
        const std::complex<double>* row =
            kernel.data() + static_cast<size_t>(oa) * na;
        for (int ia = 0; ia < na; ++ia) {
          acc += row[ia] * state.amp[static_cast<size_t>(ia) * nb + ib];
        }
        out.amp[static_cast<size_t>(oa) * nb + ib] = acc;
      }
    }
  } else {
    out.theta_b -= dtheta;
    for (int ia = 0; ia < na; ++ia) {
      const std::complex<double>* src =
          state.amp.data() + static_cast<size_t>(ia) * nb;
      std::complex<double>* dst =
          out.amp.data() + static_cast<size_t>(ia) * nb;
      for (int ob = 0; ob < nb; ++ob) {
        std::complex<double> acc = 0.0;
        const std::complex<double>* row =
            kernel.data() + static_cast<size_t>(ob) * nb;
        for (int ib = 0; ib < nb; ++ib) acc += row[ib] * src[ib];
        dst[ob] = acc;
      }
    }
  }
  const double drift = std::abs(two_mode_norm(out) - two_mode_norm(state));
  if (drift > 1e-6) {
    throw std::runtime_error(
        "frft_party: unitarity check failed; use a finer or wider grid");
  }
  return out;
}

namespace {

TwoModeState rotate_to(const TwoModeState& state, double target_a,
                       double target_b) {
  TwoModeState out = state;
  const double da = out.theta_a - target_a;
  if (std::abs(std::remainder(da, kTwoPi)) > 1e-12) {
    out = frft_party(out, 0, da);
  }
  const double db = out.theta_b - target_b;
  if (std::abs(std::remainder(db, kTwoPi)) > 1e-12) {
    out = frft_party(out, 1, db);
  }
  return out;
}

void accumulate_joint(const TwoModeState& state, const BinSpec& spec_a,
                      const BinSpec& spec_b, double weight,
                      std::vector<double>& raw) {
  const auto wa = sample_bin_weights(state.grid_a, spec_a);
  const auto wb = sample_bin_weights(state.grid_b, spec_b);
  const int nb = state.grid_b.n;
  const int cols = spec_b.outcomes;
  for (int ia = 0; ia < state.grid_a.n; ++ia) {
    for (const auto& [ka, va] : wa[ia]) {
      for (int ib = 0; ib < nb; ++ib) {
        const double f = std::norm(state.amp[static_cast<size_t>(ia) * nb + ib]);
        for (const auto& [kb, vb] : wb[ib]) {
          raw[static_cast<size_t>(ka) * cols + kb] += weight * va * vb * f;
        }
      }
    }
  }
}

}  // namespace

WitnessReport steering_witness(const TwoModeEnsemble& rho,
                               const PcgScheme& scheme, double phi,
                               double phi_prime) {
  validate_scheme(scheme);
  require(!rho.members.empty(), "steering_witness: empty ensemble");
  double total = 0.0;
  for (const auto& [w, state] : rho.members) {
    require(w >= 0.0, "steering_witness: weights must be nonnegative");
    total += w;
  }
  require(std::abs(total - 1.0) < 1e-12,
          "steering_witness: weights must sum to 1");

  const int d = scheme.outcomes();
  std::vector<double> raw1(static_cast<size_t>(d) * d, 0.0);
  std::vector<double> raw2(static_cast<size_t>(d) * d, 0.0);
  for (const auto& [w, state] : rho.members) {
    const TwoModeState s1 = rotate_to(state, scheme.theta, phi);
    accumulate_joint(s1, scheme.bins_theta, scheme.bins_theta, w, raw1);
    const TwoModeState s2 = rotate_to(state, scheme.theta_prime, phi_prime);
    accumulate_joint(s2, scheme.bins_theta_prime, scheme.bins_theta_prime, w,
                     raw2);
  }
  const JointDistribution joint1 = make_joint_distribution(d, d, raw1);
  const JointDistribution joint2 = make_joint_distribution(d, d, raw2);

  WitnessReport report;
  report.theta = scheme.theta;
  report.theta_prime = scheme.theta_prime;
  report.phi = phi;
  report.phi_prime = phi_prime;
  report.h_cond_1 = conditional_shannon(joint1);
  report.h_cond_2 = conditional_shannon(joint2);
  report.sum = report.h_cond_1 + report.h_cond_2;
  report.bound = std::log(static_cast<double>(d));
  report.violated = report.sum < report.bound - 1e-3;
  return report;
}

}  // namespace pcg
