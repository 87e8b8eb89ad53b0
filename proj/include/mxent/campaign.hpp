#pragma once

// Seeded randomized verification campaigns. Each campaign draws random
// inputs per sample and records the signed slack ("margin") of one
// inequality; a sample passes when margin >= -tolerance.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mxent/bipartite.hpp"
#include "mxent/calculus.hpp"
#include "mxent/channel.hpp"
#include "mxent/entropy.hpp"
#include "mxent/errors.hpp"
#include "mxent/linalg.hpp"
#include "mxent/oracles.hpp"
#include "mxent/rng.hpp"

namespace mxent {

enum class CampaignId { C1, C2, C3, C4, C5, C6, C7, C8, C9 };

inline std::string to_string(CampaignId id) {
  return "C" + std::to_string(static_cast<int>(id) + 1);
}

inline CampaignId parse_campaign(const std::string& s) {
  if (s.size() == 2 && (s[0] == 'C' || s[0] == 'c') && s[1] >= '1' && s[1] <= '9')
    return static_cast<CampaignId>(s[1] - '1');
  throw InputError("unknown campaign '" + s + "' (expected C1..C9)");
}

/// Channel family drawn by C3. `mixed` picks one of the other three per sample.
enum class ChannelFamily { mixed, pinching, pi_1, general };

inline std::string to_string(ChannelFamily c) {
  switch (c) {
    case ChannelFamily::mixed: return "mixed";
    case ChannelFamily::pinching: return "pinching";
    case ChannelFamily::pi_1: return "pi_1";
    case ChannelFamily::general: return "general";
  }
  return "mixed";
}

inline ChannelFamily parse_channel_family(const std::string& s) {
  if (s == "mixed") return ChannelFamily::mixed;
  if (s == "pinching") return ChannelFamily::pinching;
  if (s == "pi_1" || s == "pi1") return ChannelFamily::pi_1;
  if (s == "general") return ChannelFamily::general;
  throw InputError("unknown channel family '" + s + "'");
}

struct CampaignConfig {
  CampaignId campaign = CampaignId::C1;
  Eigen::Index d1 = 2;
  Eigen::Index d2 = 2;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  double tolerance = 1e-8;
  // Relative mode divides each margin by (1 + ||inputs||_F).
  bool relative_tolerance = false;
  std::string function = "t_log_t";
  double p = 1.5;
  std::vector<double> weights = {0.5, 0.25, 0.75};
  double fd_step = 1e-4;
  double eig_lo = 0.1;
  double eig_hi = 3.0;
  double direction_scale = 1.0;
  bool normalize = false;
  ChannelFamily channel = ChannelFamily::mixed;
  // Execution detail only; results do not depend on it.
  unsigned threads = 1;

  void validate() const {
    BipartiteSpace(d1, d2);
    if (samples < 1) throw InputError("samples must be at least 1");
    if (!(tolerance > 0.0)) throw InputError("tolerance must be positive");
    if (!(fd_step > 0.0)) throw InputError("fd-step must be positive");
    if (!(eig_lo > 0.0) || !(eig_hi >= eig_lo) || !std::isfinite(eig_hi))
      throw InputError("invalid eigenvalue range");
    if (!(direction_scale > 0.0)) throw InputError("direction scale must be positive");
    if (weights.empty()) throw InputError("at least one convexity weight is required");
    for (double w : weights)
      if (!(w > 0.0 && w < 1.0)) throw InputError("convexity weights must lie strictly in (0, 1)");
    if (campaign == CampaignId::C6 && !(p >= 1.0 && p <= 2.0))
      throw InputError("C6 requires p in [1, 2]");
    (void)ScalarFunction::by_name(function, p);
  }

  ScalarFunction scalar_function() const { return ScalarFunction::by_name(function, p); }
  BipartiteSpace space() const { return BipartiteSpace(d1, d2); }
};

/// Inputs that produced one sample's margin.
struct Witness {
  std::size_t sample = 0;
  double margin = 0.0;
  std::map<std::string, Matrix> matrices;
  std::map<std::string, double> scalars;
  std::map<std::string, std::string> labels;
};

struct SampleError {
  std::size_t sample;
  std::string message;
};

struct CampaignReport {
  CampaignConfig config;
  // One entry per sample, in sample order. NaN marks a sample that errored.
  std::vector<double> margins;
  std::size_t violations = 0;
  std::optional<double> worst_margin;
  std::optional<Witness> witness;
  std::vector<SampleError> errors;
  std::string outcome;
  double wall_time = 0.0;

  bool passed() const { return violations == 0 && errors.empty(); }
};

/// violations = #{margin < -tolerance}; worst = min over finite margins.
inline void summarize_margins(const std::vector<double>& margins, double tolerance,
                              std::size_t& violations, std::optional<double>& worst) {
  violations = 0;
  worst.reset();
  for (double m : margins) {
    if (std::isnan(m)) continue;
    if (m < -tolerance) ++violations;
    if (!worst || m < *worst) worst = m;
  }
}

namespace detail {

struct SampleOutcome {
  double margin = std::numeric_limits<double>::quiet_NaN();
  Witness inputs;
  std::optional<std::string> error;
};

inline double inputs_norm(const Witness& w) {
  double s = 0.0;
  for (const auto& [name, m] : w.matrices) s += m.squaredNorm();
  return std::sqrt(s);
}

inline HermitianMatrix draw_state(const CampaignConfig& cfg, Eigen::Index n, RngStream& rng) {
  HermitianMatrix rho = random_pd(n, rng, cfg.eig_lo, cfg.eig_hi);
  if (cfg.normalize) rho = (1.0 / rho.trace()) * rho;
  return rho;
}

inline HermitianMatrix draw_pd(const CampaignConfig& cfg, Eigen::Index n, RngStream& rng) {
  return random_pd(n, rng, cfg.eig_lo, cfg.eig_hi);
}

inline HermitianMatrix draw_direction(const CampaignConfig& cfg, Eigen::Index n, RngStream& rng) {
  return random_hermitian(n, rng, cfg.direction_scale);
}

inline HermitianMatrix mix(double t, const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(t * a.matrix() + (1.0 - t) * b.matrix());
}

/// min over weights t of  t F(a) + (1-t) F(b) - F(t a + (1-t) b).
template <class Fn>
double convexity_slack(const std::vector<double>& weights, const HermitianMatrix& a,
                       const HermitianMatrix& b, Fn&& fn) {
  const double fa = fn(a);
  const double fb = fn(b);
  double worst = std::numeric_limits<double>::infinity();
  for (double t : weights) worst = std::min(worst, t * fa + (1.0 - t) * fb - fn(mix(t, a, b)));
  return worst;
}

inline double joint_midpoint_slack(const ScalarFunction& fn, const HermitianMatrix& x1,
                                   const HermitianMatrix& h1, const HermitianMatrix& x2,
                                   const HermitianMatrix& h2) {
  const HermitianMatrix xm = mix(0.5, x1, x2);
  const HermitianMatrix hm = mix(0.5, h1, h2);
  return 0.5 * quad_form(fn, x1, h1) + 0.5 * quad_form(fn, x2, h2) - quad_form(fn, xm, hm);
}

/// B* A^{-1} B for positive definite A.
inline Matrix schur_map(const HermitianMatrix& a, const Matrix& b) {
  Eigen::LLT<Matrix> llt(a.matrix());
  if (llt.info() != Eigen::Success) throw DomainError("schur_map: A is not positive definite");
  return b.adjoint() * llt.solve(b);
}

inline MixedUnitaryChannel draw_channel(ChannelFamily family, const BipartiteSpace& space,
                                        RngStream& rng) {
  if (family == ChannelFamily::mixed) {
    static constexpr ChannelFamily kChoices[] = {ChannelFamily::pinching, ChannelFamily::pi_1,
                                                ChannelFamily::general};
    family = kChoices[rng.uniform_int(0, 2)];
  }
  switch (family) {
    case ChannelFamily::pinching: return random_pinching(space.dim(), rng);
    case ChannelFamily::pi_1: return pi_1_as_channel(space);
    default: {
      const auto terms = static_cast<int>(rng.uniform_int(2, 5));
      return random_mixed_unitary(space.dim(), terms, rng);
    }
  }
}

/// Relative agreement of the Example 1 identity
///   G_{t log t}(rho) = log(d2) Tr rho - S(rho) + S(rho_1),
/// measured against the largest of the constituent terms.
inline constexpr double kEntropyIdentityTolerance = 1e-9;

inline double entropy_identity_residual(const HermitianMatrix& rho, const BipartiteSpace& space) {
  const double g = entropy_gap(rho, {ScalarFunction::t_log_t(), space});
  const double lin = std::log(static_cast<double>(space.d2())) * rho.trace();
  const double s = von_neumann_entropy(rho);
  const double s1 = von_neumann_entropy(partial_trace_2(rho, space));
  const double scale = std::max({std::abs(g), std::abs(lin), std::abs(s), std::abs(s1), 1e-300});
  return std::abs(g - (lin - s + s1)) / scale;
}

inline SampleOutcome evaluate_sample(const CampaignConfig& cfg, std::size_t index) {
  SampleOutcome out;
  out.inputs.sample = index;
  RngStream rng(cfg.seed, index);
  const BipartiteSpace space = cfg.space();
  const Eigen::Index n = space.dim();
  auto& m = out.inputs.matrices;
  auto& sc = out.inputs.scalars;
  try {
    switch (cfg.campaign) {
      case CampaignId::C1: {
        const EntropyGapSpec spec{cfg.scalar_function(), space};
        const auto rho = draw_state(cfg, n, rng);
        const auto sigma = draw_state(cfg, n, rng);
        m = {{"rho", rho.matrix()}, {"sigma", sigma.matrix()}};
        out.margin = convexity_slack(cfg.weights, rho, sigma,
                                     [&](const HermitianMatrix& x) { return entropy_gap(x, spec); });
        break;
      }
      case CampaignId::C2: {
        const EntropyGapSpec spec{cfg.scalar_function(), space};
        const auto rho = draw_state(cfg, n, rng);
        const auto h = draw_direction(cfg, n, rng);
        m = {{"rho", rho.matrix()}, {"h", h.matrix()}};
        out.margin = second_differential_spectral(rho, h, spec);
        break;
      }
      case CampaignId::C3: {
        const auto fn = cfg.scalar_function();
        const auto x = draw_pd(cfg, n, rng);
        const auto h = draw_direction(cfg, n, rng);
        const auto phi = draw_channel(cfg.channel, space, rng);
        m = {{"x", x.matrix()}, {"h", h.matrix()}};
        out.inputs.labels["channel"] = phi.kind();
        sc["channel_terms"] = static_cast<double>(phi.terms().size());
        out.margin = quad_form(fn, x, h) - quad_form(fn, phi(x), phi(h));
        break;
      }
      case CampaignId::C4:
      case CampaignId::C9: {
        const auto fn =
            cfg.campaign == CampaignId::C9 ? ScalarFunction::cube() : cfg.scalar_function();
        const auto x1 = draw_pd(cfg, n, rng);
        const auto x2 = draw_pd(cfg, n, rng);
        const auto h1 = draw_direction(cfg, n, rng);
        const auto h2 = draw_direction(cfg, n, rng);
        m = {{"x1", x1.matrix()}, {"x2", x2.matrix()}, {"h1", h1.matrix()}, {"h2", h2.matrix()}};
        out.margin = joint_midpoint_slack(fn, x1, h1, x2, h2);
        break;
      }
      case CampaignId::C5: {
        const auto rho = draw_state(cfg, n, rng);
        const auto sigma = draw_state(cfg, n, rng);
        m = {{"rho", rho.matrix()}, {"sigma", sigma.matrix()}};
        const auto gap = [&](const HermitianMatrix& x) {
          return von_neumann_entropy(x) - von_neumann_entropy(partial_trace_2(x, space));
        };
        // Concavity: LHS - chord = -(chord - LHS) for the negated functional.
        out.margin = convexity_slack(cfg.weights, rho, sigma,
                                     [&](const HermitianMatrix& x) { return -gap(x); });
        const double r1 = entropy_identity_residual(rho, space);
        const double r2 = entropy_identity_residual(sigma, space);
        sc["identity_residual"] = std::max(r1, r2);
        if (!(std::max(r1, r2) <= kEntropyIdentityTolerance))
          out.error = "entropy-gap identity residual " + std::to_string(std::max(r1, r2)) +
                      " exceeds " + std::to_string(kEntropyIdentityTolerance);
        break;
      }
      case CampaignId::C6: {
        const auto pw = ScalarFunction::power(cfg.p);
        const double scale = std::pow(static_cast<double>(space.d2()), cfg.p - 1.0);
        const auto rho = draw_state(cfg, n, rng);
        const auto sigma = draw_state(cfg, n, rng);
        m = {{"rho", rho.matrix()}, {"sigma", sigma.matrix()}};
        sc["p"] = cfg.p;
        out.margin = convexity_slack(cfg.weights, rho, sigma, [&](const HermitianMatrix& x) {
          return scale * trace_function(pw, x) - trace_function(pw, partial_trace_2(x, space));
        });
        break;
      }
      case CampaignId::C7: {
        const auto a1 = draw_pd(cfg, n, rng);
        const auto a2 = draw_pd(cfg, n, rng);
        const Matrix b1 = random_gaussian_matrix(n, rng);
        const Matrix b2 = random_gaussian_matrix(n, rng);
        m = {{"A1", a1.matrix()}, {"A2", a2.matrix()}, {"B1", b1}, {"B2", b2}};
        const Matrix chord = 0.5 * schur_map(a1, b1) + 0.5 * schur_map(a2, b2);
        const Matrix mid = schur_map(mix(0.5, a1, a2), 0.5 * (b1 + b2));
        out.margin = min_eigenvalue(HermitianMatrix(chord - mid));
        break;
      }
      case CampaignId::C8: {
        const auto a = draw_pd(cfg, n, rng);
        const auto h = draw_direction(cfg, n, rng);
        const double s = rng.uniform(0.1, 10.0);
        const double t = rng.uniform(0.1, 10.0);
        m = {{"A", a.matrix()}, {"h", h.matrix()}};
        sc["s"] = s;
        sc["t"] = t;
        const double spectral = quad_form(ScalarFunction::t_log_t(), a, h);
        const double reference = oracle::log_quad_form_resolvent(a, h);
        const double quad_gap = std::abs(spectral - reference) / std::max(1.0, std::abs(reference));
        const auto log = ScalarFunction::log();
        const double kernel_gap =
            std::abs(divided_difference(log.f, log.f1, s, t) - oracle::log_kernel_quadrature(s, t));
        sc["quad_form_gap"] = quad_gap;
        sc["kernel_gap"] = kernel_gap;
        out.margin = cfg.tolerance - std::max(quad_gap, kernel_gap);
        break;
      }
    }
  } catch (const std::exception& e) {
    out.error = e.what();
    out.margin = std::numeric_limits<double>::quiet_NaN();
  }
  if (!out.error && cfg.relative_tolerance) out.margin /= 1.0 + inputs_norm(out.inputs);
  return out;
}

/// Local perturbation descent on a C9 witness: random Hermitian moves of
/// size `step` on (x1, x2, h1, h2), accepted when the margin drops, with
/// the step halved on every rejected move.
inline SampleOutcome refine_falsification(const CampaignConfig& cfg, SampleOutcome start,
                                          int max_steps = 200, double step = 1e-2) {
  const auto fn = ScalarFunction::cube();
  const Eigen::Index n = cfg.space().dim();
  RngStream rng(cfg.seed, std::numeric_limits<std::uint64_t>::max());
  auto herm = [](const Matrix& x) { return HermitianMatrix(x); };
  SampleOutcome best = std::move(start);
  for (int k = 0; k < max_steps; ++k) {
    Witness trial = best.inputs;
    for (auto& [name, mat] : trial.matrices) mat += step * random_hermitian(n, rng, 1.0).matrix();
    try {
      const auto x1 = herm(trial.matrices.at("x1"));
      const auto x2 = herm(trial.matrices.at("x2"));
      if (min_eigenvalue(x1) <= 0.0 || min_eigenvalue(x2) <= 0.0) {
        step *= 0.5;
        continue;
      }
      double margin = joint_midpoint_slack(fn, x1, herm(trial.matrices.at("h1")), x2,
                                           herm(trial.matrices.at("h2")));
      if (cfg.relative_tolerance) margin /= 1.0 + inputs_norm(trial);
      if (margin < best.margin) {
        best.margin = margin;
        best.inputs = std::move(trial);
      } else {
        step *= 0.5;
      }
    } catch (const DomainError&) {
      step *= 0.5;
    }
  }
  best.inputs.scalars["descent_steps"] = max_steps;
  return best;
}

}  // namespace detail

inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  std::vector<detail::SampleOutcome> outcomes(cfg.samples);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.samples; i = next++) outcomes[i] = detail::evaluate_sample(cfg, i);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.samples)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (cfg.campaign == CampaignId::C9) {
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      if (!outcomes[i].error && (!worst || outcomes[i].margin < outcomes[*worst].margin)) worst = i;
    if (worst) outcomes[*worst] = detail::refine_falsification(cfg, std::move(outcomes[*worst]));
  }

  CampaignReport report;
  report.config = cfg;
  if (cfg.campaign == CampaignId::C9) report.config.function = "cube";
  report.margins.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    report.margins.push_back(o.error ? std::numeric_limits<double>::quiet_NaN() : o.margin);
    if (o.error) report.errors.push_back({o.inputs.sample, *o.error});
  }
  summarize_margins(report.margins, cfg.tolerance, report.violations, report.worst_margin);
  if (report.worst_margin) {
    for (auto& o : outcomes) {
      if (!o.error && o.margin == *report.worst_margin) {
        report.witness = std::move(o.inputs);
        report.witness->margin = o.margin;
        break;
      }
    }
  }
  if (cfg.campaign == CampaignId::C9) {
    report.outcome = report.violations > 0 ? "witness_found" : "inconclusive";
  } else if (!report.errors.empty()) {
    report.outcome = "error";
  } else {
    report.outcome = report.violations > 0 ? "violation" : "pass";
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace mxent
