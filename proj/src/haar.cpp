#include "rearr/haar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rearr {

namespace {

void check_depth(int depth) {
  if (depth < 0 || depth > 24) throw DomainError("grid depth must be in [0, 24]");
}

std::size_t cell(const DyadicInterval& i) { return static_cast<std::size_t>(i.index() - 1); }

}  // namespace

GridFunction::GridFunction(int d, std::vector<double> v) : depth(d), values(std::move(v)) {
  check_depth(d);
  if (values.size() != (std::size_t{1} << d)) {
    throw DomainError("grid function of depth " + std::to_string(d) + " needs 2^depth values");
  }
}

GridFunction GridFunction::zeros(int depth) {
  check_depth(depth);
  return GridFunction(depth, std::vector<double>(std::size_t{1} << depth, 0.0));
}

HaarCoefficients HaarCoefficients::zeros(int depth) {
  check_depth(depth);
  HaarCoefficients c;
  c.depth = depth;
  c.coeff.resize(static_cast<std::size_t>(depth));
  for (int l = 0; l < depth; ++l) c.coeff[static_cast<std::size_t>(l)].assign(std::size_t{1} << l, 0.0);
  return c;
}

double& HaarCoefficients::at(const DyadicInterval& interval) {
  if (interval.level() >= depth) throw DomainError("no Haar coefficient for " + to_string(interval));
  return coeff[static_cast<std::size_t>(interval.level())][cell(interval)];
}

double HaarCoefficients::at(const DyadicInterval& interval) const {
  if (interval.level() >= depth) throw DomainError("no Haar coefficient for " + to_string(interval));
  return coeff[static_cast<std::size_t>(interval.level())][cell(interval)];
}

HaarCoefficients haar_analyze(const GridFunction& f) {
  HaarCoefficients c = HaarCoefficients::zeros(f.depth);
  std::vector<double> averages = f.values;
  for (int l = f.depth - 1; l >= 0; --l) {
    const std::size_t n = std::size_t{1} << l;
    auto& level = c.coeff[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < n; ++k) {
      const double left = averages[2 * k];
      const double right = averages[2 * k + 1];
      level[k] = 0.5 * (left - right);
      averages[k] = 0.5 * (left + right);
    }
  }
  c.mean = averages.front();
  return c;
}

GridFunction haar_synthesize(const HaarCoefficients& c) {
  std::vector<double> values(std::size_t{1} << c.depth, 0.0);
  values[0] = c.mean;
  for (int l = 0; l < c.depth; ++l) {
    const std::size_t n = std::size_t{1} << l;
    const auto& level = c.coeff[static_cast<std::size_t>(l)];
    // Expand in place from the right so parents are read before overwritten.
    for (std::size_t k = n; k-- > 0;) {
      const double v = values[k];
      values[2 * k] = v + level[k];
      values[2 * k + 1] = v - level[k];
    }
  }
  return GridFunction(c.depth, std::move(values));
}

GridFunction square_function(const HaarCoefficients& c) {
  std::vector<double> sq(std::size_t{1} << c.depth, 0.0);
  for (int l = 0; l < c.depth; ++l) {
    const std::size_t n = std::size_t{1} << l;
    const auto& level = c.coeff[static_cast<std::size_t>(l)];
    for (std::size_t k = n; k-- > 0;) {
      const double v = sq[k] + level[k] * level[k];
      sq[2 * k] = v;
      sq[2 * k + 1] = v;
    }
  }
  for (double& v : sq) v = std::sqrt(v);
  return GridFunction(c.depth, std::move(sq));
}

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm needs p >= 1");
  double sum = 0.0;
  for (double v : f.values) sum += std::pow(std::abs(v), p);
  return std::pow(std::ldexp(sum, -f.depth), 1.0 / p);
}

HaarCoefficients apply_rearrangement(const HaarCoefficients& c, const Rearrangement& tau) {
  if (c.depth > 0 && tau.depth() < c.depth - 1) {
    throw DomainError("rearrangement of depth " + std::to_string(tau.depth()) +
                      " does not cover Haar levels below " + std::to_string(c.depth));
  }
  HaarCoefficients out = HaarCoefficients::zeros(c.depth);
  out.mean = c.mean;
  for (int l = 0; l < c.depth; ++l) {
    const auto& level = c.coeff[static_cast<std::size_t>(l)];
    for (std::size_t k = 0; k < level.size(); ++k) {
      if (level[k] == 0.0) continue;
      const DyadicInterval image = tau(DyadicInterval(l, static_cast<std::int64_t>(k) + 1));
      out.coeff[static_cast<std::size_t>(l)][cell(image)] = level[k];
    }
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finaliser applied to the combined key.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Operator-norm search

namespace {

double ratio_of(const HaarCoefficients& c, const Rearrangement& tau, double p) {
  const double denom = lp_norm(haar_synthesize(c), p);
  if (denom == 0.0) return 0.0;
  return lp_norm(haar_synthesize(apply_rearrangement(c, tau)), p) / denom;
}

std::optional<DyadicInterval> fixed_interval(const Rearrangement& tau, int depth) {
  for (int l = 0; l < depth; ++l) {
    for (std::int64_t k = 1; k <= (std::int64_t{1} << l); ++k) {
      const DyadicInterval i(l, k);
      if (tau(i) == i) return i;
    }
  }
  return std::nullopt;
}

HaarCoefficients random_draw(const Rearrangement& tau, const Rearrangement& inverse, int depth,
                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  HaarCoefficients c = HaarCoefficients::zeros(depth);
  if (depth == 0) return c;
  std::uniform_int_distribution<int> family(0, 2);
  switch (family(rng)) {
    case 0: {
      for (auto& level : c.coeff)
        for (double& v : level) v = gauss(rng);
      break;
    }
    case 1: {
      // Pull-back of a signed chain of nested intervals around a random
      // point: T applied to the draw gives back the concentrated chain.
      std::uniform_int_distribution<std::int64_t> point(1, std::int64_t{1} << (depth - 1));
      const DyadicInterval leaf(depth - 1, point(rng));
      std::uniform_int_distribution<int> sign(0, 1);
      for (int l = 0; l < depth; ++l) {
        const DyadicInterval target = leaf.ancestor(l);
        c.at(inverse(target)) = (sign(rng) ? 1.0 : -1.0) * std::abs(1.0 + 0.25 * gauss(rng));
      }
      break;
    }
    default: {
      std::uniform_int_distribution<int> top_level(0, depth - 1);
      const int top = top_level(rng);
      std::uniform_int_distribution<std::int64_t> pick(1, std::int64_t{1} << top);
      const DyadicInterval root(top, pick(rng));
      for (int l = top; l < depth; ++l) {
        const int shift = l - top;
        const std::int64_t first = ((root.index() - 1) << shift) + 1;
        for (std::int64_t k = first; k < first + (std::int64_t{1} << shift); ++k) {
          c.at(DyadicInterval(l, k)) = gauss(rng);
        }
      }
      break;
    }
  }
  (void)tau;
  return c;
}

}  // namespace

NormReport estimate_norm(const Rearrangement& tau, double p, int depth, std::size_t budget,
                         std::uint64_t seed) {
  if (!(p > 1.0)) throw DomainError("estimate_norm needs p > 1");
  check_depth(depth);
  if (depth > 0 && tau.depth() < depth - 1) throw DomainError("rearrangement too shallow");
  const Rearrangement inverse = tau.inverse();

  NormReport report;
  report.p = p;
  report.depth = depth;
  report.seed = seed;
  report.budget = budget;
  report.witness = HaarCoefficients::zeros(depth);
  if (depth == 0) return report;

  double step = 0.5;
  std::mt19937_64 ascent_rng(derive_seed(seed, 0xA5CE17ULL));
  for (std::size_t i = 0; i < budget; ++i) {
    HaarCoefficients candidate;
    const bool ascent = i % 5 == 4 && report.best_ratio > 0.0;
    if (i == 0) {
      if (auto fixed = fixed_interval(tau, depth)) {
        candidate = HaarCoefficients::zeros(depth);
        candidate.at(*fixed) = 1.0;
      }
    }
    if (ascent) {
      candidate = report.witness;
      double scale = 0.0;
      for (const auto& level : candidate.coeff)
        for (double v : level) scale = std::max(scale, std::abs(v));
      std::uniform_int_distribution<int> pick_level(0, depth - 1);
      const int l = pick_level(ascent_rng);
      std::uniform_int_distribution<std::size_t> pick_cell(0, (std::size_t{1} << l) - 1);
      const std::size_t k = pick_cell(ascent_rng);
      std::uniform_int_distribution<int> sign(0, 1);
      candidate.coeff[static_cast<std::size_t>(l)][k] += (sign(ascent_rng) ? 1.0 : -1.0) * step * scale;
    } else if (candidate.depth == 0) {
      std::mt19937_64 rng(derive_seed(seed, i));
      candidate = random_draw(tau, inverse, depth, rng);
    }
    const double r = ratio_of(candidate, tau, p);
    ++report.evaluations;
    if (r > report.best_ratio) {
      report.best_ratio = r;
      report.witness = std::move(candidate);
      if (ascent) step = std::min(2.0, step * 1.25);
    } else if (ascent) {
      step = std::max(1e-3, step * 0.7);
    }
    report.history.push_back(report.best_ratio);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Blocked and restricted systems

namespace {

void accumulate(RatioSummary& s, double r) {
  if (s.trials == 0) {
    s.min = s.max = r;
  } else {
    s.min = std::min(s.min, r);
    s.max = std::max(s.max, r);
  }
  ++s.trials;
}

void clear(HaarCoefficients& c) {
  c.mean = 0.0;
  for (auto& level : c.coeff) std::fill(level.begin(), level.end(), 0.0);
}

}  // namespace

BlockedReport blocked_equivalence_report(const BlockFamily& blocks, const Rearrangement& tau,
                                         double p, std::size_t trials, std::uint64_t seed) {
  BlockedReport report;
  report.p = p;
  report.seed = seed;
  if (!(p > 1.0)) throw DomainError("blocked report needs p > 1");

  int max_level = 0;
  std::map<DyadicInterval, DyadicInterval> owner;
  for (const auto& [key, block] : blocks) {
    max_level = std::max(max_level, key.level());
    if (block.empty()) {
      report.rejection = "H_" + to_string(key) + " is empty";
      return report;
    }
    const int level = block.begin()->level();
    for (const DyadicInterval& member : block) {
      if (member.level() != level) {
        report.rejection = "H_" + to_string(key) + " mixes lengths: " + to_string(*block.begin()) +
                           " and " + to_string(member);
        return report;
      }
      auto [it, inserted] = owner.emplace(member, key);
      if (!inserted) {
        report.rejection = to_string(member) + " lies in both H_" + to_string(it->second) +
                           " and H_" + to_string(key);
        return report;
      }
      max_level = std::max(max_level, member.level());
    }
  }
  if (tau.depth() < max_level) throw DomainError("rearrangement does not reach the block levels");
  report.accepted = true;

  const int depth = max_level + 1;
  HaarCoefficients haar = HaarCoefficients::zeros(depth);
  HaarCoefficients blocked = HaarCoefficients::zeros(depth);
  HaarCoefficients image = HaarCoefficients::zeros(depth);
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    std::normal_distribution<double> gauss;
    clear(haar);
    clear(blocked);
    clear(image);
    for (const auto& [key, block] : blocks) {
      const double x = gauss(rng);
      haar.at(key) += x;
      for (const DyadicInterval& member : block) {
        blocked.at(member) += x;
        image.at(tau(member)) += x;
      }
    }
    const double n_haar = lp_norm(haar_synthesize(haar), p);
    const double n_blocked = lp_norm(haar_synthesize(blocked), p);
    const double n_image = lp_norm(haar_synthesize(image), p);
    if (n_haar == 0.0 || n_blocked == 0.0) continue;
    accumulate(report.image_vs_blocked, n_image / n_blocked);
    accumulate(report.blocked_vs_haar, n_blocked / n_haar);
  }
  return report;
}

RestrictedReport restricted_isomorphism_report(const Rearrangement& tau,
                                               const IntervalCollection& family,
                                               const NestedFamily& sets, double p,
                                               std::size_t trials, std::uint64_t seed) {
  RestrictedReport report;
  report.p = p;
  report.seed = seed;
  if (!(p > 1.0)) throw DomainError("restricted report needs p > 1");
  report.certificate = verify_supporting_tree(tau, family, sets);
  if (!report.certificate.verdict || family.empty()) return report;
  report.accepted = true;

  const int depth = family.max_level() + 1;
  HaarCoefficients source = HaarCoefficients::zeros(depth);
  HaarCoefficients image = HaarCoefficients::zeros(depth);
  std::vector<std::pair<DyadicInterval, DyadicInterval>> pairs;
  for (const DyadicInterval& i : family) pairs.emplace_back(i, tau(i));
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    std::normal_distribution<double> gauss;
    clear(source);
    clear(image);
    for (const auto& [i, ti] : pairs) {
      const double x = gauss(rng);
      source.at(i) = x;
      image.at(ti) = x;
    }
    const double denom = lp_norm(haar_synthesize(source), p);
    if (denom == 0.0) continue;
    accumulate(report.ratio, lp_norm(haar_synthesize(image), p) / denom);
  }
  return report;
}

}  // namespace rearr
