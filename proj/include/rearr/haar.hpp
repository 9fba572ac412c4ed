// Finite-depth Haar analysis with the L^inf-normalised system
// h_I = 1 on the left half of I, -1 on the right half.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rearr/dyadic.hpp"

namespace rearr {

/// A step function on the 2^depth cells of level `depth`.
struct GridFunction {
  int depth = 0;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(int depth, std::vector<double> values);
  static GridFunction zeros(int depth);
};

/// f = mean + Σ_{level(I) < depth} a_I h_I with a_I = <f, h_I> / |I|.
struct HaarCoefficients {
  int depth = 0;
  double mean = 0.0;
  std::vector<std::vector<double>> coeff;  // coeff[l][k-1] is a_{I(l,k)}

  static HaarCoefficients zeros(int depth);
  double& at(const DyadicInterval& interval);
  double at(const DyadicInterval& interval) const;
};

HaarCoefficients haar_analyze(const GridFunction& f);
GridFunction haar_synthesize(const HaarCoefficients& c);

/// S(f) = (Σ a_I^2 1_I)^{1/2}; the mean is not part of the sum.
GridFunction square_function(const HaarCoefficients& c);

double lp_norm(const GridFunction& f, double p);

/// Moves the coefficient of I to τ(I); the mean is unchanged.
HaarCoefficients apply_rearrangement(const HaarCoefficients& c, const Rearrangement& tau);

/// Per-trial seed derived from a base seed, so that trial i draws the same
/// numbers however the trials are scheduled.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

struct NormReport {
  double p = 2.0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t evaluations = 0;
  double best_ratio = 0.0;
  std::vector<double> history;  // best ratio after every step
  HaarCoefficients witness;
};

/// Lower bound for ||T||_{p -> p} on functions of the given depth.
/// Step i of the fixed schedule is a coordinate-ascent move on the best
/// iterate when i % 5 == 4 and a fresh random draw otherwise, so a larger
/// budget only extends the schedule and the reported value never decreases.
NormReport estimate_norm(const Rearrangement& tau, double p, int depth, std::size_t budget,
                         std::uint64_t seed = 0);

struct RatioSummary {
  double min = 0.0;
  double max = 0.0;
  std::size_t trials = 0;
};

struct BlockedReport {
  bool accepted = false;
  std::string rejection;  // witness for a violated structural hypothesis
  double p = 2.0;
  std::uint64_t seed = 0;
  RatioSummary image_vs_blocked;   // ||Σ x_I T h~_I|| / ||Σ x_I h~_I||
  RatioSummary blocked_vs_haar;    // ||Σ x_I h~_I|| / ||Σ x_I h_I||
};

using BlockFamily = std::map<DyadicInterval, IntervalCollection>;

/// Empirical constants of the blocked system h~_I = Σ_{J ∈ H_I} h_J.
BlockedReport blocked_equivalence_report(const BlockFamily& blocks, const Rearrangement& tau,
                                         double p, std::size_t trials, std::uint64_t seed = 0);

struct RestrictedReport {
  bool accepted = false;
  SupportCertificate certificate;
  double p = 2.0;
  std::uint64_t seed = 0;
  RatioSummary ratio;  // ||Σ x_I h_τ(I)|| / ||Σ x_I h_I|| over x supported on F
};

RestrictedReport restricted_isomorphism_report(const Rearrangement& tau,
                                               const IntervalCollection& family,
                                               const NestedFamily& sets, double p,
                                               std::size_t trials, std::uint64_t seed = 0);

}  // namespace rearr
