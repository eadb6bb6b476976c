#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gconv/cnn.hpp"
#include "gconv/fnn.hpp"
#include "gconv/signal.hpp"

namespace gconv {

/// A map R^{[C_in] x G} -> R^{out_dim}. When `out_channels` is set the output is
/// read as R^{[out_channels] x G} (channel-major) and equivariance is defined.
struct Evaluable {
  GroupPtr group;
  std::size_t in_channels = 0;
  std::size_t out_dim = 0;
  std::optional<std::size_t> out_channels;
  std::function<std::vector<double>(std::span<const double>)> fn;

  std::vector<double> operator()(std::span<const double> x) const { return fn(x); }
  bool group_indexed() const noexcept { return out_channels.has_value(); }
};

Evaluable as_evaluable(const CNN& net);
/// An FNN without a reshape declaration is not G-indexed.
Evaluable as_evaluable(const FNN& net, std::optional<std::size_t> out_channels = std::nullopt);
Evaluable as_evaluable(const AffineMap& map, GroupPtr group, std::size_t in_channels,
                       std::size_t out_channels);

/// A finite multiset of inputs standing in for the domain Omega.
struct SampleSet {
  GroupPtr group;
  std::size_t channels = 0;
  std::vector<ChannelSignal> points;
  bool symmetrized = false;

  /// `count` standard-normal points from SplitMix64(seed).
  static SampleSet random(GroupPtr group, std::size_t channels, std::size_t count,
                          std::uint64_t seed);
};

/// Orbit closure: every point followed by its shifts S_g x for g = 1, ..., |G|-1,
/// so the result has |G| times as many points (multiplicities kept).
SampleSet symmetrize(const SampleSet& samples);

struct EquivarianceWitness {
  Element g;
  std::vector<double> input;
  double deviation;
};

struct EquivarianceVerdict {
  bool passed = false;
  std::optional<EquivarianceWitness> witness;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t tested_shifts = 0;
};

inline constexpr double kDefaultTolerance = 1e-9;

/// Exhaustive over g in G and over the samples; deviation is measured with
/// relative_deviation between f(S_g x) and S_g f(x).
EquivarianceVerdict check_equivariance(const Evaluable& f, const SampleSet& samples,
                                       double tolerance = kDefaultTolerance);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum_x ||f(x) - g(x)||_p^p)^{1/p}, or the max over samples and coordinates for p = inf.
double empirical_lp_distance(const Evaluable& f, const Evaluable& g, const SampleSet& samples,
                             double p);

/// Same, restricted to the identity-coordinate block of both outputs.
double empirical_lp_distance_identity(const Evaluable& f, const Evaluable& g,
                                      const SampleSet& samples, double p);

struct NormIdentity {
  double lhs = 0.0;                 // full distance
  double identity_distance = 0.0;   // identity-coordinate distance
  double factor = 1.0;              // |G|^{1/p}, 1 for p = inf
  double rhs = 0.0;                 // factor * identity_distance
  double relative_gap = 0.0;
};

/// Compares ||f - g|| with |G|^{1/p} ||(f)_1 - (g)_1|| on a symmetrized set.
/// Throws PreconditionError when samples are not symmetrized or either map
/// fails check_equivariance.
NormIdentity transfer_norm_identity_check(const Evaluable& f, const Evaluable& g,
                                          const SampleSet& samples, double p);

/// A set of admissible weights, given by a finite list or a predicate.
class WeightDomain {
 public:
  static WeightDomain finite(std::vector<double> values);
  static WeightDomain predicate(std::function<bool(double)> test, std::string description);
  static WeightDomain integers();

  bool contains(double w) const;
  /// This domain joined with {0, 1}.
  WeightDomain with_zero_one() const;
  const std::string& description() const noexcept { return description_; }

 private:
  std::function<bool(double)> test_;
  std::string description_;
};

struct DomainAudit {
  bool passed = true;
  std::vector<double> offending;  // sorted, unique
  std::string domain;
};

/// Checks every matrix entry, bias entry and filter tap, including the implicit
/// zeros of the sparse storage.
DomainAudit audit_weight_domain(const FNN& net, const WeightDomain& domain);
DomainAudit audit_weight_domain(const CNN& net, const WeightDomain& domain);

}  // namespace gconv
