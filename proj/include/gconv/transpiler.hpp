#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gconv/cnn.hpp"
#include "gconv/fnn.hpp"
#include "gconv/verifier.hpp"

namespace gconv {

enum class Direction { fnn_to_cnn, cnn_to_fnn };
enum class SpecialCase { none, zero_last_layer, constant_network };

std::string to_string(Direction d);
std::string to_string(SpecialCase c);

/// How the first-coordinate equality is checked numerically.
struct CheckOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  /// When non-empty these inputs are used instead of generated ones.
  std::vector<ChannelSignal> inputs;
};

struct EqualityCheck {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double max_relative_deviation = 0.0;
  bool passed = false;
};

/// Certificate of one transpilation.
struct TransferReport {
  Direction direction = Direction::fnn_to_cnn;
  std::size_t source_weights = 0;
  std::size_t target_weights = 0;
  std::size_t bound_factor = 0;  // 2 or |G|^2
  bool bound_satisfied = false;
  std::vector<std::size_t> channel_counts;
  std::vector<std::size_t> filter_counts;
  std::vector<std::size_t> architecture;  // target FNN architecture (cnn_to_fnn)
  EqualityCheck equality_check;
  SpecialCase special_case = SpecialCase::none;
  std::optional<DomainAudit> weight_domain_audit;

  bool passed() const noexcept { return bound_satisfied && equality_check.passed; }
};

struct FnnToCnn {
  CNN cnn;
  TransferReport report;
};

struct CnnToFnn {
  FNN fnn;
  TransferReport report;
};

/// FNN -> CNN whose identity coordinate reproduces the FNN, with
/// W_conv <= 2 W. `n_out` must equal the FNN's output size.
FnnToCnn fnn_to_cnn(const FNN& phi, std::size_t n_out, const CheckOptions& options = {});

/// CNN -> FNN: lowered layers, the last one restricted to the identity coordinate.
CnnToFnn cnn_to_fnn(const CNN& psi, const CheckOptions& options = {});

struct RoundtripReport {
  TransferReport forward;
  TransferReport backward;
  std::size_t source_weights = 0;
  std::size_t final_weights = 0;
  std::size_t chained_factor = 0;  // 2 |G|^2
  bool chained_bound_satisfied = false;
  EqualityCheck equality_check;

  bool passed() const noexcept {
    return forward.bound_satisfied && backward.bound_satisfied && chained_bound_satisfied &&
           equality_check.passed;
  }
};

RoundtripReport roundtrip_check(const FNN& phi, std::size_t n_out,
                                const CheckOptions& options = {});

struct Interpolation {
  FNN net;
  /// Max |net - target| over the supplied grid.
  double grid_sup_error = 0.0;
};

/// ReLU network realising the piecewise-linear interpolant of `grid_values`,
/// sampled on the uniform grid -1/2 = t_0 < ... < t_{R-1} = 1/2, as a function
/// of the single input coordinate `profile_coordinate` (flat index). Targets
/// without kinks give a one-layer affine network.
Interpolation build_interpolation_fnn(GroupPtr group, std::size_t input_channels,
                                      std::span<const double> grid_values,
                                      std::size_t profile_coordinate = 0);

/// t_k for a grid of the given resolution.
std::vector<double> interpolation_grid(std::size_t resolution);

}  // namespace gconv
