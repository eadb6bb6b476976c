#include "gconv/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "gconv/error.hpp"
#include "gconv/numeric.hpp"
#include "gconv/random.hpp"

namespace gconv {

Evaluable as_evaluable(const CNN& net) {
  Evaluable e;
  e.group = net.group();
  e.in_channels = net.input_channels();
  e.out_channels = net.output_channels();
  e.out_dim = net.output_channels() * net.group()->size();
  e.fn = [net](std::span<const double> x) { return net.realize(x); };
  return e;
}

Evaluable as_evaluable(const FNN& net, std::optional<std::size_t> out_channels) {
  if (out_channels && *out_channels * net.group()->size() != net.output_dim())
    throw InvalidStructure("FNN output size " + std::to_string(net.output_dim()) + " is not " +
                           std::to_string(*out_channels) + " x |G|");
  Evaluable e;
  e.group = net.group();
  e.in_channels = net.input_channels();
  e.out_channels = out_channels;
  e.out_dim = net.output_dim();
  e.fn = [net](std::span<const double> x) { return net.realize(x); };
  return e;
}

Evaluable as_evaluable(const AffineMap& map, GroupPtr group, std::size_t in_channels,
                       std::size_t out_channels) {
  const std::size_t n = group->size();
  if (map.cols() != in_channels * n || map.rows() != out_channels * n)
    throw InvalidStructure("affine map shape does not match the declared channels");
  Evaluable e;
  e.group = std::move(group);
  e.in_channels = in_channels;
  e.out_channels = out_channels;
  e.out_dim = map.rows();
  e.fn = [map](std::span<const double> x) { return map.apply(x); };
  return e;
}

SampleSet SampleSet::random(GroupPtr group, std::size_t channels, std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SampleSet s;
  s.group = group;
  s.channels = channels;
  s.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) s.points.push_back(random_signal(rng, group, channels));
  return s;
}

SampleSet symmetrize(const SampleSet& samples) {
  SampleSet out;
  out.group = samples.group;
  out.channels = samples.channels;
  out.symmetrized = true;
  const auto n = static_cast<Element>(samples.group->size());
  out.points.reserve(samples.points.size() * n);
  for (const auto& x : samples.points)
    for (Element g = 0; g < n; ++g) out.points.push_back(g == 0 ? x : shift_vectorized(g, x));
  return out;
}

namespace {

void check_input_shape(const Evaluable& f, const SampleSet& samples) {
  if (!same_group(f.group, samples.group)) throw IncompatibleOperands("samples live on a different group");
  if (f.in_channels != samples.channels)
    throw IncompatibleOperands("map expects " + std::to_string(f.in_channels) + " channels, samples have " +
                               std::to_string(samples.channels));
}

void check_pair(const Evaluable& f, const Evaluable& g, const SampleSet& samples) {
  check_input_shape(f, samples);
  check_input_shape(g, samples);
  if (f.out_dim != g.out_dim) throw IncompatibleOperands("compared maps have different output sizes");
  if (samples.points.empty()) throw PreconditionError("empty sample set");
}

void check_p(double p) {
  if (!(p > 0.0)) throw InvalidParameter("p must be positive");
}

// Per-sample contribution: sum |d|^p, or max |d| for p = inf. Coordinates with
// `stride` > 1 visit only indices that are multiples of `stride`.
double sample_term(std::span<const double> a, std::span<const double> b, double p, std::size_t stride) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); i += stride) {
    const double d = std::abs(a[i] - b[i]);
    if (std::isinf(p))
      acc = std::max(acc, d);
    else
      acc += std::pow(d, p);
  }
  return acc;
}

double lp_distance(const Evaluable& f, const Evaluable& g, const SampleSet& samples, double p,
                   std::size_t stride) {
  check_p(p);
  check_pair(f, g, samples);
  const auto count = static_cast<std::ptrdiff_t>(samples.points.size());
  std::vector<double> terms(samples.points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const auto x = samples.points[static_cast<std::size_t>(s)].values();
    terms[static_cast<std::size_t>(s)] = sample_term(f(x), g(x), p, stride);
  }
  if (std::isinf(p)) return *std::max_element(terms.begin(), terms.end());
  double total = 0.0;
  for (const double t : terms) total += t;
  return std::pow(total, 1.0 / p);
}

}  // namespace

EquivarianceVerdict check_equivariance(const Evaluable& f, const SampleSet& samples, double tolerance) {
  if (!(tolerance >= 0.0)) throw InvalidParameter("tolerance must be nonnegative");
  if (!f.group_indexed())
    throw InvalidStructure("equivariance needs an output in R^{[N] x G}; declare the output channels");
  check_input_shape(f, samples);
  const auto& grp = *f.group;
  const std::size_t n = grp.size();
  const std::size_t count = samples.points.size();

  // deviations[s * n + g]; reduced serially so the witness is deterministic.
  std::vector<double> deviations(count * n, 0.0);
  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t si = 0; si < total; ++si) {
    const auto s = static_cast<std::size_t>(si);
    const auto x = samples.points[s].values();
    const auto fx = f(x);
    for (Element g = 0; g < n; ++g) {
      const auto lhs = f(shift_flat(grp, g, x));
      const auto rhs = shift_flat(grp, g, fx);
      deviations[s * n + g] = relative_deviation(lhs, rhs);
    }
  }

  EquivarianceVerdict v;
  v.tolerance = tolerance;
  v.tested_shifts = count * n;
  for (std::size_t s = 0; s < count; ++s)
    for (Element g = 0; g < n; ++g) {
      const double d = deviations[s * n + g];
      const bool bad = std::isnan(d) || d > tolerance;
      if (std::isnan(d) || d > v.max_deviation) v.max_deviation = d;
      if (bad && !v.witness) {
        const auto x = samples.points[s].values();
        v.witness = EquivarianceWitness{g, std::vector<double>(x.begin(), x.end()), d};
      }
    }
  v.passed = !v.witness;
  return v;
}

double empirical_lp_distance(const Evaluable& f, const Evaluable& g, const SampleSet& samples, double p) {
  return lp_distance(f, g, samples, p, 1);
}

double empirical_lp_distance_identity(const Evaluable& f, const Evaluable& g, const SampleSet& samples,
                                      double p) {
  if (!f.group_indexed() || !g.group_indexed())
    throw InvalidStructure("identity coordinate needs outputs in R^{[N] x G}");
  return lp_distance(f, g, samples, p, f.group->size());
}

NormIdentity transfer_norm_identity_check(const Evaluable& f, const Evaluable& g, const SampleSet& samples,
                                          double p) {
  check_p(p);
  if (!samples.symmetrized) throw PreconditionError("the norm identity needs a symmetrized sample set");
  for (const Evaluable* e : {&f, &g}) {
    const auto verdict = check_equivariance(*e, samples);
    if (!verdict.passed)
      throw PreconditionError("compared map is not translation equivariant (deviation " +
                              std::to_string(verdict.max_deviation) + ")");
  }
  NormIdentity r;
  r.lhs = empirical_lp_distance(f, g, samples, p);
  r.identity_distance = empirical_lp_distance_identity(f, g, samples, p);
  r.factor = std::isinf(p) ? 1.0 : std::pow(static_cast<double>(f.group->size()), 1.0 / p);
  r.rhs = r.factor * r.identity_distance;
  r.relative_gap = relative_gap(r.lhs, r.rhs);
  return r;
}

WeightDomain WeightDomain::finite(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::string desc = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", values[i]);
    desc += buf;
  }
  desc += "}";
  WeightDomain d;
  d.test_ = [values](double w) { return std::binary_search(values.begin(), values.end(), w); };
  d.description_ = std::move(desc);
  return d;
}

WeightDomain WeightDomain::predicate(std::function<bool(double)> test, std::string description) {
  WeightDomain d;
  d.test_ = std::move(test);
  d.description_ = std::move(description);
  return d;
}

WeightDomain WeightDomain::integers() {
  return predicate([](double w) { return std::isfinite(w) && std::floor(w) == w; }, "integers");
}

bool WeightDomain::contains(double w) const { return test_(w); }

WeightDomain WeightDomain::with_zero_one() const {
  auto inner = test_;
  return predicate([inner](double w) { return w == 0.0 || w == 1.0 || inner(w); },
                   description_ + " u {0, 1}");
}

namespace {

class Auditor {
 public:
  explicit Auditor(const WeightDomain& d) : domain_(d) {}

  void visit(double w) {
    if (w == 0.0) w = 0.0;  // fold -0.0
    if (!domain_.contains(w)) offending_.insert(w);
  }
  void visit(std::span<const double> ws) {
    for (const double w : ws) visit(w);
  }
  void visit(const AffineMap& v) {
    for (const auto& e : v.entries()) visit(e.value);
    visit(v.bias());
    if (v.nonzeros() < v.rows() * v.cols()) visit(0.0);
  }

  DomainAudit result() const {
    DomainAudit a;
    a.offending.assign(offending_.begin(), offending_.end());
    a.passed = a.offending.empty();
    a.domain = domain_.description();
    return a;
  }

 private:
  const WeightDomain& domain_;
  std::set<double> offending_;
};

}  // namespace

DomainAudit audit_weight_domain(const FNN& net, const WeightDomain& domain) {
  Auditor a(domain);
  for (const auto& v : net.layers()) a.visit(v);
  return a.result();
}

DomainAudit audit_weight_domain(const CNN& net, const WeightDomain& domain) {
  Auditor a(domain);
  for (const auto& t : net.layers()) {
    a.visit(t.affine());
    a.visit(t.filtering().flat_filters());
  }
  return a.result();
}

}  // namespace gconv
