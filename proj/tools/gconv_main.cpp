// Command-line front end: transpile, lower, roundtrip, eval, verify-equivariance,
// compare, group-check, stats. Exit 0 = success, 2 = a check failed, 1 = usage or IO error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gconv/error.hpp"
#include "gconv/io.hpp"
#include "gconv/transpiler.hpp"
#include "gconv/verifier.hpp"

namespace {

using namespace gconv;
using io::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string list(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>)
      s += num(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s + ")";
}

void print(const std::string& key, const std::string& value) { std::cout << key << "=" << value << "\n"; }

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(p > 0.0)) throw InvalidParameter("--p expects a positive number or 'inf'");
  return p;
}

std::optional<WeightDomain> parse_domain(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "integers") return WeightDomain::integers();
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  return WeightDomain::finite(std::move(values));
}

Evaluable evaluable_of(const io::Network& net, std::optional<std::size_t> out_channels) {
  if (const auto* cnn = std::get_if<CNN>(&net)) return as_evaluable(*cnn);
  return as_evaluable(std::get<FNN>(net), out_channels);
}

const GroupPtr& group_of(const io::Network& net) {
  return std::visit([](const auto& n) -> const GroupPtr& { return n.group(); }, net);
}

std::size_t input_channels_of(const io::Network& net) {
  return std::visit([](const auto& n) { return n.input_channels(); }, net);
}

void maybe_write(const json& doc, const std::string& path) {
  if (!path.empty()) io::write_json(doc, path);
}

struct CheckFlags {
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  CheckOptions options() const {
    CheckOptions o;
    o.samples = samples;
    o.seed = seed;
    o.tolerance = tolerance;
    return o;
  }
};

void add_check_flags(CLI::App* cmd, CheckFlags& flags) {
  cmd->add_option("--check-samples", flags.samples, "random inputs for the equality check");
  cmd->add_option("--seed", flags.seed, "SplitMix64 seed");
  cmd->add_option("--tolerance", flags.tolerance, "relative tolerance")->check(CLI::NonNegativeNumber);
}

void print_report(const TransferReport& r, bool passed) {
  print("direction", to_string(r.direction));
  print("special_case", to_string(r.special_case));
  print("source_weights", std::to_string(r.source_weights));
  print("target_weights", std::to_string(r.target_weights));
  print("bound_factor", std::to_string(r.bound_factor));
  print("bound_satisfied", r.bound_satisfied ? "true" : "false");
  print("channel_counts", list(r.channel_counts));
  print("filter_counts", list(r.filter_counts));
  if (!r.architecture.empty()) print("architecture", list(r.architecture));
  print("max_relative_deviation", num(r.equality_check.max_relative_deviation));
  print("equality_passed", r.equality_check.passed ? "true" : "false");
  if (r.weight_domain_audit) {
    print("weight_domain_passed", r.weight_domain_audit->passed ? "true" : "false");
    print("weight_domain_offending", list(r.weight_domain_audit->offending));
  }
  print("passed", passed ? "true" : "false");
}

int run(int argc, char** argv) {
  CLI::App app{"Finite-group FNN/CNN transpiler and verifier"};
  app.require_subcommand(1);

  std::string input, out, report_path, x_path, a_path, b_path, p_text = "2", group_text, domain_text;
  CheckFlags check;
  std::size_t n_out = 0, samples = 16;
  std::optional<std::size_t> out_channels;
  bool symmetrize_flag = false;
  std::optional<double> max_distance;
  double tolerance = kDefaultTolerance;

  auto* transpile = app.add_subcommand("transpile", "FNN -> CNN with W_conv <= 2 W");
  transpile->add_option("--input", input, "FNN file")->required();
  transpile->add_option("--out", out, "CNN output file");
  transpile->add_option("--report", report_path, "report file");
  transpile->add_option("--n-out", n_out, "expected output size (defaults to the FNN's)");
  transpile->add_option("--weight-domain", domain_text,
                        "comma-separated weight set (or 'integers'); audits the CNN against it u {0,1}");
  add_check_flags(transpile, check);

  auto* lower = app.add_subcommand("lower", "CNN -> FNN with W <= |G|^2 W_conv");
  lower->add_option("--input", input, "CNN file")->required();
  lower->add_option("--out", out, "FNN output file");
  lower->add_option("--report", report_path, "report file");
  add_check_flags(lower, check);

  auto* roundtrip = app.add_subcommand("roundtrip", "FNN -> CNN -> FNN");
  roundtrip->add_option("--input", input, "FNN file")->required();
  roundtrip->add_option("--out", out, "final FNN output file");
  roundtrip->add_option("--report", report_path, "report file");
  add_check_flags(roundtrip, check);

  auto* eval = app.add_subcommand("eval", "evaluate a network on one signal");
  eval->add_option("--input", input, "network file")->required();
  eval->add_option("--x", x_path, "signal file {channels, values}")->required();
  eval->add_option("--out", out, "output file");

  auto* verify = app.add_subcommand("verify-equivariance", "exhaustive shift check on random inputs");
  verify->add_option("--input", input, "network file")->required();
  verify->add_option("--samples", samples, "random inputs");
  verify->add_option("--seed", check.seed, "SplitMix64 seed");
  verify->add_option("--tolerance", tolerance, "relative tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--out-channels", out_channels, "read an FNN output as [N] x G");
  verify->add_option("--report", report_path, "report file");

  auto* compare = app.add_subcommand("compare", "empirical L^p distance between two networks");
  compare->add_option("--a", a_path, "first network")->required();
  compare->add_option("--b", b_path, "second network")->required();
  compare->add_option("--p", p_text, "exponent, a positive number or 'inf'");
  compare->add_option("--samples", samples, "random inputs");
  compare->add_option("--seed", check.seed, "SplitMix64 seed");
  compare->add_flag("--symmetrize", symmetrize_flag, "close the samples under all shifts and check the |G|^{1/p} identity");
  compare->add_option("--max-distance", max_distance, "fail (exit 2) above this distance");
  compare->add_option("--report", report_path, "report file");

  auto* group_check = app.add_subcommand("group-check", "validate a group descriptor");
  group_check->add_option("--group", group_text, "inline JSON descriptor or a file")->required();

  auto* stats = app.add_subcommand("stats", "weights, neurons, channels, architecture");
  stats->add_option("--input", input, "network file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*transpile) {
    const auto net = io::load_network(input);
    const auto* phi = std::get_if<FNN>(&net);
    if (!phi) throw InvalidParameter("transpile expects an FNN file");
    auto result = fnn_to_cnn(*phi, n_out ? n_out : phi->output_dim(), check.options());
    bool ok = result.report.passed();
    if (const auto domain = parse_domain(domain_text)) {
      result.report.weight_domain_audit = audit_weight_domain(result.cnn, domain->with_zero_one());
      ok = ok && result.report.weight_domain_audit->passed;
    }
    print_report(result.report, ok);
    if (!out.empty()) io::store_network(result.cnn, out);
    maybe_write(io::to_json(result.report), report_path);
    return ok ? kOk : kCheckFailed;
  }
  if (*lower) {
    const auto net = io::load_network(input);
    const auto* psi = std::get_if<CNN>(&net);
    if (!psi) throw InvalidParameter("lower expects a CNN file");
    const auto result = cnn_to_fnn(*psi, check.options());
    print_report(result.report, result.report.passed());
    if (!out.empty()) io::store_network(result.fnn, out);
    maybe_write(io::to_json(result.report), report_path);
    return result.report.passed() ? kOk : kCheckFailed;
  }
  if (*roundtrip) {
    const auto net = io::load_network(input);
    const auto* phi = std::get_if<FNN>(&net);
    if (!phi) throw InvalidParameter("roundtrip expects an FNN file");
    const auto r = roundtrip_check(*phi, phi->output_dim(), check.options());
    print("source_weights", std::to_string(r.source_weights));
    print("intermediate_weights", std::to_string(r.forward.target_weights));
    print("final_weights", std::to_string(r.final_weights));
    print("chained_factor", std::to_string(r.chained_factor));
    print("chained_bound_satisfied", r.chained_bound_satisfied ? "true" : "false");
    print("max_relative_deviation", num(r.equality_check.max_relative_deviation));
    print("passed", r.passed() ? "true" : "false");
    if (!out.empty()) {
      const auto back = cnn_to_fnn(fnn_to_cnn(*phi, phi->output_dim(), check.options()).cnn, check.options());
      io::store_network(back.fnn, out);
    }
    maybe_write(io::to_json(r), report_path);
    return r.passed() ? kOk : kCheckFailed;
  }
  if (*eval) {
    const auto net = io::load_network(input);
    const auto x = io::signal_from_json(io::read_json(x_path), group_of(net));
    json doc;
    std::vector<double> y;
    if (const auto* cnn = std::get_if<CNN>(&net)) {
      const auto out_signal = realize_cnn(*cnn, x);
      y.assign(out_signal.values().begin(), out_signal.values().end());
      doc = io::to_json(out_signal);
    } else {
      y = realize_fnn(std::get<FNN>(net), x);
      doc = json{{"values", y}};
    }
    for (const double v : y) std::cout << num(v) << "\n";
    maybe_write(doc, out);
    return kOk;
  }
  if (*verify) {
    const auto net = io::load_network(input);
    const auto f = evaluable_of(net, out_channels);
    const auto set = SampleSet::random(group_of(net), input_channels_of(net), samples, check.seed);
    const auto v = check_equivariance(f, set, tolerance);
    print("passed", v.passed ? "true" : "false");
    print("max_deviation", num(v.max_deviation));
    print("tested_shifts", std::to_string(v.tested_shifts));
    if (v.witness) print("witness_shift", std::to_string(v.witness->g));
    auto doc = io::to_json(v);
    doc["samples"] = samples;
    doc["seed"] = check.seed;
    maybe_write(doc, report_path);
    return v.passed ? kOk : kCheckFailed;
  }
  if (*compare) {
    const double p = parse_p(p_text);
    const auto a = io::load_network(a_path);
    const auto b = io::load_network(b_path);
    const auto fa = evaluable_of(a, std::nullopt);
    const auto fb = evaluable_of(b, std::nullopt);
    auto set = SampleSet::random(group_of(a), input_channels_of(a), samples, check.seed);
    if (symmetrize_flag) set = symmetrize(set);
    json doc{{"p", p_text}, {"samples", set.points.size()}, {"seed", check.seed}, {"symmetrized", set.symmetrized}};
    bool ok = true;
    double distance = 0.0;
    if (symmetrize_flag && fa.group_indexed() && fb.group_indexed()) {
      const auto r = transfer_norm_identity_check(fa, fb, set, p);
      distance = r.lhs;
      print("identity_distance", num(r.identity_distance));
      print("factor", num(r.factor));
      print("relative_gap", num(r.relative_gap));
      doc["identity_distance"] = r.identity_distance;
      doc["factor"] = r.factor;
      doc["relative_gap"] = r.relative_gap;
      ok = r.relative_gap <= kDefaultTolerance;
    } else {
      distance = empirical_lp_distance(fa, fb, set, p);
    }
    print("distance", num(distance));
    doc["distance"] = distance;
    if (max_distance) {
      doc["max_distance"] = *max_distance;
      ok = ok && distance <= *max_distance;
    }
    doc["passed"] = ok;
    maybe_write(doc, report_path);
    return ok ? kOk : kCheckFailed;
  }
  if (*group_check) {
    json doc;
    const auto first = group_text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && group_text[first] == '{')
      doc = json::parse(group_text);
    else
      doc = io::read_json(group_text);
    if (doc.contains("group")) doc = doc.at("group");
    CayleyTable table;
    if (doc.value("kind", "") == "table") {
      const auto& rows = doc.at("table");
      table.size = rows.size();
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != rows.size()) {
          table.entries.clear();
          break;
        }
        for (const auto& v : row) table.entries.push_back(v.get<std::int64_t>());
      }
    } else {
      table = to_cayley_table(*io::group_from_json(doc, ""));
    }
    const auto v = validate_group(table);
    print("order", std::to_string(table.size));
    print("valid", v.ok() ? "true" : "false");
    for (const auto& w : v.violations)
      print("violation", to_string(w.axiom) + " (" + std::to_string(w.a) + "," + std::to_string(w.b) + "," +
                             std::to_string(w.c) + ")");
    return v.ok() ? kOk : kCheckFailed;
  }
  if (*stats) {
    const auto net = io::load_network(input);
    const std::size_t n = group_of(net).get()->size();
    print("group_order", std::to_string(n));
    if (const auto* cnn = std::get_if<CNN>(&net)) {
      const auto as_fnn = cnn_as_fnn(*cnn);
      print("kind", "cnn");
      print("activation", cnn->activation().name());
      print("W_conv", std::to_string(w_conv(*cnn)));
      print("W", std::to_string(weight_count(as_fnn)));
      print("N", std::to_string(neuron_count(as_fnn)));
      print("C", std::to_string(cnn->channel_total()));
      print("channel_counts", list(cnn->channel_counts()));
      print("filter_counts", list(cnn->filter_counts()));
      print("architecture", list(as_fnn.architecture()));
    } else {
      const auto& phi = std::get<FNN>(net);
      print("kind", "fnn");
      print("activation", phi.activation().name());
      print("W", std::to_string(weight_count(phi)));
      print("N", std::to_string(neuron_count(phi)));
      print("input_channels", std::to_string(phi.input_channels()));
      print("architecture", list(phi.architecture()));
    }
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
