#include "gconv/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "gconv/error.hpp"

namespace gconv::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where, what); }

const json& field(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

std::size_t as_size(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) fail(where, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::vector<double> as_doubles(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<std::size_t> as_sizes(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_size(v[i], where + "/" + std::to_string(i)));
  return out;
}

// Constructors throw InvalidStructure/IncompatibleOperands; on load these are
// reported as validation errors at the document location.
template <class F>
auto validated(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const InvalidStructure& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const IncompatibleOperands& e) {
    throw ValidationError(where + ": " + e.what());
  } catch (const InvalidParameter& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

json descriptor_to_json(const GroupDescriptor& d, const FiniteGroup* group) {
  switch (d.kind) {
    case GroupDescriptor::Kind::cyclic:
      return json{{"kind", "cyclic"}, {"n", d.n}};
    case GroupDescriptor::Kind::product: {
      json factors = json::array();
      for (const auto& f : d.factors) factors.push_back(descriptor_to_json(f, nullptr));
      return json{{"kind", "product"}, {"factors", factors}};
    }
    case GroupDescriptor::Kind::table:
      break;
  }
  if (!group) throw InvalidParameter("table descriptor without its group");
  json rows = json::array();
  const std::size_t n = group->size();
  for (std::size_t g = 0; g < n; ++g) {
    json row = json::array();
    for (std::size_t h = 0; h < n; ++h) row.push_back(group->mul(static_cast<Element>(g), static_cast<Element>(h)));
    rows.push_back(std::move(row));
  }
  return json{{"kind", "table"}, {"table", rows}};
}

AffineMap affine_from_json(const json& doc, const std::string& where) {
  const std::size_t rows = as_size(field(doc, "rows", where), where + "/rows");
  const std::size_t cols = as_size(field(doc, "cols", where), where + "/cols");
  const json& triplets = field(doc, "entries", where);
  if (!triplets.is_array()) fail(where + "/entries", "expected an array of [row, col, value]");
  std::vector<AffineMap::Entry> entries;
  entries.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const std::string w = where + "/entries/" + std::to_string(i);
    const json& t = triplets[i];
    if (!t.is_array() || t.size() != 3) fail(w, "expected [row, col, value]");
    entries.push_back({as_size(t[0], w + "/0"), as_size(t[1], w + "/1"), as_double(t[2], w + "/2")});
  }
  auto bias = as_doubles(field(doc, "bias", where), where + "/bias");
  return validated(where, [&] { return AffineMap(rows, cols, std::move(entries), std::move(bias)); });
}

void check_header(const json& doc, const std::string& kind) {
  const std::size_t version = as_size(field(doc, "format_version", ""), "/format_version");
  if (version != static_cast<std::size_t>(kFormatVersion))
    fail("/format_version", "unsupported version " + std::to_string(version));
  (void)kind;
}

FNN fnn_from_json(const json& doc) {
  check_header(doc, "fnn");
  GroupPtr group = group_from_json(field(doc, "group", ""), "/group");
  const auto activation = validated("/activation", [&] {
    const json& a = field(doc, "activation", "");
    if (!a.is_string()) fail("/activation", "expected a string");
    return Activation::parse(a.get<std::string>());
  });
  const std::size_t c0 = as_size(field(doc, "input_channels", ""), "/input_channels");
  const json& layers = field(doc, "layers", "");
  if (!layers.is_array()) fail("/layers", "expected an array");
  std::vector<AffineMap> maps;
  for (std::size_t l = 0; l < layers.size(); ++l) maps.push_back(affine_from_json(layers[l], "/layers/" + std::to_string(l)));
  return validated("/layers", [&] { return FNN(group, c0, std::move(maps), activation); });
}

CNN cnn_from_json(const json& doc) {
  check_header(doc, "cnn");
  GroupPtr group = group_from_json(field(doc, "group", ""), "/group");
  const auto activation = validated("/activation", [&] {
    const json& a = field(doc, "activation", "");
    if (!a.is_string()) fail("/activation", "expected a string");
    return Activation::parse(a.get<std::string>());
  });
  const auto channels = as_sizes(field(doc, "channel_counts", ""), "/channel_counts");
  const auto filters = as_sizes(field(doc, "filter_counts", ""), "/filter_counts");
  const json& layers = field(doc, "layers", "");
  if (!layers.is_array()) fail("/layers", "expected an array");
  if (channels.size() != layers.size() + 1)
    throw ValidationError("/channel_counts: expected L + 1 = " + std::to_string(layers.size() + 1) + " entries");
  if (filters.size() != layers.size())
    throw ValidationError("/filter_counts: expected L = " + std::to_string(layers.size()) + " entries");
  std::vector<ConvLayer> convs;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string w = "/layers/" + std::to_string(l);
    const json& f = field(layers[l], "filters", w);
    if (!f.is_array()) fail(w + "/filters", "expected an array of filters");
    if (f.size() != filters[l])
      throw ValidationError(w + "/filters: filter_counts declares " + std::to_string(filters[l]) + " filters, found " +
                            std::to_string(f.size()));
    std::vector<GroupSignal> taps;
    for (std::size_t r = 0; r < f.size(); ++r) {
      const std::string wr = w + "/filters/" + std::to_string(r);
      auto v = as_doubles(f[r], wr);
      if (v.size() != group->size())
        throw ValidationError(wr + ": filter length " + std::to_string(v.size()) + " differs from |G| = " +
                              std::to_string(group->size()));
      taps.emplace_back(group, std::move(v));
    }
    AffineMap a = affine_from_json(field(layers[l], "affine", w), w + "/affine");
    if (a.rows() != channels[l + 1])
      throw ValidationError(w + "/affine: rows " + std::to_string(a.rows()) + " differ from C_" +
                            std::to_string(l + 1) + " = " + std::to_string(channels[l + 1]));
    convs.push_back(validated(w, [&] {
      return ConvLayer(FilteringMap(group, channels[l], std::move(taps)), std::move(a));
    }));
  }
  return validated("/layers", [&] { return CNN(group, std::move(convs), activation); });
}

}  // namespace

json group_to_json(const FiniteGroup& group) { return descriptor_to_json(group.descriptor(), &group); }

GroupPtr group_from_json(const json& doc, const std::string& where) {
  const json& kind = field(doc, "kind", where);
  if (!kind.is_string()) fail(where + "/kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "cyclic") {
    const std::size_t n = as_size(field(doc, "n", where), where + "/n");
    return validated(where, [&] { return make_cyclic(n); });
  }
  if (k == "product") {
    const json& factors = field(doc, "factors", where);
    if (!factors.is_array() || factors.empty()) fail(where + "/factors", "expected a nonempty array");
    GroupPtr g = group_from_json(factors[0], where + "/factors/0");
    for (std::size_t i = 1; i < factors.size(); ++i)
      g = make_product(g, group_from_json(factors[i], where + "/factors/" + std::to_string(i)));
    return g;
  }
  if (k == "table") {
    const json& rows = field(doc, "table", where);
    if (!rows.is_array()) fail(where + "/table", "expected an array of rows");
    CayleyTable t;
    t.size = rows.size();
    for (std::size_t g = 0; g < rows.size(); ++g) {
      const std::string w = where + "/table/" + std::to_string(g);
      if (!rows[g].is_array() || rows[g].size() != rows.size()) throw ValidationError(w + ": table is not square");
      for (std::size_t h = 0; h < rows[g].size(); ++h) {
        if (!rows[g][h].is_number_integer()) fail(w + "/" + std::to_string(h), "expected an integer");
        t.entries.push_back(rows[g][h].get<std::int64_t>());
      }
    }
    return validated(where, [&] { return make_from_table(t); });
  }
  fail(where + "/kind", "unknown group kind '" + k + "'");
}

GroupPtr parse_group_argument(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError("<argument>:byte " + std::to_string(e.byte), e.what());
    }
    return group_from_json(doc, "");
  }
  const json doc = read_json(text);
  return group_from_json(doc.contains("group") ? doc.at("group") : doc, doc.contains("group") ? "/group" : "");
}

json to_json(const AffineMap& map) {
  json entries = json::array();
  for (const auto& e : map.entries()) entries.push_back(json::array({e.row, e.col, e.value}));
  return json{{"rows", map.rows()},
              {"cols", map.cols()},
              {"entries", std::move(entries)},
              {"bias", std::vector<double>(map.bias().begin(), map.bias().end())}};
}

json to_json(const FNN& net) {
  json layers = json::array();
  for (const auto& v : net.layers()) layers.push_back(to_json(v));
  return json{{"format_version", kFormatVersion}, {"kind", "fnn"},
              {"group", group_to_json(*net.group())}, {"activation", net.activation().name()},
              {"input_channels", net.input_channels()}, {"layers", std::move(layers)}};
}

json to_json(const CNN& net) {
  json layers = json::array();
  const std::size_t n = net.group()->size();
  for (const auto& t : net.layers()) {
    json filters = json::array();
    const auto flat = t.filtering().flat_filters();
    for (std::size_t r = 0; r < t.filter_count(); ++r)
      filters.push_back(std::vector<double>(flat.begin() + static_cast<std::ptrdiff_t>(r * n),
                                            flat.begin() + static_cast<std::ptrdiff_t>((r + 1) * n)));
    layers.push_back(json{{"filters", std::move(filters)}, {"affine", to_json(t.affine())}});
  }
  return json{{"format_version", kFormatVersion}, {"kind", "cnn"},
              {"group", group_to_json(*net.group())}, {"activation", net.activation().name()},
              {"channel_counts", net.channel_counts()}, {"filter_counts", net.filter_counts()},
              {"layers", std::move(layers)}};
}

json to_json(const Network& net) {
  return std::visit([](const auto& n) { return to_json(n); }, net);
}

Network network_from_json(const json& doc) {
  const json& kind = field(doc, "kind", "");
  if (!kind.is_string()) fail("/kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "fnn") return fnn_from_json(doc);
  if (k == "cnn") return cnn_from_json(doc);
  fail("/kind", "unknown network kind '" + k + "'");
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ":byte " + std::to_string(e.byte), e.what());
  }
}

void write_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dump(doc);
  if (!out) throw Error("failed writing " + path.string());
}

Network load_network(const std::filesystem::path& path) {
  const json doc = read_json(path);
  try {
    return network_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.where(), e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ":" + e.what());
  }
}

void store_network(const Network& net, const std::filesystem::path& path) { write_json(to_json(net), path); }

ChannelSignal signal_from_json(const json& doc, const GroupPtr& group) {
  const std::size_t c = as_size(field(doc, "channels", ""), "/channels");
  auto values = as_doubles(field(doc, "values", ""), "/values");
  return validated("/values", [&] { return ChannelSignal(group, c, std::move(values)); });
}

json to_json(const ChannelSignal& x) {
  return json{{"channels", x.channels()},
              {"values", std::vector<double>(x.values().begin(), x.values().end())}};
}

SampleSet samples_from_json(const json& doc, const GroupPtr& group) {
  SampleSet s;
  s.group = group;
  s.channels = as_size(field(doc, "channels", ""), "/channels");
  const json& points = field(doc, "points", "");
  if (!points.is_array()) fail("/points", "expected an array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string w = "/points/" + std::to_string(i);
    auto v = as_doubles(points[i], w);
    s.points.push_back(validated(w, [&] { return ChannelSignal(group, s.channels, std::move(v)); }));
  }
  if (const auto it = doc.find("symmetrized"); it != doc.end() && it->is_boolean()) s.symmetrized = it->get<bool>();
  return s;
}

json to_json(const SampleSet& samples) {
  json points = json::array();
  for (const auto& x : samples.points) points.push_back(std::vector<double>(x.values().begin(), x.values().end()));
  return json{{"channels", samples.channels}, {"points", std::move(points)}, {"symmetrized", samples.symmetrized}};
}

namespace {
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace

json to_json(const DomainAudit& audit) {
  return json{{"passed", audit.passed}, {"offending", audit.offending}, {"domain", audit.domain}};
}

json to_json(const TransferReport& r) {
  json doc{{"direction", to_string(r.direction)},
           {"source_weights", r.source_weights},
           {"target_weights", r.target_weights},
           {"bound_factor", r.bound_factor},
           {"bound_satisfied", r.bound_satisfied},
           {"channel_counts", r.channel_counts},
           {"filter_counts", r.filter_counts},
           {"special_case", to_string(r.special_case)},
           {"check_samples", r.equality_check.samples},
           {"check_seed", r.equality_check.seed},
           {"check_tolerance", r.equality_check.tolerance},
           {"max_relative_deviation", number_or_null(r.equality_check.max_relative_deviation)},
           {"equality_passed", r.equality_check.passed},
           {"passed", r.passed()}};
  if (!r.architecture.empty()) doc["architecture"] = r.architecture;
  if (r.weight_domain_audit) {
    doc["weight_domain"] = r.weight_domain_audit->domain;
    doc["weight_domain_passed"] = r.weight_domain_audit->passed;
    doc["weight_domain_offending"] = r.weight_domain_audit->offending;
  }
  return doc;
}

json to_json(const RoundtripReport& r) {
  return json{{"direction", "roundtrip"},
              {"source_weights", r.source_weights},
              {"intermediate_weights", r.forward.target_weights},
              {"final_weights", r.final_weights},
              {"forward_bound_satisfied", r.forward.bound_satisfied},
              {"backward_bound_satisfied", r.backward.bound_satisfied},
              {"chained_factor", r.chained_factor},
              {"chained_bound_satisfied", r.chained_bound_satisfied},
              {"channel_counts", r.forward.channel_counts},
              {"filter_counts", r.forward.filter_counts},
              {"special_case", to_string(r.forward.special_case)},
              {"check_samples", r.equality_check.samples},
              {"check_seed", r.equality_check.seed},
              {"check_tolerance", r.equality_check.tolerance},
              {"max_relative_deviation", number_or_null(r.equality_check.max_relative_deviation)},
              {"equality_passed", r.equality_check.passed},
              {"passed", r.passed()}};
}

json to_json(const EquivarianceVerdict& v) {
  json doc{{"passed", v.passed},
           {"max_deviation", number_or_null(v.max_deviation)},
           {"tolerance", v.tolerance},
           {"tested_shifts", v.tested_shifts}};
  if (v.witness) {
    doc["witness_shift"] = v.witness->g;
    doc["witness_input"] = v.witness->input;
    doc["witness_deviation"] = number_or_null(v.witness->deviation);
  }
  return doc;
}

}  // namespace gconv::io
