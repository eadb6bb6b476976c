#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "gconv/cnn.hpp"
#include "gconv/fnn.hpp"
#include "gconv/transpiler.hpp"
#include "gconv/verifier.hpp"

namespace gconv::io {

using json = nlohmann::json;
using Network = std::variant<FNN, CNN>;

inline constexpr int kFormatVersion = 1;

json group_to_json(const FiniteGroup& group);
/// Accepts {"kind": "cyclic", "n": n}, {"kind": "product", "factors": [...]}
/// and {"kind": "table", "table": [[...], ...]}.
GroupPtr group_from_json(const json& doc, const std::string& where = "/group");
/// Inline JSON text or a path to a JSON file.
GroupPtr parse_group_argument(const std::string& text);

json to_json(const AffineMap& map);
json to_json(const FNN& net);
json to_json(const CNN& net);
json to_json(const Network& net);

Network network_from_json(const json& doc);

/// Parse errors carry "<path>:byte <n>"; invariant violations are ValidationError.
Network load_network(const std::filesystem::path& path);
void store_network(const Network& net, const std::filesystem::path& path);

/// Canonical text: keys sorted, two-space indent, trailing newline.
std::string dump(const json& doc);
json read_json(const std::filesystem::path& path);
void write_json(const json& doc, const std::filesystem::path& path);

/// {"channels": C, "values": [...]} against a known group.
ChannelSignal signal_from_json(const json& doc, const GroupPtr& group);
json to_json(const ChannelSignal& x);

/// {"channels": C, "points": [[...], ...], "symmetrized": bool}.
SampleSet samples_from_json(const json& doc, const GroupPtr& group);
json to_json(const SampleSet& samples);

json to_json(const TransferReport& report);
json to_json(const RoundtripReport& report);
json to_json(const EquivarianceVerdict& verdict);
json to_json(const DomainAudit& audit);

}  // namespace gconv::io
