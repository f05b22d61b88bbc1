#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdist/distance.hpp"
#include "qdist/report.hpp"

namespace qdist {

/// A fully validated run description. Built from `key=value` pairs that may
/// come from a config file, inline tokens or `--key value` flags.
struct RunConfig {
  std::string command;                 // check | construct | sweep | dft
  std::vector<std::string> targets;    // suite names, or the construct target
  std::vector<FieldSpec> fields;
  std::vector<int> dims;
  std::vector<std::uint64_t> js;
  std::vector<std::uint64_t> sizes_e;  // `size` sets both lists
  std::vector<std::uint64_t> sizes_f;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  ReportFormat format = ReportFormat::Jsonl;
  std::string out;
  std::string csv;
  std::string family_e = "random";
  std::vector<std::string> positional;
};

/// Raw key/value pairs, in the order they were given.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// `key = value` lines; blank lines and `#` comments are ignored.
KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::string& path);

/// Splits command-line tokens after the subcommand into key/values and
/// positionals. `--config path` is expanded in place.
KeyValues parse_args(const std::vector<std::string>& args, std::vector<std::string>& positional);

/// Validates keys and values and applies defaults. Throws ConfigError.
RunConfig build_config(const std::string& command, const KeyValues& kv, std::vector<std::string> positional);

/// Canonical suite name for a name or alias, or empty if unknown.
std::string canonical_suite(const std::string& name);
const std::vector<std::string>& suite_names();
bool suite_is_randomized(const std::string& suite);

/// Parsers for single values, exposed for tests. Ranges `a..b` expand inclusively.
std::vector<std::uint64_t> parse_uint_list(const std::string& key, const std::string& value);
std::vector<std::uint32_t> parse_prime_list(const std::string& key, const std::string& value);

}  // namespace qdist
