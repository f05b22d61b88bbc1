#include "qdist/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qdist/errors.hpp"
#include "qdist/field.hpp"
#include "qdist/limits.hpp"

namespace qdist {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ConfigError("key '" + key + "': '" + text + "' is not a non-negative integer");
  return v;
}

constexpr std::uint64_t kMaxListLength = 100000;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {"p",      "ell",    "q",      "d",      "j",    "size",
                                             "size_e", "size_f", "trials", "seed",   "check", "format",
                                             "out",    "csv",    "family_e"};
  return keys;
}

const std::map<std::string, std::string>& key_aliases() {
  static const std::map<std::string, std::string> aliases = {
      {"sizes_e", "size_e"}, {"sizes_f", "size_f"}, {"checks", "check"}, {"family", "family_e"}};
  return aliases;
}

std::string canonical_key(const std::string& key) {
  const auto it = key_aliases().find(key);
  const std::string k = it == key_aliases().end() ? key : it->second;
  if (!known_keys().count(k)) throw ConfigError("unknown key '" + key + "'");
  return k;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "gauss",   "gauss-power", "kloosterman", "complete-square", "sphere-ft",   "restriction", "mass-identity",
      "v0",      "lemma33",     "proof-chain",     "prop41",      "shparlinski", "iosevich-rudnev",
      "sumset",  "cs-bound",    "triple",          "isotropic"};
  return names;
}

std::string canonical_suite(const std::string& name) {
  static const std::map<std::string, std::string> aliases = {
      {"lemma2.1", "gauss"},        {"cor2.2", "gauss-power"}, {"lemma2.3", "sphere-ft"},
      {"prop2.4", "restriction"},   {"lemma3.2", "v0"},       {"lemma3.3", "lemma33"},
      {"prop4.1", "prop41"},        {"mjf", "mass-identity"}, {"ir", "iosevich-rudnev"},
      {"complete-square-grid", "complete-square"}};
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return name;
  const auto it = aliases.find(name);
  return it == aliases.end() ? std::string{} : it->second;
}

bool suite_is_randomized(const std::string& suite) {
  static const std::set<std::string> randomized = {"restriction", "mass-identity", "lemma33",  "proof-chain",
                                                   "prop41",      "shparlinski",   "iosevich-rudnev",
                                                   "sumset",      "cs-bound",      "triple"};
  return randomized.count(suite) > 0;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& key, const std::string& value) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(value, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_uint(key, item));
      continue;
    }
    const std::uint64_t lo = parse_uint(key, trim(item.substr(0, dots)));
    const std::uint64_t hi = parse_uint(key, trim(item.substr(dots + 2)));
    if (lo > hi) throw ConfigError("key '" + key + "': empty range '" + item + "'");
    if (hi - lo >= kMaxListLength) throw ConfigError("key '" + key + "': range '" + item + "' is too long");
    for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw ConfigError("key '" + key + "' has no values");
  return out;
}

std::vector<std::uint32_t> parse_prime_list(const std::string& key, const std::string& value) {
  std::vector<std::uint32_t> out;
  for (const auto& item : split(value, ',')) {
    const bool range = item.find("..") != std::string::npos;
    for (std::uint64_t v : parse_uint_list(key, item)) {
      const bool odd_prime = v != 2 && is_prime(v);
      if (!range && !odd_prime) throw ConfigError("key '" + key + "': " + std::to_string(v) + " is not an odd prime");
      // Ranges keep only odd primes, so `3..13` means {3, 5, 7, 11, 13}.
      if (odd_prime) {
        if (v > UINT32_MAX) throw ConfigError("key '" + key + "': " + std::to_string(v) + " is too large");
        out.push_back(static_cast<std::uint32_t>(v));
      }
    }
  }
  if (out.empty()) throw ConfigError("key '" + key + "' contains no odd prime");
  return out;
}

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  KeyValues kv = parse_config_text(buf.str());
  for (const auto& [k, v] : kv)
    if (k == "config") throw ConfigError("config files cannot include other config files");
  return kv;
}

KeyValues parse_args(const std::vector<std::string>& args, std::vector<std::string>& positional) {
  KeyValues kv;
  auto push = [&](const std::string& key, const std::string& value) {
    if (key == "config") {
      for (auto& entry : read_config_file(value)) kv.push_back(std::move(entry));
    } else {
      kv.emplace_back(key, value);
    }
  };
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) == 0) {
      const std::string body = a.substr(2);
      const auto eq = body.find('=');
      if (eq != std::string::npos) {
        push(body.substr(0, eq), body.substr(eq + 1));
      } else {
        if (i + 1 >= args.size()) throw ConfigError("flag '" + a + "' needs a value");
        push(body, args[++i]);
      }
    } else if (const auto eq = a.find('='); eq != std::string::npos && eq > 0) {
      push(a.substr(0, eq), a.substr(eq + 1));
    } else {
      positional.push_back(a);
    }
  }
  return kv;
}

RunConfig build_config(const std::string& command, const KeyValues& raw, std::vector<std::string> positional) {
  static const std::set<std::string> commands = {"check", "construct", "sweep", "dft"};
  if (!commands.count(command)) throw ConfigError("unknown command '" + command + "'");

  // Later occurrences override earlier ones, so flags can override a config file.
  std::map<std::string, std::string> kv;
  for (const auto& [k, v] : raw) kv[canonical_key(k)] = v;

  RunConfig cfg;
  cfg.command = command;

  if (kv.count("p") && kv.count("q")) throw ConfigError("give either 'p' (with 'ell') or 'q', not both");
  if (kv.count("q") && kv.count("ell")) throw ConfigError("'ell' cannot be combined with 'q'");
  if (kv.count("p")) {
    std::vector<std::uint64_t> ells = {1};
    if (kv.count("ell")) ells = parse_uint_list("ell", kv["ell"]);
    for (auto e : ells)
      if (e < 1 || e > static_cast<std::uint64_t>(kMaxDegree))
        throw ConfigError("key 'ell': " + std::to_string(e) + " is outside 1..3");
    for (auto p : parse_prime_list("p", kv["p"]))
      for (auto e : ells) cfg.fields.push_back(FieldSpec{p, static_cast<int>(e)});
  } else if (kv.count("q")) {
    for (auto q : parse_uint_list("q", kv["q"])) {
      std::pair<std::uint32_t, int> pe;
      try {
        pe = split_prime_power(q);
      } catch (const std::exception&) {
        throw ConfigError("key 'q': " + std::to_string(q) + " is not an odd prime power");
      }
      if (pe.first == 2) throw ConfigError("key 'q': " + std::to_string(q) + " has even characteristic");
      if (pe.second > kMaxDegree) throw ConfigError("key 'q': " + std::to_string(q) + " needs degree above 3");
      cfg.fields.push_back(FieldSpec{pe.first, pe.second});
    }
  } else if (kv.count("ell")) {
    throw ConfigError("'ell' given without 'p'");
  }

  if (kv.count("d")) {
    for (auto d : parse_uint_list("d", kv["d"])) {
      if (d < 1 || d > 64) throw ConfigError("key 'd': " + std::to_string(d) + " is outside 1..64");
      cfg.dims.push_back(static_cast<int>(d));
    }
  }
  if (kv.count("j")) cfg.js = parse_uint_list("j", kv["j"]);
  if (kv.count("size")) cfg.sizes_e = cfg.sizes_f = parse_uint_list("size", kv["size"]);
  if (kv.count("size_e")) cfg.sizes_e = parse_uint_list("size_e", kv["size_e"]);
  if (kv.count("size_f")) cfg.sizes_f = parse_uint_list("size_f", kv["size_f"]);
  if (kv.count("trials")) {
    const auto t = parse_uint_list("trials", kv["trials"]);
    if (t.size() != 1) throw ConfigError("key 'trials' takes a single value");
    cfg.trials = t.front();
  }
  if (kv.count("seed")) {
    const auto s = parse_uint_list("seed", kv["seed"]);
    if (s.size() != 1) throw ConfigError("key 'seed' takes a single value");
    cfg.seed = s.front();
  }
  if (kv.count("format")) {
    if (kv["format"] == "jsonl" || kv["format"] == "json") cfg.format = ReportFormat::Jsonl;
    else if (kv["format"] == "csv") cfg.format = ReportFormat::Csv;
    else throw ConfigError("key 'format': expected jsonl or csv, got '" + kv["format"] + "'");
  }
  if (kv.count("out")) cfg.out = kv["out"];
  if (kv.count("csv")) cfg.csv = kv["csv"];
  if (kv.count("family_e")) {
    cfg.family_e = kv["family_e"];
    if (cfg.family_e != "random" && cfg.family_e != "isotropic")
      throw ConfigError("key 'family_e': expected random or isotropic");
  }

  std::vector<std::string> checks;
  if (kv.count("check"))
    for (const auto& c : split(kv["check"], ','))
      if (!c.empty()) checks.push_back(c);

  if (command == "check") {
    // `qdist check gauss ...` and `qdist check check=gauss` are equivalent.
    if (!positional.empty()) {
      checks.insert(checks.begin(), positional.begin(), positional.end());
      positional.clear();
    }
    if (checks.empty()) throw ConfigError("no suite named; use 'qdist check <suite>'");
    for (const auto& c : checks) {
      const std::string s = canonical_suite(c);
      if (s.empty()) throw ConfigError("unknown suite '" + c + "'");
      if (std::find(cfg.targets.begin(), cfg.targets.end(), s) == cfg.targets.end()) cfg.targets.push_back(s);
      if (suite_is_randomized(s) && !cfg.seed) throw ConfigError("suite '" + s + "' is randomized and needs 'seed'");
    }
    if (cfg.fields.empty()) throw ConfigError("no field given; set 'p' (and 'ell') or 'q'");
  } else if (command == "construct") {
    if (positional.size() != 1 || positional.front() != "isotropic")
      throw ConfigError("usage: qdist construct isotropic --p P [--ell L] --d D");
    cfg.targets = {"isotropic"};
    positional.clear();
    if (cfg.fields.size() != 1 || cfg.dims.size() != 1)
      throw ConfigError("construct needs exactly one field and one 'd'");
  } else if (command == "sweep") {
    if (!positional.empty()) throw ConfigError("sweep takes no positional arguments");
    if (cfg.fields.empty()) throw ConfigError("sweep needs 'p' or 'q'");
    if (cfg.dims.empty()) throw ConfigError("sweep needs 'd'");
    if (!cfg.seed) throw ConfigError("sweep is randomized and needs 'seed'");
    if (cfg.sizes_f.empty()) throw ConfigError("sweep needs 'size_f' (or 'size')");
    if (cfg.family_e == "random" && cfg.sizes_e.empty()) throw ConfigError("sweep needs 'size_e' (or 'size')");
    for (const auto& c : checks) {
      const std::string s = canonical_suite(c);
      static const std::set<std::string> per_pair = {"sumset",      "cs-bound",    "lemma33",     "proof-chain",
                                                     "prop41",      "shparlinski", "triple",      "restriction",
                                                     "mass-identity"};
      if (!per_pair.count(s)) throw ConfigError("check '" + c + "' cannot run inside a sweep");
      cfg.targets.push_back(s);
    }
  } else {  // dft
    if (cfg.fields.size() > 1 || cfg.dims.size() > 1) throw ConfigError("dft needs one field and at most one 'd'");
    if (cfg.fields.empty() && positional.empty()) throw ConfigError("dft needs 'p' or 'q'");
    const int sources = static_cast<int>(!cfg.js.empty()) + static_cast<int>(!cfg.sizes_e.empty()) +
                        static_cast<int>(!positional.empty());
    if (sources != 1) throw ConfigError("dft needs exactly one of --j, --size or a point-set file");
    if (cfg.js.size() > 1 || cfg.sizes_e.size() > 1 || positional.size() > 1)
      throw ConfigError("dft transforms a single set");
    if (!cfg.sizes_e.empty() && !cfg.seed) throw ConfigError("a random dft set needs 'seed'");
  }
  if (command != "check" && command != "sweep" && !checks.empty())
    throw ConfigError("'check' is not meaningful for " + command);
  cfg.positional = std::move(positional);
  return cfg;
}

}  // namespace qdist
