#include "qdist/suites.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <random>

#include "qdist/char_sums.hpp"
#include "qdist/errors.hpp"
#include "qdist/geometry.hpp"
#include "qdist/rng.hpp"
#include "qdist/spectral.hpp"

namespace qdist {

namespace {

constexpr std::uint64_t kDefaultTrials = 10;
constexpr std::uint64_t kDefaultMaxSize = 64;

std::string cell_name(const std::string& suite, const FieldCtx& ctx, int d) {
  return "suite=" + suite + " p=" + std::to_string(ctx.p()) + " ell=" + std::to_string(ctx.ell()) +
         " d=" + std::to_string(d);
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while (r * r < n) ++r;
  return r;
}

// Sizes for trial k when the config leaves them open. Drawn from a stream
// of their own so the set seeds stay exactly make_trial's.
std::pair<std::uint64_t, std::uint64_t> drawn_sizes(const std::string& suite, std::uint64_t n, const TrialPlan& plan) {
  std::mt19937_64 rng(derive_seed(plan.seed_e ^ plan.seed_f, 0x51A3));
  if (suite == "shparlinski") {
    // Unbalanced: a small E against a large F.
    const std::uint64_t e = uniform_between(rng, 1, std::max<std::uint64_t>(1, ceil_sqrt(n)));
    const std::uint64_t f = uniform_between(rng, (n + 1) / 2, n);
    return {e, f};
  }
  const std::uint64_t cap = std::min(n, kDefaultMaxSize);
  const std::uint64_t e = uniform_between(rng, 1, cap);
  const std::uint64_t f = uniform_between(rng, 1, cap);
  return {e, f};
}

void run_randomized(const RunConfig& cfg, const std::string& suite, const FieldCtx& ctx, int d,
                    const ReportSink& emit, const CapSink& on_cap) {
  const std::uint64_t trials = cfg.trials.value_or(kDefaultTrials);
  const std::uint64_t seed = *cfg.seed;
  if (suite == "iosevich-rudnev") {
    try {
      auto r = iosevich_rudnev_scan(ctx, d, trials, seed);
      emit(r);
    } catch (const CapExceeded& ex) {
      on_cap(cell_name(suite, ctx, d), ex.what());
    }
    return;
  }

  const std::uint64_t n = ambient_size(ctx, d);
  const bool single = suite == "restriction" || suite == "mass-identity" || suite == "triple";
  std::vector<std::pair<std::uint64_t, std::uint64_t>> combos;
  const bool sized = single ? !(cfg.sizes_e.empty() && cfg.sizes_f.empty()) : !(cfg.sizes_e.empty() || cfg.sizes_f.empty());
  if (sized) {
    // Single-set suites take |F| (restriction) or |E| (triple) from whichever list is present.
    const auto& es = cfg.sizes_e.empty() ? cfg.sizes_f : cfg.sizes_e;
    const auto& fs = cfg.sizes_f.empty() ? cfg.sizes_e : cfg.sizes_f;
    for (auto e : es)
      for (auto f : fs) combos.emplace_back(e, f);
  } else if (!cfg.sizes_e.empty() || !cfg.sizes_f.empty()) {
    throw ConfigError("suite '" + suite + "' needs both size_e and size_f, or neither");
  }

  std::uint64_t k = 0;
  const std::size_t rounds = sized ? combos.size() : 1;
  for (std::size_t c = 0; c < rounds; ++c) {
    for (std::uint64_t t = 0; t < trials; ++t, ++k) {
      TrialPlan plan = make_trial(seed, k, 0, 0);
      std::tie(plan.size_e, plan.size_f) = sized ? combos[c] : drawn_sizes(suite, n, plan);
      if (plan.size_e > n || plan.size_f > n)
        throw ConfigError("set size exceeds q^d = " + std::to_string(n) + " in " + cell_name(suite, ctx, d));
      try {
        std::vector<CheckReport> reports;
        if (suite == "triple") {
          reports.push_back(triple_companion_report(random_point_set(ctx, d, plan.size_e, plan.seed_e)));
        } else if (suite == "restriction" || suite == "mass-identity") {
          const PointSet f = random_point_set(ctx, d, plan.size_f, plan.seed_f);
          reports.push_back(suite == "restriction" ? restriction_bound_report(f) : mass_identity_report(f));
        } else {
          const PointSet e = random_point_set(ctx, d, plan.size_e, plan.seed_e);
          const PointSet f = random_point_set(ctx, d, plan.size_f, plan.seed_f);
          reports = pair_reports(e, f, {suite});
        }
        for (auto& r : reports) {
          r.input("trial", static_cast<std::int64_t>(k));
          r.input("seed", std::to_string(seed));
          if (suite != "restriction" && suite != "mass-identity") r.input("seed_e", std::to_string(plan.seed_e));
          if (suite != "triple") r.input("seed_f", std::to_string(plan.seed_f));
          emit(r);
        }
      } catch (const CapExceeded& ex) {
        on_cap(cell_name(suite, ctx, d) + " trial=" + std::to_string(k), ex.what());
      }
    }
  }
}

void run_deterministic(const std::string& suite, const FieldCtx& ctx, int d, const ReportSink& emit,
                       const CapSink& on_cap) {
  try {
    if (suite == "gauss") {
      emit(gauss_closed_form_report(ctx));
    } else if (suite == "gauss-power") {
      for (int n : {2, 6, 10}) emit(gauss_power_check(ctx, n));
    } else if (suite == "kloosterman") {
      for (const auto& r : kloosterman_grid_reports(ctx)) emit(r);
    } else if (suite == "complete-square") {
      emit(complete_square_sweep(ctx));
    } else if (suite == "sphere-ft") {
      emit(sphere_ft_report(ctx, d));
    } else if (suite == "v0") {
      emit(v0_ft_report(ctx, d));
    } else if (suite == "isotropic") {
      emit(isotropic_report(ctx, d));
    } else {
      throw ConfigError("suite '" + suite + "' is not runnable here");
    }
  } catch (const CapExceeded& ex) {
    on_cap(cell_name(suite, ctx, d), ex.what());
  }
}

bool field_only(const std::string& suite) {
  return suite == "gauss" || suite == "gauss-power" || suite == "kloosterman" || suite == "complete-square";
}

struct Tally {
  std::uint64_t reports = 0, passed = 0, failed = 0, no_claim = 0, capped = 0;
};

void count(Tally& t, const CheckReport& r) {
  ++t.reports;
  if (r.passed()) ++t.passed;
  else if (r.failed()) ++t.failed;
  else ++t.no_claim;
}

void describe_failure(std::ostream& err, const CheckReport& r) {
  err << "FAIL " << r.check << " p=" << r.p << " ell=" << r.ell << " d=" << r.d;
  for (const auto& [k, v] : r.inputs) {
    err << ' ' << k << '=';
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) err << format_double(x);
          else err << x;
        },
        v);
  }
  err << (r.measure == Measure::Residual ? " residual=" : " margin=") << format_double(r.value)
      << " tolerance=" << format_double(r.tolerance) << '\n';
}

int exit_code(const Tally& t) {
  if (t.failed > 0) return kExitFail;
  if (t.capped > 0) return kExitCap;
  return kExitPass;
}

void summarize(std::ostream& err, const std::string& what, const Tally& t) {
  err << "qdist " << what << ": " << t.reports << " reports, " << t.passed << " passed, " << t.failed << " failed, "
      << t.no_claim << " no-claim";
  if (t.capped > 0) err << ", " << t.capped << " cells over resource caps";
  err << '\n';
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

// Opens --out if given; otherwise the caller's stream is used.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string scalar_text(const Scalar* s) {
  if (!s) return {};
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_double(x);
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else return x;
      },
      *s);
}

const Scalar* find_input(const CheckReport& r, std::string_view key) {
  for (const auto& [k, v] : r.inputs)
    if (k == key) return &v;
  return nullptr;
}

const std::vector<std::string>& sweep_csv_extras() {
  static const std::vector<std::string> cols = {
      "min_ratio",        "mean_ratio",        "hyp_unbalanced_c1",  "hyp_unbalanced_c4", "hyp_balanced_c1",
      "hyp_balanced_c4",  "hyp_plane_prime_c1", "hyp_plane_prime_c4", "mean_T",            "mean_sum_mu_squared",
      "q23_e53",          "q14_e2",            "mean_T_constant",    "log_q_e_f2",        "skipped"};
  return cols;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void write_sweep_csv_header(std::ostream& os) {
  os << "p,ell,q,d,family_e,size_e,size_f,trials,min_sumset";
  for (const auto& c : sweep_csv_extras()) os << ',' << c;
  os << '\n';
}

void write_sweep_csv_row(std::ostream& os, const CheckReport& r) {
  os << r.p << ',' << r.ell << ',' << r.q << ',' << r.d << ',' << scalar_text(find_input(r, "family_e")) << ','
     << scalar_text(find_input(r, "size_e")) << ',' << scalar_text(find_input(r, "size_f")) << ','
     << scalar_text(find_input(r, "trials")) << ',';
  if (!r.find_extra("skipped")) os << format_double(side_real(r.lhs));
  for (const auto& c : sweep_csv_extras()) os << ',' << csv_quote(scalar_text(r.find_extra(c)));
  os << '\n';
}

int run_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Output sink(cfg.out, out);
  std::ostream& os = sink.get();
  if (cfg.format == ReportFormat::Csv) os << csv_header() << '\n';
  Tally tally;
  const ReportSink emit = [&](const CheckReport& r) {
    os << emit_report(r, cfg.format) << '\n';
    count(tally, r);
    if (r.failed()) describe_failure(err, r);
  };
  const CapSink on_cap = [&](const std::string& cell, const std::string& what) {
    ++tally.capped;
    err << "CAP " << cell << ": " << what << '\n';
  };
  for (const auto& suite : cfg.targets) run_check_suite(cfg, suite, emit, on_cap);
  os.flush();
  summarize(err, "check " + joined(cfg.targets), tally);
  return exit_code(tally);
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Output sink(cfg.out, out);
  std::ostream& os = sink.get();
  std::string csv_path = cfg.csv;
  if (csv_path.empty() && !cfg.out.empty()) csv_path = cfg.out + ".csv";
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::binary);
    if (!csv) throw ConfigError("cannot open csv file '" + csv_path + "'");
    write_sweep_csv_header(csv);
  }
  if (cfg.format == ReportFormat::Csv) write_sweep_csv_header(os);
  Tally tally;
  const ReportSink emit = [&](const CheckReport& r) {
    const bool cell = r.check == "sweep-cell";
    if (cfg.format == ReportFormat::Jsonl) os << to_jsonl(r) << '\n';
    else if (cell) write_sweep_csv_row(os, r);
    if (cell && csv.is_open()) write_sweep_csv_row(csv, r);
    count(tally, r);
    if (r.failed()) describe_failure(err, r);
    if (const Scalar* cap = r.find_extra("cap_exceeded"); cap && std::get<bool>(*cap)) {
      ++tally.capped;
      err << "CAP " << cell_name("sweep", make_field(r.p, r.ell), r.d) << " size_e=" << scalar_text(find_input(r, "size_e"))
          << " size_f=" << scalar_text(find_input(r, "size_f")) << ": " << scalar_text(r.find_extra("skipped")) << '\n';
    }
  };
  const SweepConfig sc = sweep_config(cfg);
  threshold_sweep(sc, emit);
  os.flush();
  summarize(err, "sweep", tally);
  return exit_code(tally);
}

int run_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const FieldCtx ctx = make_field(cfg.fields.front().p, cfg.fields.front().ell);
  const int d = cfg.dims.front();
  const PointSet v = isotropic_subspace(ctx, d);
  Output sink(cfg.out, out);
  write_point_set(sink.get(), v);
  sink.get().flush();
  const CheckReport r = isotropic_report(ctx, d);
  Tally tally;
  count(tally, r);
  if (r.failed()) describe_failure(err, r);
  err << "qdist construct isotropic: |V| = " << v.size() << " in " << ctx.name() << "^" << d
      << (r.passed() ? ", totally isotropic" : ", NOT totally isotropic") << '\n';
  return exit_code(tally);
}

int run_dft(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  PointSet set = [&]() -> PointSet {
    if (!cfg.positional.empty()) {
      std::ifstream in(cfg.positional.front());
      if (!in) throw ConfigError("cannot read point-set file '" + cfg.positional.front() + "'");
      PointSet s = read_point_set(in);
      if (!cfg.fields.empty() && !(s.ctx() == make_field(cfg.fields.front().p, cfg.fields.front().ell)))
        throw ConfigError("point-set file field differs from the configured field");
      if (!cfg.dims.empty() && cfg.dims.front() != s.dim())
        throw ConfigError("point-set file dimension differs from 'd'");
      return s;
    }
    const FieldCtx ctx = make_field(cfg.fields.front().p, cfg.fields.front().ell);
    const int d = cfg.dims.empty() ? 2 : cfg.dims.front();
    if (!cfg.js.empty()) {
      const std::uint64_t j = cfg.js.front();
      if (j >= ctx.q()) throw ConfigError("'j' must be a field element index below q");
      return sphere(ctx, d, Felt{static_cast<std::uint32_t>(j)});
    }
    const std::uint64_t size = cfg.sizes_e.front();
    if (size > ambient_size(ctx, d)) throw ConfigError("'size' exceeds q^d");
    return random_point_set(ctx, d, size, *cfg.seed);
  }();
  const SpectralTable table = dft(set);
  Output sink(cfg.out, out);
  write_spectral_csv(sink.get(), table);
  sink.get().flush();
  Tally tally;
  for (const auto& r : {plancherel_report(table, set.size()), inversion_report(table, set)}) {
    count(tally, r);
    if (r.failed()) describe_failure(err, r);
  }
  err << "qdist dft: " << table.values.size() << " frequencies of a " << set.size() << "-point set in "
      << set.ctx().name() << "^" << set.dim() << "; plancherel and inversion "
      << (tally.failed == 0 ? "hold" : "FAIL") << '\n';
  return exit_code(tally);
}

const char* kUsage =
    "usage: qdist <command> [options]\n"
    "  check <suite>...        suites: gauss gauss-power kloosterman complete-square sphere-ft restriction\n"
    "                          mass-identity v0 lemma33 proof-chain prop41 shparlinski\n"
    "                          iosevich-rudnev sumset cs-bound triple isotropic\n"
    "  construct isotropic     write a totally isotropic subspace as a point-set file\n"
    "  sweep --config FILE     phase-diagram sweep over sizes of E and F\n"
    "  dft                     transform a sphere (--j), a random set (--size) or a point-set file\n"
    "options: --p --ell --q --d --j --size --size_e --size_f --trials --seed --check\n"
    "         --format jsonl|csv --out FILE --csv FILE --family_e random|isotropic --config FILE\n"
    "exit status: 0 pass, 1 assertion failure, 2 resource cap, 3 config error\n";

}  // namespace

std::vector<int> default_dims(const std::string& suite) {
  if (suite == "v0" || suite == "lemma33") return {1};
  if (suite == "restriction") return {3};
  return {2};
}

void run_check_suite(const RunConfig& cfg, const std::string& suite, const ReportSink& emit, const CapSink& on_cap) {
  const std::vector<int> dims = field_only(suite) ? std::vector<int>{0} : (cfg.dims.empty() ? default_dims(suite) : cfg.dims);
  for (const auto& spec : cfg.fields) {
    const FieldCtx ctx = make_field(spec.p, spec.ell);
    for (int d : dims) {
      if (suite_is_randomized(suite)) run_randomized(cfg, suite, ctx, d, emit, on_cap);
      else run_deterministic(suite, ctx, d, emit, on_cap);
    }
  }
}

SweepConfig sweep_config(const RunConfig& cfg) {
  SweepConfig sc;
  sc.fields = cfg.fields;
  sc.dims = cfg.dims;
  sc.sizes_e = cfg.sizes_e;
  sc.sizes_f = cfg.sizes_f;
  sc.trials = cfg.trials.value_or(1);
  sc.seed = cfg.seed.value_or(0);
  sc.checks = cfg.targets;
  sc.family_e = cfg.family_e;
  return sc;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args.front() == "--help" || args.front() == "-h" || args.front() == "help") {
    err << kUsage;
    return args.empty() ? kExitConfig : kExitPass;
  }
  try {
    std::vector<std::string> positional;
    const KeyValues kv = parse_args({args.begin() + 1, args.end()}, positional);
    const RunConfig cfg = build_config(args.front(), kv, std::move(positional));
    if (cfg.command == "check") return run_check(cfg, out, err);
    if (cfg.command == "sweep") return run_sweep(cfg, out, err);
    if (cfg.command == "construct") return run_construct(cfg, out, err);
    return run_dft(cfg, out, err);
  } catch (const ConfigError& ex) {
    err << "config error: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const CapExceeded& ex) {
    err << "resource cap: " << ex.what() << '\n';
    return kExitCap;
  } catch (const InvalidArgument& ex) {
    err << "invalid configuration: " << ex.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace qdist
