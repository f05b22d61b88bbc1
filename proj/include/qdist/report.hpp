#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdist/field.hpp"

namespace qdist {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// One side of a checked relation: a real, a complex amplitude, or an exact rational.
using Side = std::variant<std::monostate, double, Cx, BigRational>;

/// Descriptor values carried in `inputs` and `extras`.
using Scalar = std::variant<bool, std::int64_t, double, std::string>;

enum class Verdict { Pass, Fail, NoClaim };

/// Whether `value` is a residual (pass iff value <= tolerance) or a margin
/// rhs - lhs of an inequality lhs <= rhs (pass iff value >= -tolerance).
enum class Measure { Residual, Margin };

enum class ReportFormat { Jsonl, Csv };

struct CheckReport {
  std::string check;
  std::uint32_t p = 0;
  int ell = 0;
  std::uint32_t q = 0;
  int d = 0;
  std::vector<std::pair<std::string, Scalar>> inputs;
  Side lhs;
  Side rhs;
  Measure measure = Measure::Residual;
  double value = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::NoClaim;
  std::vector<std::pair<std::string, Scalar>> extras;

  CheckReport() = default;
  CheckReport(std::string name, const FieldCtx& ctx, int dim = 0);

  CheckReport& input(std::string key, Scalar v);
  CheckReport& extra(std::string key, Scalar v);
  const Scalar* find_extra(std::string_view key) const;

  /// Sets measure/value/tolerance and derives the verdict.
  void settle_residual(double residual, double tol);
  void settle_margin(double margin, double tol);
  /// Exact relation: verdict from `holds`, value recorded for reference.
  void settle_exact(bool holds, Measure m, double value_for_display);
  void no_claim(Measure m, double value_for_display);

  bool asserting() const { return verdict != Verdict::NoClaim; }
  bool passed() const { return verdict == Verdict::Pass; }
  bool failed() const { return verdict == Verdict::Fail; }
};

double side_real(const Side& s);
std::string format_double(double v);
std::string format_rational(const BigRational& r);

std::string to_jsonl(const CheckReport& r);
std::string csv_header();
std::string to_csv(const CheckReport& r);
/// One serialized record (no trailing newline). Byte-identical for identical reports.
std::string emit_report(const CheckReport& r, ReportFormat format);

std::string verdict_name(Verdict v);

}  // namespace qdist
