#include "qdist/report.hpp"

#include <cmath>
#include <cstdio>

namespace qdist {

namespace {

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_json_number(std::string& out, double v) {
  out += std::isfinite(v) ? format_double(v) : "null";
}

void append_json_scalar(std::string& out, const Scalar& s) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) out += v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) out += std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) append_json_number(out, v);
        else append_json_string(out, v);
      },
      s);
}

void append_json_side(std::string& out, const Side& s) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, double>) {
          append_json_number(out, v);
        } else if constexpr (std::is_same_v<T, Cx>) {
          out += '[';
          append_json_number(out, v.real());
          out += ',';
          append_json_number(out, v.imag());
          out += ']';
        } else {
          append_json_string(out, format_rational(v));
        }
      },
      s);
}

void append_json_object(std::string& out, const std::vector<std::pair<std::string, Scalar>>& kv) {
  out += '{';
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) out += ',';
    first = false;
    append_json_string(out, k);
    out += ':';
    append_json_scalar(out, v);
  }
  out += '}';
}

std::string scalar_text(const Scalar& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else return v;
      },
      s);
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::pair<double, double> side_parts(const Side& s) {
  if (const auto* c = std::get_if<Cx>(&s)) return {c->real(), c->imag()};
  return {side_real(s), 0.0};
}

}  // namespace

CheckReport::CheckReport(std::string name, const FieldCtx& ctx, int dim)
    : check(std::move(name)), p(ctx.p()), ell(ctx.ell()), q(ctx.q()), d(dim) {}

CheckReport& CheckReport::input(std::string key, Scalar v) {
  inputs.emplace_back(std::move(key), std::move(v));
  return *this;
}

CheckReport& CheckReport::extra(std::string key, Scalar v) {
  extras.emplace_back(std::move(key), std::move(v));
  return *this;
}

const Scalar* CheckReport::find_extra(std::string_view key) const {
  for (const auto& [k, v] : extras)
    if (k == key) return &v;
  return nullptr;
}

void CheckReport::settle_residual(double residual, double tol) {
  measure = Measure::Residual;
  value = residual;
  tolerance = tol;
  verdict = (std::isfinite(residual) && residual <= tol) ? Verdict::Pass : Verdict::Fail;
}

void CheckReport::settle_margin(double margin, double tol) {
  measure = Measure::Margin;
  value = margin;
  tolerance = tol;
  verdict = (std::isfinite(margin) && margin >= -tol) ? Verdict::Pass : Verdict::Fail;
}

void CheckReport::settle_exact(bool holds, Measure m, double value_for_display) {
  measure = m;
  value = value_for_display;
  tolerance = 0.0;
  verdict = holds ? Verdict::Pass : Verdict::Fail;
}

void CheckReport::no_claim(Measure m, double value_for_display) {
  measure = m;
  value = value_for_display;
  tolerance = 0.0;
  verdict = Verdict::NoClaim;
}

double side_real(const Side& s) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return 0.0;
        else if constexpr (std::is_same_v<T, double>) return v;
        else if constexpr (std::is_same_v<T, Cx>) return v.real();
        else return static_cast<double>(v);
      },
      s);
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_rational(const BigRational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NoClaim: return "no-claim";
  }
  return "?";
}

std::string to_jsonl(const CheckReport& r) {
  std::string out = "{";
  out += "\"check\":";
  append_json_string(out, r.check);
  out += ",\"p\":" + std::to_string(r.p);
  out += ",\"ell\":" + std::to_string(r.ell);
  out += ",\"q\":" + std::to_string(r.q);
  out += ",\"d\":" + std::to_string(r.d);
  out += ",\"inputs\":";
  append_json_object(out, r.inputs);
  out += ",\"lhs\":";
  append_json_side(out, r.lhs);
  out += ",\"rhs\":";
  append_json_side(out, r.rhs);
  out += r.measure == Measure::Residual ? ",\"residual\":" : ",\"margin\":";
  append_json_number(out, r.value);
  out += ",\"tolerance\":";
  append_json_number(out, r.tolerance);
  out += ",\"pass\":";
  switch (r.verdict) {
    case Verdict::Pass: out += "true"; break;
    case Verdict::Fail: out += "false"; break;
    case Verdict::NoClaim: out += "\"no-claim\""; break;
  }
  out += ",\"extras\":";
  append_json_object(out, r.extras);
  out += '}';
  return out;
}

std::string csv_header() {
  return "check,p,ell,q,d,inputs,lhs_re,lhs_im,rhs_re,rhs_im,measure,value,tolerance,pass";
}

std::string to_csv(const CheckReport& r) {
  std::string inputs;
  for (const auto& [k, v] : r.inputs) {
    if (!inputs.empty()) inputs += ';';
    inputs += k + "=" + scalar_text(v);
  }
  const auto [lr, li] = side_parts(r.lhs);
  const auto [rr, ri] = side_parts(r.rhs);
  std::string out = csv_field(r.check);
  out += ',' + std::to_string(r.p) + ',' + std::to_string(r.ell) + ',' + std::to_string(r.q) + ',' +
         std::to_string(r.d);
  out += ',' + csv_field(inputs);
  out += ',' + format_double(lr) + ',' + format_double(li) + ',' + format_double(rr) + ',' + format_double(ri);
  out += r.measure == Measure::Residual ? ",residual," : ",margin,";
  out += format_double(r.value) + ',' + format_double(r.tolerance) + ',' + verdict_name(r.verdict);
  return out;
}

std::string emit_report(const CheckReport& r, ReportFormat format) {
  return format == ReportFormat::Jsonl ? to_jsonl(r) : to_csv(r);
}

}  // namespace qdist
