#include "qdist/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdist/errors.hpp"
#include "qdist/limits.hpp"

namespace qdist {

namespace {

using Digits = std::vector<std::uint32_t>;

// Reference polynomial arithmetic over F_p, used only while building the
// log/exp tables.
struct PolyRing {
  std::uint32_t p;
  int ell;
  Digits modulus;  // monic, size ell+1
  std::vector<std::uint32_t> pw;

  Digits decode(std::uint32_t idx) const {
    Digits d(ell);
    for (int i = 0; i < ell; ++i) {
      d[i] = idx % p;
      idx /= p;
    }
    return d;
  }

  std::uint32_t encode(const Digits& d) const {
    std::uint32_t idx = 0;
    for (int i = ell - 1; i >= 0; --i) idx = idx * p + d[i];
    return idx;
  }

  std::uint32_t mulmod(std::uint32_t a, std::uint32_t b) const {
    if (ell == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    const Digits x = decode(a), y = decode(b);
    std::vector<std::uint64_t> c(2 * ell - 1, 0);
    for (int i = 0; i < ell; ++i)
      for (int j = 0; j < ell; ++j) c[i + j] = (c[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    for (int k = 2 * ell - 2; k >= ell; --k) {
      const std::uint64_t lead = c[k];
      if (lead == 0) continue;
      c[k] = 0;
      for (int i = 0; i < ell; ++i)
        c[k - ell + i] = (c[k - ell + i] + (p - lead) * modulus[i]) % p;
    }
    Digits r(ell);
    for (int i = 0; i < ell; ++i) r[i] = static_cast<std::uint32_t>(c[i]);
    return encode(r);
  }

  std::uint32_t powmod(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e > 0) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  }
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Smallest monic irreducible of degree ell over F_p; degree <= 3 means
// irreducible iff rootless.
Digits smallest_irreducible(std::uint32_t p, int ell) {
  if (ell == 1) return {0, 1};
  std::uint64_t count = 1;
  for (int i = 0; i < ell; ++i) count *= p;
  for (std::uint64_t n = 0; n < count; ++n) {
    Digits f(ell + 1);
    std::uint64_t m = n;
    for (int i = 0; i < ell; ++i) {
      f[i] = static_cast<std::uint32_t>(m % p);
      m /= p;
    }
    f[ell] = 1;
    bool has_root = false;
    for (std::uint64_t x = 0; x < p && !has_root; ++x) {
      std::uint64_t v = 0;
      for (int i = ell; i >= 0; --i) v = (v * x + f[i]) % p;
      has_root = (v == 0);
    }
    if (!has_root) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

struct FieldCtx::Tables {
  std::uint32_t p = 0;
  int ell = 0;
  std::uint32_t q = 0;
  Digits modulus;
  std::vector<std::uint32_t> pw;       // p^0 .. p^ell
  std::vector<std::uint32_t> neg;
  std::vector<std::uint32_t> log;      // log[0] unused
  std::vector<std::uint32_t> exp;      // length 2(q-1), so log sums need no reduction
  std::vector<std::uint32_t> trace;
  std::vector<std::int8_t> eta;
  std::vector<Cx> roots;               // exp(2 pi i k / p)
  std::vector<std::uint32_t> add;      // dense q*q, only for ell > 1 and small q
};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::pair<std::uint32_t, int> split_prime_power(std::uint64_t q) {
  if (q < 2) throw InvalidArgument("not a prime power: " + std::to_string(q));
  const auto factors = prime_factors(q);
  if (factors.size() != 1) throw InvalidArgument("not a prime power: " + std::to_string(q));
  const std::uint64_t p = factors.front();
  int ell = 0;
  for (std::uint64_t m = q; m > 1; m /= p) ++ell;
  if (p > UINT32_MAX) throw InvalidArgument("characteristic too large");
  return {static_cast<std::uint32_t>(p), ell};
}

FieldCtx make_field(std::uint32_t p, int ell) {
  if (p == 2) throw InvalidArgument("even characteristic is not supported");
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (p > kMaxPrime) throw CapExceeded("characteristic " + std::to_string(p) + " exceeds cap");
  if (ell < 1 || ell > kMaxDegree)
    throw InvalidArgument("extension degree " + std::to_string(ell) + " out of range [1,3]");
  std::uint64_t q64 = 1;
  for (int i = 0; i < ell; ++i) q64 *= p;
  if (q64 > kMaxFieldSize) throw CapExceeded("field size " + std::to_string(q64) + " exceeds cap");

  auto t = std::make_shared<FieldCtx::Tables>();
  t->p = p;
  t->ell = ell;
  t->q = static_cast<std::uint32_t>(q64);
  t->modulus = smallest_irreducible(p, ell);
  t->pw.resize(ell + 1);
  t->pw[0] = 1;
  for (int i = 1; i <= ell; ++i) t->pw[i] = t->pw[i - 1] * p;

  const PolyRing ring{p, ell, t->modulus, t->pw};
  const std::uint32_t q = t->q;

  t->neg.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    Digits d = ring.decode(a);
    for (auto& c : d) c = (p - c) % p;
    t->neg[a] = ring.encode(d);
  }

  // Smallest primitive element, then discrete log/exp tables.
  const std::uint64_t order = q - 1;
  const auto factors = prime_factors(order);
  std::uint32_t g = 0;
  for (std::uint32_t cand = 1; cand < q && g == 0; ++cand) {
    bool primitive = order == 1 ? cand == 1 : true;
    for (auto r : factors)
      if (ring.powmod(cand, order / r) == 1) primitive = false;
    if (primitive) g = cand;
  }
  if (g == 0) throw std::logic_error("no primitive element found");

  t->exp.resize(2 * order);
  t->log.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint64_t k = 0; k < order; ++k) {
    t->exp[k] = x;
    t->exp[k + order] = x;
    t->log[x] = static_cast<std::uint32_t>(k);
    x = ring.mulmod(x, g);
  }

  t->eta.assign(q, 0);
  for (std::uint64_t k = 0; k < order; ++k) t->eta[t->exp[k]] = (k % 2 == 0) ? 1 : -1;

  // Trace is F_p-linear: tabulate Tr(t^i) via Frobenius, then extend.
  std::vector<std::uint32_t> basis_trace(ell);
  for (int i = 0; i < ell; ++i) {
    const std::uint32_t ti = t->pw[i];
    std::uint32_t frob = ti;
    Digits acc(ell, 0);
    for (int k = 0; k < ell; ++k) {
      const Digits fd = ring.decode(frob);
      for (int c = 0; c < ell; ++c) acc[c] = (acc[c] + fd[c]) % p;
      frob = ring.powmod(frob, p);
    }
    for (int c = 1; c < ell; ++c)
      if (acc[c] != 0) throw std::logic_error("trace left the prime field");
    basis_trace[i] = acc[0];
  }
  t->trace.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    const Digits d = ring.decode(a);
    std::uint64_t s = 0;
    for (int i = 0; i < ell; ++i) s += std::uint64_t{d[i]} * basis_trace[i];
    t->trace[a] = static_cast<std::uint32_t>(s % p);
  }

  t->roots.resize(p);
  t->roots[0] = Cx(1.0, 0.0);
  for (std::uint32_t k = 1; k < p; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / p;
    t->roots[k] = Cx(std::cos(theta), std::sin(theta));
  }

  if (ell > 1 && q <= kDenseTableMaxQ) {
    t->add.resize(std::size_t{q} * q);
    for (std::uint32_t a = 0; a < q; ++a) {
      const Digits da = ring.decode(a);
      for (std::uint32_t b = 0; b < q; ++b) {
        const Digits db = ring.decode(b);
        Digits s(ell);
        for (int i = 0; i < ell; ++i) s[i] = (da[i] + db[i]) % p;
        t->add[std::size_t{a} * q + b] = ring.encode(s);
      }
    }
  }
  return FieldCtx(std::move(t));
}

std::uint32_t FieldCtx::p() const { return t_->p; }
int FieldCtx::ell() const { return t_->ell; }
std::uint32_t FieldCtx::q() const { return t_->q; }
std::span<const std::uint32_t> FieldCtx::modulus() const { return t_->modulus; }

Felt FieldCtx::add(Felt a, Felt b) const {
  const auto& t = *t_;
  if (t.ell == 1) {
    std::uint32_t s = a.idx + b.idx;
    if (s >= t.p) s -= t.p;
    return Felt{s};
  }
  if (!t.add.empty()) return Felt{t.add[std::size_t{a.idx} * t.q + b.idx]};
  std::uint32_t out = 0, x = a.idx, y = b.idx;
  for (int i = 0; i < t.ell; ++i) {
    std::uint32_t s = x % t.p + y % t.p;
    if (s >= t.p) s -= t.p;
    out += s * t.pw[i];
    x /= t.p;
    y /= t.p;
  }
  return Felt{out};
}

Felt FieldCtx::neg(Felt a) const { return Felt{t_->neg[a.idx]}; }

Felt FieldCtx::sub(Felt a, Felt b) const { return add(a, neg(b)); }

Felt FieldCtx::mul(Felt a, Felt b) const {
  if (a.idx == 0 || b.idx == 0) return Felt{0};
  const auto& t = *t_;
  return Felt{t.exp[t.log[a.idx] + t.log[b.idx]]};
}

Felt FieldCtx::sqr(Felt a) const { return mul(a, a); }

Felt FieldCtx::inv(Felt a) const {
  if (a.idx == 0) throw InvalidArgument("inverse of zero");
  const auto& t = *t_;
  const std::uint32_t order = t.q - 1;
  return Felt{t.exp[(order - t.log[a.idx]) % order]};
}

Felt FieldCtx::pow(Felt a, std::int64_t e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  if (e == 0) return one();
  if (a.idx == 0) return zero();
  const auto& t = *t_;
  const std::uint64_t order = t.q - 1;
  const std::uint64_t k = (std::uint64_t{t.log[a.idx]} * (static_cast<std::uint64_t>(e) % order)) % order;
  return Felt{t.exp[k]};
}

Felt FieldCtx::from_int(std::int64_t n) const {
  const std::int64_t p = t_->p;
  return Felt{static_cast<std::uint32_t>(((n % p) + p) % p)};
}

std::uint32_t FieldCtx::trace(Felt a) const { return t_->trace[a.idx]; }
Cx FieldCtx::chi(Felt a) const { return t_->roots[t_->trace[a.idx]]; }
Cx FieldCtx::root_of_unity(std::uint32_t k) const { return t_->roots[k % t_->p]; }
int FieldCtx::eta(Felt a) const { return t_->eta[a.idx]; }

std::vector<std::uint32_t> FieldCtx::decode(Felt a) const {
  std::vector<std::uint32_t> d(t_->ell);
  std::uint32_t x = a.idx;
  for (auto& c : d) {
    c = x % t_->p;
    x /= t_->p;
  }
  return d;
}

Felt FieldCtx::encode(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(t_->ell))
    throw InvalidArgument("too many coefficients for " + name());
  std::uint32_t idx = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= t_->p) throw InvalidArgument("coefficient out of range");
    idx = idx * t_->p + coeffs[i];
  }
  return Felt{idx};
}

std::string FieldCtx::name() const { return "F_" + std::to_string(t_->q); }

bool operator==(const FieldCtx& a, const FieldCtx& b) {
  return a.t_ == b.t_ || (a.p() == b.p() && a.ell() == b.ell());
}

Felt field_arith(const FieldCtx& ctx, FieldOp op, Felt a, std::int64_t b) {
  auto elt = [&](std::int64_t v) {
    if (v < 0 || v >= static_cast<std::int64_t>(ctx.q())) throw InvalidArgument("element out of range");
    return Felt{static_cast<std::uint32_t>(v)};
  };
  if (!ctx.contains(a)) throw InvalidArgument("element out of range");
  switch (op) {
    case FieldOp::Add: return ctx.add(a, elt(b));
    case FieldOp::Sub: return ctx.sub(a, elt(b));
    case FieldOp::Mul: return ctx.mul(a, elt(b));
    case FieldOp::Neg: return ctx.neg(a);
    case FieldOp::Inv: return ctx.inv(a);
    case FieldOp::Pow: return ctx.pow(a, b);
  }
  throw InvalidArgument("unknown field operation");
}

}  // namespace qdist
