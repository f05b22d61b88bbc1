#pragma once

// Brute-force reference implementations used only by the tests. They share
// nothing with the library beyond the public index conventions: polynomial
// arithmetic is done on coefficient vectors, the trace is a literal sum of
// Frobenius powers, and every transform or count is a direct loop.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Cx = std::complex<double>;
using Poly = std::vector<std::int64_t>;  // constant term first

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline Poly digits(std::uint64_t idx, std::uint32_t p, int ell) {
  Poly c(ell, 0);
  for (int i = 0; i < ell; ++i) {
    c[i] = static_cast<std::int64_t>(idx % p);
    idx /= p;
  }
  return c;
}

inline std::uint64_t undigits(const Poly& c, std::uint32_t p) {
  std::uint64_t idx = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) idx = idx * p + static_cast<std::uint64_t>(mod(c[i], p));
  return idx;
}

/// Remainder of a by the monic polynomial m over F_p.
inline Poly poly_rem(Poly a, const Poly& m, std::int64_t p) {
  const int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    const std::int64_t c = mod(a[i], p);
    if (c == 0) continue;
    for (int k = 0; k <= dm; ++k) a[i - dm + k] = mod(a[i - dm + k] - c * m[k], p);
  }
  a.resize(dm);
  for (auto& x : a) x = mod(x, p);
  return a;
}

inline bool divides(const Poly& f, const Poly& g, std::int64_t p) {
  const Poly r = poly_rem(g, f, p);
  for (auto x : r)
    if (x != 0) return false;
  return true;
}

/// Smallest monic irreducible of degree ell by trial division with every
/// monic polynomial of degree 1..ell/2.
inline Poly smallest_irreducible(std::uint32_t p, int ell) {
  if (ell == 1) return {0, 1};
  const std::uint64_t q = static_cast<std::uint64_t>(std::pow(p, ell));
  for (std::uint64_t low = 0; low < q; ++low) {
    Poly m = digits(low, p, ell);
    m.push_back(1);
    bool irreducible = true;
    for (int k = 1; k <= ell / 2 && irreducible; ++k) {
      const std::uint64_t count = static_cast<std::uint64_t>(std::pow(p, k));
      for (std::uint64_t g = 0; g < count && irreducible; ++g) {
        Poly f = digits(g, p, k);
        f.push_back(1);
        if (divides(f, m, p)) irreducible = false;
      }
    }
    if (irreducible) return m;
  }
  return {};
}

/// F_q by schoolbook polynomial multiplication modulo the smallest irreducible.
struct PolyField {
  std::uint32_t p;
  int ell;
  std::uint64_t q;
  Poly modulus;

  PolyField(std::uint32_t p_, int ell_)
      : p(p_), ell(ell_), q(static_cast<std::uint64_t>(std::pow(p_, ell_))), modulus(smallest_irreducible(p_, ell_)) {}

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    Poly x = digits(a, p, ell), y = digits(b, p, ell);
    for (int i = 0; i < ell; ++i) x[i] += y[i];
    return undigits(x, p);
  }
  std::uint64_t neg(std::uint64_t a) const {
    Poly x = digits(a, p, ell);
    for (auto& c : x) c = -c;
    return undigits(x, p);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const Poly x = digits(a, p, ell), y = digits(b, p, ell);
    Poly z(2 * ell - 1, 0);
    for (int i = 0; i < ell; ++i)
      for (int j = 0; j < ell; ++j) z[i + j] = mod(z[i + j] + x[i] * y[j], p);
    if (ell == 1) return undigits({z[0]}, p);
    return undigits(poly_rem(z, modulus, p), p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  std::uint64_t pow_fast(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Tr(a) = a + a^p + ... + a^(p^(ell-1)); the result lies in F_p.
  std::uint32_t trace(std::uint64_t a) const {
    std::uint64_t s = 0, frob = a;
    for (int i = 0; i < ell; ++i) {
      s = add(s, frob);
      frob = pow_fast(frob, p);
    }
    return static_cast<std::uint32_t>(s);
  }
  Cx chi(std::uint64_t a) const { return std::polar(1.0, 2.0 * std::numbers::pi * trace(a) / p); }
  int eta(std::uint64_t a) const {
    if (a == 0) return 0;
    return pow_fast(a, (q - 1) / 2) == 1 ? 1 : -1;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow_fast(a, q - 2); }
};

/// Caches chi and the multiplication table of a small PolyField.
struct Tabled {
  PolyField f;
  std::vector<Cx> chi;
  std::vector<std::uint32_t> mul;

  Tabled(std::uint32_t p, int ell) : f(p, ell), chi(f.q), mul(f.q * f.q) {
    for (std::uint64_t a = 0; a < f.q; ++a) chi[a] = f.chi(a);
    for (std::uint64_t a = 0; a < f.q; ++a)
      for (std::uint64_t b = 0; b < f.q; ++b) mul[a * f.q + b] = static_cast<std::uint32_t>(f.mul(a, b));
  }
  std::uint64_t m(std::uint64_t a, std::uint64_t b) const { return mul[a * f.q + b]; }
};

using Vec = std::vector<std::uint64_t>;

inline Vec unindex(std::uint64_t idx, std::uint64_t q, int d) {
  Vec v(d);
  for (int i = d - 1; i >= 0; --i) {
    v[i] = idx % q;
    idx /= q;
  }
  return v;
}

inline std::uint64_t norm_of(const Tabled& t, const Vec& x) {
  std::uint64_t s = 0;
  for (auto c : x) s = t.f.add(s, t.m(c, c));
  return s;
}

inline std::uint64_t dist(const Tabled& t, const Vec& x, const Vec& y) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint64_t c = t.f.sub(x[i], y[i]);
    s = t.f.add(s, t.m(c, c));
  }
  return s;
}

/// Direct double-sum transform q^-d sum_{x in set} chi(-m.x), at every m.
inline std::vector<Cx> dft(const Tabled& t, int d, const std::vector<std::uint64_t>& set_indices) {
  const std::uint64_t q = t.f.q;
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) n *= q;
  std::vector<Vec> xs;
  for (auto i : set_indices) xs.push_back(unindex(i, q, d));
  std::vector<Cx> out(n);
  const double scale = std::pow(static_cast<double>(q), -d);
  for (std::uint64_t mi = 0; mi < n; ++mi) {
    const Vec m = unindex(mi, q, d);
    Cx s = 0;
    for (const auto& x : xs) {
      std::uint64_t dot = 0;
      for (int k = 0; k < d; ++k) dot = t.f.add(dot, t.m(m[k], x[k]));
      s += t.chi[t.f.neg(dot)];
    }
    out[mi] = s * scale;
  }
  return out;
}

inline Cx gauss(const Tabled& t, std::uint64_t a) {
  Cx s = 0;
  for (std::uint64_t x = 0; x < t.f.q; ++x) s += t.chi[t.m(a, t.m(x, x))];
  return s;
}

inline Cx kloosterman(const Tabled& t, std::uint64_t a, std::uint64_t b, bool twisted) {
  Cx s = 0;
  for (std::uint64_t x = 1; x < t.f.q; ++x) {
    const Cx term = t.chi[t.f.add(t.m(a, x), t.m(b, t.f.inv(x)))];
    s += twisted ? static_cast<double>(t.f.eta(x)) * term : term;
  }
  return s;
}

/// nu(r) for every r, over ordered pairs including the diagonal.
inline std::vector<std::uint64_t> pair_counts(const Tabled& t, int d, const std::vector<std::uint64_t>& set_indices) {
  std::vector<std::uint64_t> nu(t.f.q, 0);
  std::vector<Vec> xs;
  for (auto i : set_indices) xs.push_back(unindex(i, t.f.q, d));
  for (const auto& x : xs)
    for (const auto& y : xs) ++nu[dist(t, x, y)];
  return nu;
}

/// T(E) by a literal triple loop.
inline std::uint64_t triples(const Tabled& t, int d, const std::vector<std::uint64_t>& set_indices) {
  std::vector<Vec> xs;
  for (auto i : set_indices) xs.push_back(unindex(i, t.f.q, d));
  std::uint64_t count = 0;
  for (const auto& x : xs)
    for (const auto& y : xs)
      for (const auto& z : xs)
        if (dist(t, x, y) == dist(t, x, z) && dist(t, y, z) != 0) ++count;
  return count;
}

/// Seeded subset of [0, n) of the given size, by shuffling.
inline std::vector<std::uint64_t> random_subset(std::uint64_t n, std::uint64_t size, std::uint64_t seed) {
  std::vector<std::uint64_t> all(n);
  for (std::uint64_t i = 0; i < n; ++i) all[i] = i;
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::uint64_t j = i + rng() % (n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(size);
  return all;
}

}  // namespace oracle
