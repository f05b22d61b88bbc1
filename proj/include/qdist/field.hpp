#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qdist {

using Cx = std::complex<double>;

/// Element of F_q, named by its index in the canonical enumeration: the
/// base-p digits of idx (little-endian) are the polynomial coefficients.
struct Felt {
  std::uint32_t idx = 0;

  friend constexpr auto operator<=>(Felt, Felt) = default;
};

enum class FieldOp { Add, Sub, Mul, Neg, Inv, Pow };

/// Immutable description of F_q, q = p^ell, p odd. Copies share the
/// precomputed tables, so passing by value is cheap.
///
/// Multiplication runs through discrete log/exp tables built from the
/// smallest primitive element; addition is digitwise mod p (or a dense
/// table when q <= kDenseTableMaxQ and ell > 1).
class FieldCtx {
 public:
  std::uint32_t p() const;
  int ell() const;
  std::uint32_t q() const;

  /// ell+1 coefficients of the monic modulus, constant term first.
  /// For ell == 1 this is the placeholder {0, 1} and plays no role.
  std::span<const std::uint32_t> modulus() const;

  Felt zero() const { return Felt{0}; }
  Felt one() const { return Felt{1}; }

  Felt add(Felt a, Felt b) const;
  Felt sub(Felt a, Felt b) const;
  Felt neg(Felt a) const;
  Felt mul(Felt a, Felt b) const;
  Felt sqr(Felt a) const;
  /// Throws InvalidArgument for a == 0.
  Felt inv(Felt a) const;
  /// Negative exponents invert first (a == 0 then throws).
  Felt pow(Felt a, std::int64_t e) const;

  /// Image of an integer in the prime subfield.
  Felt from_int(std::int64_t n) const;

  /// Absolute trace Tr(a) = a + a^p + ... + a^(p^(ell-1)), as a residue in [0, p).
  std::uint32_t trace(Felt a) const;
  /// Principal additive character exp(2 pi i Tr(a) / p).
  Cx chi(Felt a) const;
  /// chi at trace value k, i.e. exp(2 pi i k / p).
  Cx root_of_unity(std::uint32_t k) const;
  /// Quadratic character; eta(0) = 0.
  int eta(Felt a) const;

  std::vector<std::uint32_t> decode(Felt a) const;
  Felt encode(std::span<const std::uint32_t> coeffs) const;

  bool contains(Felt a) const { return a.idx < q(); }
  std::string name() const;

  friend bool operator==(const FieldCtx& a, const FieldCtx& b);

 private:
  struct Tables;
  explicit FieldCtx(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  friend FieldCtx make_field(std::uint32_t p, int ell);

  std::shared_ptr<const Tables> t_;
};

/// Builds F_{p^ell} with the lexicographically smallest monic irreducible
/// modulus (lower coefficients compared as a little-endian base-p integer).
/// Requires p an odd prime <= kMaxPrime, 1 <= ell <= 3, p^ell <= kMaxFieldSize.
FieldCtx make_field(std::uint32_t p, int ell);

/// Splits a prime power q into (p, ell); throws InvalidArgument otherwise.
std::pair<std::uint32_t, int> split_prime_power(std::uint64_t q);

bool is_prime(std::uint64_t n);

/// Generic dispatch over the field operations. For Pow, `b` is the exponent;
/// for Neg and Inv it is ignored; otherwise it is an element index.
Felt field_arith(const FieldCtx& ctx, FieldOp op, Felt a, std::int64_t b);

}  // namespace qdist
