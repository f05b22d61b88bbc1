#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qdist/field.hpp"
#include "qdist/geometry.hpp"
#include "qdist/report.hpp"

namespace qdist {

// Normalization used everywhere in this module:
//   forward  f^(m) = q^-d * sum_x chi(-m.x) f(x)
//   inverse  f(x)  =        sum_m chi( m.x) f^(m)
// Frequency tables are dense, indexed like points (see point_index), and
// index 0 is the zero frequency.

struct SpectralTable {
  FieldCtx ctx;
  int dim = 0;
  std::vector<Cx> values;

  Cx at(PointView m) const { return values[point_index(ctx, m)]; }
};

/// Normalized transform of an arbitrary function on F_q^d given as a dense
/// table. Axis-factorized: d passes of length-q transforms.
std::vector<Cx> fourier_transform(const FieldCtx& ctx, int dim, std::span<const Cx> f);

/// Unnormalized inverse transform.
std::vector<Cx> fourier_inverse(const SpectralTable& table);

/// Transform of the indicator of omega. Requires q^d <= kEnumCap and
/// d q^(d+1) <= kDftWorkCap.
SpectralTable dft(const PointSet& omega);

/// Closed form of the sphere transform S_j^(m) through G_1^d and a
/// (twisted, for odd d) Kloosterman sum at (j, ||m||/4). Requires d >= 2.
Cx sphere_ft_closed_form(const FieldCtx& ctx, int dim, Felt j, PointView m);

/// Closed form of V_0^(M) for M in F_q^{4d}: q^-1 delta(M) + q^(-2d-1)(q-1)
/// when star_norm(M) = 0, and -q^(-2d-1) otherwise.
Cx v0_ft_closed_form(const FieldCtx& ctx, int d, PointView m);

enum class MassMethod { Spectral, Autocorrelation };

/// M_j(F) = sum over m in S_j of |F^(m)|^2.
///  Spectral: from dft(F) directly.
///  Autocorrelation: q^-d sum_{x,y in F} S_j^(x - y), where S_j^ is evaluated
///  from its definition at one representative frequency per norm value
///  (the transform of a sphere is constant on nonzero frequencies of equal norm).
double restriction_mass(const PointSet& f, Felt j, MassMethod method);

/// M_j(F) for every j (index j.idx), spectral method, one transform.
std::vector<double> restriction_masses(const PointSet& f);

/// M_j(F) for every j by the autocorrelation method.
std::vector<double> restriction_masses_autocorrelation(const PointSet& f);

/// max_j M_j(F) against q^(-d-1)|F| + 2 q^((-3d-1)/2) |F|^2, plus the
/// sharper j = 0 bound q^(-d-1)|F| + q^((-3d-2)/2)|F|^2 when d = 2 mod 4 and
/// q = 3 mod 4. Configurations outside (d odd >= 3) or (d = 2 mod 4,
/// q = 3 mod 4) give no-claim reports.
CheckReport restriction_bound_report(const PointSet& f);

/// Agreement of the two restriction_mass methods over all j.
CheckReport mass_identity_report(const PointSet& f);

/// Closed-form sphere transform against dft(sphere) for every (j, m).
CheckReport sphere_ft_report(const FieldCtx& ctx, int dim);

/// Closed-form V_0 transform against dft(V_0) for every M in F_q^{4d}, plus
/// |V_0| = sum_r |S_r^{2d-1}|^2 exactly.
CheckReport v0_ft_report(const FieldCtx& ctx, int d);

/// Plancherel: sum_m |omega^(m)|^2 = q^-d |omega|.
CheckReport plancherel_report(const SpectralTable& table, std::uint64_t set_size);

/// Fourier inversion recovers the indicator of omega.
CheckReport inversion_report(const SpectralTable& table, const PointSet& omega);

/// CSV "m_index,re,im", 17 significant digits, one row per frequency.
void write_spectral_csv(std::ostream& out, const SpectralTable& table);

}  // namespace qdist
