#pragma once

#include <vector>

#include "qdist/field.hpp"
#include "qdist/report.hpp"

namespace qdist {

// Complete exponential sums over F_q. Every brute-force sum is accumulated as
// an integer histogram over trace values and only then mapped to roots of
// unity, so rounding error does not grow with the number of summands.

/// G_a in square form: sum over all s of chi(a s^2). Equals q when a == 0.
Cx gauss_sum(const FieldCtx& ctx, Felt a);

/// G_a in character form: sum over s != 0 of eta(s) chi(a s). Requires a != 0.
Cx gauss_sum_eta(const FieldCtx& ctx, Felt a);

/// Closed form of G_1: (-1)^(ell-1) sqrt(q) for p = 1 mod 4,
/// (-1)^(ell-1) i^ell sqrt(q) for p = 3 mod 4.
Cx gauss_explicit(const FieldCtx& ctx);

/// G_1^n from the closed form, as an exact unit in {1, i, -1, -i} times
/// q^(n/2) (integer power, one square root when n is odd). Requires n >= 0.
Cx gauss_power(const FieldCtx& ctx, int n);

/// The unit u with G_1 = u * sqrt(q), encoded as k where u = i^k.
int gauss_unit_exponent(const FieldCtx& ctx);

/// K(a, b) = sum over s != 0 of chi(a s + b / s).
Cx kloosterman(const FieldCtx& ctx, Felt a, Felt b);

/// TK(a, b) = sum over s != 0 of eta(s) chi(a s + b / s).
Cx twisted_kloosterman(const FieldCtx& ctx, Felt a, Felt b);

/// Checks G_a (both forms) against eta(a) * gauss_explicit for every a != 0.
CheckReport gauss_closed_form_report(const FieldCtx& ctx);

/// G_1^n = -q^(n/2) for n = 2 mod 4 and q = 3 mod 4; other even n give a
/// no-claim report carrying the computed value. Odd or non-positive n throws.
CheckReport gauss_power_check(const FieldCtx& ctx, int n);

/// Completing the square: sum_s chi(a s^2 + b s) against
/// eta(a) G_1 chi(b^2 / (-4a)). Throws for a == 0.
CheckReport complete_square_residual(const FieldCtx& ctx, Felt a, Felt b);

/// complete_square_residual over every (a != 0, b), aggregated to the worst residual.
CheckReport complete_square_sweep(const FieldCtx& ctx);

/// Full (a, b) grid facts for K and TK: exact zero-row values, reality of K,
/// Weil bounds, and TK(0, b) = eta(b) G_1. Requires q^3 <= kGridCap.
std::vector<CheckReport> kloosterman_grid_reports(const FieldCtx& ctx);

}  // namespace qdist
