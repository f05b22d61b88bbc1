#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qdist/field.hpp"
#include "qdist/geometry.hpp"
#include "qdist/report.hpp"

namespace qdist {

/// nu(t) = #{(x, y) in D x D : ||x - y|| = t} for every t in F_q.
struct DistanceProfile {
  FieldCtx ctx;
  std::string source;
  std::uint64_t set_size = 0;
  std::vector<std::uint64_t> counts;

  /// Delta(D): the t with nu(t) > 0, ascending.
  std::vector<Felt> support() const;
  std::uint64_t total() const;
};

/// Exact pair counts by a direct double loop. Requires |D|^2 <= kPairCap.
DistanceProfile pair_count_table(const PointSet& d, std::string source = {});

std::vector<Felt> distance_set(const PointSet& e);
/// {||x - y|| : x in E, y in F}. Requires |E||F| <= kPairCap.
std::vector<Felt> asym_distance_set(const PointSet& e, const PointSet& f);
/// {a + b : a in A, b in B}, ascending.
std::vector<Felt> sumset(const FieldCtx& ctx, const std::vector<Felt>& a, const std::vector<Felt>& b);

enum class SumsetMethod { Sumset, Product };
/// Delta(E) + Delta(F), either as a sumset or as Delta(E x F).
std::vector<Felt> distance_sumset(const PointSet& e, const PointSet& f, SumsetMethod method);

/// sum_t nu(t)^2, exact.
BigInt energy(const DistanceProfile& profile);

/// |Delta(E x F)| >= |E|^4 |F|^4 / sum nu^2 with nu on E x F, compared exactly.
/// Also folds in the Cauchy-Schwarz floor q * sum nu^2 >= |E x F|^4.
CheckReport cs_lower_bound_report(const PointSet& e, const PointSet& f);

/// Delta(E) + Delta(F) computed both ways must be the same set.
CheckReport sumset_identity_report(const PointSet& e, const PointSet& f);

/// sum nu^2 <= |D|^4/q + q^(6d) sum_{star_norm(M)=0} |(D x D)^(M)|^2 with
/// D = E x F, using the transform of D x D over F_q^{4d}.
CheckReport lemma33_report(const PointSet& e, const PointSet& f);

/// sum nu^2 <= |E|^4|F|^4/q + q^(2d-1)|E|^2|F|^2 + 2 q^((3d-1)/2)|E|^2|F|^3, and
/// |Delta(E) + Delta(F)| > q/2 whenever |E||F| >= 2q^d and
/// |E|^2|F| >= 4 q^((3d+1)/2). Asserts only for d odd >= 3 or
/// (d = 2 mod 4, q = 3 mod 4).
CheckReport proof_chain_report(const PointSet& e, const PointSet& f);

/// T(E) = #{(x, y, z) in E^3 : ||x - y|| = ||x - z||, ||y - z|| != 0}, via
/// per-x distance histograms plus a direct correction over distinct y, z
/// with ||y - z|| = 0.
std::uint64_t triple_count(const PointSet& e);

/// sum_r mu(r)^2 <= |E| (T(E) + |E|^2); asserted for d = 2 and q = 3 mod 4.
CheckReport triple_companion_report(const PointSet& e);

/// sum nu^2 <= |E|^4|F|^4/q + q^d |F|^2 sum mu^2 (nu on E x F, mu on E), exact.
CheckReport prop41_report(const PointSet& e, const PointSet& f);

/// |Delta(E,F) + Delta(E,F)| >= (1/3) min{q, |E||F|/q^(d-1), |E||F|^2/q^(3d/2)}.
CheckReport shparlinski_report(const PointSet& e, const PointSet& f);

/// ceil(4 q^((d+1)/2)), exactly.
std::uint64_t iosevich_rudnev_threshold(const FieldCtx& ctx, int dim);

/// Seeded random sets of the threshold size must all have Delta(E) = F_q.
/// Vacuous configurations (threshold > q^d) give a no-claim report.
CheckReport iosevich_rudnev_scan(const FieldCtx& ctx, int dim, std::uint64_t trials, std::uint64_t seed);

/// |V| = q^(d/2), pairwise dot products vanish and Delta(V) = {0}.
CheckReport isotropic_report(const FieldCtx& ctx, int dim);

/// Sizes and seeds for one randomized trial, recorded in every report it produces.
struct TrialPlan {
  std::uint64_t size_e = 0;
  std::uint64_t size_f = 0;
  std::uint64_t seed_e = 0;
  std::uint64_t seed_f = 0;
};

/// Trial k of a run with base seed `seed` draws E from derive_seed(seed, 2k)
/// and F from derive_seed(seed, 2k + 1).
TrialPlan make_trial(std::uint64_t seed, std::uint64_t k, std::uint64_t size_e, std::uint64_t size_f);

struct FieldSpec {
  std::uint32_t p = 0;
  int ell = 1;
};

struct SweepConfig {
  std::vector<FieldSpec> fields;
  std::vector<int> dims;
  std::vector<std::uint64_t> sizes_e;
  std::vector<std::uint64_t> sizes_f;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  /// Per-trial reports to emit besides the cell summary: any of
  /// sumset, cs-bound, lemma33, proof-chain, prop41, shparlinski, triple,
  /// restriction, mass-identity.
  std::vector<std::string> checks;
  /// "random" or "isotropic" (E is the isotropic subspace; sizes_e ignored).
  std::string family_e = "random";
};

using ReportSink = std::function<void(const CheckReport&)>;

/// The per-trial reports named in `checks` for one (E, F) pair.
std::vector<CheckReport> pair_reports(const PointSet& e, const PointSet& f, const std::vector<std::string>& checks);

/// Phase-diagram sweep. For each (field, d, |E|, |F|) cell: min and mean of
/// |Delta(E) + Delta(F)|/q over the trials, hypothesis flags of the threshold
/// statements at C = 1 and C = 4, and the triple-count quantities with the
/// empirical constant T(E) / (|E|^3/q + q^(2/3)|E|^(5/3) + q^(1/4)|E|^2).
/// Cells exceeding a cap are reported with `skipped` set, never dropped.
/// Reports are delivered to `sink` (if any) in config order and returned.
std::vector<CheckReport> threshold_sweep(const SweepConfig& config, const ReportSink& sink = {});

}  // namespace qdist
