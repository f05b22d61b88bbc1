#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qdist/field.hpp"

namespace qdist {

using Point = std::vector<Felt>;
using PointView = std::span<const Felt>;

/// q^dim, throwing CapExceeded when it does not fit in 62 bits.
std::uint64_t ambient_size(const FieldCtx& ctx, int dim);

/// Position of x in the enumeration of F_q^d; the first coordinate is the
/// most significant digit, so index order is lexicographic order.
std::uint64_t point_index(const FieldCtx& ctx, PointView x);
Point point_from_index(const FieldCtx& ctx, int dim, std::uint64_t index);

/// Deduplicated, lexicographically sorted finite subset of F_q^dim.
class PointSet {
 public:
  PointSet(FieldCtx ctx, int dim);

  static PointSet from_points(FieldCtx ctx, int dim, std::vector<Point> points);
  static PointSet from_indices(FieldCtx ctx, int dim, std::vector<std::uint64_t> indices);

  const FieldCtx& ctx() const { return ctx_; }
  int dim() const { return dim_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  PointView operator[](std::size_t i) const {
    return PointView(coords_).subspan(i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
  }
  std::span<const std::uint64_t> indices() const { return indices_; }
  bool contains(PointView x) const;

  friend bool operator==(const PointSet& a, const PointSet& b);

 private:
  void fill_coords();

  FieldCtx ctx_;
  int dim_;
  std::vector<std::uint64_t> indices_;
  std::vector<Felt> coords_;
};

Felt norm(const FieldCtx& ctx, PointView x);
/// Throws InvalidArgument on a dimension mismatch.
Felt dot(const FieldCtx& ctx, PointView x, PointView y);
/// ||x|| - ||z|| for X = (x, z); throws InvalidArgument for odd dimension.
Felt star_norm(const FieldCtx& ctx, PointView x);
Point subtract(const FieldCtx& ctx, PointView x, PointView y);

/// Fast ||x - y|| for the inner loops of pair counting.
class DiffNorm {
 public:
  explicit DiffNorm(const FieldCtx& ctx);
  Felt operator()(PointView x, PointView y) const;

 private:
  FieldCtx ctx_;
  std::vector<std::uint32_t> sq_;      // ell == 1: sq_[k] = k^2 mod p
  std::vector<std::uint32_t> sqdiff_;  // ell > 1, small q: (a - b)^2 at a*q + b
};

/// Calls visit(index, point) for every point of F_q^d in index order.
/// Requires q^d <= kEnumCap.
void for_each_point(const FieldCtx& ctx, int dim,
                    const std::function<void(std::uint64_t, PointView)>& visit);

/// S_r^{d-1} = {x : sum x_i^2 = r}.
PointSet sphere(const FieldCtx& ctx, int dim, Felt r);
/// |S_r^{d-1}| for every r, indexed by r.idx.
std::vector<std::uint64_t> sphere_sizes(const FieldCtx& ctx, int dim);

/// V_0 = {X in F_q^{2n} : star_norm(X) = 0}.
PointSet variety_v0(const FieldCtx& ctx, int half_dim);

/// Span of d/2 mutually orthogonal self-orthogonal vectors. Needs d even and
/// either q = 1 mod 4 (blocks (1, i) with i^2 = -1) or d = 0 mod 4 (blocks
/// (1,0,a,b), (0,1,-b,a) with a^2 + b^2 = -1). Other cases throw InvalidArgument.
PointSet isotropic_subspace(const FieldCtx& ctx, int dim);
/// The spanning vectors used by isotropic_subspace.
std::vector<Point> isotropic_basis(const FieldCtx& ctx, int dim);

/// Uniform sample of `size` distinct points, a pure function of its arguments.
PointSet random_point_set(const FieldCtx& ctx, int dim, std::uint64_t size, std::uint64_t seed);

/// E x F in F_q^{2d} by concatenating coordinates.
PointSet product_set(const PointSet& e, const PointSet& f);

/// E + v.
PointSet translate(const PointSet& e, PointView v);

/// Text format: header "q p ell d n", then one point per line as
/// space-separated element indices.
void write_point_set(std::ostream& out, const PointSet& s);
std::string point_set_text(const PointSet& s);
PointSet read_point_set(std::istream& in);

}  // namespace qdist
