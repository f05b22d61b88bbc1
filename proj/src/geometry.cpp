#include "qdist/geometry.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "qdist/errors.hpp"
#include "qdist/limits.hpp"
#include "qdist/rng.hpp"

namespace qdist {

std::uint64_t ambient_size(const FieldCtx& ctx, int dim) {
  if (dim < 0) throw InvalidArgument("negative dimension");
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t n = 1;
  for (int i = 0; i < dim; ++i) {
    if (n > kLimit / ctx.q()) throw CapExceeded("q^d does not fit for d=" + std::to_string(dim));
    n *= ctx.q();
  }
  return n;
}

std::uint64_t point_index(const FieldCtx& ctx, PointView x) {
  std::uint64_t idx = 0;
  for (Felt c : x) idx = idx * ctx.q() + c.idx;
  return idx;
}

Point point_from_index(const FieldCtx& ctx, int dim, std::uint64_t index) {
  Point x(static_cast<std::size_t>(dim));
  for (int i = dim - 1; i >= 0; --i) {
    x[i] = Felt{static_cast<std::uint32_t>(index % ctx.q())};
    index /= ctx.q();
  }
  if (index != 0) throw InvalidArgument("point index outside F_q^d");
  return x;
}

PointSet::PointSet(FieldCtx ctx, int dim) : ctx_(std::move(ctx)), dim_(dim) {
  if (dim < 1) throw InvalidArgument("point sets need dimension >= 1");
  ambient_size(ctx_, dim_);
}

PointSet PointSet::from_points(FieldCtx ctx, int dim, std::vector<Point> points) {
  std::vector<std::uint64_t> idx;
  idx.reserve(points.size());
  for (const auto& x : points) {
    if (x.size() != static_cast<std::size_t>(dim)) throw InvalidArgument("point has wrong dimension");
    for (Felt c : x)
      if (!ctx.contains(c)) throw InvalidArgument("coordinate outside the field");
    idx.push_back(point_index(ctx, x));
  }
  return from_indices(std::move(ctx), dim, std::move(idx));
}

PointSet PointSet::from_indices(FieldCtx ctx, int dim, std::vector<std::uint64_t> indices) {
  PointSet s(std::move(ctx), dim);
  const std::uint64_t n = ambient_size(s.ctx_, dim);
  for (auto i : indices)
    if (i >= n) throw InvalidArgument("point index outside F_q^d");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  s.indices_ = std::move(indices);
  s.fill_coords();
  return s;
}

void PointSet::fill_coords() {
  coords_.resize(indices_.size() * static_cast<std::size_t>(dim_));
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    std::uint64_t idx = indices_[k];
    for (int i = dim_ - 1; i >= 0; --i) {
      coords_[k * dim_ + i] = Felt{static_cast<std::uint32_t>(idx % ctx_.q())};
      idx /= ctx_.q();
    }
  }
}

bool PointSet::contains(PointView x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) return false;
  return std::binary_search(indices_.begin(), indices_.end(), point_index(ctx_, x));
}

bool operator==(const PointSet& a, const PointSet& b) {
  return a.ctx_ == b.ctx_ && a.dim_ == b.dim_ && a.indices_ == b.indices_;
}

Felt norm(const FieldCtx& ctx, PointView x) {
  Felt s = ctx.zero();
  for (Felt c : x) s = ctx.add(s, ctx.sqr(c));
  return s;
}

Felt dot(const FieldCtx& ctx, PointView x, PointView y) {
  if (x.size() != y.size()) throw InvalidArgument("dot product of points with different dimensions");
  Felt s = ctx.zero();
  for (std::size_t i = 0; i < x.size(); ++i) s = ctx.add(s, ctx.mul(x[i], y[i]));
  return s;
}

Felt star_norm(const FieldCtx& ctx, PointView x) {
  if (x.size() % 2 != 0) throw InvalidArgument("star norm needs an even dimension");
  const std::size_t n = x.size() / 2;
  return ctx.sub(norm(ctx, x.first(n)), norm(ctx, x.subspan(n)));
}

Point subtract(const FieldCtx& ctx, PointView x, PointView y) {
  if (x.size() != y.size()) throw InvalidArgument("difference of points with different dimensions");
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = ctx.sub(x[i], y[i]);
  return out;
}

DiffNorm::DiffNorm(const FieldCtx& ctx) : ctx_(ctx) {
  const std::uint32_t q = ctx.q();
  if (ctx.ell() == 1) {
    sq_.resize(q);
    for (std::uint32_t k = 0; k < q; ++k) sq_[k] = ctx.sqr(Felt{k}).idx;
  } else if (q <= kDenseTableMaxQ) {
    sqdiff_.resize(std::size_t{q} * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) sqdiff_[std::size_t{a} * q + b] = ctx.sqr(ctx.sub(Felt{a}, Felt{b})).idx;
  }
}

Felt DiffNorm::operator()(PointView x, PointView y) const {
  const std::size_t n = x.size();
  if (!sq_.empty()) {
    const std::uint32_t p = ctx_.p();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t a = x[i].idx, b = y[i].idx;
      acc += sq_[a >= b ? a - b : a + p - b];
    }
    return Felt{static_cast<std::uint32_t>(acc % p)};
  }
  Felt s = ctx_.zero();
  if (!sqdiff_.empty()) {
    const std::size_t q = ctx_.q();
    for (std::size_t i = 0; i < n; ++i) s = ctx_.add(s, Felt{sqdiff_[x[i].idx * q + y[i].idx]});
    return s;
  }
  for (std::size_t i = 0; i < n; ++i) s = ctx_.add(s, ctx_.sqr(ctx_.sub(x[i], y[i])));
  return s;
}

void for_each_point(const FieldCtx& ctx, int dim, const std::function<void(std::uint64_t, PointView)>& visit) {
  const std::uint64_t n = ambient_size(ctx, dim);
  if (n > kEnumCap) throw CapExceeded("enumeration of " + ctx.name() + "^" + std::to_string(dim) + " exceeds cap");
  Point x(static_cast<std::size_t>(dim), Felt{0});
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    visit(idx, x);
    for (int i = dim - 1; i >= 0; --i) {
      if (++x[i].idx < ctx.q()) break;
      x[i].idx = 0;
    }
  }
}

PointSet sphere(const FieldCtx& ctx, int dim, Felt r) {
  std::vector<std::uint64_t> idx;
  for_each_point(ctx, dim, [&](std::uint64_t i, PointView x) {
    if (norm(ctx, x) == r) idx.push_back(i);
  });
  return PointSet::from_indices(ctx, dim, std::move(idx));
}

std::vector<std::uint64_t> sphere_sizes(const FieldCtx& ctx, int dim) {
  std::vector<std::uint64_t> sizes(ctx.q(), 0);
  for_each_point(ctx, dim, [&](std::uint64_t, PointView x) { ++sizes[norm(ctx, x).idx]; });
  return sizes;
}

PointSet variety_v0(const FieldCtx& ctx, int half_dim) {
  if (half_dim < 1) throw InvalidArgument("V0 needs half dimension >= 1");
  std::vector<std::uint64_t> idx;
  for_each_point(ctx, 2 * half_dim, [&](std::uint64_t i, PointView x) {
    if (star_norm(ctx, x).idx == 0) idx.push_back(i);
  });
  return PointSet::from_indices(ctx, 2 * half_dim, std::move(idx));
}

std::vector<Point> isotropic_basis(const FieldCtx& ctx, int dim) {
  if (dim < 2 || dim % 2 != 0) throw InvalidArgument("isotropic subspace needs an even dimension >= 2");
  const Felt minus_one = ctx.neg(ctx.one());
  std::vector<Point> basis;
  if (ctx.q() % 4 == 1) {
    Felt root{0};
    for (std::uint32_t s = 0; s < ctx.q(); ++s)
      if (ctx.sqr(Felt{s}) == minus_one) {
        root = Felt{s};
        break;
      }
    for (int k = 0; k < dim / 2; ++k) {
      Point v(static_cast<std::size_t>(dim), ctx.zero());
      v[2 * k] = ctx.one();
      v[2 * k + 1] = root;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  if (dim % 4 != 0)
    throw InvalidArgument("no isotropic construction for d=" + std::to_string(dim) + " over " + ctx.name() +
                          " (needs q = 1 mod 4 or d = 0 mod 4)");
  // a^2 + b^2 = -1 is always solvable over a finite field of odd order.
  Felt a{0}, b{0};
  bool found = false;
  for (std::uint32_t x = 0; x < ctx.q() && !found; ++x)
    for (std::uint32_t y = 0; y < ctx.q() && !found; ++y)
      if (ctx.add(ctx.sqr(Felt{x}), ctx.sqr(Felt{y})) == minus_one) {
        a = Felt{x};
        b = Felt{y};
        found = true;
      }
  for (int k = 0; k < dim / 4; ++k) {
    Point v1(static_cast<std::size_t>(dim), ctx.zero()), v2(static_cast<std::size_t>(dim), ctx.zero());
    v1[4 * k] = ctx.one();
    v1[4 * k + 2] = a;
    v1[4 * k + 3] = b;
    v2[4 * k + 1] = ctx.one();
    v2[4 * k + 2] = ctx.neg(b);
    v2[4 * k + 3] = a;
    basis.push_back(std::move(v1));
    basis.push_back(std::move(v2));
  }
  return basis;
}

PointSet isotropic_subspace(const FieldCtx& ctx, int dim) {
  const auto basis = isotropic_basis(ctx, dim);
  const int k = static_cast<int>(basis.size());
  const std::uint64_t count = ambient_size(ctx, k);
  if (count > kEnumCap) throw CapExceeded("isotropic subspace too large");
  std::vector<std::uint64_t> idx;
  idx.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) {
    const Point coeffs = point_from_index(ctx, k, c);
    Point v(static_cast<std::size_t>(dim), ctx.zero());
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < dim; ++i) v[i] = ctx.add(v[i], ctx.mul(coeffs[j], basis[j][i]));
    idx.push_back(point_index(ctx, v));
  }
  return PointSet::from_indices(ctx, dim, std::move(idx));
}

PointSet random_point_set(const FieldCtx& ctx, int dim, std::uint64_t size, std::uint64_t seed) {
  const std::uint64_t n = ambient_size(ctx, dim);
  if (size > n)
    throw InvalidArgument("cannot draw " + std::to_string(size) + " distinct points from " + std::to_string(n));
  if (size > kEnumCap) throw CapExceeded("random set size exceeds cap");
  std::mt19937_64 rng(seed);
  // Floyd's sampling: exactly `size` draws, no rejection loop.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(size * 2);
  std::vector<std::uint64_t> idx;
  idx.reserve(size);
  for (std::uint64_t j = n - size; j < n; ++j) {
    const std::uint64_t t = uniform_below(rng, j + 1);
    const std::uint64_t pick = chosen.contains(t) ? j : t;
    chosen.insert(pick);
    idx.push_back(pick);
  }
  return PointSet::from_indices(ctx, dim, std::move(idx));
}

PointSet product_set(const PointSet& e, const PointSet& f) {
  if (!(e.ctx() == f.ctx())) throw InvalidArgument("product of sets over different fields");
  if (e.dim() != f.dim()) throw InvalidArgument("product of sets of different dimensions");
  const std::uint64_t stride = ambient_size(e.ctx(), f.dim());
  ambient_size(e.ctx(), e.dim() + f.dim());
  if (e.size() != 0 && f.size() > kEnumCap / e.size()) throw CapExceeded("product set exceeds cap");
  std::vector<std::uint64_t> idx;
  idx.reserve(e.size() * f.size());
  for (auto a : e.indices())
    for (auto b : f.indices()) idx.push_back(a * stride + b);
  return PointSet::from_indices(e.ctx(), e.dim() + f.dim(), std::move(idx));
}

PointSet translate(const PointSet& e, PointView v) {
  if (v.size() != static_cast<std::size_t>(e.dim())) throw InvalidArgument("translation vector has wrong dimension");
  std::vector<Point> pts;
  pts.reserve(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    Point x(e[k].begin(), e[k].end());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = e.ctx().add(x[i], v[i]);
    pts.push_back(std::move(x));
  }
  return PointSet::from_points(e.ctx(), e.dim(), std::move(pts));
}

void write_point_set(std::ostream& out, const PointSet& s) {
  const auto& ctx = s.ctx();
  out << ctx.q() << ' ' << ctx.p() << ' ' << ctx.ell() << ' ' << s.dim() << ' ' << s.size() << '\n';
  for (std::size_t k = 0; k < s.size(); ++k) {
    const PointView x = s[k];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) out << ' ';
      out << x[i].idx;
    }
    out << '\n';
  }
}

std::string point_set_text(const PointSet& s) {
  std::ostringstream os;
  write_point_set(os, s);
  return os.str();
}

PointSet read_point_set(std::istream& in) {
  std::uint64_t q = 0, n = 0;
  std::uint32_t p = 0;
  int ell = 0, dim = 0;
  if (!(in >> q >> p >> ell >> dim >> n)) throw InvalidArgument("malformed point set header");
  FieldCtx ctx = make_field(p, ell);
  if (ctx.q() != q) throw InvalidArgument("point set header: q does not equal p^ell");
  if (dim < 1) throw InvalidArgument("point set header: dimension must be >= 1");
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    Point x(static_cast<std::size_t>(dim));
    for (auto& c : x) {
      std::uint64_t v = 0;
      if (!(in >> v)) throw InvalidArgument("point set truncated at point " + std::to_string(k));
      if (v >= q) throw InvalidArgument("coordinate outside the field");
      c = Felt{static_cast<std::uint32_t>(v)};
    }
    pts.push_back(std::move(x));
  }
  PointSet s = PointSet::from_points(std::move(ctx), dim, std::move(pts));
  if (s.size() != n) throw InvalidArgument("point set contains duplicate points");
  return s;
}

}  // namespace qdist
