#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qdist/errors.hpp"
#include "qdist/limits.hpp"
#include "qdist/spectral.hpp"

using namespace qdist;

namespace {

std::vector<std::uint64_t> as_vector(const PointSet& s) { return {s.indices().begin(), s.indices().end()}; }

double max_diff(const std::vector<Cx>& a, const std::vector<Cx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("dft matches the direct double sum") {
  for (auto [p, ell, d] : std::vector<std::tuple<std::uint32_t, int, int>>{{3, 1, 2}, {5, 1, 2}, {3, 2, 2}, {3, 1, 3}, {7, 1, 1}, {5, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(ell);
    CAPTURE(d);
    const FieldCtx f = make_field(p, ell);
    const oracle::Tabled t(p, ell);
    const std::uint64_t n = ambient_size(f, d);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const PointSet s = random_point_set(f, d, 1 + seed * n / 6, seed);
      const SpectralTable table = dft(s);
      REQUIRE(table.values.size() == n);
      CHECK(max_diff(table.values, oracle::dft(t, d, as_vector(s))) <= tau(static_cast<double>(n)));
    }
  }
}

TEST_CASE("transform of a point and of the whole space") {
  const FieldCtx f = make_field(5, 1);
  const PointSet origin = PointSet::from_indices(f, 2, {0});
  for (const Cx& v : dft(origin).values) CHECK(std::abs(v - Cx(1.0 / 25, 0)) < 1e-15);
  std::vector<std::uint64_t> all(25);
  for (std::uint64_t i = 0; i < 25; ++i) all[i] = i;
  const SpectralTable full = dft(PointSet::from_indices(f, 2, all));
  CHECK(std::abs(full.values[0] - Cx(1, 0)) < 1e-14);
  for (std::size_t i = 1; i < 25; ++i) CHECK(std::abs(full.values[i]) < 1e-14);
}

TEST_CASE("inversion and Plancherel") {
  const FieldCtx f = make_field(3, 2);
  const PointSet s = random_point_set(f, 2, 30, 4);
  const SpectralTable table = dft(s);
  CHECK(plancherel_report(table, s.size()).passed());
  CHECK(inversion_report(table, s).passed());
  const auto back = fourier_inverse(table);
  for (std::uint64_t i = 0; i < back.size(); ++i) {
    const double want = std::binary_search(s.indices().begin(), s.indices().end(), i) ? 1.0 : 0.0;
    REQUIRE(std::abs(back[i] - want) < 1e-12);
  }
  // Arbitrary complex input round-trips too.
  std::vector<Cx> g(81);
  std::mt19937_64 rng(8);
  for (auto& v : g) v = Cx(static_cast<double>(rng() % 1000) / 7, static_cast<double>(rng() % 1000) / 11);
  const SpectralTable gt{f, 2, fourier_transform(f, 2, g)};
  CHECK(max_diff(fourier_inverse(gt), g) < 1e-10);
}

TEST_CASE("sphere transform closed form against the direct sum") {
  for (auto [p, ell, d] : std::vector<std::tuple<std::uint32_t, int, int>>{{3, 1, 2}, {5, 1, 2}, {7, 1, 2}, {3, 1, 3}, {5, 1, 3}, {3, 1, 4}, {3, 2, 2}, {3, 2, 3}}) {
    CAPTURE(p);
    CAPTURE(ell);
    CAPTURE(d);
    const FieldCtx f = make_field(p, ell);
    const oracle::Tabled t(p, ell);
    const std::uint64_t n = ambient_size(f, d);
    for (std::uint32_t j = 0; j < f.q(); ++j) {
      const auto brute = oracle::dft(t, d, as_vector(sphere(f, d, Felt{j})));
      double worst = 0;
      for (std::uint64_t m = 0; m < n; ++m)
        worst = std::max(worst, std::abs(sphere_ft_closed_form(f, d, Felt{j}, point_from_index(f, d, m)) - brute[m]));
      REQUIRE(worst <= tau(static_cast<double>(n)));
    }
    CHECK(sphere_ft_report(f, d).passed());
  }
}

TEST_CASE("V0 transform closed form values") {
  const FieldCtx f3 = make_field(3, 1);
  const Point zero(4, Felt{0});
  CHECK(std::abs(v0_ft_closed_form(f3, 1, zero) - Cx(11.0 / 27, 0)) < 1e-15);
  // star_norm((1,0,0,0)) = 1 != 0.
  Point m = zero;
  m[0] = Felt{1};
  CHECK(std::abs(v0_ft_closed_form(f3, 1, m) - Cx(-1.0 / 27, 0)) < 1e-15);
  // q = 5: a nonzero M on the variety, e.g. (1,0,1,0).
  const FieldCtx f5 = make_field(5, 1);
  Point m5(4, Felt{0});
  m5[0] = Felt{1};
  m5[2] = Felt{1};
  CHECK(std::abs(v0_ft_closed_form(f5, 1, m5) - Cx(4.0 / 125, 0)) < 1e-15);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const FieldCtx f = make_field(p, 1);
    const oracle::Tabled t(p, 1);
    const auto brute = oracle::dft(t, 4, as_vector(variety_v0(f, 2)));
    double worst = 0;
    for (std::uint64_t i = 0; i < brute.size(); ++i)
      worst = std::max(worst, std::abs(v0_ft_closed_form(f, 1, point_from_index(f, 4, i)) - brute[i]));
    CHECK(worst <= tau(static_cast<double>(brute.size())));
    CHECK(v0_ft_report(f, 1).passed());
  }
  CHECK(v0_ft_report(make_field(3, 1), 2).passed());
}

TEST_CASE("single point restriction mass in F_3^3") {
  const FieldCtx f = make_field(3, 1);
  const PointSet one = PointSet::from_indices(f, 3, {13});
  const auto spectral = restriction_masses(one);
  const auto auto_corr = restriction_masses_autocorrelation(one);
  const double mmax = *std::max_element(spectral.begin(), spectral.end());
  CHECK(std::abs(mmax - 12.0 / 729) < 1e-15);
  CHECK(std::abs(*std::max_element(auto_corr.begin(), auto_corr.end()) - 12.0 / 729) < 1e-15);
  CHECK(mmax <= 5.0 / 243);
  const CheckReport r = restriction_bound_report(one);
  CHECK(r.passed());
  CHECK(std::abs(side_real(r.rhs) - 5.0 / 243) < 1e-15);
}

TEST_CASE("restriction masses by both methods and by the oracle") {
  for (auto [p, ell, d] : std::vector<std::tuple<std::uint32_t, int, int>>{{3, 1, 2}, {5, 1, 2}, {3, 1, 3}, {3, 2, 2}, {7, 1, 2}}) {
    const FieldCtx f = make_field(p, ell);
    const oracle::Tabled t(p, ell);
    const std::uint64_t n = ambient_size(f, d);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const PointSet s = random_point_set(f, d, 1 + (seed * 7) % n, seed);
      const auto spectral = restriction_masses(s);
      const auto ac = restriction_masses_autocorrelation(s);
      const auto brute = oracle::dft(t, d, as_vector(s));
      double total = 0;
      for (std::uint32_t j = 0; j < f.q(); ++j) {
        double want = 0;
        for (std::uint64_t m = 0; m < n; ++m)
          if (oracle::norm_of(t, oracle::unindex(m, f.q(), d)) == j) want += std::norm(brute[m]);
        REQUIRE(std::abs(spectral[j] - want) <= tau(static_cast<double>(n)));
        REQUIRE(std::abs(ac[j] - want) <= tau(static_cast<double>(n)));
        total += spectral[j];
      }
      // Plancherel: the masses over all radii add up to q^-d |F|.
      CHECK(std::abs(total - static_cast<double>(s.size()) / static_cast<double>(n)) < 1e-12);
      CHECK(mass_identity_report(s).passed());
      CHECK(std::abs(restriction_mass(s, Felt{1}, MassMethod::Autocorrelation) - spectral[1]) < 1e-12);
    }
  }
}

TEST_CASE("restriction bound eligibility") {
  // d = 2 with q = 1 mod 4 is outside both cases.
  const PointSet f5 = random_point_set(make_field(5, 1), 2, 10, 1);
  CHECK_FALSE(restriction_bound_report(f5).asserting());
  const PointSet f7 = random_point_set(make_field(7, 1), 2, 10, 1);
  const CheckReport r7 = restriction_bound_report(f7);
  CHECK(r7.passed());
  CHECK(r7.find_extra("rt_pass") != nullptr);
  const PointSet f53 = random_point_set(make_field(5, 1), 3, 40, 2);
  CHECK(restriction_bound_report(f53).passed());
  CHECK(restriction_bound_report(random_point_set(make_field(3, 1), 4, 10, 2)).verdict == Verdict::NoClaim);
  CHECK_THROWS_AS(restriction_mass(f7, Felt{7}, MassMethod::Spectral), InvalidArgument);
}

TEST_CASE("spectral csv") {
  const FieldCtx f = make_field(3, 1);
  std::ostringstream out;
  write_spectral_csv(out, dft(PointSet::from_indices(f, 1, {0})));
  const std::string s = out.str();
  CHECK(s.rfind("m_index,re,im\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}

TEST_CASE("dft caps") {
  CHECK_THROWS_AS(dft(PointSet::from_indices(make_field(101, 1), 4, {0})), CapExceeded);
  CHECK_THROWS_AS(sphere_ft_closed_form(make_field(3, 1), 1, Felt{0}, Point{Felt{0}}), InvalidArgument);
}
