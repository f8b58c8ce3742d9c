#include <catch_amalgamated.hpp>

#include <cmath>

#include "staircase/distributions.hpp"
#include "staircase/sampler.hpp"

using namespace staircase;

namespace {

constexpr std::size_t kSamples = 100000;

Params weights(Rational alpha, Rational beta) {
  return Params::from_weights(ExtRational::finite(alpha), ExtRational::finite(beta));
}

std::map<std::string, std::uint64_t> tally(const std::vector<Tableau>& ts) {
  std::map<std::string, std::uint64_t> m;
  for (const auto& t : ts)
    ++m[t.key()];
  return m;
}

// test-only oracle: rejection sampling from the enumerated support
Tableau rejection_sample(const std::vector<Tableau>& support, const std::vector<double>& w,
                         double w_max, Rng& rng) {
  while (true) {
    std::size_t i = rng.next() % support.size();
    double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    if (u * w_max < w[i])
      return support[i];
  }
}

} // namespace

TEST_CASE("exact bernoulli endpoints and frequency") {
  Rng rng(1);
  ExactBernoulli never(0), always(1), third(Rational(1, 3));
  int hits = 0;
  for (int k = 0; k < 30000; ++k) {
    CHECK_FALSE(never(rng));
    CHECK(always(rng));
    hits += third(rng);
  }
  CHECK(std::abs(hits - 10000) < 4 * std::sqrt(30000 * 2.0 / 9));
  CHECK_THROWS_AS(ExactBernoulli(Rational(3, 2)), ParameterError);
}

TEST_CASE("rng streams are reproducible") {
  Rng a(42), b(42), c(43);
  bool differ = false;
  for (int k = 0; k < 10; ++k) {
    auto x = a.next();
    CHECK(x == b.next());
    differ |= (x != c.next());
  }
  CHECK(differ);
}

TEST_CASE("degenerate parameters") {
  CHECK(sample_ab(0, weights(1, 1), 3).size() == 0);
  Params beta0 = Params::from_weights(ExtRational::finite(2), ExtRational::finite(0));
  Params alpha0 = Params::from_weights(ExtRational::finite(0), ExtRational::finite(2));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(sample_ab(6, beta0, seed) == constant_diagonal(6, Symbol::Alpha));
    CHECK(sample_ab(6, alpha0, seed) == constant_diagonal(6, Symbol::Beta));
  }
  // a = 0: alpha = inf, one alpha per column
  Params alpha_inf = Params::from_weights(ExtRational::inf(), ExtRational::finite(1));
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    REQUIRE(counts(sample_ab(7, alpha_inf, seed)).n_alpha == 7);
  CHECK_THROWS_AS(SamplerPlan(3, Params::from_ab(-1, 1)), ParameterError);
  CHECK_THROWS_AS(SamplerPlan(3, Params::from_ab(1, 1, 2)), ParameterError);
}

TEST_CASE("both weights zero gives independent rho coins on the diagonal") {
  Params p{ExtRational::inf(), ExtRational::inf(), Rational(1, 3)};
  SamplerPlan plan(4, p);
  auto ts = sample_many(plan, kSamples, 11);
  std::uint64_t alphas = 0;
  for (const auto& t : ts) {
    auto c = counts(t);
    REQUIRE(c.total() == 4);
    alphas += c.A;
  }
  const double n = 4.0 * kSamples;
  CHECK(std::abs(alphas - n / 3) < 4 * std::sqrt(n * 2 / 9));
}

TEST_CASE("samples are valid") {
  for (auto [al, be] : std::vector<std::pair<Rational, Rational>>{{1, 1}, {2, 1}, {Rational(1, 3), 5}}) {
    SamplerPlan plan(12, weights(al, be));
    Rng rng(5);
    for (int k = 0; k < 2000; ++k) {
      Tableau t = plan.sample(rng);
      REQUIRE(is_valid(t));
      REQUIRE(counts(t).total() <= 23);
    }
  }
}

TEST_CASE("single box") {
  SamplerPlan plan(1, Params::from_ab(1, 1));
  auto ts = sample_many(plan, kSamples, 2);
  std::vector<std::uint64_t> c(2, 0);
  for (const auto& t : ts)
    ++c[counts(t).A];
  CHECK(DiscreteDist(0, {Rational(1, 2), Rational(1, 2)}).chi_square_against(c).p_value > 1e-3);
}

TEST_CASE("sampler law matches the exact law") {
  const std::vector<std::pair<Rational, Rational>> grid{
      {1, 1}, {2, 1}, {2, 2}, {Rational(1, 3), 5}};
  std::uint64_t seed = 100;
  for (auto [al, be] : grid)
    for (int n = 1; n <= 5; ++n) {
      TableauLaw law = tableau_law(n, 1 / al, 1 / be);
      SamplerPlan plan(n, weights(al, be));
      auto res = chi_square(law, tally(sample_many(plan, kSamples, seed++)));
      INFO("alpha=" << al.get_str() << " beta=" << be.get_str() << " n=" << n);
      CHECK(res.p_value > 1e-3);
    }
}

TEST_CASE("maximal case law") {
  for (Rational rho : {Rational(1, 2), Rational(1, 3), Rational(1)}) {
    TableauLaw law = tableau_law(3, 0, 0, rho);
    CHECK(law.size() == (rho == 1 ? 2u : 4u));
    SamplerPlan plan(3, Params::from_ab(0, 0, rho));
    auto ts = sample_many(plan, kSamples, 9);
    for (const auto& t : ts)
      REQUIRE(counts(t).total() == 5);
    CHECK(chi_square(law, tally(ts)).p_value > 1e-3);
    std::uint64_t top_alpha = 0;
    for (const auto& t : ts)
      top_alpha += (t.at(1, 1) == Symbol::Alpha);
    double r = to_double(rho);
    double sd = std::sqrt(r * (1 - r) / kSamples);
    CHECK(std::abs(double(top_alpha) / kSamples - r) <= 3 * sd + 1e-12);
  }
}

TEST_CASE("first column step matches the diagonal formula") {
  for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{1, 1}, {Rational(1, 2), 3}, {0, 1}}) {
    const int n = 6;
    SamplerPlan plan(n, Params::from_ab(a, b));
    auto ts = sample_many(plan, kSamples, 21);
    std::vector<std::uint64_t> c(2, 0);
    for (const auto& t : ts)
      ++c[t.at(1, n) == Symbol::Alpha];
    Rational p = diag_prob(n, a, b, 1);
    CHECK(DiscreteDist(0, {1 - p, p}).chi_square_against(c).p_value > 1e-3);
  }
}

TEST_CASE("rejection oracle and sequential sampler agree") {
  const int n = 4;
  Rational al(2), be(1);
  std::vector<Tableau> support;
  std::vector<double> w;
  AbTableauStream s(n);
  for_each_tableau(s, [&](const Tableau& t) {
    support.push_back(t);
    w.push_back(to_double(weight(t, al, be, 0, 0)));
  });
  double w_max = *std::max_element(w.begin(), w.end());
  Rng rng(77);
  std::vector<Tableau> rej;
  for (std::size_t k = 0; k < kSamples; ++k)
    rej.push_back(rejection_sample(support, w, w_max, rng));
  TableauLaw law = tableau_law(n, 1 / al, 1 / be);
  CHECK(chi_square(law, tally(rej)).p_value > 1e-3);
  CHECK(chi_square(law, tally(sample_many(SamplerPlan(n, weights(al, be)), kSamples, 78))).p_value > 1e-3);
}

TEST_CASE("four-symbol sampler") {
  // uniform over the 384 tableaux of size 3
  FourSamplerPlan plan(3, 1, 1, 1, 1);
  auto ts = sample_many(plan, kSamples, 31);
  std::map<std::string, Rational> law;
  FourTableauStream s(3);
  for_each_tableau(s, [&](const Tableau& t) { law[t.key()] = Rational(1, 384); });
  for (const auto& t : ts)
    REQUIRE(is_valid(t));
  CHECK(chi_square(law, tally(ts)).p_value > 1e-3);

  // no gamma/delta: identical draws to the two-symbol sampler
  FourSamplerPlan plain(6, 2, 3, 0, 0);
  SamplerPlan base(6, weights(2, 3));
  Rng r1(4), r2(4);
  for (int k = 0; k < 200; ++k)
    REQUIRE(plain.sample(r1) == base.sample(r2));

  CHECK_THROWS_AS(FourSamplerPlan(3, 0, 1, 0, 1), ParameterError);
}

TEST_CASE("four-symbol law with general weights") {
  Rational al(2), be(1, 2), ga(1), de(3);
  FourSamplerPlan plan(3, al, be, ga, de);
  std::map<std::string, Rational> law;
  Rational z = 0;
  FourTableauStream s(3);
  for_each_tableau(s, [&](const Tableau& t) {
    Rational w = weight(t, al, be, ga, de);
    law[t.key()] = w;
    z += w;
  });
  for (auto& [k, p] : law)
    p /= z;
  CHECK(chi_square(law, tally(sample_many(plan, kSamples, 55))).p_value > 1e-3);
}

TEST_CASE("urn") {
  {
    UrnPlan u(1, 1, 1);
    std::vector<std::uint64_t> c(2, 0);
    Rng rng(8);
    for (std::size_t k = 0; k < kSamples; ++k)
      ++c[u.run(rng).A];
    CHECK(DiscreteDist(0, {Rational(1, 2), Rational(1, 2)}).chi_square_against(c).p_value > 1e-3);
  }
  CHECK(dist_A(2, 1, 1)(1) == Rational(2, 3));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto p = urn_sample(2, 0, 0, seed);
    REQUIRE(p.A == 1);
    REQUIRE(p.B == 1);
    REQUIRE(p.white.size() == 2);
  }
  for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{1, 1}, {Rational(1, 2), 2}, {0, 1}}) {
    const int n = 7;
    UrnPlan u(n, a, b);
    std::vector<std::uint64_t> c(n + 1, 0);
    Rng rng(12);
    for (std::size_t k = 0; k < kSamples; ++k)
      ++c[u.run(rng).A];
    CHECK(dist_A(n, a, b).chi_square_against(c).p_value > 1e-3);
  }
  CHECK_THROWS_AS(UrnPlan(3, -1, 1), ParameterError);
}

TEST_CASE("batches") {
  // alpha = beta = 2: E A = n/2, Var A = (n+1)/12
  Batch b10 = sample_batch(10, weights(2, 2), 1, kSamples);
  double sd = std::sqrt(11.0 / 12 / kSamples);
  CHECK(std::abs(to_double(b10.stats.mean_A()) - 5) < 3 * sd);
  Batch b11 = sample_batch(11, weights(2, 2), 2, kSamples);
  CHECK(std::abs(to_double(b11.stats.var_A()) - 1) < 0.03);

  Batch x = sample_batch(8, weights(2, 1), 7, 5000, 1);
  Batch y = sample_batch(8, weights(2, 1), 7, 5000, 3);
  CHECK(x.samples == y.samples);
  CHECK(x.stats.sum_A == y.stats.sum_A);
  Batch z = sample_batch(8, weights(2, 1), 8, 5000, 1);
  CHECK_FALSE(x.samples == z.samples);

  BatchStats left, right, all;
  for (std::size_t k = 0; k < x.samples.size(); ++k) {
    (k < 1234 ? left : right).add(x.samples[k]);
    all.add(x.samples[k]);
  }
  CHECK(left.merge(right).sum_A2 == all.sum_A2);
  CHECK(x.samples[0].diagonal.size() == 8);
  CHECK_THROWS_AS(sample_batch(3, weights(1, 1), 1, 0), DomainError);
}
