#include "support.hpp"

using namespace natfrag;
using namespace natfrag::testing;

namespace {

NatSeq seq(std::initializer_list<long> xs) {
  NatSeq out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Euclid on p/q by hand.
NatSeq euclid(long p, long q) {
  NatSeq out;
  while (q != 0) {
    long a = p / q, r = p % q;
    if (r < 0) { --a; r += q; }
    out.emplace_back(a);
    p = q;
    q = r;
  }
  return out;
}

}  // namespace

TEST(Theta, Examples) {
  EXPECT_EQ(theta(0, 0), 0);
  EXPECT_EQ(theta(1, 2), 8);
  auto [m, n] = theta_inv(8);
  EXPECT_EQ(m, 1);
  EXPECT_EQ(n, 2);
  EXPECT_EQ(kind_of([] { theta(-1, 0); }), ErrorKind::InvalidArgument);
}

TEST(Theta, EnumeratesDiagonals) {
  // codes 0, 1, 2, ... walk the diagonals m + n = w in order of n
  mpz_class k = 0;
  for (long w = 0; w < 40; ++w)
    for (long n = 0; n <= w; ++n, ++k) {
      EXPECT_EQ(theta(w - n, n), k);
      auto [a, b] = theta_inv(k);
      EXPECT_EQ(a, w - n);
      EXPECT_EQ(b, n);
    }
}

TEST(Beta, Examples) {
  mpz_class k = beta_encode(seq({3, 1, 4}));
  EXPECT_EQ(beta(k, 0), 3);
  EXPECT_EQ(beta(k, 1), 1);
  EXPECT_EQ(beta(k, 2), 4);
  EXPECT_EQ(beta(beta_encode(seq({0})), 0), 0);
  EXPECT_NO_THROW(beta_encode({}));
}

TEST(ContinuedFraction, Digits) {
  EXPECT_EQ(to_string(cf_digits(Q(7, 3), 2)), "[2,3]");
  EXPECT_EQ(to_string(cf_expansion(Q(7, 3))), "[2,3]");
  EXPECT_EQ(cf_expansion(Q(7, 3)), euclid(7, 3));
  EXPECT_EQ(to_string(cf_digits(phi(), 6)), "[1,1,1,1,1,1]");
  EXPECT_EQ(to_string(cf_digits(ExactNumber::sqrt(2), 4)), "[1,2,2,2]");
  EXPECT_EQ(to_string(cf_digits(ExactNumber::sqrt(3), 5)), "[1,1,2,1,2]");
  EXPECT_EQ(kind_of([] { cf_digits(Q(7, 3), 3); }),
            ErrorKind::ExpansionTerminated);
  EXPECT_EQ(to_string(cf_expansion(Q(-1, 2))), "[-1,2]");
}

TEST(ContinuedFraction, EncodeDecode) {
  CodedReal empty = cf_encode({});
  EXPECT_EQ(empty.value, ExactNumber(0));
  EXPECT_TRUE(cf_decode(empty).empty());

  CodedReal zeros = cf_encode(seq({0, 0, 0}));
  EXPECT_EQ(zeros.value, cf_value(seq({1, 1, 1})));
  EXPECT_EQ(cf_decode(zeros), seq({0, 0, 0}));

  NatSeq s = seq({3, 1, 4, 1, 5});
  EXPECT_EQ(cf_decode(cf_encode(s)), s);
}

TEST(Delta, Rows) {
  std::vector<ExactNumber> fam{Q(7, 3), 5, Q(1, 2)};
  CodedReal code = delta_encode(fam);
  for (std::size_t i = 0; i < fam.size(); ++i)
    EXPECT_EQ(delta(code, i, 50).value, fam[i]);
  CodedReal single = delta_encode({Q(7, 3)});
  CodedReal row = delta(single, 0, 50);
  EXPECT_EQ(cf_expansion(row.value), seq({2, 3}));
  EXPECT_EQ(kind_of([&] { delta(code, 9, 5); }),
            ErrorKind::InsufficientDigits);
}

TEST(Recursion, Examples) {
  std::function<mpz_class(const mpz_class&)> c = [](const mpz_class& a) {
    return a;
  };
  std::function<mpz_class(const mpz_class&, const mpz_class&)> g =
      [](const mpz_class& a, const mpz_class& v) -> mpz_class {
        return v + a;
      };
  EXPECT_EQ(primitive_recursion(c, g, mpz_class(3), 5), 18);
  EXPECT_EQ(primitive_recursion(c, g, mpz_class(3), 0), 3);
  EXPECT_EQ(factorial_by_recursion(6), 720);
  EXPECT_EQ(factorial_by_recursion(0), 1);
  mpz_class k = recursion_certificate(c, g, mpz_class(3), 5);
  for (unsigned long j = 0; j <= 5; ++j) EXPECT_EQ(beta(k, j), 3 + 3 * j);
}

TEST(Recursion, FieldValued) {
  std::function<ExactNumber(const ExactNumber&)> c = [](const ExactNumber&) {
    return ExactNumber(1);
  };
  std::function<ExactNumber(const ExactNumber&, const ExactNumber&)> g =
      [](const ExactNumber& a, const ExactNumber& v) { return v * a; };
  EXPECT_EQ(primitive_recursion(c, g, phi(), 2), phi() + 1);
}

TEST(DiscreteSum, Examples) {
  auto one = FunctionOracle::composite(
      "one", [](const ExactNumber&) { return ExactNumber(1); });
  auto id = FunctionOracle::composite("id",
                                      [](const ExactNumber& x) { return x; });
  EXPECT_EQ(discrete_sum(D({0, 1, 2}), one), ExactNumber(3));
  auto rev = FunctionOracle::composite(
      "rev", [](const ExactNumber& x) { return ExactNumber(3) - x; });
  PermutedSum ps = permuted_sum_check(D({0, 1, 2, 3}), id, rev);
  EXPECT_EQ(ps.direct, ExactNumber(6));
  EXPECT_EQ(ps.permuted, ExactNumber(6));
  EXPECT_TRUE(ps.equal);

  ValueSet img = image(D({0, 1, 2, 3, 4}), FunctionOracle::rotation(phi()));
  EXPECT_EQ(discrete_sum(img, id), 10 * phi() - 14);

  auto neg = FunctionOracle::composite(
      "neg", [](const ExactNumber& x) { return -x - 1; });
  EXPECT_EQ(kind_of([&] { discrete_sum(D({0}), neg); }),
            ErrorKind::NegativeSummand);
}

// ---- properties ------------------------------------------------------------

TEST(CodingProperty, ThetaBijection) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<long> v(0, 1000000);
  for (int t = 0; t < 10000; ++t) {
    mpz_class m = v(rng), n = v(rng);
    auto [a, b] = theta_inv(theta(m, n));
    EXPECT_EQ(a, m);
    EXPECT_EQ(b, n);
    mpz_class k = v(rng) * 1000003L + v(rng);
    auto [x, y] = theta_inv(k);
    EXPECT_EQ(theta(x, y), k);
  }
}

TEST(CodingProperty, BetaDecodes) {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<long> len(0, 20), v(0, 1000000);
  for (int t = 0; t < 1000; ++t) {
    NatSeq s(len(rng));
    for (auto& x : s) x = v(rng);
    mpz_class k = beta_encode(s);
    for (std::size_t i = 0; i < s.size(); ++i)
      ASSERT_EQ(beta(k, static_cast<unsigned long>(i)), s[i]);
  }
}

TEST(CodingProperty, ContinuedFractionRoundTrip) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<long> len(0, 25), v(0, 1000);
  for (int t = 0; t < 1000; ++t) {
    NatSeq s(len(rng));
    for (auto& x : s) x = (t % 3 == 0) ? v(rng) % 2 : v(rng);
    ASSERT_EQ(cf_decode(cf_encode(s)), s) << to_string(s);
  }
}

TEST(CodingProperty, QuadraticPeriods) {
  NatSeq g = cf_digits(phi(), 51), r2 = cf_digits(ExactNumber::sqrt(2), 51),
         r3 = cf_digits(ExactNumber::sqrt(3), 51);
  EXPECT_EQ(r3[0], 1);
  for (std::size_t i = 1; i <= 50; ++i) {
    EXPECT_EQ(g[i], 1);
    EXPECT_EQ(r2[i], 2);
    EXPECT_EQ(r3[i], i % 2 ? 1 : 2);
  }
}

TEST(CodingProperty, DeltaRoundTrip) {
  std::mt19937_64 rng(54);
  std::uniform_int_distribution<long> count(1, 5), num(0, 500), den(1, 60);
  for (int t = 0; t < 60; ++t) {
    std::vector<ExactNumber> fam;
    for (long k = count(rng); k > 0; --k) fam.push_back(Q(num(rng), den(rng)));
    CodedReal code = delta_encode(fam);
    for (std::size_t i = 0; i < fam.size(); ++i)
      EXPECT_EQ(delta(code, i, 100).value, fam[i]);
  }
}

TEST(CodingProperty, RecursionMatchesIteration) {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<long> v(0, 50), steps(0, 12);
  for (int t = 0; t < 100; ++t) {
    long mul = v(rng) % 4 + 1, add = v(rng);
    std::function<mpz_class(const mpz_class&)> c = [](const mpz_class& a) {
      return a;
    };
    std::function<mpz_class(const mpz_class&, const mpz_class&)> g =
        [&](const mpz_class& a, const mpz_class& x) -> mpz_class {
      return x * mul + a + add;
    };
    mpz_class a = v(rng);
    unsigned long i = steps(rng);
    mpz_class direct = a;
    for (unsigned long k = 0; k < i; ++k) direct = direct * mul + a + add;
    EXPECT_EQ(primitive_recursion(c, g, a, i), direct);
    mpz_class k = recursion_certificate(c, g, a, i);
    NatSeq orbit = recursion_orbit(c, g, a, i);
    for (std::size_t j = 0; j < orbit.size(); ++j)
      EXPECT_EQ(beta(k, static_cast<unsigned long>(j)), orbit[j]);
  }
}

TEST(CodingProperty, SumInvariantUnderBijections) {
  std::mt19937_64 rng(56);
  for (int t = 0; t < 50; ++t) {
    long n = 1 + t % 12;
    std::vector<long> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<ExactNumber> xs;
    for (long i = 0; i < n; ++i) xs.emplace_back(i);
    std::map<ExactNumber, ExactNumber> sigma;
    for (long i = 0; i < n; ++i) sigma[ExactNumber(i)] = ExactNumber(perm[i]);
    auto h = FunctionOracle::composite("sq", [](const ExactNumber& x) {
      return x * x + phi();
    });
    PermutedSum ps =
        permuted_sum_check(DiscreteSet(xs), h, FunctionOracle::table(sigma));
    EXPECT_TRUE(ps.equal);
  }
}
