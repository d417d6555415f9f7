#include "support.hpp"

using namespace natfrag;
using namespace natfrag::testing;

namespace {

std::optional<Index> scan(const ExactNumber& alpha, Index from,
                          const Window& w, Index upto) {
  for (Index k = from; k <= upto; ++k)
    if (w.contains((ExactNumber(k) * alpha).frac())) return k;
  return std::nullopt;
}

}  // namespace

TEST(RotationSpace, ValuesAreFractionalParts) {
  RotationSpace s(phi());
  EXPECT_EQ(s.value(0), ExactNumber(0));
  EXPECT_EQ(s.value(1), phi() - 1);
  EXPECT_EQ(s.value(4), 4 * phi() - 6);
  EXPECT_EQ(s.generated(), 3u);
  EXPECT_EQ(s.value(4), 4 * phi() - 6);
  EXPECT_EQ(s.generated(), 3u);  // repeated indices are not charged twice
}

TEST(RotationSpace, RejectsRationalAlpha) {
  EXPECT_EQ(kind_of([] { RotationSpace s(Q(1, 2)); }),
            ErrorKind::InvalidArgument);
}

TEST(RotationSpace, PreimageAndMembership) {
  RotationSpace s(ExactNumber::sqrt(2));
  ExactNumber y = (ExactNumber(123456) * ExactNumber::sqrt(2)).frac();
  EXPECT_EQ(s.preimage(y), Index{123456});
  EXPECT_TRUE(s.in_image(y, std::nullopt));
  EXPECT_FALSE(s.in_image(y, Index{10}));
  EXPECT_FALSE(s.in_image(Q(1, 2), std::nullopt));
  EXPECT_FALSE(s.in_image(phi() - 1, std::nullopt));
  EXPECT_FALSE(s.membership_bound(5).has_value());
}

TEST(RotationSpace, FirstHitMatchesScan) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> num(0, 999), from(0, 300);
  for (ExactNumber alpha : {phi(), ExactNumber::sqrt(2), ExactNumber::sqrt(3),
                            1 + ExactNumber::sqrt(7) / 3}) {
    for (int t = 0; t < 150; ++t) {
      ExactNumber a = Q(num(rng), 1000), b = Q(num(rng), 1000);
      if (b < a) std::swap(a, b);
      Window w = Window::open(a, b + Q(1, 50));
      Index f = from(rng);
      RotationSpace s(alpha);
      auto want = scan(alpha.frac(), f, w, 4000);
      auto got = s.first_hit(f, w, Index{4000});
      EXPECT_EQ(got, want) << alpha << " " << a << " " << b << " " << f;
    }
  }
}

TEST(RotationSpace, ClosedEndsHitExactValues) {
  RotationSpace s(phi());
  ExactNumber y7 = (ExactNumber(7) * phi()).frac();
  Window closed{y7, y7 + Q(1, 100000), true, false};
  EXPECT_EQ(s.first_hit(0, closed, std::nullopt), Index{7});
  Window open = Window::open(y7, y7 + Q(1, 100000));
  auto k = s.first_hit(0, open, std::nullopt);
  ASSERT_TRUE(k);
  EXPECT_GT(*k, 7);
  EXPECT_EQ(scan(phi() - 1, 0, open, *k), k);
  EXPECT_EQ(s.first_hit(0, Window::below(ExactNumber(0)), std::nullopt),
            std::nullopt);
  EXPECT_EQ(s.first_hit(0, Window{ExactNumber(0), ExactNumber(0), true, true},
                        std::nullopt),
            Index{0});
}

TEST(RotationSpace, DeepWindowsUseFewIndices) {
  RotationSpace s(phi(), 10);
  ExactNumber lo = Q(1, 3);
  auto k = s.first_hit(1, Window::open(lo, lo + Q(1, 1000000000)),
                       std::nullopt);
  ASSERT_TRUE(k);
  EXPECT_GT(*k, 100000000);
  EXPECT_LE(s.generated(), 1u);
  ExactNumber v = s.value(*k);
  EXPECT_LT(lo, v);
}

TEST(RotationSpace, BudgetIsEnforced) {
  RotationSpace s(phi(), 3);
  s.value(1);
  s.value(2);
  s.value(3);
  EXPECT_EQ(kind_of([&] { s.value(50); }), ErrorKind::CapExceeded);
}

TEST(EnumeratedSpace, FiniteTable) {
  std::map<ExactNumber, ExactNumber> t{{0, 0}, {1, Q(1, 4)}, {Q(5, 2), Q(3, 4)}};
  EnumeratedSpace s(D({0, 1, Q(5, 2)}), FunctionOracle::table(t));
  EXPECT_EQ(s.element(2), Q(5, 2));
  EXPECT_EQ(s.index_of(Q(5, 2)), Index{2});
  EXPECT_EQ(s.index_of(Q(1, 2)), std::nullopt);
  EXPECT_EQ(s.first_hit(0, Window::open(Q(1, 2), 1), std::nullopt), Index{2});
  EXPECT_EQ(s.first_hit(0, Window::open(1, 2), std::nullopt), std::nullopt);
  EXPECT_TRUE(s.in_image(Q(1, 4), s.membership_bound(0)));
  EXPECT_EQ(s.membership_bound(0), Index{2});
}

TEST(EnumeratedSpace, AgreesWithRotationSpace) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> num(0, 999);
  EnumeratedSpace e(GrowableSet::naturals(5000),
                    FunctionOracle::rotation(ExactNumber::sqrt(3)));
  RotationSpace r(ExactNumber::sqrt(3));
  for (int t = 0; t < 100; ++t) {
    ExactNumber a = Q(num(rng), 1000);
    Window w = Window::open(a, a + Q(1, 200));
    EXPECT_EQ(e.first_hit(3, w, Index{2000}), r.first_hit(3, w, Index{2000}));
  }
}

TEST(EnumeratedSpace, GrowableCapSurfaces) {
  EnumeratedSpace e(GrowableSet::naturals(10),
                    FunctionOracle::rotation(phi()));
  EXPECT_EQ(kind_of([&] {
              e.first_hit(0, Window::open(Q(1, 3), Q(1, 3) + Q(1, 10000)),
                          std::nullopt);
            }),
            ErrorKind::CapExceeded);
}
