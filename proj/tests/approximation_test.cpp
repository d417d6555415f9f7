#include "support.hpp"

using namespace natfrag;
using namespace natfrag::testing;

namespace {

// Brute force straight from the definitions, over explicit value lists.
struct Brute {
  std::vector<ExactNumber> v;  // v[k] = f(element k)

  std::vector<Index> left(const ExactNumber& c, Index d) const {
    std::vector<Index> out;
    for (Index e = 0; e <= d; ++e) {
      if (!(v[e] < c)) continue;
      bool blocked = false;
      for (Index e2 = 0; e2 < e; ++e2)
        if (v[e2] < c && v[e2] > v[e]) blocked = true;
      if (!blocked) out.push_back(e);
    }
    return out;
  }
  std::vector<Index> right(const ExactNumber& c, Index d) const {
    std::vector<Index> out;
    for (Index e = 0; e <= d; ++e) {
      if (!(v[e] > c)) continue;
      bool blocked = false;
      for (Index e2 = 0; e2 < e; ++e2)
        if (v[e2] > c && v[e2] < v[e]) blocked = true;
      if (!blocked) out.push_back(e);
    }
    return out;
  }
  std::vector<ExactNumber> Y(const ExactNumber& a, const ExactNumber& b,
                             Index d) const {
    std::vector<ExactNumber> ys{ExactNumber(0)};
    for (Index e : left(a, d)) {
      Index top = std::max<Index>(e, 1);
      std::optional<ExactNumber> l, r;
      for (Index k = 0; k <= top; ++k) {
        if (v[k] < b && (!l || v[k] > *l)) l = v[k];
        if (v[k] > b && (!r || v[k] < *r)) r = v[k];
      }
      ys.push_back(l && r ? (*r - *l) / (b - *l) : ExactNumber(0));
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    return ys;
  }
};

Brute rotation_values(const ExactNumber& alpha, Index upto) {
  Brute b;
  for (Index k = 0; k <= upto; ++k)
    b.v.push_back((ExactNumber(k) * alpha).frac());
  return b;
}

EnumeratedSpace table_space(std::vector<ExactNumber> vals) {
  std::map<ExactNumber, ExactNumber> t;
  std::vector<ExactNumber> keys;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    t[ExactNumber(static_cast<long>(i))] = vals[i];
    keys.emplace_back(static_cast<long>(i));
  }
  return EnumeratedSpace(DiscreteSet(keys), FunctionOracle::table(t));
}

}  // namespace

TEST(BestApprox, GoldenRatioAtFour) {
  RotationSpace s(phi());
  ApproxState st = best_approx(s, Q(1, 2), 4);
  EXPECT_EQ(st.L.to_string(), "{0,2,4}");
  EXPECT_EQ(st.R.to_string(), "{1}");
  EXPECT_EQ(st.l, 4 * phi() - 6);
  EXPECT_EQ(st.r, phi() - 1);
  Brute b = rotation_values(phi(), 4);
  EXPECT_EQ(st.left, b.left(Q(1, 2), 4));
  EXPECT_EQ(st.right, b.right(Q(1, 2), 4));
}

TEST(BestApprox, TwoPointTables) {
  auto s = table_space({0, 1});
  ApproxState st = best_approx(s, Q(1, 2), 1);
  EXPECT_EQ(st.L.to_string(), "{0}");
  EXPECT_EQ(st.R.to_string(), "{1}");
  EXPECT_EQ(st.l, ExactNumber(0));
  EXPECT_EQ(st.r, ExactNumber(1));
  auto low = table_space({0, Q(1, 4)});
  EXPECT_EQ(kind_of([&] { best_approx(low, Q(1, 2), 1); }),
            ErrorKind::NoRightValue);
  EXPECT_EQ(kind_of([&] { best_approx(low, ExactNumber(0), 1); }),
            ErrorKind::NoLeftValue);
}

TEST(BestApprox, ElementLookup) {
  RotationSpace s(phi());
  EXPECT_EQ(best_approx_at(s, Q(1, 2), ExactNumber(4)).L.to_string(),
            "{0,2,4}");
  EXPECT_EQ(kind_of([&] { best_approx_at(s, Q(1, 2), Q(1, 2)); }),
            ErrorKind::NotAMember);
}

TEST(RatioG, Examples) {
  EXPECT_EQ(ratio_g(0, Q(1, 2), 1), ExactNumber(2));
  EXPECT_EQ(ratio_g(1, 0, 2), ExactNumber(0));
  EXPECT_EQ(ratio_g(4 * phi() - 6, Q(1, 2), phi() - 1),
            (5 - 3 * phi()) / (Q(13, 2) - 4 * phi()));
}

TEST(YFamily, BootstrapInstance) {
  RotationSpace s(phi());
  ExactNumber a = (phi() - 1) / Q(21, 20);
  YFamilyPoint p = y_family(s, a, a, 1);
  EXPECT_EQ(p.Y.to_string(), "{0,21/20}");
  EXPECT_TRUE(p.in_j);
  EXPECT_FALSE(p.membership_bound.has_value());
  EXPECT_EQ(values(p.Y), rotation_values(phi(), 1).Y(a, a, 1));
}

TEST(YFamily, SingletonL) {
  RotationSpace s(phi());
  // L_{a,4} = {0} for a below every nonzero value up to 4
  ExactNumber a = Q(1, 10), b = Q(3, 10);
  YFamilyPoint p = y_family(s, a, b, 4);
  EXPECT_EQ(p.L, std::vector<Index>{0});
  EXPECT_EQ(p.Y.size(), 2u);
  EXPECT_EQ(values(p.Y), rotation_values(phi(), 4).Y(a, b, 4));
}

TEST(YFamily, RepeatedRatioLeavesJ) {
  auto s = table_space({0, Q(1, 4), Q(3, 4)});
  YFamilyPoint p = y_family(s, Q(1, 2), Q(1, 8), 2);
  EXPECT_EQ(p.L, (std::vector<Index>{0, 1}));
  EXPECT_EQ(p.Y.to_string(), "{0,2}");
  EXPECT_FALSE(p.in_j);
}

TEST(YFamily, ImageCutsLeaveJ) {
  RotationSpace s(phi());
  YFamilyPoint p = y_family(s, Q(1, 2), 2 * phi() - 3, 4);
  EXPECT_TRUE(p.b_in_image);
  EXPECT_FALSE(p.in_j);
}

TEST(Stability, Examples) {
  RotationSpace s(phi());
  OpenInterval in = stability_interval(s, Q(1, 2), 4);
  EXPECT_EQ(in.lo, 4 * phi() - 6);
  EXPECT_EQ(in.hi, phi() - 1);
  auto t = table_space({0, 1});
  OpenInterval unit = stability_interval(t, Q(1, 2), 1);
  EXPECT_EQ(unit.lo, ExactNumber(0));
  EXPECT_EQ(unit.hi, ExactNumber(1));
  EXPECT_EQ(kind_of([&] { stability_interval(s, 2 * phi() - 3, 4); }),
            ErrorKind::CutInImage);
}

TEST(Widen, BootstrapNeighbourhood) {
  RotationSpace s(phi());
  YFamilyPoint p = bootstrap(s, Q(1, 10));
  OpenInterval in = widen_interval(s, p, Q(1, 10), ExactNumber(1));
  EXPECT_LT(in.lo, in.hi);
  EXPECT_TRUE(in.contains(p.b));
  EXPECT_FALSE(in.lo.is_rational());
  EXPECT_FALSE(in.hi.is_rational());
  EXPECT_EQ(verify_widen(s, p, in, Q(1, 10), ExactNumber(1), 200),
            std::nullopt);
}

TEST(Widen, Preconditions) {
  RotationSpace s(phi());
  YFamilyPoint p = bootstrap(s, Q(1, 10));
  EXPECT_EQ(kind_of([&] { widen_interval(s, p, Q(1, 4), ExactNumber(1)); }),
            ErrorKind::EpsTooLarge);
  EXPECT_EQ(kind_of([&] { widen_interval(s, p, Q(1, 100), ExactNumber(1)); }),
            ErrorKind::PreconditionFailed);
  YFamilyPoint out = p;
  out.in_j = false;
  EXPECT_EQ(kind_of([&] { widen_interval(s, out, Q(1, 10), ExactNumber(1)); }),
            ErrorKind::NotInJ);
}

// ---- properties ------------------------------------------------------------

TEST(BestApproxProperty, MatchesDefinitionByBruteForce) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> num(1, 9999), dd(1, 120);
  for (ExactNumber alpha : {phi(), ExactNumber::sqrt(2), ExactNumber::sqrt(3)}) {
    Brute b = rotation_values(alpha, 120);
    for (int t = 0; t < 100; ++t) {
      ExactNumber c = Q(num(rng), 10000);
      Index d = dd(rng);
      RotationSpace s(alpha);
      ApproxState st;
      try {
        st = best_approx(s, c, d);
      } catch (const Error& e) {
        EXPECT_TRUE(b.left(c, d).empty() || b.right(c, d).empty());
        continue;
      }
      EXPECT_EQ(st.left, b.left(c, d));
      EXPECT_EQ(st.right, b.right(c, d));
      EXPECT_LT(st.l, c);
      EXPECT_LT(c, st.r);
      for (std::size_t i = 1; i < st.left.size(); ++i)
        EXPECT_LT(b.v[st.left[i - 1]], b.v[st.left[i]]);
      for (std::size_t i = 1; i < st.right.size(); ++i)
        EXPECT_GT(b.v[st.right[i - 1]], b.v[st.right[i]]);
    }
  }
}

TEST(StabilityProperty, ResamplesKeepLAndR) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> num(1, 9999), dd(1, 500);
  for (int t = 0; t < 40; ++t) {
    ExactNumber alpha = t % 2 ? phi() : ExactNumber::sqrt(2);
    RotationSpace s(alpha);
    ExactNumber c = Q(num(rng), 10000);
    Index d = dd(rng);
    try {
      EXPECT_EQ(verify_stability(s, c, d, 100, t), std::nullopt);
    } catch (const Error& e) {
      // only a cut outside the values up to d may be rejected
      EXPECT_TRUE(e.kind() == ErrorKind::NoRightValue) << e.what();
    }
  }
}

TEST(StabilityProperty, SameLGivesSameY) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> num(1, 9999), dd(2, 80), low(1, 4000);
  Brute brute = rotation_values(ExactNumber::sqrt(3), 80);
  for (int t = 0; t < 60; ++t) {
    RotationSpace s(ExactNumber::sqrt(3));
    ExactNumber a = Q(low(rng), 10000), b = Q(num(rng), 10000);
    Index d = dd(rng);
    OpenInterval in = stability_interval(s, a, d);
    IntervalSampler sample(t);
    YFamilyPoint base = y_family(s, a, b, d);
    EXPECT_EQ(values(base.Y), brute.Y(a, b, d));
    for (int k = 0; k < 20; ++k) {
      ExactNumber c = sample(in);
      YFamilyPoint q = y_family(s, c, b, d);
      EXPECT_EQ(q.L, base.L);
      EXPECT_EQ(q.Y.to_string(), base.Y.to_string());
    }
  }
}

TEST(WidenProperty, SampledCutsKeepTripleFragment) {
  for (long den : {10, 20, 60}) {
    for (ExactNumber alpha : {phi(), ExactNumber::sqrt(2)}) {
      RotationSpace s(alpha);
      ExactNumber eps = Q(1, den);
      YFamilyPoint p = bootstrap(s, eps);
      OpenInterval in = widen_interval(s, p, eps, ExactNumber(1));
      EXPECT_EQ(verify_widen(s, p, in, eps, ExactNumber(1), 100, den),
                std::nullopt);
    }
  }
}
