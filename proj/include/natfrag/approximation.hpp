#pragma once

// Best approximations from the left and right, the ratio map g, the family
// Y_{a,b,d} with its index condition J, and the intervals on which these data
// stay fixed or move by less than a tolerance.
//
// Everything is phrased over indices into D (see search_space.hpp).  The sets
// L and R are reported both as indices and as elements of D.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"
#include "natfrag/search_space.hpp"
#include "natfrag/sets.hpp"

namespace natfrag {

/// Indices of the best approximations of a cut from each side, up to a bound,
/// in increasing order.
struct Records {
  std::vector<Index> left;
  std::vector<Index> right;
};

/// The next best approximation from the left after index i is the least k > i
/// with f(k) in [f(i), c): equal values do not block, since the defining
/// interval (f(k), c) is open.  Symmetrically from the right.
template <SearchSpace S>
Records records(S& space, const ExactNumber& cut, Index bound) {
  Records out;
  if (bound < 0) return out;
  std::optional<ExactNumber> best;
  for (Index from = 0;;) {
    Window w = best ? Window{*best, cut, true, false} : Window::below(cut);
    auto k = space.first_hit(from, w, bound);
    if (!k) break;
    out.left.push_back(*k);
    best = space.value(*k);
    from = *k + 1;
  }
  best.reset();
  for (Index from = 0;;) {
    Window w = best ? Window{cut, *best, false, true} : Window::above(cut);
    auto k = space.first_hit(from, w, bound);
    if (!k) break;
    out.right.push_back(*k);
    best = space.value(*k);
    from = *k + 1;
  }
  return out;
}

/// Last record at or below `bound`, if any.
inline std::optional<Index> last_record(const std::vector<Index>& chain,
                                        Index bound) {
  auto it = std::upper_bound(chain.begin(), chain.end(), bound);
  if (it == chain.begin()) return std::nullopt;
  return *std::prev(it);
}

struct ApproxState {
  DiscreteSet L;
  DiscreteSet R;
  std::vector<Index> left;
  std::vector<Index> right;
  ExactNumber l;
  ExactNumber r;
  ExactNumber cut;
  ExactNumber bound;
  Index bound_index = 0;
};

namespace detail {

template <SearchSpace S>
DiscreteSet elements_of(S& space, const std::vector<Index>& indices) {
  std::vector<ExactNumber> out;
  out.reserve(indices.size());
  for (Index k : indices) out.push_back(space.element(k));
  return DiscreteSet(std::move(out));
}

template <SearchSpace S>
Index require_index(S& space, const ExactNumber& d) {
  auto k = space.index_of(d);
  if (!k) throw Error(ErrorKind::NotAMember, d.to_string() + " is not in D");
  return *k;
}

}  // namespace detail

/// L_{c,d}, R_{c,d}, l_{c,d}, r_{c,d}; d given as an index into D.
template <SearchSpace S>
ApproxState best_approx(S& space, const ExactNumber& cut, Index d) {
  Records rec = records(space, cut, d);
  if (rec.left.empty())
    throw Error(ErrorKind::NoLeftValue,
                "no value below " + cut.to_string() + " up to index " +
                    std::to_string(d));
  if (rec.right.empty())
    throw Error(ErrorKind::NoRightValue,
                "no value above " + cut.to_string() + " up to index " +
                    std::to_string(d));
  ApproxState st;
  st.L = detail::elements_of(space, rec.left);
  st.R = detail::elements_of(space, rec.right);
  st.l = space.value(rec.left.back());
  st.r = space.value(rec.right.back());
  st.left = std::move(rec.left);
  st.right = std::move(rec.right);
  st.cut = cut;
  st.bound = space.element(d);
  st.bound_index = d;
  return st;
}

template <SearchSpace S>
ApproxState best_approx_at(S& space, const ExactNumber& cut,
                           const ExactNumber& d) {
  return best_approx(space, cut, detail::require_index(space, d));
}

/// g(a, b, c) = (c - a)/(b - a) when a < b < c, and 0 otherwise.
inline ExactNumber ratio_g(const ExactNumber& a, const ExactNumber& b,
                           const ExactNumber& c) {
  if (a < b && b < c) return (c - a) / (b - a);
  return ExactNumber(0);
}

struct YFamilyPoint {
  ExactNumber a;
  ExactNumber b;
  ExactNumber d;
  Index d_index = 0;
  std::vector<Index> L;                    // L_{a,d} as indices
  std::vector<ExactNumber> contributions;  // g(l_{b,e}, b, r_{b,e}) along L
  DiscreteSet Y;
  bool in_j = false;
  bool a_in_image = false;
  bool b_in_image = false;
  std::optional<Index> membership_bound;   // nullopt: decided over all of D
};

/// Index at which the pair (l_{b,e}, r_{b,e}) is read for e in L_{a,d}.  At the
/// first element of D only one value exists, so the pair would be undefined;
/// it is read at the second element instead.  This is what makes the
/// bootstrap triple produce {0, 1 + eps/2}.
inline Index effective_index(Index e) { return std::max<Index>(e, 1); }

namespace detail {

struct Contribution {
  ExactNumber value;
  std::optional<ExactNumber> l;
  std::optional<ExactNumber> r;
};

template <SearchSpace S>
std::vector<Contribution> contributions(S& space, const std::vector<Index>& L,
                                        const ExactNumber& b) {
  std::vector<Contribution> out;
  if (L.empty()) return out;
  Index top = effective_index(L.back());
  Records rec = records(space, b, top);
  for (Index e : L) {
    Index at = effective_index(e);
    Contribution c{ExactNumber(0), std::nullopt, std::nullopt};
    if (auto i = last_record(rec.left, at)) c.l = space.value(*i);
    if (auto i = last_record(rec.right, at)) c.r = space.value(*i);
    if (c.l && c.r) c.value = ratio_g(*c.l, b, *c.r);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

template <SearchSpace S>
YFamilyPoint y_family(S& space, const ExactNumber& a, const ExactNumber& b,
                      Index d) {
  ApproxState at_a = best_approx(space, a, d);
  YFamilyPoint p;
  p.a = a;
  p.b = b;
  p.d = space.element(d);
  p.d_index = d;
  p.L = at_a.left;
  std::vector<ExactNumber> ys{ExactNumber(0)};
  bool increasing = true;
  for (auto& c : detail::contributions(space, p.L, b)) {
    if (!p.contributions.empty() && !(p.contributions.back() < c.value))
      increasing = false;
    p.contributions.push_back(c.value);
    ys.push_back(c.value);
  }
  p.Y = DiscreteSet::from_unsorted(std::move(ys));
  p.membership_bound = space.membership_bound(d);
  p.a_in_image = space.in_image(a, p.membership_bound);
  p.b_in_image = space.in_image(b, p.membership_bound);
  p.in_j = increasing && !p.a_in_image && !p.b_in_image;
  return p;
}

template <SearchSpace S>
YFamilyPoint y_family_at(S& space, const ExactNumber& a, const ExactNumber& b,
                         const ExactNumber& d) {
  return y_family(space, a, b, detail::require_index(space, d));
}

struct OpenInterval {
  ExactNumber lo;
  ExactNumber hi;

  bool contains(const ExactNumber& x) const { return lo < x && x < hi; }
  std::string to_string() const {
    return "(" + lo.to_string() + ", " + hi.to_string() + ")";
  }
};

/// (l_{a,d}, r_{a,d}): every cut in it has the same L and R up to d.
template <SearchSpace S>
OpenInterval stability_interval(S& space, const ExactNumber& a, Index d) {
  if (space.in_image(a, d))
    throw Error(ErrorKind::CutInImage,
                a.to_string() + " is a value of f up to index " +
                    std::to_string(d));
  ApproxState st = best_approx(space, a, d);
  return {st.l, st.r};
}

/// Exact points strictly inside an interval: lo + (hi - lo) k/(grid + 1) for
/// random k in [1, grid].
class IntervalSampler {
 public:
  explicit IntervalSampler(std::uint64_t seed, long grid = 1'000'003)
      : rng_(seed), grid_(grid) {}

  ExactNumber operator()(const OpenInterval& in) {
    std::uniform_int_distribution<long> pick(1, grid_);
    ExactNumber t = ExactNumber::fraction(pick(rng_), grid_ + 1);
    return in.lo + (in.hi - in.lo) * t;
  }

 private:
  std::mt19937_64 rng_;
  long grid_;
};

/// Re-derives L and R at sampled cuts inside the stability interval; returns
/// the first cut that disagrees, if any.
template <SearchSpace S>
std::optional<ExactNumber> verify_stability(S& space, const ExactNumber& a,
                                            Index d, int samples,
                                            std::uint64_t seed = 1) {
  OpenInterval in = stability_interval(space, a, d);
  Records base = records(space, a, d);
  IntervalSampler sample(seed);
  for (int i = 0; i < samples; ++i) {
    ExactNumber b = sample(in);
    Records other = records(space, b, d);
    if (other.left != base.left || other.right != base.right) return b;
  }
  return std::nullopt;
}

/// Cuts c near p.b for which every contribution g(l, c, r) stays within
/// delta of g(l, p.b, r), intersected with (l_{b,d}, r_{b,d}).  Each bound
/// comes from inverting c -> (r - l)/(c - l), which is decreasing on (l, r).
template <SearchSpace S>
OpenInterval stability_window(S& space, const YFamilyPoint& p,
                              const ExactNumber& delta) {
  ApproxState at_b = best_approx(space, p.b, p.d_index);
  OpenInterval out{at_b.l, at_b.r};
  for (auto& c : detail::contributions(space, p.L, p.b)) {
    if (c.value.is_zero()) continue;  // constant on the whole window
    ExactNumber span = *c.r - *c.l;
    out.lo = max(out.lo, *c.l + span / (c.value + delta));
    if (c.value > delta) out.hi = min(out.hi, *c.l + span / (c.value - delta));
  }
  return out;
}

/// The interval around b on which Y_{a,c,d} is a 3*eps fragment up to the
/// anchor and (a, c, d) stays in J.
template <SearchSpace S>
OpenInterval widen_interval(S& space, const YFamilyPoint& p,
                            const ExactNumber& eps, const ExactNumber& anchor) {
  if (eps.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (!(eps < ExactNumber::fraction(1, 4)))
    throw Error(ErrorKind::EpsTooLarge, "widening needs eps < 1/4");
  if (!p.in_j)
    throw Error(ErrorKind::NotInJ, "(" + p.a.to_string() + ", " +
                                       p.b.to_string() + ", " +
                                       p.d.to_string() + ")");
  if (!is_eps_fragment(p.Y, eps, anchor))
    throw Error(ErrorKind::PreconditionFailed,
                p.Y.to_string() + " is not an eps-fragment up to " +
                    anchor.to_string());
  return stability_window(space, p, eps);
}

/// Samples cuts in a widened interval (skipping image values) and returns the
/// first one whose Y fails the 3*eps check or leaves J.
template <SearchSpace S>
std::optional<ExactNumber> verify_widen(S& space, const YFamilyPoint& p,
                                        const OpenInterval& in,
                                        const ExactNumber& eps,
                                        const ExactNumber& anchor, int samples,
                                        std::uint64_t seed = 1) {
  IntervalSampler sample(seed);
  ExactNumber triple = eps * ExactNumber(3);
  for (int i = 0; i < samples; ++i) {
    ExactNumber c = sample(in);
    if (space.in_image(c, space.membership_bound(p.d_index))) continue;
    YFamilyPoint q = y_family(space, p.a, c, p.d_index);
    if (!q.in_j || !is_eps_fragment(q.Y, triple, anchor)) return c;
  }
  return std::nullopt;
}

}  // namespace natfrag
