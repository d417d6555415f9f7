#pragma once

// Indexed views of a pair (D, f).  Approximation and extraction only ever ask
// three questions of (D, f): the value at an index, the least index at or
// after a given one whose value falls in a window, and whether a number is in
// the image.  EnumeratedSpace answers by scanning; RotationSpace answers the
// rotation n -> frac(n alpha) over the naturals exactly through a continued
// fraction recursion, so it touches only the indices it returns.

#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"
#include "natfrag/oracle.hpp"
#include "natfrag/sets.hpp"

namespace natfrag {

using Index = std::int64_t;

/// Interval with optional (infinite) ends; each finite end open or closed.
struct Window {
  std::optional<ExactNumber> lo;
  std::optional<ExactNumber> hi;
  bool lo_closed = false;
  bool hi_closed = false;

  static Window open(ExactNumber lo, ExactNumber hi) {
    return {std::move(lo), std::move(hi), false, false};
  }
  static Window below(ExactNumber hi) { return {std::nullopt, std::move(hi)}; }
  static Window above(ExactNumber lo) { return {std::move(lo), std::nullopt}; }

  bool contains(const ExactNumber& y) const {
    if (lo && (lo_closed ? y < *lo : y <= *lo)) return false;
    if (hi && (hi_closed ? y > *hi : y >= *hi)) return false;
    return true;
  }
};

template <class S>
concept SearchSpace = requires(S& s, const S& cs, Index k, const Window& w,
                               const ExactNumber& y,
                               std::optional<Index> bound) {
  { s.element(k) } -> std::convertible_to<ExactNumber>;
  { s.value(k) } -> std::convertible_to<ExactNumber>;
  { s.first_hit(k, w, bound) } -> std::same_as<std::optional<Index>>;
  { s.in_image(y, bound) } -> std::same_as<bool>;
  { s.membership_bound(k) } -> std::same_as<std::optional<Index>>;
  { s.index_of(y) } -> std::same_as<std::optional<Index>>;
  { cs.generated() } -> std::convertible_to<std::uint64_t>;
  { cs.describe() } -> std::convertible_to<std::string>;
};

/// D is either a finite DiscreteSet or a GrowableSet; every answer comes from
/// a linear scan over materialized indices.
class EnumeratedSpace {
 public:
  EnumeratedSpace(const DiscreteSet& set, FunctionOracle f)
      : finite_(set), f_(std::move(f)) {}

  EnumeratedSpace(GrowableSet set, FunctionOracle f)
      : growable_(std::move(set)), f_(std::move(f)) {}

  std::optional<Index> size() const {
    if (finite_) return static_cast<Index>(finite_->size());
    return std::nullopt;
  }

  ExactNumber element(Index k) {
    if (finite_) {
      if (k < 0 || k >= static_cast<Index>(finite_->size()))
        throw Error(ErrorKind::InvalidArgument,
                    "index " + std::to_string(k) + " outside finite D");
      return (*finite_)[static_cast<std::size_t>(k)];
    }
    return growable_->at(k);
  }

  std::optional<Index> index_of(const ExactNumber& x) {
    if (finite_) {
      auto i = finite_->index_of(x);
      if (!i) return std::nullopt;
      return static_cast<Index>(*i);
    }
    for (Index k = 0;; ++k) {
      const ExactNumber& e = growable_->at(k);
      if (e == x) return k;
      if (e > x) return std::nullopt;
    }
  }

  ExactNumber value(Index k) {
    while (static_cast<Index>(values_.size()) <= k)
      values_.push_back(f_(element(static_cast<Index>(values_.size()))));
    return values_[static_cast<std::size_t>(k)];
  }

  std::optional<Index> first_hit(Index from, const Window& window,
                                 std::optional<Index> limit = std::nullopt) {
    for (Index k = std::max<Index>(from, 0);; ++k) {
      if (limit && k > *limit) return std::nullopt;
      if (finite_ && k >= static_cast<Index>(finite_->size()))
        return std::nullopt;
      if (window.contains(value(k))) return k;
    }
  }

  bool in_image(const ExactNumber& y, std::optional<Index> bound) {
    Index last = bound ? *bound : materialized() - 1;
    for (Index k = 0; k <= last; ++k) {
      if (finite_ && k >= static_cast<Index>(finite_->size())) break;
      if (value(k) == y) return true;
    }
    return false;
  }

  /// Image membership is decided against every materialized index (and at
  /// least up to d).
  std::optional<Index> membership_bound(Index d) const {
    if (finite_) return static_cast<Index>(finite_->size()) - 1;
    return std::max(d, materialized() - 1);
  }

  Index materialized() const {
    if (finite_) return static_cast<Index>(finite_->size());
    return static_cast<Index>(values_.size());
  }

  std::uint64_t generated() const {
    return static_cast<std::uint64_t>(values_.size());
  }

  std::string describe() const {
    return f_.describe() + (finite_ ? " on finite D" : " on growable D");
  }

  const FunctionOracle& oracle() const { return f_; }

 private:
  std::optional<DiscreteSet> finite_;
  std::optional<GrowableSet> growable_;
  FunctionOracle f_;
  std::vector<ExactNumber> values_;
};

namespace detail {

/// Least m >= 0 with frac(beta + m alpha) in the open interval (lo, hi).
/// Requires 0 < alpha < 1 irrational, 0 <= beta < 1, 0 <= lo < hi <= 1.
///
/// Hits with k wraps satisfy m in ((k + lo - beta)/alpha, (k + hi - beta)/alpha);
/// these ranges are disjoint and increasing in k, so the least k whose range
/// holds an integer gives the least m.  That question is again a first-return
/// problem for the rotation by 1/alpha with a window of width (hi - lo)/alpha,
/// which is at least twice as wide two levels down.
inline mpz_class first_return(const ExactNumber& alpha, const ExactNumber& beta,
                              const ExactNumber& lo, const ExactNumber& hi) {
  if (lo < beta && beta < hi) return 0;
  if (beta <= lo) {
    mpz_class m = ((lo - beta) / alpha).floor() + 1;
    if (beta + ExactNumber(m) * alpha < hi) return m;
  }
  const ExactNumber one(1);
  ExactNumber inv = alpha.inverse();
  ExactNumber width = (hi - lo) * inv;
  mpz_class wraps = 1;
  if (!(width > one)) {
    ExactNumber start = (one + lo - beta) * inv;
    wraps += first_return(inv.frac(), start.frac(), one - width, one);
  }
  return ((ExactNumber(wraps) + lo - beta) * inv).floor() + 1;
}

}  // namespace detail

/// D = naturals, f = RotationFrac(alpha).  Every query is exact and no
/// prefix is materialized, so index values may run far beyond the budget,
/// which counts the distinct indices actually produced.
class RotationSpace {
 public:
  explicit RotationSpace(const ExactNumber& alpha,
                         std::uint64_t budget = 1'000'000)
      : alpha_(alpha), step_(alpha.frac()), budget_(budget) {
    if (alpha.is_rational() || alpha.sign() <= 0)
      throw Error(ErrorKind::InvalidArgument,
                  "rotation needs an irrational alpha > 0");
  }

  ExactNumber element(Index k) const { return ExactNumber(k); }

  std::optional<Index> index_of(const ExactNumber& x) const {
    if (!x.is_integer() || x.sign() < 0 ||
        !x.rational_part().get_num().fits_slong_p())
      return std::nullopt;
    return x.rational_part().get_num().get_si();
  }

  ExactNumber value(Index k) {
    charge(k);
    return (ExactNumber(k) * step_).frac();
  }

  std::optional<Index> first_hit(Index from, const Window& window,
                                 std::optional<Index> limit = std::nullopt) {
    from = std::max<Index>(from, 0);
    std::optional<Index> best;
    auto offer = [&](Index k) {
      if (k >= from && (!best || k < *best)) best = k;
    };
    if (from == 0 && window.contains(ExactNumber(0))) return hit(0, limit);

    // indices >= 1 have values in the open interval (0, 1)
    const ExactNumber zero(0), one(1);
    ExactNumber lo = window.lo ? max(*window.lo, zero) : zero;
    ExactNumber hi = window.hi ? min(*window.hi, one) : one;
    Index start = std::max<Index>(from, 1);
    if (lo < hi) {
      ExactNumber beta = (ExactNumber(start) * step_).frac();
      mpz_class m = detail::first_return(step_, beta, lo, hi);
      offer(to_index(m + start));
    }
    if (window.lo && window.lo_closed)
      if (auto p = preimage(*window.lo)) offer(*p);
    if (window.hi && window.hi_closed)
      if (auto p = preimage(*window.hi)) offer(*p);
    if (!best) return std::nullopt;
    return hit(*best, limit);
  }

  /// Decided exactly over all of D, whatever the bound.
  bool in_image(const ExactNumber& y, std::optional<Index> bound) const {
    auto p = preimage(y);
    return p && (!bound || *p <= *bound);
  }

  std::optional<Index> membership_bound(Index) const { return std::nullopt; }

  /// The unique n >= 0 with frac(n alpha) = y, if any.
  std::optional<Index> preimage(const ExactNumber& y) const {
    if (y.sign() < 0 || y >= ExactNumber(1)) return std::nullopt;
    if (y.is_zero()) return 0;
    if (y.radicand() != step_.radicand()) return std::nullopt;
    mpq_class n = y.radical_part() / step_.radical_part();
    if (n.get_den() != 1 || n < 0 || !n.get_num().fits_slong_p())
      return std::nullopt;
    Index k = n.get_num().get_si();
    if (!((ExactNumber(k) * step_).frac() == y)) return std::nullopt;
    return k;
  }

  std::uint64_t generated() const { return touched_.size(); }
  std::uint64_t budget() const { return budget_; }
  const ExactNumber& alpha() const { return alpha_; }

  std::string describe() const {
    return "rot(" + alpha_.to_string() + ") on naturals";
  }

 private:
  static constexpr Index kMaxIndex = Index{1} << 62;

  static Index to_index(const mpz_class& k) {
    if (!k.fits_slong_p() || k > kMaxIndex)
      throw Error(ErrorKind::CapExceeded,
                  "index " + k.get_str() + " exceeds the 2^62 index range");
    return k.get_si();
  }

  std::optional<Index> hit(Index k, std::optional<Index> limit) {
    if (limit && k > *limit) return std::nullopt;
    charge(k);
    return k;
  }

  void charge(Index k) {
    if (touched_.count(k)) return;
    if (touched_.size() >= budget_)
      throw Error(ErrorKind::CapExceeded,
                  "budget of " + std::to_string(budget_) +
                      " generated indices exhausted at index " +
                      std::to_string(k));
    touched_.insert(k);
  }

  ExactNumber alpha_;
  ExactNumber step_;
  std::uint64_t budget_;
  std::set<Index> touched_;
};

static_assert(SearchSpace<EnumeratedSpace>);
static_assert(SearchSpace<RotationSpace>);

}  // namespace natfrag
