#pragma once

// Finite ordered sets of exact numbers and the natural-fragment calculus.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"

namespace natfrag {

/// Strictly increasing finite sequence of exact numbers.  With NonNegative
/// set every element must be >= 0 (the pseudo-finite D of the construction);
/// without it the set may hold arbitrary values (images, perturbed sets).
template <bool NonNegative>
class BasicSet {
 public:
  BasicSet() = default;

  explicit BasicSet(std::vector<ExactNumber> elements)
      : elements_(std::move(elements)) {
    for (std::size_t i = 1; i < elements_.size(); ++i)
      if (!(elements_[i - 1] < elements_[i]))
        throw Error(ErrorKind::InvalidArgument,
                    "set elements must be strictly increasing");
    if constexpr (NonNegative) {
      if (!elements_.empty() && elements_.front().sign() < 0)
        throw Error(ErrorKind::InvalidArgument,
                    "discrete set elements must be non-negative");
    }
  }

  BasicSet(std::initializer_list<ExactNumber> elements)
      : BasicSet(std::vector<ExactNumber>(elements)) {}

  /// Sorts and collapses duplicates.
  static BasicSet from_unsorted(std::vector<ExactNumber> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return BasicSet(std::move(values));
  }

  template <bool Other>
    requires(Other != NonNegative)
  explicit(NonNegative) BasicSet(const BasicSet<Other>& other)
      : BasicSet(std::vector<ExactNumber>(other.begin(), other.end())) {}

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const ExactNumber& operator[](std::size_t i) const { return elements_[i]; }
  const ExactNumber& min() const { return checked().front(); }
  const ExactNumber& max() const { return checked().back(); }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  std::span<const ExactNumber> elements() const { return elements_; }

  std::optional<std::size_t> index_of(const ExactNumber& x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || !(*it == x)) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  bool contains(const ExactNumber& x) const { return index_of(x).has_value(); }

  friend bool operator==(const BasicSet&, const BasicSet&) = default;

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (i) out += ",";
      out += elements_[i].to_string();
    }
    return out + "}";
  }

  /// Parses "{x, y, ...}" (braces optional).
  static BasicSet parse(std::string_view text) {
    std::string body;
    for (char ch : text)
      if (ch != '{' && ch != '}') body.push_back(ch);
    std::vector<ExactNumber> values;
    std::size_t start = 0;
    bool all_blank = body.find_first_not_of(" \t\n") == std::string::npos;
    if (all_blank) return BasicSet();
    while (start <= body.size()) {
      std::size_t comma = body.find(',', start);
      if (comma == std::string::npos) comma = body.size();
      values.push_back(ExactNumber::parse(body.substr(start, comma - start)));
      start = comma + 1;
    }
    return BasicSet(std::move(values));
  }

 private:
  const std::vector<ExactNumber>& checked() const {
    if (elements_.empty()) throw Error(ErrorKind::EmptySet, "min/max of {}");
    return elements_;
  }

  std::vector<ExactNumber> elements_;
};

using DiscreteSet = BasicSet<true>;
using ValueSet = BasicSet<false>;

/// Successor of d in D: the least element above d.
template <bool N>
ExactNumber successor(const BasicSet<N>& set, const ExactNumber& d) {
  auto i = set.index_of(d);
  if (!i) throw Error(ErrorKind::NotAMember, d.to_string() + " not in set");
  if (*i + 1 == set.size())
    throw Error(ErrorKind::NoSuccessor, d.to_string() + " is the maximum");
  return set[*i + 1];
}

/// {e in D : e <= bound}
template <bool N>
BasicSet<N> restrict(const BasicSet<N>& set, const ExactNumber& bound) {
  auto end = std::upper_bound(set.begin(), set.end(), bound);
  return BasicSet<N>(std::vector<ExactNumber>(set.begin(), end));
}

/// min over d in D of |d - a|
template <bool N>
ExactNumber dist(const BasicSet<N>& set, const ExactNumber& a) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "dist to empty set");
  auto it = std::lower_bound(set.begin(), set.end(), a);
  std::optional<ExactNumber> best;
  if (it != set.end()) best = *it - a;
  if (it != set.begin()) {
    ExactNumber below = a - *std::prev(it);
    if (!best || below < *best) best = below;
  }
  return *best;
}

/// Empty, or contains 0 with every consecutive gap exactly 1.
template <bool N>
bool is_natural_fragment(const BasicSet<N>& set) {
  if (set.empty()) return true;
  if (!set.min().is_zero()) return false;
  for (std::size_t i = 1; i < set.size(); ++i)
    if (!(set[i] - set[i - 1] == ExactNumber(1))) return false;
  return true;
}

enum class Containment { FirstSubSecond, SecondSubFirst, Equal };

/// Natural fragments are totally ordered by inclusion.
inline Containment compare_fragments(const DiscreteSet& d,
                                     const DiscreteSet& e) {
  if (!is_natural_fragment(d) || !is_natural_fragment(e))
    throw Error(ErrorKind::NotAFragment, "compare_fragments input");
  bool d_in_e = std::includes(e.begin(), e.end(), d.begin(), d.end());
  bool e_in_d = std::includes(d.begin(), d.end(), e.begin(), e.end());
  if (d_in_e && e_in_d) return Containment::Equal;
  if (d_in_e) return Containment::FirstSubSecond;
  if (e_in_d) return Containment::SecondSubFirst;
  // unreachable for genuine fragments
  throw Error(ErrorKind::VerificationFailed,
              "fragments " + d.to_string() + " and " + e.to_string() +
                  " are incomparable");
}

inline DiscreteSet union_fragments(std::span<const DiscreteSet> family) {
  std::vector<ExactNumber> all;
  for (const auto& member : family) {
    if (!is_natural_fragment(member))
      throw Error(ErrorKind::NotAFragment, member.to_string());
    all.insert(all.end(), member.begin(), member.end());
  }
  auto result = DiscreteSet::from_unsorted(std::move(all));
  if (!is_natural_fragment(result))
    throw Error(ErrorKind::VerificationFailed,
                "union is not a natural fragment: " + result.to_string());
  return result;
}

/// Gaps within eps of 1, and both 0 and `a` within eps of the set; all
/// inequalities strict.
template <bool N>
bool is_eps_fragment(const BasicSet<N>& set, const ExactNumber& eps,
                     const ExactNumber& a) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "is_eps_fragment of {}");
  if (eps.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  const ExactNumber one(1);
  for (std::size_t i = 1; i < set.size(); ++i)
    if (!(abs(set[i] - set[i - 1] - one) < eps)) return false;
  return dist(set, ExactNumber(0)) < eps && dist(set, a) < eps;
}

}  // namespace natfrag
