#pragma once

// Function oracles f: D -> K, images, growable discrete sets, and the
// perturbation operation on eps-fragments.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"
#include "natfrag/sets.hpp"

namespace natfrag {

/// n -> n*alpha - floor(n*alpha) for an irrational alpha > 0.
struct RotationFrac {
  ExactNumber alpha;
};

/// Finite lookup table; evaluation outside the keys is an error.
struct TableOracle {
  std::map<ExactNumber, ExactNumber> entries;
};

/// Any other total map, carried with a printable name.
struct CompositeOracle {
  std::string name;
  std::function<ExactNumber(const ExactNumber&)> fn;
};

class FunctionOracle {
 public:
  static FunctionOracle rotation(const ExactNumber& alpha) {
    if (alpha.is_rational() || alpha.sign() <= 0)
      throw Error(ErrorKind::InvalidArgument,
                  "rotation needs an irrational alpha > 0, got " +
                      alpha.to_string());
    return FunctionOracle(RotationFrac{alpha});
  }

  static FunctionOracle table(std::map<ExactNumber, ExactNumber> entries) {
    return FunctionOracle(TableOracle{std::move(entries)});
  }

  static FunctionOracle table(
      std::initializer_list<std::pair<const ExactNumber, ExactNumber>> init) {
    return table(std::map<ExactNumber, ExactNumber>(init));
  }

  static FunctionOracle composite(
      std::string name, std::function<ExactNumber(const ExactNumber&)> fn) {
    return FunctionOracle(CompositeOracle{std::move(name), std::move(fn)});
  }

  ExactNumber operator()(const ExactNumber& x) const {
    return std::visit(
        [&](const auto& impl) -> ExactNumber {
          using T = std::decay_t<decltype(impl)>;
          if constexpr (std::is_same_v<T, RotationFrac>) {
            return (x * impl.alpha).frac();
          } else if constexpr (std::is_same_v<T, TableOracle>) {
            auto it = impl.entries.find(x);
            if (it == impl.entries.end())
              throw Error(ErrorKind::OracleDomainError,
                          "table has no entry for " + x.to_string());
            return it->second;
          } else {
            return impl.fn(x);
          }
        },
        impl_);
  }

  const RotationFrac* as_rotation() const {
    return std::get_if<RotationFrac>(&impl_);
  }

  const TableOracle* as_table() const {
    return std::get_if<TableOracle>(&impl_);
  }

  std::string describe() const {
    return std::visit(
        [](const auto& impl) -> std::string {
          using T = std::decay_t<decltype(impl)>;
          if constexpr (std::is_same_v<T, RotationFrac>) {
            return "rot(" + impl.alpha.to_string() + ")";
          } else if constexpr (std::is_same_v<T, TableOracle>) {
            return "table(" + std::to_string(impl.entries.size()) +
                   " entries)";
          } else {
            return impl.name;
          }
        },
        impl_);
  }

 private:
  using Impl = std::variant<RotationFrac, TableOracle, CompositeOracle>;
  explicit FunctionOracle(Impl impl) : impl_(std::move(impl)) {}

  Impl impl_;
};

/// f(D) as a sorted set; duplicates collapse.
inline ValueSet image(const DiscreteSet& set, const FunctionOracle& f) {
  std::vector<ExactNumber> values;
  values.reserve(set.size());
  for (const auto& d : set) values.push_back(f(d));
  return ValueSet::from_unsorted(std::move(values));
}

/// Finite materialization of an unbounded closed discrete set.  The cap bounds
/// the number of elements that may ever be generated; running into it is an
/// error, never a silent truncation.
class GrowableSet {
 public:
  using Generator = std::function<ExactNumber(std::int64_t)>;

  GrowableSet(Generator generator, ExactNumber min_gap, std::int64_t cap)
      : generator_(std::move(generator)),
        min_gap_(std::move(min_gap)),
        cap_(cap) {
    if (min_gap_.sign() <= 0)
      throw Error(ErrorKind::InvalidArgument, "min_gap must be positive");
  }

  static GrowableSet naturals(std::int64_t cap) {
    return GrowableSet([](std::int64_t k) { return ExactNumber(k); }, 1, cap);
  }

  std::int64_t cap() const { return cap_; }
  std::int64_t materialized() const {
    return static_cast<std::int64_t>(cache_.size());
  }

  const ExactNumber& at(std::int64_t index) {
    if (index < 0) throw Error(ErrorKind::InvalidArgument, "negative index");
    while (materialized() <= index) {
      if (materialized() >= cap_)
        throw Error(ErrorKind::CapExceeded,
                    "growable set cap " + std::to_string(cap_) +
                        " reached while asking for index " +
                        std::to_string(index));
      ExactNumber next = generator_(materialized());
      if (cache_.empty() ? next.sign() < 0
                         : !(next - cache_.back() >= min_gap_))
        throw Error(ErrorKind::VerificationFailed,
                    "generator broke discreteness at index " +
                        std::to_string(materialized()));
      cache_.push_back(std::move(next));
    }
    return cache_[static_cast<std::size_t>(index)];
  }

  /// The first `count` elements.
  DiscreteSet prefix(std::int64_t count) {
    if (count > 0) at(count - 1);
    return DiscreteSet(std::vector<ExactNumber>(cache_.begin(),
                                                cache_.begin() + count));
  }

 private:
  Generator generator_;
  ExactNumber min_gap_;
  std::int64_t cap_;
  std::vector<ExactNumber> cache_;
};

/// Shortest prefix satisfying `predicate`.
template <class Predicate>
DiscreteSet grow(GrowableSet& set, Predicate&& predicate) {
  for (std::int64_t count = 1;; ++count) {
    DiscreteSet prefix = set.prefix(count);
    if (predicate(prefix)) return prefix;
  }
}

/// {d + shift(d) : d in D} for an eps-fragment D up to `a`; the result is a
/// 3*eps-fragment up to `a` with the order of D preserved.
inline ValueSet perturb(const ValueSet& set, const FunctionOracle& shift,
                        const ExactNumber& eps, const ExactNumber& a) {
  if (eps.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (!(eps < ExactNumber::fraction(1, 4)))
    throw Error(ErrorKind::EpsTooLarge, "perturb needs eps < 1/4");
  if (set.empty()) throw Error(ErrorKind::EmptySet, "perturb of {}");
  if (!is_eps_fragment(set, eps, a))
    throw Error(ErrorKind::PreconditionFailed,
                set.to_string() + " is not an eps-fragment up to " +
                    a.to_string());
  std::vector<ExactNumber> moved;
  moved.reserve(set.size());
  for (const auto& d : set) {
    ExactNumber s = shift(d);
    if (!(abs(s) < eps))
      throw Error(ErrorKind::ShiftTooLarge,
                  "|shift(" + d.to_string() + ")| = " + abs(s).to_string());
    moved.push_back(d + s);
  }
  for (std::size_t i = 1; i < moved.size(); ++i)
    if (!(moved[i - 1] < moved[i]))
      throw Error(ErrorKind::VerificationFailed,
                  "perturbation reordered " + set[i - 1].to_string() +
                      " and " + set[i].to_string());
  ValueSet result(std::move(moved));
  ExactNumber triple = eps * ExactNumber(3);
  if (!is_eps_fragment(result, triple, a))
    throw Error(ErrorKind::VerificationFailed,
                result.to_string() + " fails the 3*eps check");
  return result;
}

}  // namespace natfrag
