#pragma once

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "natfrag/natfrag.hpp"

namespace natfrag::testing {

inline ExactNumber N(const char* text) { return ExactNumber::parse(text); }
inline ExactNumber Q(long p, long q) { return ExactNumber::fraction(p, q); }
inline ExactNumber phi() { return golden_ratio(); }

inline DiscreteSet D(std::initializer_list<ExactNumber> xs) {
  return DiscreteSet(std::vector<ExactNumber>(xs));
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no natfrag::Error thrown";
  return ErrorKind::VerificationFailed;
}

// Independent fragment checker: recomputes every distance by hand.
inline bool fragment_by_hand(const std::vector<ExactNumber>& ys,
                             const ExactNumber& eps, long a) {
  if (ys.empty()) return false;
  auto close = [&](const ExactNumber& target) {
    for (const auto& y : ys) {
      ExactNumber d = y - target;
      if (d.sign() < 0) d = -d;
      if (d < eps) return true;
    }
    return false;
  };
  for (std::size_t i = 1; i < ys.size(); ++i) {
    ExactNumber gap = ys[i] - ys[i - 1] - ExactNumber(1);
    if (gap.sign() < 0) gap = -gap;
    if (!(gap < eps)) return false;
  }
  return close(ExactNumber(0)) && close(ExactNumber(a));
}

inline std::vector<ExactNumber> values(const DiscreteSet& s) {
  return {s.begin(), s.end()};
}

}  // namespace natfrag::testing
