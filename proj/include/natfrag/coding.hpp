#pragma once

// Coding of finite data by natural numbers and by field elements: Cantor
// pairing, the Goedel beta function, continued-fraction codes, the
// interleaved code for finite families of reals, primitive recursion and
// finite sums along the successor structure.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"
#include "natfrag/oracle.hpp"
#include "natfrag/sets.hpp"

namespace natfrag {

using NatSeq = std::vector<mpz_class>;

inline std::string to_string(const NatSeq& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i].get_str();
  }
  return out + "]";
}

namespace detail {

inline void require_natural(const mpz_class& x, const char* what) {
  if (x < 0)
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " must be a natural number, got " +
                    x.get_str());
}

}  // namespace detail

// ---- pairing -------------------------------------------------------------

inline mpz_class theta(const mpz_class& m, const mpz_class& n) {
  detail::require_natural(m, "theta argument");
  detail::require_natural(n, "theta argument");
  mpz_class w = m + n;
  return w * (w + 1) / 2 + n;
}

inline std::pair<mpz_class, mpz_class> theta_inv(const mpz_class& k) {
  detail::require_natural(k, "theta code");
  mpz_class disc = 8 * k + 1;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  mpz_class w = (root - 1) / 2;
  mpz_class n = k - w * (w + 1) / 2;
  return {w - n, n};
}

// ---- Goedel beta ---------------------------------------------------------

/// beta(k, i) = c mod (1 + (i + 1) d) where k = theta(c, d).
inline mpz_class beta(const mpz_class& k, const mpz_class& i) {
  detail::require_natural(i, "beta position");
  auto [c, d] = theta_inv(k);
  mpz_class modulus = 1 + (i + 1) * d;
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

/// d is the least multiple of lcm(1, ..., n) exceeding every entry (which
/// makes the moduli 1 + (i + 1) d pairwise coprime), c the least CRT
/// solution.
inline mpz_class beta_encode(const NatSeq& s) {
  mpz_class step = 1;
  for (std::size_t j = 2; j <= s.size(); ++j) {
    mpz_class jj = static_cast<unsigned long>(j);
    mpz_lcm(step.get_mpz_t(), step.get_mpz_t(), jj.get_mpz_t());
  }
  mpz_class top = 0;
  for (const auto& x : s) {
    detail::require_natural(x, "sequence entry");
    if (x > top) top = x;
  }
  // 1 + d > top suffices for every modulus
  mpz_class d = (top / step + 1) * step;
  mpz_class c = 0, product = 1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    mpz_class modulus = 1 + mpz_class(static_cast<unsigned long>(i + 1)) * d;
    // c' = c + product * t with t = (s_i - c) / product mod modulus
    mpz_class inv, t, diff = s[i] - c;
    mpz_invert(inv.get_mpz_t(), product.get_mpz_t(), modulus.get_mpz_t());
    t = diff * inv;
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t());
    c += product * t;
    product *= modulus;
  }
  return theta(c, d);
}

// ---- continued fractions -------------------------------------------------

/// A field element together with the number of coded digits when that
/// number is part of the code.
struct CodedReal {
  ExactNumber value;
  std::optional<std::size_t> length;
};

/// The first `upto` continued-fraction digits of a (a_0 may be negative).
inline NatSeq cf_digits(const ExactNumber& a, std::size_t upto) {
  NatSeq out;
  ExactNumber x = a;
  while (out.size() < upto) {
    mpz_class digit = x.floor();
    out.push_back(digit);
    ExactNumber rest = x - ExactNumber(digit);
    if (rest.is_zero()) {
      if (out.size() < upto)
        throw Error(ErrorKind::ExpansionTerminated,
                    a.to_string() + " has only " +
                        std::to_string(out.size()) + " digits");
      break;
    }
    x = rest.inverse();
  }
  return out;
}

/// The whole (finite) expansion of a rational.
inline NatSeq cf_expansion(const ExactNumber& a) {
  if (!a.is_rational())
    throw Error(ErrorKind::InvalidArgument,
                a.to_string() + " has an infinite expansion");
  NatSeq out;
  mpz_class p = a.rational_part().get_num(), q = a.rational_part().get_den();
  while (q != 0) {
    mpz_class digit, r;
    mpz_fdiv_qr(digit.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(),
                q.get_mpz_t());
    out.push_back(digit);
    p = q;
    q = r;
  }
  return out;
}

/// [d_0; d_1, ..., d_k] evaluated exactly.
inline ExactNumber cf_value(const NatSeq& digits) {
  if (digits.empty()) return ExactNumber(0);
  mpq_class x = digits.back();
  for (std::size_t i = digits.size() - 1; i-- > 0;) {
    x = digits[i] + 1 / x;
    x.canonicalize();
  }
  return ExactNumber(x);
}

/// Entry n is stored as digit n + 1, so every digit is at least 1.
inline CodedReal cf_encode(const NatSeq& s) {
  NatSeq digits;
  digits.reserve(s.size());
  for (const auto& x : s) {
    detail::require_natural(x, "sequence entry");
    digits.push_back(x + 1);
  }
  return {cf_value(digits), s.size()};
}

inline NatSeq cf_decode(const CodedReal& code) {
  if (code.length && *code.length == 0) return {};
  NatSeq digits = cf_expansion(code.value);
  // [.., x, 1] and [.., x + 1] are the same number
  if (code.length && digits.size() + 1 == *code.length &&
      digits.back() > 1) {
    digits.back() -= 1;
    digits.push_back(1);
  }
  if (code.length && digits.size() != *code.length)
    throw Error(ErrorKind::InvalidArgument,
                code.value.to_string() + " does not code " +
                    std::to_string(*code.length) + " entries");
  NatSeq out;
  out.reserve(digits.size());
  for (const auto& d : digits) {
    if (d < 1)
      throw Error(ErrorKind::InvalidArgument,
                  code.value.to_string() + " has a digit below 1");
    out.push_back(d - 1);
  }
  return out;
}

// ---- families of reals ---------------------------------------------------

/// Row i of the family sits at positions theta(i, j): digit j of the row is
/// stored as digit + 1, followed by a 0 terminator.  Unused positions are 0.
/// Rows must be non-negative rationals.
inline CodedReal delta_encode(const std::vector<ExactNumber>& family) {
  NatSeq cells;
  auto put = [&](std::size_t i, std::size_t j, const mpz_class& v) {
    mpz_class pos = theta(static_cast<unsigned long>(i),
                          static_cast<unsigned long>(j));
    std::size_t at = pos.get_ui();
    if (cells.size() <= at) cells.resize(at + 1, 0);
    cells[at] = v;
  };
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].sign() < 0)
      throw Error(ErrorKind::InvalidArgument,
                  "family members must be non-negative");
    NatSeq digits = cf_expansion(family[i]);
    for (std::size_t j = 0; j < digits.size(); ++j) put(i, j, digits[j] + 1);
    put(i, digits.size(), 0);
  }
  return cf_encode(cells);
}

/// Row i, reading at most j_upto digits.
inline CodedReal delta(const CodedReal& code, std::size_t i,
                       std::size_t j_upto) {
  NatSeq cells = cf_decode(code);
  NatSeq digits;
  for (std::size_t j = 0; j < j_upto; ++j) {
    mpz_class pos = theta(static_cast<unsigned long>(i),
                          static_cast<unsigned long>(j));
    if (!pos.fits_ulong_p() || pos.get_ui() >= cells.size())
      throw Error(ErrorKind::InsufficientDigits,
                  "row " + std::to_string(i) + " digit " + std::to_string(j) +
                      " is beyond the " + std::to_string(cells.size()) +
                      " coded cells");
    const mpz_class& v = cells[pos.get_ui()];
    if (v == 0) {
      if (j == 0)
        throw Error(ErrorKind::InsufficientDigits,
                    "row " + std::to_string(i) + " is not coded");
      break;
    }
    digits.push_back(v - 1);
  }
  return {cf_value(digits), digits.size()};
}

// ---- recursion and sums --------------------------------------------------

/// f(a, 0) = c(a), f(a, i + 1) = g(a, f(a, i)).
template <class A, class V>
V primitive_recursion(const std::function<V(const A&)>& c,
                      const std::function<V(const A&, const V&)>& g,
                      const A& a, unsigned long i) {
  V v = c(a);
  for (unsigned long k = 0; k < i; ++k) v = g(a, v);
  return v;
}

/// The orbit f(a, 0), ..., f(a, i) of a natural-valued recursion.
template <class A>
NatSeq recursion_orbit(const std::function<mpz_class(const A&)>& c,
                       const std::function<mpz_class(const A&,
                                                     const mpz_class&)>& g,
                       const A& a, unsigned long i) {
  NatSeq orbit{c(a)};
  for (unsigned long k = 0; k < i; ++k) orbit.push_back(g(a, orbit.back()));
  return orbit;
}

/// A k with beta(k, j) = f(a, j) for every j <= i, checked before returning.
template <class A>
mpz_class recursion_certificate(
    const std::function<mpz_class(const A&)>& c,
    const std::function<mpz_class(const A&, const mpz_class&)>& g, const A& a,
    unsigned long i) {
  NatSeq orbit = recursion_orbit(c, g, a, i);
  mpz_class k = beta_encode(orbit);
  for (std::size_t j = 0; j < orbit.size(); ++j)
    if (beta(k, static_cast<unsigned long>(j)) != orbit[j])
      throw Error(ErrorKind::VerificationFailed,
                  "certificate fails at position " + std::to_string(j));
  return k;
}

/// i! by a single-variable recursion on the packed state theta(k, k!).
inline mpz_class factorial_by_recursion(unsigned long i) {
  std::function<mpz_class(const int&)> c = [](const int&) {
    return theta(0, 1);
  };
  std::function<mpz_class(const int&, const mpz_class&)> g =
      [](const int&, const mpz_class& state) {
        auto [k, v] = theta_inv(state);
        return theta(k + 1, v * (k + 1));
      };
  return theta_inv(primitive_recursion(c, g, 0, i)).second;
}

/// Sum of h over D along the successor structure: H(min D) = 0,
/// H(s(d)) = H(d) + h(d), and the sum is H(max D) + h(max D).
template <bool N>
ExactNumber discrete_sum(const BasicSet<N>& set, const FunctionOracle& h) {
  ExactNumber running(0);
  for (const auto& d : set) {
    ExactNumber term = h(d);
    if (term.sign() < 0)
      throw Error(ErrorKind::NegativeSummand,
                  "h(" + d.to_string() + ") = " + term.to_string());
    running += term;
  }
  return running;
}

struct PermutedSum {
  ExactNumber direct;
  ExactNumber permuted;
  bool equal = false;
};

/// Compares the sum of h with the sum of h composed with a bijection sigma
/// of D.
template <bool N>
PermutedSum permuted_sum_check(const BasicSet<N>& set, const FunctionOracle& h,
                               const FunctionOracle& sigma) {
  std::vector<ExactNumber> moved;
  for (const auto& d : set) {
    ExactNumber to = sigma(d);
    if (!set.contains(to))
      throw Error(ErrorKind::InvalidArgument,
                  "sigma maps " + d.to_string() + " outside D");
    moved.push_back(to);
  }
  if (BasicSet<N>::from_unsorted(moved).size() != set.size())
    throw Error(ErrorKind::InvalidArgument, "sigma is not injective on D");
  FunctionOracle composed = FunctionOracle::composite(
      "h o sigma", [h, sigma](const ExactNumber& x) { return h(sigma(x)); });
  PermutedSum out{discrete_sum(set, h), discrete_sum(set, composed)};
  out.equal = out.direct == out.permuted;
  return out;
}

}  // namespace natfrag
