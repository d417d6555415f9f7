#pragma once

// Dini derivatives, jump sets, inverses and a mesh-scale differentiability
// report for PL functions with jumps.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "natfrag/analysis/pl_function.hpp"
#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"
#include "natfrag/sets.hpp"

namespace natfrag {

/// An exact number or one of the two infinities.
struct Extended {
  ExactNumber value;
  int infinity = 0;  // -1, 0 or +1

  static Extended finite(ExactNumber v) { return {std::move(v), 0}; }
  static Extended pos_inf() { return {ExactNumber(0), 1}; }
  static Extended neg_inf() { return {ExactNumber(0), -1}; }

  bool is_finite() const { return infinity == 0; }

  friend bool operator==(const Extended& x, const Extended& y) {
    return x.infinity == y.infinity && (x.infinity != 0 || x.value == y.value);
  }

  std::string to_string() const {
    if (infinity > 0) return "+inf";
    if (infinity < 0) return "-inf";
    return value.to_string();
  }
};

/// (lower left, upper left, lower right, upper right)
struct DiniDerivatives {
  Extended lower_left;
  Extended upper_left;
  Extended lower_right;
  Extended upper_right;

  bool differentiable() const {
    return lower_left.is_finite() && lower_left == upper_left &&
           upper_left == lower_right && lower_right == upper_right;
  }

  std::string to_string() const {
    return "(" + lower_left.to_string() + ", " + upper_left.to_string() +
           ", " + lower_right.to_string() + ", " + upper_right.to_string() +
           ")";
  }
};

/// With f(x) the right limit, the right quotients tend to the right slope.
/// The left quotients (f(x) - f(x - h))/h tend to the left slope when f is
/// continuous at x and to +inf or -inf when it jumps up or down.
inline DiniDerivatives dini(const PLFunction& f, const ExactNumber& x) {
  if (!(f.lo() < x && x < f.hi()))
    throw Error(ErrorKind::OutOfDomain,
                x.to_string() + " is not interior to [" + f.lo().to_string() +
                    ", " + f.hi().to_string() + "]");
  const auto& p = f.breakpoints();
  auto bp = f.breakpoint_at(x);
  if (!bp) {
    std::size_t i = 0;
    while (p[i + 1].x < x) ++i;
    Extended s = Extended::finite(f.slope(i));
    return {s, s, s, s};
  }
  std::size_t i = *bp;
  Extended right = Extended::finite(f.slope(i));
  Extended left = Extended::finite(f.slope(i - 1));
  int jump = p[i].jump().sign();
  if (jump > 0) left = Extended::pos_inf();
  if (jump < 0) left = Extended::neg_inf();
  return {left, left, right, right};
}

/// Interior breakpoints whose jump exceeds eps.
inline ValueSet disc_set(const PLFunction& f, const ExactNumber& eps) {
  if (!f.is_monotone())
    throw Error(ErrorKind::NotMonotone, "disc_set needs a monotone function");
  if (eps.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  std::vector<ExactNumber> out;
  const auto& p = f.breakpoints();
  for (std::size_t i = 1; i + 1 < p.size(); ++i)
    if (p[i].jump() > eps) out.push_back(p[i].x);
  return ValueSet(std::move(out));
}

/// F(y) = sup{t : f(t) <= y} on [f(a), f(b)] for strictly increasing f.
/// A jump of f at x becomes a flat stretch of F at height x.  F o f = id is
/// checked at every breakpoint and at the midpoint of every piece.
inline PLFunction monotone_inverse(const PLFunction& f) {
  if (!f.is_strictly_increasing())
    throw Error(ErrorKind::NotStrictlyIncreasing,
                "monotone_inverse needs a strictly increasing function");
  const auto& p = f.breakpoints();
  std::vector<std::pair<ExactNumber, ExactNumber>> yx{{p[0].right, p[0].x}};
  for (std::size_t i = 1; i < p.size(); ++i) {
    yx.push_back({p[i].left, p[i].x});
    if (p[i].left < p[i].right) yx.push_back({p[i].right, p[i].x});
  }
  PLFunction F = PLFunction::through(yx);
  auto check = [&](const ExactNumber& x) {
    ExactNumber back = F(f(x));
    if (!(back == x))
      throw Error(ErrorKind::VerificationFailed,
                  "F(f(" + x.to_string() + ")) = " + back.to_string());
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    check(p[i].x);
    if (i + 1 < p.size()) check(midpoint(p[i].x, p[i + 1].x));
  }
  return F;
}

struct MeshCell {
  ExactNumber lo;
  ExactNumber hi;
  ExactNumber witness;
  DiniDerivatives derivatives;
  bool ok = false;
};

struct DifferentiabilityReport {
  std::vector<MeshCell> cells;
  std::vector<std::pair<ExactNumber, DiniDerivatives>> non_differentiable;
  bool all_cells_ok = true;
};

/// Splits the domain into cells of width `mesh` (the last one possibly
/// shorter).  In each cell the witness is the midpoint of the widest gap
/// between breakpoints, which is never a breakpoint, so all four Dini values
/// there are the slope of its piece.  Interior breakpoints where the Dini
/// values disagree or are infinite are listed separately.
inline DifferentiabilityReport differentiability_report(
    const PLFunction& f, const ExactNumber& mesh) {
  if (mesh.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "mesh must be positive");
  DifferentiabilityReport r;
  const auto& p = f.breakpoints();
  std::size_t next_bp = 0;
  for (ExactNumber lo = f.lo(); lo < f.hi();) {
    ExactNumber hi = min(lo + mesh, f.hi());
    std::vector<ExactNumber> cuts{lo};
    while (next_bp < p.size() && p[next_bp].x <= lo) ++next_bp;
    for (std::size_t j = next_bp; j < p.size() && p[j].x < hi; ++j)
      cuts.push_back(p[j].x);
    cuts.push_back(hi);
    std::size_t widest = 0;
    for (std::size_t j = 1; j + 1 < cuts.size(); ++j)
      if (cuts[j + 1] - cuts[j] > cuts[widest + 1] - cuts[widest]) widest = j;
    MeshCell cell{lo, hi, midpoint(cuts[widest], cuts[widest + 1]), {}};
    cell.derivatives = dini(f, cell.witness);
    cell.ok = cell.derivatives.differentiable();
    r.all_cells_ok = r.all_cells_ok && cell.ok;
    r.cells.push_back(std::move(cell));
    lo = hi;
  }
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    DiniDerivatives d = dini(f, p[i].x);
    if (!d.differentiable()) r.non_differentiable.push_back({p[i].x, d});
  }
  return r;
}

inline std::string format_report(const DifferentiabilityReport& r) {
  std::ostringstream out;
  for (const auto& c : r.cells)
    out << "cell [" << c.lo << ", " << c.hi << "] witness=" << c.witness
        << " dini=" << c.derivatives.to_string()
        << (c.ok ? " ok" : " FAIL") << "\n";
  for (const auto& [x, d] : r.non_differentiable)
    out << "non-differentiable x=" << x << " dini=" << d.to_string() << "\n";
  return out.str();
}

}  // namespace natfrag
