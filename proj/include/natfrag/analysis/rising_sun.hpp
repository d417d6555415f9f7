#pragma once

// The rising sun set E = {x in (a, b) : g(y) > G(x) for some y in (x, b]} of a
// PL function, where G(x) = max(g(x), limsup_{y -> x} g(y)), and the measure
// bound it gives for monotone f with g = f - c x.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "natfrag/analysis/measure.hpp"
#include "natfrag/analysis/pl_function.hpp"
#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"

namespace natfrag {

struct SunComponent {
  ExactNumber lo;
  ExactNumber hi;
  ExactNumber g_lo_right;  // right limit of g at lo
  ExactNumber G_hi;        // G(hi)
  bool shadow_ok = false;  // g_lo_right <= G_hi
};

struct RisingSun {
  std::vector<SunComponent> components;  // maximal, left to right

  bool contains(const ExactNumber& x) const {
    for (const auto& c : components)
      if (c.lo < x && x < c.hi) return true;
    return false;
  }

  ExactNumber measure() const {
    ExactNumber total(0);
    for (const auto& c : components) total += c.hi - c.lo;
    return total;
  }

  FiniteUnion as_union() const {
    FiniteUnion out;
    for (const auto& c : components)
      out.pieces.push_back(Interval::open(c.lo, c.hi));
    return out;
  }

  std::string to_string() const {
    if (components.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i) out += " u ";
      out += "(" + components[i].lo.to_string() + ", " +
             components[i].hi.to_string() + ")";
    }
    return out;
  }
};

/// Right-to-left sweep.  T_i = sup g on [x_i, b] and H_{i+1} = sup g on
/// (x_i, b] restricted to what lies beyond piece i, i.e. max(L_{i+1},
/// T_{i+1}).  Inside piece i, G is the linear piece itself, so E meets the
/// piece where the line is below H_{i+1}.  An interior breakpoint x_i is in
/// E iff H_{i+1} > max(L_i, R_i).
inline RisingSun rising_sun(const PLFunction& g) {
  const auto& p = g.breakpoints();
  const std::size_t k = p.size() - 1;
  std::vector<ExactNumber> H(p.size());  // H[i] used for i >= 1
  ExactNumber T = p[k].right;
  for (std::size_t i = k; i >= 1; --i) {
    H[i] = max(p[i].left, T);
    T = max(p[i - 1].right, H[i]);
  }

  // open sub-interval of each piece, and membership of interior breakpoints
  std::vector<std::optional<std::pair<ExactNumber, ExactNumber>>> part(k);
  for (std::size_t i = 0; i < k; ++i) {
    const ExactNumber& target = H[i + 1];
    ExactNumber s = g.slope(i);
    ExactNumber lo = p[i].x, hi = p[i + 1].x;
    if (s.is_zero()) {
      if (p[i].right < target) part[i] = {{lo, hi}};
      continue;
    }
    ExactNumber cross = p[i].x + (target - p[i].right) / s;
    if (s.sign() > 0) {
      ExactNumber end = min(cross, hi);
      if (lo < end) part[i] = {{lo, end}};
    } else {
      ExactNumber start = max(cross, lo);
      if (start < hi) part[i] = {{start, hi}};
    }
  }
  std::vector<bool> point(p.size(), false);
  for (std::size_t i = 1; i < k; ++i)
    point[i] = H[i + 1] > p[i].upper();

  // openness: a breakpoint in E must be flanked by E on both sides
  for (std::size_t i = 1; i < k; ++i) {
    if (!point[i]) continue;
    bool left_ok = part[i - 1] && part[i - 1]->second == p[i].x;
    bool right_ok = part[i] && part[i]->first == p[i].x;
    if (!left_ok || !right_ok)
      throw Error(ErrorKind::VerificationFailed,
                  "rising sun set is not open at " + p[i].x.to_string());
  }

  RisingSun out;
  std::optional<std::pair<ExactNumber, ExactNumber>> open;
  for (std::size_t i = 0; i < k; ++i) {
    if (!part[i]) continue;
    if (open && open->second == part[i]->first && point[i])
      open->second = part[i]->second;
    else {
      if (open) out.components.push_back({open->first, open->second, {}, {}});
      open = part[i];
    }
  }
  if (open) out.components.push_back({open->first, open->second, {}, {}});

  for (auto& c : out.components) {
    c.g_lo_right = g(c.lo);
    c.G_hi = g.upper(c.hi);
    c.shadow_ok = c.g_lo_right <= c.G_hi;
    if (!c.shadow_ok)
      throw Error(ErrorKind::VerificationFailed,
                  "shadow inequality fails on (" + c.lo.to_string() + ", " +
                      c.hi.to_string() + "): g(a'+) = " +
                      c.g_lo_right.to_string() +
                      " > G(b') = " + c.G_hi.to_string());
  }
  return out;
}

struct SunComponentBound {
  ExactNumber lo;
  ExactNumber hi;
  ExactNumber lhs;  // c (hi - lo)
  ExactNumber rhs;  // f(hi+) - f(lo+)
  bool ok = false;
};

struct SunMeasureBound {
  RisingSun E;
  ExactNumber mu;
  ExactNumber bound;  // (f(b) - f(a)) / c
  std::vector<SunComponentBound> per_component;
};

/// Rising sun of g = f - c x for monotone f, with mu(E_c) <= (f(b)-f(a))/c
/// and c (b_k - a_k) <= f(b_k+) - f(a_k+) on every component.
inline SunMeasureBound sun_measure_bound(const PLFunction& f,
                                         const ExactNumber& c) {
  if (c.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "c must be > 0");
  if (!f.is_monotone())
    throw Error(ErrorKind::NotMonotone, "sun_measure_bound needs monotone f");
  SunMeasureBound r;
  r.E = rising_sun(f.plus_linear(-c, ExactNumber(0)));
  r.mu = r.E.measure();
  r.bound = (f(f.hi()) - f(f.lo())) / c;
  for (const auto& comp : r.E.components) {
    SunComponentBound b{comp.lo, comp.hi, c * (comp.hi - comp.lo),
                        f(comp.hi) - f(comp.lo)};
    b.ok = b.lhs <= b.rhs;
    if (!b.ok)
      throw Error(ErrorKind::VerificationFailed,
                  "c(b'-a') = " + b.lhs.to_string() + " > f(b'+)-f(a'+) = " +
                      b.rhs.to_string() + " on (" + comp.lo.to_string() +
                      ", " + comp.hi.to_string() + ")");
    r.per_component.push_back(std::move(b));
  }
  if (!(r.mu <= r.bound))
    throw Error(ErrorKind::VerificationFailed,
                "mu(E_c) = " + r.mu.to_string() + " exceeds " +
                    r.bound.to_string());
  return r;
}

}  // namespace natfrag
