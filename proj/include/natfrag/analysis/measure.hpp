#pragma once

// Lengths of finitely presented subsets of the line: cover mass (overlaps
// counted), outer measure of finite unions of intervals and points, the
// subadditivity slack, and a bisection search for intervals where a set is
// denser than a given ratio.

#include <algorithm>
#include <cctype>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"

namespace natfrag {

/// Interval with open or closed ends; an end may be infinite (nullopt).
/// lo == hi with both ends closed is a single point.
struct Interval {
  std::optional<ExactNumber> lo;
  std::optional<ExactNumber> hi;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval open(ExactNumber a, ExactNumber b) {
    return {std::move(a), std::move(b), false, false};
  }
  static Interval closed(ExactNumber a, ExactNumber b) {
    return {std::move(a), std::move(b), true, true};
  }
  static Interval point(const ExactNumber& x) { return closed(x, x); }

  bool bounded() const { return lo && hi; }

  bool empty() const {
    if (!bounded()) return false;
    if (*lo < *hi) return false;
    return !(*lo == *hi && lo_closed && hi_closed);
  }

  ExactNumber length() const {
    if (!bounded())
      throw Error(ErrorKind::UnboundedInterval, to_string());
    return empty() ? ExactNumber(0) : *hi - *lo;
  }

  std::string to_string() const {
    std::string out = lo_closed ? "[" : "(";
    out += lo ? lo->to_string() : "-inf";
    out += ", ";
    out += hi ? hi->to_string() : "+inf";
    out += hi_closed ? "]" : ")";
    return out;
  }
};

/// A finite family of open intervals.
struct IntervalCover {
  std::vector<Interval> intervals;
};

/// Sum of the lengths, overlaps counted with multiplicity.
inline ExactNumber cover_mass(const IntervalCover& cover) {
  ExactNumber total(0);
  for (const auto& in : cover.intervals) {
    if (!in.bounded()) throw Error(ErrorKind::UnboundedInterval, in.to_string());
    if (!(*in.lo < *in.hi))
      throw Error(ErrorKind::InvalidArgument,
                  "cover intervals must be non-empty: " + in.to_string());
    total += *in.hi - *in.lo;
  }
  return total;
}

/// A finite union of intervals and points.
struct FiniteUnion {
  std::vector<Interval> pieces;

  FiniteUnion() = default;
  FiniteUnion(std::initializer_list<Interval> list) : pieces(list) {}
  explicit FiniteUnion(std::vector<Interval> list) : pieces(std::move(list)) {}

  std::string to_string() const {
    if (pieces.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i) out += " u ";
      out += pieces[i].to_string();
    }
    return out;
  }
};

/// Closures of the non-empty pieces, merged where they overlap or touch.
/// Boundaries are finite, so the total length of the result is the measure.
inline std::vector<std::pair<ExactNumber, ExactNumber>> normalized_hull(
    const FiniteUnion& X) {
  std::vector<std::pair<ExactNumber, ExactNumber>> spans;
  for (const auto& p : X.pieces) {
    if (!p.bounded()) throw Error(ErrorKind::UnboundedInterval, p.to_string());
    if (!p.empty()) spans.push_back({*p.lo, *p.hi});
  }
  std::sort(spans.begin(), spans.end());
  std::vector<std::pair<ExactNumber, ExactNumber>> out;
  for (auto& s : spans) {
    if (!out.empty() && s.first <= out.back().second)
      out.back().second = max(out.back().second, s.second);
    else
      out.push_back(std::move(s));
  }
  return out;
}

inline ExactNumber outer_measure(const FiniteUnion& X) {
  ExactNumber total(0);
  for (const auto& [a, b] : normalized_hull(X)) total += b - a;
  return total;
}

/// X intersected with the open interval (lo, hi).
inline FiniteUnion intersect(const FiniteUnion& X, const ExactNumber& lo,
                             const ExactNumber& hi) {
  FiniteUnion out;
  for (const auto& p : X.pieces) {
    Interval q = p;
    if (!q.lo || *q.lo <= lo) {
      q.lo = lo;
      q.lo_closed = false;
    }
    if (!q.hi || *q.hi >= hi) {
      q.hi = hi;
      q.hi_closed = false;
    }
    if (!q.empty()) out.pieces.push_back(std::move(q));
  }
  return out;
}

struct SubadditivityReport {
  ExactNumber union_measure;
  ExactNumber sum_of_measures;
  ExactNumber slack;
  bool holds = false;
};

inline SubadditivityReport subadditivity_check(
    const std::vector<FiniteUnion>& parts) {
  FiniteUnion all;
  SubadditivityReport r{ExactNumber(0), ExactNumber(0), ExactNumber(0)};
  for (const auto& part : parts) {
    all.pieces.insert(all.pieces.end(), part.pieces.begin(),
                      part.pieces.end());
    r.sum_of_measures += outer_measure(part);
  }
  r.union_measure = outer_measure(all);
  r.slack = r.sum_of_measures - r.union_measure;
  r.holds = r.slack.sign() >= 0;
  if (!r.holds)
    throw Error(ErrorKind::VerificationFailed,
                "measure of the union " + r.union_measure.to_string() +
                    " exceeds the sum " + r.sum_of_measures.to_string());
  return r;
}

struct ProbeVerdict {
  Interval probe;
  ExactNumber mass;   // measure of X inside the probe
  ExactNumber limit;  // delta times the probe length
  bool holds = false;
};

struct LocalNullReport {
  std::vector<ProbeVerdict> probes;
  ExactNumber measure;
  std::optional<Interval> violation;  // from the refinement search
};

namespace detail {

inline ProbeVerdict probe(const FiniteUnion& X, const ExactNumber& delta,
                          const ExactNumber& lo, const ExactNumber& hi) {
  ProbeVerdict v{Interval::open(lo, hi), outer_measure(intersect(X, lo, hi)),
                 delta * (hi - lo)};
  v.holds = v.mass <= v.limit;
  return v;
}

}  // namespace detail

/// Breadth-first bisection of each hull piece of X, left to right, looking
/// for an open interval I with mu(X n I) > delta |I|.
inline std::optional<Interval> find_dense_interval(const FiniteUnion& X,
                                                   const ExactNumber& delta,
                                                   int max_depth = 16) {
  auto hull = normalized_hull(X);
  if (hull.empty() || outer_measure(X).is_zero()) return std::nullopt;
  std::deque<std::pair<std::pair<ExactNumber, ExactNumber>, int>> queue;
  for (const auto& piece : hull) queue.push_back({piece, 0});
  while (!queue.empty()) {
    auto [span, depth] = queue.front();
    queue.pop_front();
    const auto& [lo, hi] = span;
    if (!(lo < hi)) continue;
    if (!detail::probe(X, delta, lo, hi).holds) return Interval::open(lo, hi);
    if (depth == max_depth) continue;
    ExactNumber mid = midpoint(lo, hi);
    queue.push_back({{lo, mid}, depth + 1});
    queue.push_back({{mid, hi}, depth + 1});
  }
  return std::nullopt;
}

/// Checks mu(X n I) <= delta |I| on every probe and runs the refinement
/// search; a set of positive measure always yields a violating interval.
inline LocalNullReport local_null_check(const FiniteUnion& X,
                                        const ExactNumber& delta,
                                        const std::vector<Interval>& probes,
                                        int max_depth = 16) {
  if (delta.sign() < 0 || !(delta < ExactNumber(1)))
    throw Error(ErrorKind::InvalidArgument, "delta must lie in [0, 1)");
  if (probes.empty())
    throw Error(ErrorKind::InvalidArgument, "at least one probe is required");
  LocalNullReport r;
  for (const auto& p : probes) {
    if (!p.bounded() || !(*p.lo < *p.hi))
      throw Error(ErrorKind::InvalidArgument,
                  "probes must be bounded non-empty intervals");
    r.probes.push_back(detail::probe(X, delta, *p.lo, *p.hi));
  }
  r.measure = outer_measure(X);
  r.violation = find_dense_interval(X, delta, max_depth);
  if (r.measure.sign() > 0 && !r.violation)
    throw Error(ErrorKind::VerificationFailed,
                "positive measure " + r.measure.to_string() +
                    " but no dense interval within depth " +
                    std::to_string(max_depth));
  return r;
}

/// Stage `depth` of the middle-thirds construction on [0, 1].
inline FiniteUnion cantor_stage(int depth) {
  std::vector<std::pair<ExactNumber, ExactNumber>> kept{
      {ExactNumber(0), ExactNumber(1)}};
  for (int k = 0; k < depth; ++k) {
    std::vector<std::pair<ExactNumber, ExactNumber>> next;
    for (const auto& [a, b] : kept) {
      ExactNumber third = (b - a) / ExactNumber(3);
      next.push_back({a, a + third});
      next.push_back({b - third, b});
    }
    kept = std::move(next);
  }
  FiniteUnion out;
  for (const auto& [a, b] : kept) out.pieces.push_back(Interval::closed(a, b));
  return out;
}

/// Parses "(0,1/2] u [1/2,3/4) u {1}" style text; "{x}" is a point.
inline FiniteUnion parse_union(const std::string& text) {
  FiniteUnion out;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == 'u' || s[pos] == 'U') {
      ++pos;
      continue;
    }
    char open = s[pos];
    if (open == '{') {
      std::size_t close = s.find('}', pos);
      if (close == std::string::npos)
        throw Error(ErrorKind::ParseError, "unterminated point in " + text);
      out.pieces.push_back(
          Interval::point(ExactNumber::parse(s.substr(pos + 1, close - pos - 1))));
      pos = close + 1;
      continue;
    }
    if (open != '(' && open != '[')
      throw Error(ErrorKind::ParseError, "expected '(' or '[' in " + text);
    std::size_t comma = s.find(',', pos);
    std::size_t close = s.find_first_of(")]", pos);
    if (comma == std::string::npos || close == std::string::npos ||
        close < comma)
      throw Error(ErrorKind::ParseError, "malformed interval in " + text);
    Interval in;
    std::string lo = s.substr(pos + 1, comma - pos - 1);
    std::string hi = s.substr(comma + 1, close - comma - 1);
    if (lo != "-inf") in.lo = ExactNumber::parse(lo);
    if (hi != "+inf" && hi != "inf") in.hi = ExactNumber::parse(hi);
    in.lo_closed = open == '[';
    in.hi_closed = s[close] == ']';
    out.pieces.push_back(std::move(in));
    pos = close + 1;
  }
  return out;
}

}  // namespace natfrag
