#pragma once

// Piecewise-linear functions on a closed interval with finitely many jumps.
//
// Breakpoints x_0 < ... < x_k carry a left limit and a right limit; the
// function is linear between consecutive breakpoints, running from the right
// limit at x_i to the left limit at x_{i+1}.  At a breakpoint the value is the
// right limit.  At the two ends of the domain only one side exists, so the
// left limit at x_0 is set to its right limit and the right limit at x_k to
// its left limit.

#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"

namespace natfrag {

struct Breakpoint {
  ExactNumber x;
  ExactNumber left;
  ExactNumber right;

  ExactNumber jump() const { return right - left; }
  ExactNumber upper() const { return max(left, right); }
};

class PLFunction {
 public:
  PLFunction() = default;

  explicit PLFunction(std::vector<Breakpoint> points)
      : pts_(std::move(points)) {
    if (pts_.size() < 2)
      throw Error(ErrorKind::InvalidArgument,
                  "a PL function needs at least two breakpoints");
    for (std::size_t i = 1; i < pts_.size(); ++i)
      if (!(pts_[i - 1].x < pts_[i].x))
        throw Error(ErrorKind::InvalidArgument,
                    "breakpoints must be strictly increasing");
    pts_.front().left = pts_.front().right;
    pts_.back().right = pts_.back().left;
  }

  /// Continuous PL function through the given (x, y) points.
  static PLFunction through(
      const std::vector<std::pair<ExactNumber, ExactNumber>>& xy) {
    std::vector<Breakpoint> pts;
    for (const auto& [x, y] : xy) pts.push_back({x, y, y});
    return PLFunction(std::move(pts));
  }

  /// Checked construction of a monotone (non-decreasing) function.
  static PLFunction monotone(std::vector<Breakpoint> points) {
    PLFunction f(std::move(points));
    if (!f.is_monotone())
      throw Error(ErrorKind::NotMonotone, "breakpoint data is not monotone");
    return f;
  }

  const std::vector<Breakpoint>& breakpoints() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  const Breakpoint& operator[](std::size_t i) const { return pts_[i]; }
  const ExactNumber& lo() const { return pts_.front().x; }
  const ExactNumber& hi() const { return pts_.back().x; }

  bool in_domain(const ExactNumber& x) const { return lo() <= x && x <= hi(); }

  /// Index of the breakpoint at x, if any.
  std::optional<std::size_t> breakpoint_at(const ExactNumber& x) const {
    std::size_t i = locate(x);
    if (pts_[i].x == x) return i;
    return std::nullopt;
  }

  /// Piece slope on (x_i, x_{i+1}).
  ExactNumber slope(std::size_t i) const {
    return (pts_[i + 1].left - pts_[i].right) / (pts_[i + 1].x - pts_[i].x);
  }

  /// Value of the linear extension of piece i at x.
  ExactNumber on_piece(std::size_t i, const ExactNumber& x) const {
    return pts_[i].right + slope(i) * (x - pts_[i].x);
  }

  ExactNumber operator()(const ExactNumber& x) const {
    check_domain(x);
    std::size_t i = locate(x);
    if (pts_[i].x == x) return pts_[i].right;
    return on_piece(i, x);
  }

  ExactNumber left_limit(const ExactNumber& x) const {
    check_domain(x);
    std::size_t i = locate(x);
    if (pts_[i].x == x) return pts_[i].left;
    return on_piece(i, x);
  }

  /// max(value, limsup) at x: the larger of the two one-sided limits.
  ExactNumber upper(const ExactNumber& x) const {
    return max((*this)(x), left_limit(x));
  }

  bool is_monotone() const {
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (pts_[i].right < pts_[i].left) return false;
      if (i + 1 < pts_.size() && pts_[i + 1].left < pts_[i].right)
        return false;
    }
    return true;
  }

  bool is_strictly_increasing() const {
    if (!is_monotone()) return false;
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
      if (!(pts_[i].right < pts_[i + 1].left)) return false;
    return true;
  }

  bool is_continuous() const {
    for (const auto& p : pts_)
      if (!(p.left == p.right)) return false;
    return true;
  }

  /// x -> f(x) + c x + k
  PLFunction plus_linear(const ExactNumber& c, const ExactNumber& k) const {
    std::vector<Breakpoint> pts = pts_;
    for (auto& p : pts) {
      ExactNumber shift = c * p.x + k;
      p.left += shift;
      p.right += shift;
    }
    return PLFunction(std::move(pts));
  }

  /// "domain a b" followed by lines "x left right"; '#' starts a comment.
  static PLFunction parse(std::istream& in) {
    std::string line;
    std::optional<std::pair<ExactNumber, ExactNumber>> domain;
    std::vector<Breakpoint> pts;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
      std::istringstream words(line);
      std::vector<std::string> tok;
      for (std::string w; words >> w;) tok.push_back(w);
      if (tok.empty()) continue;
      if (tok[0] == "domain") {
        if (tok.size() != 3)
          throw Error(ErrorKind::ParseError, "domain line needs two values");
        domain = {ExactNumber::parse(tok[1]), ExactNumber::parse(tok[2])};
        continue;
      }
      if (tok.size() != 3)
        throw Error(ErrorKind::ParseError, "expected 'x left right': " + line);
      pts.push_back({ExactNumber::parse(tok[0]), ExactNumber::parse(tok[1]),
                     ExactNumber::parse(tok[2])});
    }
    if (!domain) throw Error(ErrorKind::ParseError, "missing domain line");
    PLFunction f(std::move(pts));
    if (!(f.lo() == domain->first) || !(f.hi() == domain->second))
      throw Error(ErrorKind::ParseError,
                  "breakpoints must start and end at the domain ends");
    return f;
  }

  static PLFunction parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  std::string to_string() const {
    std::ostringstream out;
    out << "domain " << lo() << " " << hi() << "\n";
    for (const auto& p : pts_)
      out << p.x << " " << p.left << " " << p.right << "\n";
    return out.str();
  }

 private:
  void check_domain(const ExactNumber& x) const {
    if (!in_domain(x))
      throw Error(ErrorKind::OutOfDomain,
                  x.to_string() + " outside [" + lo().to_string() + ", " +
                      hi().to_string() + "]");
  }

  /// Greatest i with x_i <= x, clamped to the last piece for x = x_k.
  std::size_t locate(const ExactNumber& x) const {
    std::size_t lo_i = 0, hi_i = pts_.size() - 1;
    if (x >= pts_[hi_i].x) return hi_i;
    while (hi_i - lo_i > 1) {
      std::size_t mid = (lo_i + hi_i) / 2;
      if (pts_[mid].x <= x)
        lo_i = mid;
      else
        hi_i = mid;
    }
    return lo_i;
  }

  std::vector<Breakpoint> pts_;
};

/// Continuous Cantor staircase of the given depth on [0, 1]: rising by 2^-n
/// linearly across each of the 2^n retained intervals, flat elsewhere.
inline PLFunction cantor_staircase(int depth) {
  if (depth < 0)
    throw Error(ErrorKind::InvalidArgument, "depth must be non-negative");
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
  ExactNumber rise = ExactNumber::fraction(1, mpz_class(1) << depth);
  std::vector<std::pair<ExactNumber, ExactNumber>> xy;
  ExactNumber level(0);
  for (const auto& [a, b] : kept) {
    if (xy.empty() || !(xy.back().first == a)) xy.push_back({a, level});
    level += rise;
    xy.push_back({b, level});
  }
  return PLFunction::through(xy);
}

/// Non-decreasing step function on [lo, hi]: constant `base` plus the given
/// jumps (position, size > 0), each taken at its position.
inline PLFunction step_function(
    const ExactNumber& lo, const ExactNumber& hi, const ExactNumber& base,
    const std::vector<std::pair<ExactNumber, ExactNumber>>& jumps) {
  std::vector<Breakpoint> pts{{lo, base, base}};
  ExactNumber level = base;
  for (const auto& [x, size] : jumps) {
    if (!(lo < x && x < hi) || !(pts.back().x < x))
      throw Error(ErrorKind::InvalidArgument,
                  "jump positions must be increasing and interior");
    if (size.sign() <= 0)
      throw Error(ErrorKind::InvalidArgument, "jump sizes must be positive");
    pts.push_back({x, level, level + size});
    level += size;
  }
  pts.push_back({hi, level, level});
  return PLFunction::monotone(std::move(pts));
}

}  // namespace natfrag
