#pragma once

// Building Y_{a,b,d} that approximate {0, 1, ..., n}: a bootstrap triple for
// n = 1 and an extension step from n to n + 1, chained by `extract` under the
// tolerance schedule eps_k = eps_final / 6^(N - k).  Every free choice is made
// canonically (least indices, midpoints of gaps, exact ratio inversion), so a
// run is reproducible bit for bit.  Every returned point is re-checked.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "natfrag/approximation.hpp"
#include "natfrag/error.hpp"
#include "natfrag/exact_number.hpp"
#include "natfrag/search_space.hpp"
#include "natfrag/sets.hpp"

namespace natfrag {

namespace detail {

[[noreturn]] inline void step_failed(const std::string& what,
                                     const YFamilyPoint& p) {
  throw Error(ErrorKind::StepVerificationFailed,
              what + " at a=" + p.a.to_string() + " b=" + p.b.to_string() +
                  " d=" + p.d.to_string() + " Y=" + p.Y.to_string());
}

/// The bootstrap triple with Y = {0, ratio}: a splits (f(l), f(r)) so that
/// g(f(l), a, f(r)) = ratio, where l, r are the first two elements of D.
template <SearchSpace S>
YFamilyPoint seed_point(S& space, const ExactNumber& ratio) {
  ExactNumber f0 = space.value(0);
  ExactNumber f1 = space.value(1);
  if (f0 == f1)
    throw Error(ErrorKind::DegenerateOracle,
                "f takes the value " + f0.to_string() +
                    " on both of the first two elements");
  const ExactNumber& lo = min(f0, f1);
  const ExactNumber& hi = max(f0, f1);
  ExactNumber a = lo + (hi - lo) / ratio;
  YFamilyPoint p = y_family(space, a, a, 1);
  if (!(p.Y == DiscreteSet{ExactNumber(0), ratio}))
    step_failed("bootstrap Y differs from {0, " + ratio.to_string() + "}", p);
  if (!p.in_j) step_failed("bootstrap triple not in J", p);
  return p;
}

/// One extension: keep every old contribution within `widen` of its current
/// value and add a new one equal to `target` (off by less than `slack` only if
/// the exact choice of b hits the image).
template <SearchSpace S>
YFamilyPoint extend_toward(S& space, const YFamilyPoint& prev,
                           const ExactNumber& widen, const ExactNumber& target,
                           const ExactNumber& slack) {
  const Index e = prev.d_index;
  OpenInterval I = stability_window(space, prev, widen);
  Window inside = Window::open(I.lo, I.hi);

  auto exhausted = [&](const std::string& what) {
    return Error(ErrorKind::CapExceeded, "D exhausted while searching for " +
                                             what + " (" + space.describe() +
                                             ")");
  };

  // d0: two image points inside I at or below it
  auto n1 = space.first_hit(0, inside, std::nullopt);
  if (!n1) throw exhausted("a value in " + I.to_string());
  ExactNumber v1 = space.value(*n1);
  std::optional<Index> n2 = *n1;
  do {
    n2 = space.first_hit(*n2 + 1, inside, std::nullopt);
    if (!n2) throw exhausted("a second value in " + I.to_string());
  } while (space.value(*n2) == v1);
  const Index d0 = std::max(e, *n2);

  // a: midpoint of the image-free gap above l_{u,e} in f(D_{<=d0})
  const ExactNumber l = space.value(prev.L.back());
  Records above_l = records(space, l, d0);
  ExactNumber a = midpoint(l, space.value(above_l.right.back()));

  // d: least index past d0 landing in (l, a)
  auto d = space.first_hit(d0 + 1, Window::open(l, a), std::nullopt);
  if (!d) throw exhausted("a value in (" + l.to_string() + ", " +
                          a.to_string() + ")");
  const ExactNumber fd = space.value(*d);
  while (space.in_image(a, space.membership_bound(*d))) a = midpoint(fd, a);

  // (p1, p2): an image-free gap of f(D_{<=d}) inside I
  Records above_lo = records(space, I.lo, *d);
  ExactNumber p1 = space.value(above_lo.right.back());
  Records above_p1 = records(space, p1, *d);
  ExactNumber p2 = space.value(above_p1.right.back());
  if (!(p2 < I.hi))
    throw Error(ErrorKind::StepVerificationFailed,
                "no image-free gap inside " + I.to_string());

  ExactNumber span = p2 - p1;
  ExactNumber b = p1 + span / target;
  for (ExactNumber eta = slack / ExactNumber(2);
       space.in_image(b, space.membership_bound(*d));
       eta = eta / ExactNumber(2))
    b = p1 + span / (target + eta);
  const ExactNumber z = ratio_g(p1, b, p2);

  YFamilyPoint p = y_family(space, a, b, *d);
  std::vector<Index> expect_L = prev.L;
  expect_L.push_back(*d);
  if (p.L != expect_L) step_failed("L_{a,d} is not L_{u,e} plus d", p);
  YFamilyPoint old = y_family(space, prev.a, b, e);
  std::vector<ExactNumber> expect_Y(old.Y.begin(), old.Y.end());
  expect_Y.push_back(z);
  if (!(p.Y == DiscreteSet::from_unsorted(expect_Y)) ||
      !(p.contributions.back() == z))
    step_failed("Y_{a,b,d} is not Y_{u,b,e} plus z = " + z.to_string(), p);
  if (!p.in_j) step_failed("extended triple not in J", p);
  return p;
}

inline void check_eps(const ExactNumber& eps) {
  if (eps.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "eps must be positive");
}

}  // namespace detail

/// Y = {0, 1 + eps/2}, an eps-fragment up to 1.
template <SearchSpace S>
YFamilyPoint bootstrap(S& space, const ExactNumber& eps) {
  detail::check_eps(eps);
  if (!(eps < ExactNumber::fraction(1, 4)))
    throw Error(ErrorKind::EpsTooLarge, "bootstrap needs eps < 1/4");
  YFamilyPoint p =
      detail::seed_point(space, ExactNumber(1) + eps / ExactNumber(2));
  if (!is_eps_fragment(p.Y, eps, ExactNumber(1)))
    detail::step_failed("bootstrap Y is not an eps-fragment up to 1", p);
  return p;
}

/// From an (eps/6)-fragment up to n to an eps-fragment up to n + 1.
template <SearchSpace S>
YFamilyPoint extend_step(S& space, const YFamilyPoint& prev, long n,
                         const ExactNumber& eps) {
  detail::check_eps(eps);
  ExactNumber sixth = eps / ExactNumber(6);
  if (!prev.in_j)
    throw Error(ErrorKind::PreconditionFailed, "previous triple not in J");
  if (!is_eps_fragment(prev.Y, sixth, ExactNumber(n)))
    throw Error(ErrorKind::PreconditionFailed,
                prev.Y.to_string() + " is not an " + sixth.to_string() +
                    "-fragment up to " + std::to_string(n));
  YFamilyPoint p = detail::extend_toward(space, prev, sixth,
                                         ExactNumber(n + 1), eps);
  if (!is_eps_fragment(p.Y, eps, ExactNumber(n + 1)))
    detail::step_failed("Y is not an " + eps.to_string() +
                            "-fragment up to " + std::to_string(n + 1),
                        p);
  return p;
}

struct TraceStep {
  long n = 0;
  ExactNumber eps;
  YFamilyPoint witness;
  bool check = false;
};

struct ExtractionTrace {
  std::vector<TraceStep> steps;
  std::string space;
  std::uint64_t generated = 0;
};

/// Tolerance of step k (1-based) out of N.
inline ExactNumber scheduled_eps(const ExactNumber& eps_final, long k,
                                 long N) {
  ExactNumber out = eps_final;
  for (long i = k; i < N; ++i) out /= ExactNumber(6);
  return out;
}

template <SearchSpace S>
ExtractionTrace extract(S& space, long N, const ExactNumber& eps_final) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
  detail::check_eps(eps_final);
  ExtractionTrace trace;
  trace.space = space.describe();
  for (long k = 1; k <= N; ++k) {
    ExactNumber eps = scheduled_eps(eps_final, k, N);
    TraceStep step;
    step.n = k;
    step.eps = eps;
    if (k == 1) {
      // the bootstrap is built strictly below 1/4 and checked at eps
      ExactNumber build = eps < ExactNumber::fraction(1, 4)
                              ? eps
                              : ExactNumber::fraction(1, 8);
      step.witness = bootstrap(space, build);
    } else {
      step.witness = extend_step(space, trace.steps.back().witness, k - 1, eps);
    }
    step.check = is_eps_fragment(step.witness.Y, eps, ExactNumber(k));
    if (!step.check)
      detail::step_failed("step " + std::to_string(k) + " fails its check",
                          step.witness);
    trace.steps.push_back(std::move(step));
  }
  trace.generated = space.generated();
  return trace;
}

/// A triple whose Y is within eps of {0} u F in both directions, for a finite
/// F with min(F) >= 1.
template <SearchSpace S>
YFamilyPoint approximate_target(S& space, const DiscreteSet& F,
                                const ExactNumber& eps) {
  detail::check_eps(eps);
  if (F.empty()) throw Error(ErrorKind::EmptySet, "empty target");
  if (F.min() < ExactNumber(1))
    throw Error(ErrorKind::TargetBelowOne,
                "min(F) = " + F.min().to_string() + " < 1");
  ExactNumber m = min(eps, F[0]);
  for (std::size_t i = 1; i < F.size(); ++i) m = min(m, F[i] - F[i - 1]);
  // drift budget: a quarter for the seed offset, a quarter shared by the steps
  const ExactNumber quarter = m / ExactNumber(4);
  const ExactNumber widen = quarter / ExactNumber(static_cast<long>(F.size()));
  YFamilyPoint p = detail::seed_point(space, F[0] + quarter);
  for (std::size_t j = 1; j < F.size(); ++j)
    p = detail::extend_toward(space, p, widen, F[j], widen);

  std::vector<ExactNumber> target{ExactNumber(0)};
  target.insert(target.end(), F.begin(), F.end());
  ValueSet goal(std::move(target));
  for (const auto& x : goal)
    if (!(dist(p.Y, x) < eps))
      detail::step_failed("target " + x.to_string() + " not approximated", p);
  for (const auto& y : p.Y)
    if (!(dist(goal, y) < eps))
      detail::step_failed("stray element " + y.to_string(), p);
  if (!p.in_j) detail::step_failed("triple not in J", p);
  return p;
}

/// One line per step: n, eps, a, b, d, Y and the check verdict.
inline std::string format_trace(const ExtractionTrace& t) {
  std::ostringstream out;
  for (const auto& s : t.steps)
    out << "n=" << s.n << " eps=" << s.eps << " a=" << s.witness.a
        << " b=" << s.witness.b << " d=" << s.witness.d
        << " Y=" << s.witness.Y.to_string()
        << " check=" << (s.check ? "pass" : "fail") << "\n";
  return out.str();
}

inline void emit_point(std::ostream& out, const std::string& prefix,
                       const YFamilyPoint& p) {
  out << prefix << "a=" << p.a << "\n"
      << prefix << "b=" << p.b << "\n"
      << prefix << "d=" << p.d << "\n"
      << prefix << "Y=" << p.Y.to_string() << "\n"
      << prefix << "inJ=" << (p.in_j ? "true" : "false") << "\n"
      << prefix << "membership_bound="
      << (p.membership_bound ? std::to_string(*p.membership_bound) : "all")
      << "\n";
}

/// key=value lines; exact numbers in their text form.
inline std::string emit_trace(const ExtractionTrace& t) {
  std::ostringstream out;
  out << "kind=extraction_trace\n"
      << "space=" << t.space << "\n"
      << "steps=" << t.steps.size() << "\n"
      << "generated=" << t.generated << "\n";
  for (const auto& s : t.steps) {
    std::string prefix = "step." + std::to_string(s.n) + ".";
    out << prefix << "n=" << s.n << "\n" << prefix << "eps=" << s.eps << "\n";
    emit_point(out, prefix, s.witness);
    out << prefix << "check=" << (s.check ? "pass" : "fail") << "\n";
  }
  return out.str();
}

}  // namespace natfrag
