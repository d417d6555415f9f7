#pragma once

// Command-line front end.  run() parses, dispatches and maps failures to
// exit statuses: 0 success, 2 bad input or unmet precondition, 3 budget
// exhausted, 4 failed internal check (the message carries the exact values).

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "natfrag/natfrag.hpp"

namespace natfrag::cli {

enum ExitStatus { kOk = 0, kPrecondition = 2, kBudget = 3, kVerification = 4 };

inline int status_for(ErrorKind kind) {
  if (kind == ErrorKind::CapExceeded) return kBudget;
  if (is_verification_failure(kind)) return kVerification;
  return kPrecondition;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

/// "phi", "sqrt2"/"sqrt3", or any exact-number text.
inline ExactNumber parse_alpha(const std::string& text) {
  if (text == "phi") return golden_ratio();
  if (text.rfind("sqrt", 0) == 0 && text.find('(') == std::string::npos)
    return ExactNumber::sqrt(std::stol(text.substr(4)));
  return ExactNumber::parse(text);
}

/// Lines "x y" (comments after '#').
inline std::map<ExactNumber, ExactNumber> parse_table(const std::string& text) {
  std::map<ExactNumber, ExactNumber> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream words(line);
    std::string x, y, extra;
    if (!(words >> x)) continue;
    if (!(words >> y) || (words >> extra))
      throw Error(ErrorKind::ParseError, "table line needs 'x y': " + line);
    out[ExactNumber::parse(x)] = ExactNumber::parse(y);
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty table");
  return out;
}

using Space = std::variant<RotationSpace, EnumeratedSpace>;

/// rot(alpha) searches the naturals exactly; table(file) is a finite D.
inline Space make_space(const std::string& spec, std::uint64_t budget) {
  auto inner = [&](const std::string& head) -> std::optional<std::string> {
    if (spec.rfind(head + "(", 0) != 0 || spec.back() != ')')
      return std::nullopt;
    return spec.substr(head.size() + 1, spec.size() - head.size() - 2);
  };
  if (auto a = inner("rot")) return RotationSpace(parse_alpha(*a), budget);
  if (auto path = inner("table")) {
    auto entries = parse_table(read_file(*path));
    std::vector<ExactNumber> keys;
    for (const auto& [k, v] : entries) keys.push_back(k);
    return EnumeratedSpace(DiscreteSet(std::move(keys)),
                           FunctionOracle::table(std::move(entries)));
  }
  throw Error(ErrorKind::ParseError,
              "oracle must be rot(alpha) or table(file), got " + spec);
}

inline NatSeq parse_seq(std::string text) {
  NatSeq out;
  for (char& ch : text)
    if (ch == '[' || ch == ']' || ch == ',') ch = ' ';
  std::istringstream in(text);
  for (std::string tok; in >> tok;) {
    try {
      out.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::ParseError, "not an integer: " + tok);
    }
  }
  return out;
}

inline std::vector<ExactNumber> parse_values(std::string text) {
  std::vector<ExactNumber> out;
  for (char& ch : text)
    if (ch == '[' || ch == ']' || ch == '{' || ch == '}') ch = ' ';
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(start, comma - start);
    if (tok.find_first_not_of(' ') != std::string::npos)
      out.push_back(ExactNumber::parse(tok));
    start = comma + 1;
  }
  return out;
}

inline std::vector<std::pair<ExactNumber, ExactNumber>> parse_jumps(
    const std::string& text) {
  std::vector<std::pair<ExactNumber, ExactNumber>> out;
  std::istringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorKind::ParseError, "jump must be 'x:size': " + tok);
    out.push_back({ExactNumber::parse(tok.substr(0, colon)),
                   ExactNumber::parse(tok.substr(colon + 1))});
  }
  return out;
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline std::string index_list(const std::vector<Index>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact natural-fragment extraction, coding and analysis",
               "natfrag"};
  app.require_subcommand(1);

  // shared options
  std::string oracle = "rot(phi)", eps_text = "1/4", emit;
  std::uint64_t budget = 1'000'000;

  auto* extract_cmd = app.add_subcommand("extract", "run the extraction");
  long n = 3;
  extract_cmd->add_option("--oracle", oracle, "rot(alpha) or table(file)");
  extract_cmd->add_option("--n", n, "number of steps")->check(CLI::PositiveNumber);
  extract_cmd->add_option("--eps", eps_text, "final tolerance");
  extract_cmd->add_option("--budget", budget, "generated index budget");
  extract_cmd->add_option("--emit", emit, "write key=value trace here");

  auto* target_cmd = app.add_subcommand("target", "approximate {0} u F");
  std::string target_set;
  target_cmd->add_option("--oracle", oracle);
  target_cmd->add_option("--set", target_set, "F, e.g. {3/2,5/2}")->required();
  target_cmd->add_option("--eps", eps_text);
  target_cmd->add_option("--budget", budget);

  std::string cut_text, a_text, b_text, d_text;
  auto* approx_cmd = app.add_subcommand("approx", "best approximations");
  approx_cmd->add_option("--oracle", oracle);
  approx_cmd->add_option("--cut", cut_text)->required();
  approx_cmd->add_option("--d", d_text, "element of D")->required();
  approx_cmd->add_option("--budget", budget);

  auto* yfam_cmd = app.add_subcommand("yfam", "Y_{a,b,d} and the J test");
  yfam_cmd->add_option("--oracle", oracle);
  yfam_cmd->add_option("--a", a_text)->required();
  yfam_cmd->add_option("--b", b_text)->required();
  yfam_cmd->add_option("--d", d_text)->required();
  yfam_cmd->add_option("--budget", budget);

  auto* code_cmd = app.add_subcommand("code", "coding functions");
  code_cmd->require_subcommand(1);
  std::vector<std::string> pos;
  std::size_t upto = 10, row = 0;
  CLI::Option* upto_opt = nullptr;
  std::optional<std::size_t> length;
  std::string constant;
  auto verb = [&](const char* name, const char* help, int nargs) {
    auto* sub = code_cmd->add_subcommand(name, help);
    sub->add_option("args", pos)->expected(nargs)->required();
    return sub;
  };
  verb("pair", "theta(m, n)", 2);
  verb("unpair", "inverse of theta", 1);
  verb("beta-encode", "k coding a sequence", 1);
  verb("beta", "beta(k, i)", 2);
  upto_opt = verb("cf", "continued-fraction digits", 1)->add_option("--upto", upto);
  verb("cf-encode", "real coding a sequence", 1);
  verb("cf-decode", "sequence coded by a real", 1)->add_option("--length", length);
  verb("delta-encode", "real coding a family", 1);
  auto* delta_row = verb("delta-row", "row of a coded family", 1);
  delta_row->add_option("--length", length);
  delta_row->add_option("--row", row);
  delta_row->add_option("--upto", upto);
  verb("sum", "sum over a set", 1)->add_option("--const", constant,
                                               "h constant (default identity)");

  std::string file;
  std::vector<std::string> c_values;
  auto* sun_cmd = app.add_subcommand("sun", "rising sun set");
  sun_cmd->add_option("--file", file, "PL function file")->required();
  sun_cmd->add_option("--c", c_values, "apply to f - c x and check the bound");
  sun_cmd->add_option("--emit", emit);

  std::string x_text;
  auto* dini_cmd = app.add_subcommand("dini", "Dini derivatives");
  dini_cmd->add_option("--file", file)->required();
  dini_cmd->add_option("--x", x_text)->required();

  std::string set_text, cover_text, parts_text, delta_text, probe_text;
  auto* measure_cmd = app.add_subcommand("measure", "lengths of sets");
  measure_cmd->add_option("--set", set_text, "finite union, e.g. (0,1/2] u {1}");
  measure_cmd->add_option("--cover", cover_text, "open intervals");
  measure_cmd->add_option("--parts", parts_text, "unions separated by ';'");
  measure_cmd->add_option("--delta", delta_text, "local density bound");
  measure_cmd->add_option("--probe", probe_text, "probe intervals");

  std::string mesh_text = "1/64", jumps_text;
  int cantor = -1;
  auto* diff_cmd = app.add_subcommand("diffreport", "differentiability cells");
  diff_cmd->add_option("--file", file);
  diff_cmd->add_option("--cantor", cantor, "Cantor staircase depth");
  diff_cmd->add_option("--jumps", jumps_text, "step function x:size,...");
  diff_cmd->add_option("--mesh", mesh_text);
  diff_cmd->add_option("--emit", emit);

  unsigned order = 8;
  auto* hp_cmd = app.add_subcommand("hpcheck", "series identity");
  hp_cmd->add_option("--order", order);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kPrecondition;
  }

  try {
    if (*extract_cmd) {
      auto space = make_space(oracle, budget);
      ExactNumber eps = ExactNumber::parse(eps_text);
      auto trace = std::visit(
          [&](auto& s) { return extract(s, n, eps); }, space);
      out << format_trace(trace);
      if (!emit.empty()) write_file(emit, emit_trace(trace));
    } else if (*target_cmd) {
      auto space = make_space(oracle, budget);
      DiscreteSet F = DiscreteSet::parse(target_set);
      ExactNumber eps = ExactNumber::parse(eps_text);
      auto p = std::visit(
          [&](auto& s) { return approximate_target(s, F, eps); }, space);
      emit_point(out, "", p);
    } else if (*approx_cmd) {
      auto space = make_space(oracle, budget);
      ExactNumber cut = ExactNumber::parse(cut_text);
      ExactNumber d = ExactNumber::parse(d_text);
      auto st = std::visit(
          [&](auto& s) { return best_approx_at(s, cut, d); }, space);
      out << "cut=" << st.cut << "\nbound=" << st.bound
          << "\nL=" << st.L.to_string() << "\nR=" << st.R.to_string()
          << "\nl=" << st.l << "\nr=" << st.r << "\n";
    } else if (*yfam_cmd) {
      auto space = make_space(oracle, budget);
      ExactNumber a = ExactNumber::parse(a_text), b = ExactNumber::parse(b_text);
      ExactNumber d = ExactNumber::parse(d_text);
      auto p = std::visit(
          [&](auto& s) { return y_family_at(s, a, b, d); }, space);
      emit_point(out, "", p);
      out << "L=" << index_list(p.L) << "\n";
    } else if (*code_cmd) {
      auto* sub = code_cmd->get_subcommands().front();
      std::string name = sub->get_name();
      if (name == "pair") {
        out << theta(mpz_class(pos[0]), mpz_class(pos[1])) << "\n";
      } else if (name == "unpair") {
        auto [m, k] = theta_inv(mpz_class(pos[0]));
        out << m << "," << k << "\n";
      } else if (name == "beta-encode") {
        out << beta_encode(parse_seq(pos[0])) << "\n";
      } else if (name == "beta") {
        out << beta(mpz_class(pos[0]), mpz_class(pos[1])) << "\n";
      } else if (name == "cf") {
        ExactNumber a = parse_alpha(pos[0]);
        // rationals print their whole expansion unless --upto is given
        out << to_string(a.is_rational() && upto_opt->count() == 0
                             ? cf_expansion(a)
                             : cf_digits(a, upto))
            << "\n";
      } else if (name == "cf-encode") {
        NatSeq s = parse_seq(pos[0]);
        out << "value=" << cf_encode(s).value << "\nlength=" << s.size()
            << "\n";
      } else if (name == "cf-decode") {
        out << to_string(cf_decode({ExactNumber::parse(pos[0]), length}))
            << "\n";
      } else if (name == "delta-encode") {
        CodedReal c = delta_encode(parse_values(pos[0]));
        out << "value=" << c.value << "\nlength=" << *c.length << "\n";
      } else if (name == "delta-row") {
        CodedReal r = delta({ExactNumber::parse(pos[0]), length}, row, upto);
        out << r.value << "\n";
      } else if (name == "sum") {
        ValueSet set = ValueSet::parse(pos[0]);
        FunctionOracle h =
            constant.empty()
                ? FunctionOracle::composite("id",
                                            [](const ExactNumber& x) { return x; })
                : FunctionOracle::composite(
                      "const", [c = ExactNumber::parse(constant)](
                                   const ExactNumber&) { return c; });
        out << discrete_sum(set, h) << "\n";
      }
    } else if (*sun_cmd) {
      PLFunction f = PLFunction::parse(read_file(file));
      std::ostringstream report;
      if (c_values.empty()) {
        RisingSun E = rising_sun(f);
        report << "E=" << E.to_string() << "\nmu=" << E.measure() << "\n";
        for (std::size_t i = 0; i < E.components.size(); ++i) {
          const auto& c = E.components[i];
          report << "component." << i << "=(" << c.lo << ", " << c.hi
                 << ") g_right=" << c.g_lo_right << " G=" << c.G_hi
                 << " shadow=" << bool_text(c.shadow_ok) << "\n";
        }
      } else {
        for (const auto& ct : c_values) {
          ExactNumber c = ExactNumber::parse(ct);
          SunMeasureBound r = sun_measure_bound(f, c);
          report << "c=" << c << " E=" << r.E.to_string() << " mu=" << r.mu
                 << " bound=" << r.bound << "\n";
          for (const auto& b : r.per_component)
            report << "  component=(" << b.lo << ", " << b.hi
                   << ") lhs=" << b.lhs << " rhs=" << b.rhs << "\n";
        }
      }
      out << report.str();
      if (!emit.empty()) write_file(emit, report.str());
    } else if (*dini_cmd) {
      PLFunction f = PLFunction::parse(read_file(file));
      DiniDerivatives d = dini(f, ExactNumber::parse(x_text));
      out << "lower_left=" << d.lower_left.to_string()
          << "\nupper_left=" << d.upper_left.to_string()
          << "\nlower_right=" << d.lower_right.to_string()
          << "\nupper_right=" << d.upper_right.to_string()
          << "\ndifferentiable=" << bool_text(d.differentiable()) << "\n";
    } else if (*measure_cmd) {
      bool any = false;
      if (!set_text.empty()) {
        any = true;
        FiniteUnion X = parse_union(set_text);
        out << "measure=" << outer_measure(X) << "\n";
        if (!delta_text.empty()) {
          std::vector<Interval> probes =
              probe_text.empty() ? std::vector<Interval>{}
                                 : parse_union(probe_text).pieces;
          if (probes.empty()) {
            auto hull = normalized_hull(X);
            if (hull.empty())
              throw Error(ErrorKind::InvalidArgument, "no probe for {}");
            probes.push_back(
                Interval::open(hull.front().first, hull.back().second));
          }
          LocalNullReport r =
              local_null_check(X, ExactNumber::parse(delta_text), probes);
          for (const auto& p : r.probes)
            out << "probe=" << p.probe.to_string() << " mass=" << p.mass
                << " limit=" << p.limit << " holds=" << bool_text(p.holds)
                << "\n";
          out << "violation="
              << (r.violation ? r.violation->to_string() : "none") << "\n";
        }
      }
      if (!cover_text.empty()) {
        any = true;
        out << "cover_mass="
            << cover_mass({parse_union(cover_text).pieces}) << "\n";
      }
      if (!parts_text.empty()) {
        any = true;
        std::vector<FiniteUnion> parts;
        std::istringstream in(parts_text);
        for (std::string part; std::getline(in, part, ';');)
          parts.push_back(parse_union(part));
        SubadditivityReport r = subadditivity_check(parts);
        out << "union=" << r.union_measure << "\nsum=" << r.sum_of_measures
            << "\nslack=" << r.slack << "\n";
      }
      if (!any)
        throw Error(ErrorKind::InvalidArgument,
                    "give --set, --cover or --parts");
    } else if (*diff_cmd) {
      PLFunction f;
      if (!file.empty())
        f = PLFunction::parse(read_file(file));
      else if (cantor >= 0)
        f = cantor_staircase(cantor);
      else if (!jumps_text.empty())
        f = step_function(0, 1, 0, parse_jumps(jumps_text));
      else
        throw Error(ErrorKind::InvalidArgument,
                    "give --file, --cantor or --jumps");
      DifferentiabilityReport r =
          differentiability_report(f, ExactNumber::parse(mesh_text));
      std::string text = format_report(r);
      out << text << "all_cells_ok=" << bool_text(r.all_cells_ok) << "\n";
      if (!emit.empty()) write_file(emit, text);
      if (!r.all_cells_ok) {
        for (const auto& c : r.cells)
          if (!c.ok)
            err << "cell [" << c.lo << ", " << c.hi << "] has no point "
                << "with equal finite Dini values; witness " << c.witness
                << " gives " << c.derivatives.to_string() << "\n";
        return kVerification;
      }
    } else if (*hp_cmd) {
      SeriesCheck r = hp_series_check(order);
      for (unsigned m = 0; m <= r.order; ++m)
        out << "a" << m << "=" << r.lhs[m] << " rhs" << m << "=" << r.rhs[m]
            << "\n";
      out << "holds=" << bool_text(r.holds) << "\n";
      if (!r.holds) {
        err << "coefficient " << r.first_mismatch << " differs\n";
        return kVerification;
      }
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return status_for(e.kind());
  }
  return kOk;
}

}  // namespace natfrag::cli
