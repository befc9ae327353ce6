#pragma once

// Command-line front end: disc, index, monogenic, polygon, verify, table.
// Exit codes: 0 success, 1 invalid or rejected input, 2 internal
// verification failure.

#include <algorithm>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "purefield/arith.hpp"
#include "purefield/error.hpp"
#include "purefield/newton_polygon.hpp"
#include "purefield/polynomial.hpp"
#include "purefield/pure_field.hpp"
#include "purefield/verify.hpp"

namespace purefield::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kRejected = 1, kVerificationFailed = 2 };

enum class Status { Ok, Reducible, HypothesisViolation, OreRegularityFailure };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Reducible: return "reducible";
    case Status::HypothesisViolation: return "hypothesis_violation";
    case Status::OreRegularityFailure: return "ore_regularity_failure";
  }
  return "ok";
}

struct Witness {
  Integer prime;
  std::string reason;
};

/// One disc / index / monogenic answer.
struct OutputRecord {
  std::string command;
  std::string n;
  std::string a;
  Status status = Status::Ok;
  std::optional<FactoredInteger> result;
  bool with_decimal = false;
  std::optional<Witness> witness;
};

inline json result_json(const FactoredInteger& v, bool with_decimal) {
  json factors = json::array();
  for (const auto& [p, e] : v.factors) factors.push_back(json::array({p.str(), e}));
  return {{"sign", v.sign},
          {"factors", factors},
          {"decimal", with_decimal ? json(v.value().str()) : json(nullptr)}};
}

inline json to_json(const OutputRecord& r) {
  json witness = nullptr;
  if (r.witness)
    witness = {{"prime", r.witness->prime.str()}, {"reason", r.witness->reason}};
  return {{"command", r.command},
          {"n", r.n},
          {"a", r.a},
          {"status", status_name(r.status)},
          {"result", r.result ? result_json(*r.result, r.with_decimal) : json(nullptr)},
          {"witness", witness}};
}

/// "+ 5^1", "- 2^31 = -2147483648"; unsigned for indices.
inline std::string render_factored(const FactoredInteger& v, bool show_sign,
                                   bool with_decimal) {
  std::string s;
  if (show_sign) s += v.sign < 0 ? "- " : "+ ";
  s += v.factors_string();
  if (with_decimal) s += " = " + v.value().str();
  return s;
}

namespace detail {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

inline Integer parse_arg(const std::string& text, const char* what) {
  Integer v;
  if (!parse_integer(text, v))
    throw InvalidArgument(std::string(what) + " is not a decimal integer: " + text);
  return v;
}

inline std::uint64_t parse_degree(const std::string& text) {
  const Integer n = parse_arg(text, "n");
  if (n < 2) throw InvalidArgument("n must be at least 2");
  if (n > kMaxDegree) throw InvalidArgument("n is too large");
  return static_cast<std::uint64_t>(n);
}

/// Cross-checks the closed forms against the Ore route at every prime and
/// the global identity. Returns a message on mismatch.
inline std::optional<std::string> ore_cross_check(const ValidatedPureField& f) {
  for (const auto& d : f.degree_primes()) {
    if (d.a_valuation != 0) continue;
    const auto ore = ore_index_valuation(shifted_polynomial(d.prime, d.s, f.a()), d.prime);
    const auto closed = index_p_valuation(d.prime, d.s, d.cofactor, d.r);
    if (closed != d.cofactor * ore)
      return "index valuation at " + d.prime.str() + ": closed form " +
             std::to_string(closed) + ", Ore route " + std::to_string(d.cofactor * ore);
  }
  const IntPolynomial xn = IntPolynomial::x_pow_minus(f.n(), f.a());
  for (const auto& q : f.radicand_primes()) {
    const auto ore = ore_index_valuation(xn, q.prime);
    const auto closed = index_q_valuation(f.n(), q.t, q.m);
    if (closed != ore)
      return "index valuation at " + q.prime.str() + ": closed form " +
             std::to_string(closed) + ", Ore route " + std::to_string(ore);
  }
  if (!check_global_relation(f)) return "d_K * Ind^2 differs from disc(x^n - a)";
  return std::nullopt;
}

struct FieldOptions {
  std::string n;
  std::string a;
  bool json = false;
  bool decimal = false;
  bool check = false;
};

enum class FieldCommand { Disc, Index, Monogenic };

inline int run_field_command(FieldCommand which, const FieldOptions& o, Io io) {
  OutputRecord rec;
  rec.command = which == FieldCommand::Disc    ? "disc"
                : which == FieldCommand::Index ? "index"
                                               : "monogenic";
  rec.n = o.n;
  rec.a = o.a;
  rec.with_decimal = o.decimal;
  const auto emit = [&](int code, const std::string& text) {
    if (o.json)
      io.out << to_json(rec).dump() << '\n';
    else if (code == kOk)
      io.out << text << '\n';
    else
      io.err << "error: " << status_name(rec.status) << ": " << text << '\n';
    return code;
  };

  const std::uint64_t n = parse_degree(o.n);
  const Integer a = parse_arg(o.a, "a");
  if (a == 0) throw InvalidArgument("a must be nonzero");
  rec.n = std::to_string(n);
  rec.a = a.str();

  std::optional<ValidatedPureField> field;
  try {
    field = validate(n, a);
  } catch (const ReducibleError& e) {
    rec.status = Status::Reducible;
    return emit(kRejected, e.what());
  } catch (const HypothesisViolation& e) {
    rec.status = Status::HypothesisViolation;
    rec.witness = Witness{e.prime(), e.what()};
    return emit(kRejected, std::string(e.what()) + " (p=" + e.prime().str() + ")");
  }

  if (o.check) {
    try {
      if (auto mismatch = ore_cross_check(*field)) {
        io.err << "error: verification failed: " << *mismatch << '\n';
        return kVerificationFailed;
      }
    } catch (const OreRegularityFailure& e) {
      rec.status = Status::OreRegularityFailure;
      rec.witness = Witness{e.prime(), e.what()};
      return emit(kVerificationFailed, e.what());
    }
  }

  switch (which) {
    case FieldCommand::Disc:
      rec.result = discriminant(*field);
      return emit(kOk, render_factored(*rec.result, true, o.decimal));
    case FieldCommand::Index:
      rec.result = theta_index(*field);
      return emit(kOk, render_factored(*rec.result, false, o.decimal));
    case FieldCommand::Monogenic: {
      rec.result = theta_index(*field);
      const MonogenicResult m = is_monogenic(*field);
      if (m.monogenic) return emit(kOk, "yes");
      const auto& w = *m.witness;
      if (w.kind == MonogenicWitness::Kind::NonSquarefree) {
        rec.witness = Witness{w.prime, "a is not squarefree"};
        return emit(kOk, "no, a not squarefree (q=" + w.prime.str() + ")");
      }
      rec.witness = Witness{w.prime, "p^2 divides a^(p-1) - 1"};
      return emit(kOk, "no, p=" + w.prime.str());
    }
  }
  return kOk;
}

/// `xn-a:<n>:<a>`, `shifted:<p>:<s>:<a>`, or `c0,c1,...,cn`.
inline IntPolynomial parse_polynomial_spec(const std::string& spec) {
  std::vector<std::string> parts;
  const char sep = spec.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  if (parts.empty()) throw InvalidArgument("empty polynomial spec");
  if (sep == ':') {
    if (parts[0] == "xn-a" && parts.size() == 3) {
      const Integer n = parse_arg(parts[1], "n");
      if (n < 1 || n > kMaxDegree) throw InvalidArgument("bad degree in " + spec);
      return IntPolynomial::x_pow_minus(static_cast<std::size_t>(n),
                                        parse_arg(parts[2], "a"));
    }
    if (parts[0] == "shifted" && parts.size() == 4) {
      const Integer s = parse_arg(parts[2], "s");
      if (s < 1 || s > 64) throw InvalidArgument("bad exponent in " + spec);
      return shifted_polynomial(parse_arg(parts[1], "p"),
                                static_cast<Exponent>(s), parse_arg(parts[3], "a"));
    }
    throw InvalidArgument("unrecognized polynomial spec: " + spec);
  }
  std::vector<Integer> coeffs;
  for (const auto& p : parts) coeffs.push_back(parse_arg(p, "coefficient"));
  return IntPolynomial(std::move(coeffs));
}

inline json point_json(const Point& p) { return json::array({p.x, p.y}); }

inline int run_polygon(const std::string& prime_text, const std::string& spec,
                       bool as_json, Io io) {
  const Integer p = parse_arg(prime_text, "p");
  require_prime(p);
  const IntPolynomial g = parse_polynomial_spec(spec);
  const NewtonPolygon poly = build_polygon(g, p);

  json edges = json::array();
  std::ostringstream text;
  text << "polynomial: " << g.to_string() << '\n' << "prime: " << p << '\n';
  text << "vertices:";
  json vertices = json::array();
  for (const auto& v : poly.vertices()) {
    text << ' ' << v;
    vertices.push_back(point_json(v));
  }
  text << '\n';

  bool regular = true;
  std::size_t index = 0;
  for (const auto& e : poly.edges()) {
    ++index;
    json edge = {{"start", point_json(e.start)},
                 {"end", point_json(e.end)},
                 {"slope", e.slope.to_string()},
                 {"length", e.length()},
                 {"e", e.denominator()}};
    text << "edge " << index << ": " << e.start << '-' << e.end << " slope "
         << e.slope.to_string() << " length " << e.length() << " e "
         << e.denominator();
    if (e.slope.positive()) {
      const ResidualPolynomial T = residual_polynomial(g, p, e);
      const bool sep = is_separable_mod_p(T);
      regular = regular && sep;
      json coeffs = json::array();
      for (const auto& c : T.coefficients) coeffs.push_back(c.str());
      edge["residual"] = T.to_string();
      edge["residual_coefficients"] = coeffs;
      edge["separable"] = sep;
      text << " residual " << T.to_string() << " separable "
           << (sep ? "yes" : "no");
    } else {
      regular = false;
      edge["residual"] = nullptr;
      edge["residual_coefficients"] = nullptr;
      edge["separable"] = nullptr;
      text << " residual -";
    }
    text << '\n';
    edges.push_back(std::move(edge));
  }

  const auto degree = static_cast<std::int64_t>(g.degree());
  const bool eisenstein =
      poly.vertices() == std::vector<Point>{{0, 0}, {degree, 1}};
  std::optional<std::uint64_t> count;
  if (poly.all_slopes_positive()) count = lattice_count(poly);
  if (eisenstein) text << "eisenstein: yes\n";
  text << "lattice count: " << (count ? std::to_string(*count) : "n/a") << '\n';
  text << "ore regular: " << (regular ? "yes" : "no") << '\n';

  if (as_json) {
    json out = {{"command", "polygon"},
                {"prime", p.str()},
                {"polynomial", g.to_string()},
                {"status", "ok"},
                {"vertices", vertices},
                {"edges", edges},
                {"eisenstein", eisenstein},
                {"ore_regular", regular},
                {"lattice_count", count ? json(*count) : json(nullptr)}};
    io.out << out.dump() << '\n';
  } else {
    io.out << text.str();
  }
  return kOk;
}

inline int run_verify(const std::string& n_text, const std::string& a_text,
                      bool as_json, unsigned threads, Io io) {
  const Integer n_max = parse_arg(n_text, "n_max");
  const Integer a_max = parse_arg(a_text, "a_max");
  if (n_max < 2 || a_max < 2)
    throw InvalidArgument("verify needs n_max >= 2 and a_max >= 2");
  if (n_max > 4096 || a_max > 1'000'000)
    throw InvalidArgument("verify range too large");
  const SweepReport r = sweep(static_cast<std::uint64_t>(n_max),
                              static_cast<std::uint64_t>(a_max), threads);
  if (as_json) {
    io.out << to_json(r).dump() << '\n';
  } else {
    io.out << "range: 2 <= n <= " << r.n_max << ", 2 <= |a| <= " << r.a_max << '\n'
           << "pairs: " << r.pairs << " validated: " << r.validated
           << " reducible: " << r.skipped_reducible
           << " hypothesis_violation: " << r.skipped_hypothesis << '\n'
           << "checks: global_relation " << r.checks.global_relation
           << ", route_agreement " << r.checks.route_agreement
           << ", lattice_oracle " << r.checks.lattice_oracle
           << ", vertex_prediction " << r.checks.vertex_prediction
           << ", monogenic " << r.checks.monogenic << '\n'
           << "passed: " << r.checks_passed << " of " << r.checks.total() << '\n'
           << "failures: " << r.failures.size() << '\n';
    for (const auto& f : r.failures)
      io.out << "  " << f.check << " n=" << f.n << " a=" << f.a
             << (f.prime.empty() ? "" : " p=" + f.prime) << " expected "
             << f.expected << " got " << f.actual << '\n';
    io.out << "time: " << r.wall_time_seconds << " s\n";
  }
  return r.ok() ? kOk : kVerificationFailed;
}

/// "a mod p^(s+1)" at each p | n; this residue fixes the p-part of d_K.
inline std::string congruence_class(const ValidatedPureField& f) {
  std::string s;
  for (const auto& d : f.degree_primes()) {
    if (!s.empty()) s += "; ";
    const Integer mod = ipow(d.prime, d.s + 1);
    s += mod_floor(f.a(), mod).str() + " mod " + mod.str();
  }
  return s;
}

inline int run_table(const std::string& degree_text, const std::string& lo_text,
                     const std::string& hi_text, const std::string& format,
                     Io io) {
  const std::uint64_t n = parse_degree(degree_text);
  const Integer lo = parse_arg(lo_text, "a_min");
  const Integer hi = parse_arg(hi_text, "a_max");
  if (hi - lo > 1'000'000) throw InvalidArgument("table range too large");
  if (format != "text" && format != "csv" && format != "json")
    throw InvalidArgument("format must be text, csv or json");

  json rows = json::array();
  std::ostringstream text;
  if (format == "csv") text << "a,class,discriminant\n";
  bool consistent = true;
  for (Integer a = lo; a <= hi; ++a) {
    if (a == 0) continue;
    std::optional<ValidatedPureField> f;
    try {
      f = validate(n, a);
    } catch (const ReducibleError&) {
      continue;
    } catch (const HypothesisViolation&) {
      continue;
    }
    const FactoredInteger d = discriminant(*f);
    if (!check_global_relation(*f)) consistent = false;
    if (n == 8 && is_squarefree(a) && !(octic_table(a) == d)) consistent = false;
    const std::string cls = congruence_class(*f);
    const std::string rendered = render_factored(d, true, false);
    rows.push_back({{"a", a.str()}, {"class", cls}, {"result", result_json(d, false)}});
    if (format == "csv")
      text << a << ',' << cls << ',' << rendered << '\n';
    else
      text << "a=" << a << "  [" << cls << "]  d_K = " << rendered << '\n';
  }
  if (format == "json") {
    json out = {{"command", "table"},
                {"degree", std::to_string(n)},
                {"a_min", lo.str()},
                {"a_max", hi.str()},
                {"rows", rows}};
    io.out << out.dump() << '\n';
  } else {
    io.out << text.str();
  }
  if (!consistent) {
    io.err << "error: verification failed for some table row\n";
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace detail

/// Runs the CLI on `args` (program name excluded).
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  detail::Io io{out, err};
  CLI::App app{"Discriminants and indices of pure number fields Q(a^(1/n))",
               "purefield"};
  app.require_subcommand(1);

  detail::FieldOptions field;
  const auto add_field = [&](const char* name, const char* help, bool with_flags) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("n", field.n, "degree n >= 2")->required();
    sub->add_option("a", field.a, "radicand a != 0")->required();
    sub->add_flag("--json", field.json, "emit a JSON record");
    sub->add_flag("--check", field.check, "cross-check against the Ore route");
    if (with_flags) sub->add_flag("--decimal", field.decimal, "append the exact value");
    return sub;
  };
  CLI::App* disc = add_field("disc", "discriminant d_K in factored form", true);
  CLI::App* index = add_field("index", "index [A_K : Z[theta]]", true);
  CLI::App* mono = add_field("monogenic", "is {1, theta, ...} an integral basis", false);

  std::string poly_prime, poly_spec;
  bool poly_json = false;
  CLI::App* polygon = app.add_subcommand("polygon", "p-adic Newton polygon data");
  polygon->add_option("p", poly_prime, "prime")->required();
  polygon->add_option("spec", poly_spec,
                      "xn-a:<n>:<a> | shifted:<p>:<s>:<a> | c0,c1,...,cn")
      ->required();
  polygon->add_flag("--json", poly_json, "emit JSON");

  std::string n_max, a_max;
  bool verify_json = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  CLI::App* verify = app.add_subcommand("verify", "sweep every cross-check");
  verify->add_option("n_max", n_max, "largest degree")->required();
  verify->add_option("a_max", a_max, "largest |a|")->required();
  verify->add_flag("--json", verify_json, "emit the full report as JSON");
  verify->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));

  std::string degree, lo, hi, format = "text";
  CLI::App* table = app.add_subcommand("table", "discriminants over a range of a");
  table->add_option("degree", degree, "degree n")->required();
  table->add_option("a_min", lo, "smallest a")->required();
  table->add_option("a_max", hi, "largest a")->required();
  table->add_option("--format", format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kRejected;
  }

  try {
    using detail::FieldCommand;
    if (*disc) return detail::run_field_command(FieldCommand::Disc, field, io);
    if (*index) return detail::run_field_command(FieldCommand::Index, field, io);
    if (*mono) return detail::run_field_command(FieldCommand::Monogenic, field, io);
    if (*polygon) return detail::run_polygon(poly_prime, poly_spec, poly_json, io);
    if (*verify) return detail::run_verify(n_max, a_max, verify_json, threads, io);
    if (*table) return detail::run_table(degree, lo, hi, format, io);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kRejected;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kRejected;
}

}  // namespace purefield::cli
