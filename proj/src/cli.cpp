#include "sphinv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphinv/const_expr.hpp"
#include "sphinv/errors.hpp"
#include "sphinv/extrema.hpp"
#include "sphinv/family.hpp"
#include "sphinv/inverses.hpp"
#include "sphinv/lambert.hpp"
#include "sphinv/laurent.hpp"
#include "sphinv/parser.hpp"
#include "sphinv/recognizer.hpp"
#include "sphinv/solver.hpp"

namespace sphinv::cli {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

std::string fmtl(long double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.19Lg", v);
  return b;
}

std::string rational_str(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Family parse_family(const std::string& s) {
  if (s.size() != 1)
    throw DomainError("family must be a single letter: Y, J, I, or K");
  return family_from_char(s[0]);
}

double const_value(const std::string& text) {
  return parse_const(text).value();
}

const char* kind_name(ExtremumKind k) {
  switch (k) {
    case ExtremumKind::stationary:
      return "stationary";
    case ExtremumKind::pole:
      return "pole";
    default:
      return "boundary";
  }
}

json limit_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

struct EvalArgs {
  std::string family;
  int n = 0;
  std::string x;
  int deriv = 0;
};

struct SampleArgs {
  std::string family;
  int n = 0;
  double x0 = 0, x1 = 1;
  int count = 65;
  int deriv = 0;
};

int do_eval(const EvalArgs& a, const std::string& format, std::ostream& out) {
  Family fam = parse_family(a.family);
  double x = const_value(a.x);
  double v = a.deriv == 0   ? eval(fam, a.n, x)
             : a.deriv == 1 ? eval_derivative(fam, a.n, x)
                            : eval_second_derivative(fam, a.n, x);
  if (format == "json") {
    json j;
    j["family"] = family_name(fam);
    j["n"] = a.n;
    j["x"] = x;
    j["derivative"] = a.deriv;
    j["value"] = std::isfinite(v) ? json(v) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    const char* tick = a.deriv == 0 ? "" : a.deriv == 1 ? "'" : "''";
    out << family_name(fam) << "_" << a.n << tick << "(" << fmt(x)
        << ") = " << fmt(v) << "\n";
  }
  return 0;
}

int do_table(const std::string& family, int n, const std::string& format,
             std::ostream& out) {
  Family fam = parse_family(family);
  const LaurentForm& row = coefficients(fam, n);
  if (format == "json") {
    json j;
    j["family"] = family_name(fam);
    j["n"] = n;
    json p = json::array(), q = json::array();
    for (const auto& c : row.pcoeffs) p.push_back(c.get_str());
    for (const auto& c : row.qcoeffs) q.push_back(c.get_str());
    j["p"] = p;
    j["q"] = q;
    j["rendered"] = to_string(row);
    if (fam == Family::K) j["dlmf_scale"] = kDlmfKFactor;
    out << j.dump(2) << "\n";
  } else {
    out << family_name(fam) << "_" << n << "(x) = " << to_string(row) << "\n";
    out << "p (x^-l, l = 1.." << row.pcoeffs.size() << "):";
    for (const auto& c : row.pcoeffs) out << " " << c.get_str();
    out << "\n";
    if (!row.qcoeffs.empty()) {
      out << "q (x^-l, l = 1.." << row.qcoeffs.size() << "):";
      for (const auto& c : row.qcoeffs) out << " " << c.get_str();
      out << "\n";
    }
    if (fam == Family::K)
      out << "note: DLMF normalization K_" << n << " = pi/2 * k_" << n << "\n";
  }
  return 0;
}

int do_extrema(const std::string& family, int n, int m,
               const std::string& format, std::ostream& out) {
  Family fam = parse_family(family);
  const ExtremumRecord& r = infsupum(fam, n, m);
  if (format == "json") {
    json j;
    j["family"] = family_name(fam);
    j["n"] = n;
    j["m"] = m;
    j["kind"] = kind_name(r.kind);
    j["abscissa"] = r.abscissa;
    j["ordinate"] = std::isnan(r.ordinate) ? json(nullptr) : json(r.ordinate);
    if (r.kind == ExtremumKind::pole) {
      j["limit_from_above"] = limit_json(r.limit_from_above);
      j["limit_from_below"] = limit_json(r.limit_from_below);
    }
    out << j.dump(2) << "\n";
  } else {
    out << family_name(fam) << "_" << n << " m=" << m << ": " << kind_name(r.kind)
        << " at x = " << fmt(r.abscissa);
    if (!std::isnan(r.ordinate)) out << ", f(x) = " << fmt(r.ordinate);
    if (r.kind == ExtremumKind::pole)
      out << " (limit from above " << fmt(r.limit_from_above)
          << ", from below " << fmt(r.limit_from_below) << ")";
    out << "\n";
  }
  return 0;
}

int do_inverse(const std::string& family, int n, int b, const std::string& c0text,
               double tolerance, const std::string& format, std::ostream& out) {
  Family fam = parse_family(family);
  ConstExpr c0 = parse_const(c0text);
  InverseQuery q{fam, n, b, c0.value(), tolerance};
  double x = inverse(q);
  std::ostringstream tag;
  tag << "inverse_" << b << "(" << family_name(fam) << "_" << n << ")("
      << c0.to_string() << ")";
  if (format == "json") {
    json j;
    j["family"] = family_name(fam);
    j["n"] = n;
    j["branch"] = b;
    j["c0"] = c0.to_string();
    j["c0_value"] = c0.value();
    j["x"] = x;
    j["closed_form"] = tag.str();
    out << j.dump(2) << "\n";
  } else {
    out << tag.str() << " = " << fmt(x) << "\n";
  }
  return 0;
}

int do_solve(const std::string& eq_text, int max_branch, double max_x,
             const std::string& format, std::ostream& out) {
  RawEquation raw = parse_equation(eq_text);
  EquationNormalForm nf = normalize(raw);
  BranchLimits lim;
  lim.max_abs_branch = max_branch;
  lim.max_abs_x = max_x;
  SolutionSet ss = solve(nf, lim);
  if (format == "json") {
    json j;
    j["equation"] = to_string(raw);
    json nfj;
    nfj["family"] = family_name(nf.family);
    nfj["n"] = nf.n;
    nfj["lambda"] = rational_str(nf.lambda);
    nfj["c0"] = nf.c0.to_string();
    nfj["c0_value"] = nf.c0.value();
    nfj["power_shift"] = nf.power_shift;
    nfj["annihilated_x0"] = nf.annihilated_x0;
    nfj["introduced_x0"] = nf.introduced_x0;
    j["normal_form"] = nfj;
    json sols = json::array();
    for (const Solution& s : ss.solutions) {
      json sj;
      sj["branch"] = s.b;
      sj["x"] = s.x;
      sj["closed_form"] = s.closed_form;
      sols.push_back(sj);
    }
    j["solutions"] = sols;
    j["truncated"] = ss.truncated;
    j["x0_caveat"] = ss.x0_caveat;
    if (!ss.note.empty()) j["note"] = ss.note;
    out << j.dump(2) << "\n";
  } else {
    out << "equation: " << to_string(raw) << "\n";
    out << "normal form: " << family_name(nf.family) << "_" << nf.n
        << "(x) = " << nf.c0.to_string() << "  (lambda = "
        << rational_str(nf.lambda) << ", divided by x^" << nf.power_shift
        << ")\n";
    if (ss.solutions.empty()) out << "no real solutions\n";
    for (const Solution& s : ss.solutions)
      out << "x = " << fmt(s.x) << "  [" << s.closed_form << "]\n";
    if (ss.truncated) out << "warning: branch list truncated by limits\n";
    if (!ss.note.empty()) out << "note: " << ss.note << "\n";
  }
  return 0;
}

int do_recognize(const std::string& text, const SearchConfig& cfg,
                 const std::string& format, std::ostream& out) {
  FloatInput in = make_float_input(text);
  std::vector<Candidate> cands = recognize(in, cfg);
  if (format == "json") {
    json j;
    j["input"] = in.text;
    j["value"] = static_cast<double>(in.value);
    j["precision"] = in.precision;
    json arr = json::array();
    for (const Candidate& c : cands) {
      json cj;
      cj["closed_form"] = c.closed_form;
      cj["family"] = family_name(c.family);
      cj["n"] = c.n;
      cj["branch"] = c.b;
      cj["c0"] = c.c0.to_string();
      cj["value"] = static_cast<double>(c.reproduced);
      cj["agreement"] = c.agreement;
      cj["entropy"] = c.entropy;
      cj["margin"] = c.margin;
      arr.push_back(cj);
    }
    j["candidates"] = arr;
    out << j.dump(2) << "\n";
  } else {
    out << "input " << in.text << " (" << in.precision
        << " significant digits)\n";
    if (cands.empty()) out << "no closed form found\n";
    for (const Candidate& c : cands) {
      char line[256];
      std::snprintf(line, sizeof line, "  [agreement %.1f, entropy %.2f, margin %.2f]",
                    c.agreement, c.entropy, c.margin);
      out << c.closed_form << " = " << fmtl(c.reproduced) << line << "\n";
    }
  }
  return 0;
}

int do_lambert(int branch, const std::string& dtext, const std::string& format,
               std::ostream& out) {
  double d = const_value(dtext);
  double w = w_via_k0(branch, d);
  double wd = lambert_w(branch, d);
  double resid = w * std::exp(w) - d;
  if (format == "json") {
    json j;
    j["branch"] = branch;
    j["d"] = d;
    j["w"] = w;
    j["w_direct"] = wd;
    j["residual"] = resid;
    out << j.dump(2) << "\n";
  } else {
    out << "W_" << branch << "(" << fmt(d) << ") = " << fmt(w) << "\n";
    out << "direct iteration gives " << fmt(wd) << "; w*e^w - d = "
        << fmt(resid) << "\n";
  }
  return 0;
}

int do_sample(const SampleArgs& a, const std::string& format,
              std::ostream& out) {
  Family fam = parse_family(a.family);
  if (a.count < 2) throw DomainError("sample count must be at least 2");
  if (!(a.x1 > a.x0)) throw DomainError("sample needs x1 > x0");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(a.count));
  for (int i = 0; i < a.count; ++i) {
    double x = a.x0 + (a.x1 - a.x0) * static_cast<double>(i) /
                          static_cast<double>(a.count - 1);
    double f = std::numeric_limits<double>::quiet_NaN();
    try {
      f = a.deriv == 0   ? eval(fam, a.n, x)
          : a.deriv == 1 ? eval_derivative(fam, a.n, x)
                         : eval_second_derivative(fam, a.n, x);
    } catch (const Error&) {
      // leave NaN at poles
    }
    pts.emplace_back(x, f);
  }
  if (format == "json") {
    json j;
    j["family"] = family_name(fam);
    j["n"] = a.n;
    j["derivative"] = a.deriv;
    json arr = json::array();
    for (auto& [x, f] : pts) {
      json p;
      p["x"] = x;
      p["f"] = std::isfinite(f) ? json(f) : json(nullptr);
      arr.push_back(p);
    }
    j["points"] = arr;
    out << j.dump(2) << "\n";
  } else if (format == "csv") {
    out << "x,f\n";
    for (auto& [x, f] : pts) {
      out << fmt(x) << ",";
      if (std::isfinite(f)) out << fmt(f);
      out << "\n";
    }
  } else {
    for (auto& [x, f] : pts) out << fmt(x) << "\t" << fmt(f) << "\n";
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "Exact Laurent forms of spherical Bessel families, their branched real "
      "inverses, closed-form equation solving, and float-constant "
      "recognition"};
  app.name("sphinv");
  app.fallthrough();
  app.require_subcommand(1);

  std::string format = "human";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));

  EvalArgs ea;
  CLI::App* c_eval = app.add_subcommand("eval", "evaluate f_n(x)");
  c_eval->add_option("family", ea.family, "Y, J, I, or K")->required();
  c_eval->add_option("n", ea.n, "order")->required()->check(CLI::Range(0, 64));
  c_eval->add_option("x", ea.x, "abscissa (constant expression)")->required();
  c_eval->add_option("--deriv", ea.deriv, "derivative order")
      ->check(CLI::Range(0, 2));

  std::string t_family;
  int t_n = 0;
  CLI::App* c_table = app.add_subcommand("table", "exact Laurent coefficients");
  c_table->add_option("family", t_family, "Y, J, I, or K")->required();
  c_table->add_option("n", t_n, "order")->required()->check(CLI::Range(0, 64));

  std::string x_family;
  int x_n = 0, x_m = 0;
  CLI::App* c_extrema =
      app.add_subcommand("extrema", "indexed extremum / pole records");
  c_extrema->add_option("family", x_family, "Y, J, I, or K")->required();
  c_extrema->add_option("n", x_n, "order")->required()->check(CLI::Range(0, 64));
  c_extrema->add_option("m", x_m, "extremum index")->required();

  std::string i_family, i_c0;
  int i_n = 0, i_b = 0;
  double i_tol = 1e-15;
  CLI::App* c_inverse =
      app.add_subcommand("inverse", "branched inverse: x with f_n(x) = c0");
  c_inverse->add_option("family", i_family, "Y, J, I, or K")->required();
  c_inverse->add_option("n", i_n, "order")->required()->check(CLI::Range(0, 64));
  c_inverse->add_option("b", i_b, "branch index")->required();
  c_inverse->add_option("c0", i_c0, "target ordinate (constant expression)")
      ->required();
  c_inverse->add_option("--tolerance", i_tol, "relative tolerance");

  std::string s_eq;
  int s_maxb = 64;
  double s_maxx = std::numeric_limits<double>::infinity();
  CLI::App* c_solve =
      app.add_subcommand("solve", "solve an equation in closed form");
  c_solve->add_option("equation", s_eq, "e.g. \"cos(x) = x\"")->required();
  c_solve->add_option("--max-branch", s_maxb, "largest |branch| searched");
  c_solve->add_option("--max-x", s_maxx, "largest |x| searched");

  std::string r_value;
  SearchConfig r_cfg;
  CLI::App* c_recognize =
      app.add_subcommand("recognize", "query a float constant for closed forms");
  c_recognize->add_option("value", r_value, "decimal constant")->required();
  c_recognize->add_option("--max-order", r_cfg.max_order, "highest order")
      ->check(CLI::Range(0, 16));
  c_recognize->add_option("--branch-window", r_cfg.branch_window,
                          "largest |branch|");
  c_recognize->add_option("--max-denominator", r_cfg.max_denominator,
                          "largest snap denominator");
  c_recognize->add_option("--min-margin", r_cfg.min_margin,
                          "required agreement - entropy");

  int w_branch = 0;
  std::string w_d;
  CLI::App* c_lambert =
      app.add_subcommand("lambert", "Lambert W via the k_0 inverse bridge");
  c_lambert->add_option("branch", w_branch, "0 or -1")->required();
  c_lambert->add_option("d", w_d, "argument (constant expression)")->required();

  SampleArgs sa;
  CLI::App* c_sample = app.add_subcommand("sample", "tabulate f_n on a grid");
  c_sample->add_option("family", sa.family, "Y, J, I, or K")->required();
  c_sample->add_option("n", sa.n, "order")->required()->check(CLI::Range(0, 64));
  c_sample->add_option("x0", sa.x0, "grid start")->required();
  c_sample->add_option("x1", sa.x1, "grid end")->required();
  c_sample->add_option("count", sa.count, "number of points");
  c_sample->add_option("--deriv", sa.deriv, "derivative order")
      ->check(CLI::Range(0, 2));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 64;
  }

  if (format == "csv" && !c_sample->parsed()) {
    err << "error: csv format is only available for the sample subcommand\n";
    return 64;
  }

  try {
    if (c_eval->parsed()) return do_eval(ea, format, out);
    if (c_table->parsed()) return do_table(t_family, t_n, format, out);
    if (c_extrema->parsed())
      return do_extrema(x_family, x_n, x_m, format, out);
    if (c_inverse->parsed())
      return do_inverse(i_family, i_n, i_b, i_c0, i_tol, format, out);
    if (c_solve->parsed()) return do_solve(s_eq, s_maxb, s_maxx, format, out);
    if (c_recognize->parsed()) return do_recognize(r_value, r_cfg, format, out);
    if (c_lambert->parsed()) return do_lambert(w_branch, w_d, format, out);
    if (c_sample->parsed()) return do_sample(sa, format, out);
    err << "error: no subcommand\n";
    return 64;
  } catch (const NotTransformableError& e) {
    err << "error: " << e.what() << "\n";
    if (!e.hint.empty()) err << "hint: " << e.hint << "\n";
    return 3;
  } catch (const MixedFactorError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sphinv::cli
