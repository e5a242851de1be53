#include "cli.hpp"

#include <cobord/coeff_series.hpp>
#include <cobord/fgl.hpp>
#include <cobord/segre.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace cobord::cli {

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (lo > hi) throw std::invalid_argument("empty range");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range '" + text + "'");
  }
}

namespace {

int default_trunc(std::optional<int> given, int fallback) {
  if (given) return *given;
  if (const char* env = std::getenv("COBORD_TRUNC")) {
    try {
      return std::stoi(env);
    } catch (const std::logic_error&) {
      throw std::invalid_argument(std::string("COBORD_TRUNC is not an integer: ") + env);
    }
  }
  return fallback;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Closed: return "closed";
    case Method::Iterative: return "iterative";
    case Method::Tower: return "tower";
    case Method::All: return "all";
  }
  return "?";
}

// Bundle E (roots x1..xe) and optionally F (roots y1..yf) over {x, y, u}.
struct SegreSetup {
  std::vector<std::string> E, F;
  AlphabetPtr alph;
};

SegreSetup segre_setup(int e, int f) {
  SegreSetup s;
  s.E = root_names("x", e);
  s.F = root_names("y", f);
  std::vector<std::string> all = s.E;
  all.insert(all.end(), s.F.begin(), s.F.end());
  s.alph = segre_alphabet(all, "u");
  return s;
}

GradedSeries in_chern(GradedSeries f, const SegreSetup& s) {
  f = to_chern_classes(f, s.E, "E");
  if (!s.F.empty()) f = to_chern_classes(f, s.F, "F");
  return f;
}

io::Json chern_terms_json(const GradedSeries& f, int index) {
  io::Json terms = io::Json::array();
  const Alphabet& alph = *f.alphabet();
  for (const auto& t : f.terms()) {
    io::Json factors = io::Json::array();
    for (std::size_t v = 0; v < alph.size(); ++v) {
      const std::string& name = alph[v].name;
      // names look like "c2(E)"
      const auto open = name.find('(');
      if (name.empty() || name[0] != 'c' || open == std::string::npos) continue;
      const int i = std::stoi(name.substr(1, open - 1));
      const std::string bundle = name.substr(open + 1, name.size() - open - 2);
      for (int p = 0; p < t.mono[v]; ++p) factors.push_back(io::Json{{"chern", {{"bundle", bundle}, {"i", i}}}});
    }
    terms.push_back(io::Json{{"coeff", io::monomial_coeff_to_json(f.theory(), t.gen, t.coeff)},
                             {"factors", factors},
                             {"index", index}});
  }
  return terms;
}

int run_segre(const JobSpec& spec, std::ostream& out) {
  if (spec.rank < 1 || spec.virtual_rank < 0) throw std::invalid_argument("need --rank >= 1 and --virtual >= 0");
  if (spec.rank + spec.virtual_rank > 6) throw std::invalid_argument("at most 6 roots in total");
  const int T = default_trunc(spec.trunc, 4);
  const TheorySpec th = make_theory(spec.theory, T);
  const FormalGroupLaw fgl = build_fgl(th);
  const auto [lo, hi] = spec.range_given ? std::pair{spec.range_lo, spec.range_hi} : std::pair{-T, T};
  if (lo < -T) throw std::invalid_argument("range starts below -T = " + std::to_string(-T));
  const SegreSetup s = segre_setup(spec.rank, spec.virtual_rank);
  const SegreSeries S = relative_segre(fgl, s.alph, s.E, s.F, "u", std::max(hi, 0));
  int status = kExitOk;
  io::Json terms = io::Json::array();
  std::ostringstream text;
  for (int m = lo; m <= hi; ++m) {
    const GradedSeries c = S.coefficient(m);
    if (spec.oracle && s.F.empty()) {
      const GradedSeries o = segre_residue_oracle(fgl, s.alph, s.E, m, minimal_padding(m, spec.rank));
      if (!o.same_terms(c)) status = kExitMismatch;
      text << "# oracle S_" << m << ": " << (o.same_terms(c) ? "agrees" : "DIFFERS") << "\n";
    }
    const GradedSeries ch = in_chern(c, s);
    if (spec.format == io::Format::Latex)
      text << "\\mathscr{S}_{" << m << "} &= " << ch.to_latex() << " \\\\\n";
    else
      text << "S_" << m << " = " << ch.to_string() << "\n";
    for (auto& t : chern_terms_json(ch, m)) terms.push_back(std::move(t));
  }
  if (spec.format == io::Format::Json) {
    io::Json meta{{"command", "segre"},
                  {"rank", spec.rank},
                  {"virtual_rank", spec.virtual_rank},
                  {"range", {lo, hi}},
                  {"theory", io::theory_to_json(th)}};
    out << io::dump(io::Json{{"meta", meta}, {"terms", terms}});
  } else {
    out << text.str();
  }
  return status;
}

int run_wclass(const JobSpec& spec, std::ostream& out) {
  if (spec.rank < 1 || spec.rank > 6) throw std::invalid_argument("need 1 <= --rank <= 6");
  const int T = default_trunc(spec.trunc, 4);
  const TheorySpec th = make_theory(spec.theory, T);
  const FormalGroupLaw fgl = build_fgl(th);
  const SegreSetup s = segre_setup(spec.rank, 0);
  const GradedSeries w = w_series(fgl, s.alph, s.E, "u");
  const GradedSeries wt = w_tilde_series(fgl, s.alph, s.E, "u");
  io::Json terms = io::Json::array();
  for (int k = 0; k <= T; ++k) {
    const GradedSeries a = in_chern(extract_in(w, "u", -k), s);
    const GradedSeries b = in_chern(extract_in(wt, "u", -k), s);
    if (spec.format == io::Format::Json) {
      for (auto& t : chern_terms_json(a, -k)) {
        t["class"] = "w";
        terms.push_back(std::move(t));
      }
      for (auto& t : chern_terms_json(b, -k)) {
        t["class"] = "w_tilde";
        terms.push_back(std::move(t));
      }
    } else if (spec.format == io::Format::Latex) {
      out << "w_{-" << k << "} &= " << a.to_latex() << " & \\tilde{w}_{-" << k << "} &= " << b.to_latex()
          << " \\\\\n";
    } else {
      out << "w_-" << k << " = " << a.to_string() << "\n";
      out << "w~_-" << k << " = " << b.to_string() << "\n";
    }
  }
  if (spec.format == io::Format::Json)
    out << io::dump(io::Json{
        {"meta", {{"command", "wclass"}, {"rank", spec.rank}, {"theory", io::theory_to_json(th)}}},
        {"terms", terms}});
  return kExitOk;
}

void print_expression(std::ostream& out, const std::string& label, const ClassExpression& e, const GrassmannContext& ctx,
                      io::Format format) {
  if (format == io::Format::Latex) {
    if (!e.terms().empty()) out << "% " << label << "\n" << e.to_latex() << "\n";
    return;
  }
  out << "[" << label << "]\n";
  if (!e.terms().empty() || !e.evaluated()) out << "  expression: " << e.to_string() << "\n";
  if (e.evaluated()) {
    const GrassmannRing ring(ctx.theory, ctx.d, ctx.n);
    out << "  schur:      " << e.evaluated()->to_string() << "\n";
    out << "  chern:      " << ring.to_chern(*e.evaluated()).to_string() << "\n";
  }
}

int run_kl(const JobSpec& spec, std::ostream& out) {
  const Partition lambda = validate_partition(spec.lambda, spec.d, spec.n);
  const KlMode mode = spec.method == Method::Tower ? KlMode::Evaluation : spec.mode;
  const GrassmannContext ctx =
      make_context(spec.theory, spec.d, spec.n, mode, default_trunc(spec.trunc, std::max(1, spec.d * (spec.n - spec.d))));
  std::vector<std::pair<std::string, ClassExpression>> results;
  if (spec.method == Method::Closed || spec.method == Method::All) results.emplace_back("closed", kl_closed(lambda, ctx));
  if (spec.method == Method::Iterative || spec.method == Method::All)
    results.emplace_back("iterative", kl_iterative(lambda, ctx));
  if (spec.method == Method::Tower || (spec.method == Method::All && mode == KlMode::Evaluation))
    results.emplace_back("tower", kl_tower_oracle(lambda, ctx));

  bool consistent = true;
  for (std::size_t i = 1; i < results.size(); ++i) {
    const ClassExpression& a = results.front().second;
    const ClassExpression& b = results[i].second;
    if (!b.terms().empty() && !a.same_terms(b)) consistent = false;
    if (a.evaluated() && b.evaluated() && !(*a.evaluated() == *b.evaluated())) consistent = false;
  }

  std::optional<SchurSpecialization> schur;
  if (ctx.theory.kind() == TheoryKind::Additive && mode == KlMode::Evaluation &&
      spec.method != Method::Tower)
    schur = kl_schur_specialization(results.front().second, lambda, ctx);

  io::Json meta{{"command", "kl"},
                {"d", ctx.d},
                {"n", ctx.n},
                {"lambda", lambda.parts},
                {"mode", mode == KlMode::Evaluation ? "evaluation" : "expression"},
                {"method", method_name(spec.method)}};
  if (spec.format == io::Format::Json) {
    if (results.size() == 1) {
      out << io::dump(io::expression_to_json(results.front().second, meta));
    } else {
      io::Json doc = io::Json::object();
      for (const auto& [label, e] : results) {
        io::Json m = meta;
        m["method"] = label;
        doc[label] = io::expression_to_json(e, m);
      }
      doc["consistent"] = consistent;
      out << io::dump(doc);
    }
  } else {
    if (spec.format == io::Format::Text)
      out << "kappa" << lambda.to_string() << " on Gr(" << ctx.d << "," << ctx.n << "), theory "
          << theory_short_name(ctx.theory.kind()) << ", T = " << ctx.theory.trunc() << ", "
          << (mode == KlMode::Evaluation ? "evaluation" : "expression") << " mode\n";
    for (const auto& [label, e] : results) print_expression(out, label, e, ctx, spec.format);
    if (results.size() > 1) out << "consistency: " << (consistent ? "PASS" : "FAIL") << "\n";
    if (schur) {
      if (spec.format == io::Format::Latex)
        out << "% Schur specialization\n" << schur->in_chern_q.to_latex() << "\n";
      else
        out << "schur specialization: " << schur->value.to_string() << "\n  in c(Q): " << schur->in_chern_q.to_string()
            << "\n";
    }
  }
  return consistent ? kExitOk : kExitMismatch;
}

// One verification line per identity.
class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  void check(const std::string& name, const std::function<std::string()>& body) {
    std::string failure;
    try {
      failure = body();
    } catch (const VerificationError& e) {
      failure = e.what();
    }
    if (failure.empty()) {
      out_ << "PASS " << name << "\n";
    } else {
      out_ << "FAIL " << name << ": " << failure << "\n";
      failed_ = true;
    }
  }

  bool failed() const noexcept { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

std::string first_difference(const GradedSeries& a, const GradedSeries& b) {
  const GradedSeries d = a - b;
  if (d.is_zero()) return "";
  std::ostringstream os;
  const SeriesTerm& t = d.terms().front();
  os << "first differing term " << GradedSeries::from_terms(d.theory(), d.alphabet(), {t}).to_string();
  return os.str();
}

void suite_fgl(const TheorySpec& th, Report& rep) {
  const FormalGroupLaw fgl = fgl_from_series(th, law_series(th));
  const AxiomReport axioms = verify_axioms(fgl);
  for (const auto& c : axioms.checks)
    rep.check(std::string(theory_short_name(th.kind())) + " fgl " + c.name, [&] {
      return c.passed ? std::string() : "first offending term " + c.first_offending;
    });
}

void suite_segre(const TheorySpec& th, Report& rep) {
  const FormalGroupLaw fgl = build_fgl(th);
  const std::string tag = std::string(theory_short_name(th.kind())) + " ";
  for (int e = 1; e <= 3; ++e) {
    const SegreSetup s = segre_setup(e, 0);
    rep.check(tag + "R_m = 0 for m > 0, rank " + std::to_string(e), [&] {
      r_series(fgl, s.alph, s.E, "u", th.trunc());
      return std::string();
    });
    rep.check(tag + "closed = residue oracle, rank " + std::to_string(e), [&] {
      const int M = std::min(3, th.trunc());
      const SegreSeries S = segre_closed(fgl, s.alph, s.E, "u", M);
      for (int m = -M; m <= M; ++m) {
        const std::string diff =
            first_difference(S.coefficient(m), segre_residue_oracle(fgl, s.alph, s.E, m, minimal_padding(m, e)));
        if (!diff.empty()) return "m = " + std::to_string(m) + ": " + diff;
      }
      return std::string();
    });
    rep.check(tag + "S(E-E) = P(u), rank " + std::to_string(e), [&] {
      const SegreSeries S = relative_segre(fgl, s.alph, s.E, s.E, "u", 0);
      return first_difference(S.series, p_script_series(th, s.alph, "u"));
    });
  }
  for (const auto& [e, f] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 1}})
    rep.check(tag + "push-forward of tau^s c_f, (e,f) = (" + std::to_string(e) + "," + std::to_string(f) + ")", [&] {
      const SegreSetup s = segre_setup(e, f);
      for (int sp = 0; sp <= 2; ++sp) pushforward_cf_twist(fgl, s.alph, s.E, s.F, sp);
      return std::string();
    });
}

void suite_kl(TheoryKind kind, std::optional<int> trunc, Report& rep) {
  const std::string tag = std::string(theory_short_name(kind)) + " ";
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}) {
    const GrassmannContext ctx = make_context(kind, d, n, KlMode::Evaluation, trunc);
    for (const auto& lambda : partitions_in_box(d, n - d)) {
      rep.check(tag + "kappa" + lambda.to_string() + " three paths, Gr(" + std::to_string(d) + "," +
                    std::to_string(n) + ")",
                [&] {
                  const ClassExpression c = kl_closed(lambda, ctx);
                  const ClassExpression it = kl_iterative(lambda, ctx);
                  const ClassExpression tw = kl_tower_oracle(lambda, ctx);
                  if (!c.same_terms(it)) return "closed " + c.to_string() + " vs iterative " + it.to_string();
                  if (!(*c.evaluated() == *tw.evaluated()))
                    return "closed " + c.evaluated()->to_string() + " vs tower " + tw.evaluated()->to_string();
                  if (kind == TheoryKind::Additive) kl_schur_specialization(c, lambda, ctx);
                  return std::string();
                });
    }
  }
  const GrassmannContext ctx3 = make_context(kind, 3, 5, KlMode::Expression, trunc);
  const Partition lambda3 = validate_partition({2, 2, 1}, 3, 5);
  rep.check(tag + "stage formula, sum form = product form", [&] {
    for (int i = 1; i <= 3; ++i)
      for (int s = 0; s <= 2; ++s) kl_stage_pushforward(i, s, lambda3, ctx3);
    return std::string();
  });
}

int run_check(const JobSpec& spec, std::ostream& out) {
  static const std::vector<std::string> suites{"fgl", "segre", "kl", "all"};
  if (std::find(suites.begin(), suites.end(), spec.suite) == suites.end())
    throw std::invalid_argument("unknown suite '" + spec.suite + "'");
  const std::optional<int> trunc =
      spec.trunc ? spec.trunc : (std::getenv("COBORD_TRUNC") ? std::optional<int>(default_trunc({}, 4)) : std::nullopt);
  const TheorySpec th = make_theory(spec.theory, trunc.value_or(4));
  Report rep(out);
  if (spec.suite == "fgl" || spec.suite == "all") suite_fgl(th, rep);
  if (spec.suite == "segre" || spec.suite == "all") suite_segre(th, rep);
  if (spec.suite == "kl" || spec.suite == "all") suite_kl(spec.theory, trunc, rep);
  return rep.failed() ? kExitMismatch : kExitOk;
}

}  // namespace

int run(const JobSpec& spec, std::ostream& out) {
  switch (spec.command) {
    case Command::Segre: return run_segre(spec, out);
    case Command::WClass: return run_wclass(spec, out);
    case Command::Kl: return run_kl(spec, out);
    case Command::Check: return run_check(spec, out);
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Segre and Kempf-Laksov classes in algebraic cobordism", "cobord"};
  app.require_subcommand(1);
  JobSpec spec;
  std::string theory = "add", format = "text", method = "closed", mode = "evaluation", lambda, range;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--theory", theory, "add | ck | univ")->capture_default_str();
    sub->add_option("--trunc", spec.trunc, "truncation order T (default: $COBORD_TRUNC, then a per-command default)");
    sub->add_option("--format", format, "json | latex | text")->capture_default_str();
    sub->add_option("--out", spec.out, "write the output to a file");
  };
  CLI::App* segre = app.add_subcommand("segre", "Segre classes S_m(E) or relative classes S_m(E-F)");
  common(segre);
  segre->add_option("--rank", spec.rank, "rank e of E")->capture_default_str();
  segre->add_option("--virtual", spec.virtual_rank, "rank f of F")->capture_default_str();
  segre->add_option("--range", range, "degrees a..b (default -T..T)");
  segre->add_flag("--oracle", spec.oracle, "compare with the residue formula (exit 2 on mismatch)");

  CLI::App* wclass = app.add_subcommand("wclass", "w_{-s}(E) and w~_{-s}(E)");
  common(wclass);
  wclass->add_option("--rank", spec.rank, "rank e of E")->capture_default_str();

  CLI::App* kl = app.add_subcommand("kl", "Kempf-Laksov class kappa_lambda on Gr(d,n)");
  common(kl);
  kl->add_option("--d", spec.d, "rank of the subbundle S")->required();
  kl->add_option("--n", spec.n, "rank of E")->required();
  kl->add_option("--lambda", lambda, "partition, e.g. 2,1")->required();
  kl->add_option("--method", method, "closed | iterative | tower | all")->capture_default_str();
  kl->add_option("--mode", mode, "evaluation | expression")->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "run verification suites");
  common(check);
  check->add_option("--suite", spec.suite, "fgl | segre | kl | all")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    spec.theory = parse_theory_kind(theory);
    spec.format = io::parse_format(format);
    if (*segre) spec.command = Command::Segre;
    if (*wclass) spec.command = Command::WClass;
    if (*kl) spec.command = Command::Kl;
    if (*check) spec.command = Command::Check;
    if (!range.empty()) {
      std::tie(spec.range_lo, spec.range_hi) = parse_range(range);
      spec.range_given = true;
    }
    if (spec.command == Command::Kl) {
      spec.lambda = parse_parts(lambda);
      static const std::vector<std::pair<std::string, Method>> methods{
          {"closed", Method::Closed}, {"iterative", Method::Iterative}, {"tower", Method::Tower}, {"all", Method::All}};
      const auto it = std::find_if(methods.begin(), methods.end(), [&](const auto& m) { return m.first == method; });
      if (it == methods.end()) throw std::invalid_argument("unknown method '" + method + "'");
      spec.method = it->second;
      if (mode == "evaluation")
        spec.mode = KlMode::Evaluation;
      else if (mode == "expression")
        spec.mode = KlMode::Expression;
      else
        throw std::invalid_argument("unknown mode '" + mode + "'");
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = run(spec, buffer);
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (spec.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(spec.out);
    if (!file) {
      err << "error: cannot write " << spec.out << "\n";
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace cobord::cli
