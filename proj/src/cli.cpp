#include "trigbeta/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "trigbeta/corpus.hpp"
#include "trigbeta/identities.hpp"
#include "trigbeta/quad.hpp"
#include "trigbeta/reduce.hpp"

namespace trigbeta {

namespace {

using nlohmann::json;

constexpr double kIdentityThreshold = 1e-11;
constexpr std::size_t kShownAlternatives = 6;

std::string fmt(double v, const char* spec = "%.15g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

double discrepancy(double a, double b) {
  return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

struct EvalOptions {
  std::string input;
  double rel_tol = 1e-10;
  std::string format = "text";
  bool trace = false;
};

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  TrigIntegrand ti;
  try {
    ti = parse_integrand(opt.input);
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << "\n";
    return 1;
  }

  const ConvergenceVerdict verdict = convergence_check(ti);
  if (!verdict.convergent) {
    err << "divergent integral: " << verdict.reason << "\n";
    return 1;
  }

  const std::string canonical = render_integrand(ti);

  // quarter-pi integrands outside the exponent constraint have no closed
  // form here; report the quadrature value and the violated constraint
  try {
    const ReductionOutcome outcome = reduce(ti);
    const double closed = eval_closed_form(outcome.primary_form);
    const QuadratureResult oracle = integrate(ti);
    const double disc = discrepancy(closed, oracle.value);
    const int code = disc <= opt.rel_tol ? 0 : 2;

    if (opt.format == "json") {
      json doc;
      doc["integrand"] = canonical;
      doc["closed_form"] = {{"text", print_closed_form(outcome.primary_form)},
                            {"latex", print_closed_form_latex(outcome.primary_form)},
                            {"tree", json::parse(closed_form_to_expression_json(
                                         outcome.primary_form))},
                            {"value", closed}};
      json alts = json::array();
      for (const AlternativeForm& a : outcome.alternative_forms) {
        alts.push_back({{"text", print_closed_form(a.form)}, {"rules", a.rules}});
      }
      doc["alternative_forms"] = std::move(alts);
      doc["oracle"] = {{"value", oracle.value},
                       {"error_estimate", oracle.error_estimate},
                       {"levels_used", oracle.levels_used},
                       {"evaluations", oracle.evaluations},
                       {"converged", oracle.converged}};
      doc["rel_discrepancy"] = disc;
      if (opt.trace) {
        json steps = json::array();
        for (const DerivationStep& s : outcome.derivation.steps) {
          steps.push_back({{"rule", s.rule_id},
                           {"anchor", s.anchor},
                           {"description", s.description},
                           {"state_after", s.state_after}});
        }
        doc["derivation"] = std::move(steps);
      }
      doc["exit"] = code;
      out << doc.dump(2) << "\n";
      return code;
    }

    const bool md = opt.format == "md";
    const char* strong = md ? "**" : "";
    out << strong << "integral:" << strong << "    " << canonical << "\n";
    out << strong << "closed form:" << strong << " " << print_closed_form(outcome.primary_form)
        << "\n";
    out << "  = " << fmt(closed) << "\n";
    if (!outcome.alternative_forms.empty()) {
      out << strong << "alternative forms:" << strong << " (showing "
          << std::min(kShownAlternatives, outcome.alternative_forms.size()) << " of "
          << outcome.alternative_forms.size() << ")\n";
      for (std::size_t i = 0; i < outcome.alternative_forms.size() && i < kShownAlternatives;
           ++i) {
        const AlternativeForm& a = outcome.alternative_forms[i];
        out << "  " << print_closed_form(a.form) << "   [";
        for (std::size_t j = 0; j < a.rules.size(); ++j) out << (j ? ", " : "") << a.rules[j];
        out << "]\n";
      }
    }
    out << strong << "oracle:" << strong << "      " << fmt(oracle.value) << " ± "
        << fmt(oracle.error_estimate, "%.3e") << "  (levels=" << oracle.levels_used
        << ", evaluations=" << oracle.evaluations << ", converged=" << (oracle.converged ? "yes" : "no")
        << ")\n";
    out << strong << "discrepancy:" << strong << " " << fmt(disc, "%.3e") << "\n";
    if (opt.trace) {
      out << strong << "derivation:" << strong << "\n" << derivation_to_text(outcome.derivation);
      if (md) {
        out << "\nderivation (LaTeX):\n```latex\n"
            << derivation_to_latex(outcome.derivation) << "```\n";
      }
    }
    return code;
  } catch (const ConstraintError& ex) {
    const QuadratureResult oracle = integrate(ti);
    if (opt.format == "json") {
      json doc;
      doc["integrand"] = canonical;
      doc["closed_form"] = nullptr;
      doc["constraint_residue"] = ex.delta.str();
      doc["note"] = ex.what();
      doc["oracle"] = {{"value", oracle.value},
                       {"error_estimate", oracle.error_estimate},
                       {"levels_used", oracle.levels_used},
                       {"evaluations", oracle.evaluations},
                       {"converged", oracle.converged}};
      doc["exit"] = 3;
      out << doc.dump(2) << "\n";
    } else {
      out << "integral:    " << canonical << "\n";
      out << "no closed form: " << ex.what() << "\n";
      out << "quadrature:  " << fmt(oracle.value) << " ± " << fmt(oracle.error_estimate, "%.3e")
          << "  (levels=" << oracle.levels_used << ", evaluations=" << oracle.evaluations << ")\n";
    }
    return 3;
  }
}

struct VerifyOptions {
  std::string corpus_path;  // empty = embedded default
  double rel_tol = 1e-10;
  std::string format = "text";
  unsigned jobs = 0;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<CorpusEntry> entries;
  try {
    entries = opt.corpus_path.empty() ? load_default_corpus() : load_corpus(opt.corpus_path);
  } catch (const Error& ex) {
    err << "corpus load error: " << ex.what() << "\n";
    return 1;
  }
  const unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  const VerificationReport report = run_corpus(entries, opt.rel_tol, jobs);
  if (opt.format == "json") {
    out << report_to_json(report);
  } else {
    out << report_to_markdown(report);
  }
  return report.fail_count == 0 ? 0 : 2;
}

struct IdentityOptions {
  int samples = 1000;
  std::uint64_t seed = 1;
};

int cmd_identities(const IdentityOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.samples < 1) {
    err << "usage error: --samples must be >= 1\n";
    return 1;
  }
  const auto checks = run_identity_suite(opt.seed, opt.samples);
  out << identity_suite_text(checks, opt.seed, kIdentityThreshold);
  for (const IdentityCheck& c : checks)
    if (c.max_rel_err > kIdentityThreshold) return 2;
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symbolic beta/gamma reduction of trigonometric power integrals, with a "
               "double-exponential quadrature cross-check"};
  app.name("trigbeta");

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand(
      "eval", "reduce one integral to a closed form and cross-check it numerically");
  eval->add_option("integral", eval_opt.input, "integrand DSL, e.g. \"int[0,pi/2] tan(x)^(1/2) dx\"")
      ->required();
  eval->add_option("--tol", eval_opt.rel_tol, "relative agreement tolerance");
  eval->add_option("--format", eval_opt.format, "text | json | md")
      ->check(CLI::IsMember({"text", "json", "md"}));
  eval->add_flag("--trace", eval_opt.trace, "print the derivation steps");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "verify the table corpus against quadrature");
  verify->add_option("--corpus", verify_opt.corpus_path, "corpus JSON path (default: embedded)");
  verify->add_option("--tol", verify_opt.rel_tol, "relative tolerance");
  verify->add_option("--format", verify_opt.format, "text | json | md")
      ->check(CLI::IsMember({"text", "json", "md"}));
  verify->add_option("--jobs", verify_opt.jobs, "worker threads (default: hardware)");

  IdentityOptions id_opt;
  CLI::App* identities =
      app.add_subcommand("identities", "run the seeded randomized gamma-identity checks");
  identities->add_option("--samples", id_opt.samples, "samples per identity");
  identities->add_option("--seed", id_opt.seed, "PRNG seed (splitmix64)");

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("trigbeta");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_opt, out, err);
    if (verify->parsed()) return cmd_verify(verify_opt, out, err);
    if (identities->parsed()) return cmd_identities(id_opt, out, err);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 1;
}

}  // namespace trigbeta
