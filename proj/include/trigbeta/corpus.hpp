#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trigbeta/expr.hpp"
#include "trigbeta/integrand.hpp"

namespace trigbeta {

enum class EntryStatus { Verified, ErratumSuspected, Corrected };

using ParamBinding = std::vector<std::int64_t>;

/// Exponent-triple template with expressions over the entry's integer
/// parameters, e.g. alpha = "2*n", beta = "-(2*p+2*n+2)", gamma = "p".
struct IntegrandTemplate {
  std::string alpha_expr;
  std::string beta_expr;
  std::string gamma_expr;
};

/// One table entry: its id, the citation anchor it was transcribed from,
/// the integrand (fixed DSL text or a parametric template with explicit
/// integer bindings), the closed form as printed, and the verification
/// status. Corrected entries additionally carry the corrected form; any
/// non-verified status requires a non-empty note.
struct CorpusEntry {
  std::string gr_id;
  std::string anchor;  // JSON field "paper_anchor"
  Interval interval = Interval::HalfPi;
  std::optional<std::string> integrand_dsl;
  std::optional<IntegrandTemplate> integrand_template;
  std::vector<std::string> params;
  std::vector<ParamBinding> bindings;     // empty for fixed entries
  std::string expected_form_src;          // node-tagged expression JSON
  std::optional<std::string> corrected_form_src;
  EntryStatus status = EntryStatus::Verified;
  std::string note;
};

enum class Verdict { Pass, Fail, ExpectedMismatch };

struct ReportRow {
  std::string gr_id;
  ParamBinding binding;
  std::string binding_str;  // "n=1, p=0"; empty for fixed entries
  EntryStatus status = EntryStatus::Verified;
  double closed_value = 0.0;  // printed form
  std::optional<double> corrected_value;
  double oracle_value = 0.0;
  double oracle_error = 0.0;
  /// |target - oracle| / max(1, |target|, |oracle|) where target is the
  /// corrected form when present, else the printed form.
  double rel_discrepancy = 0.0;
  /// |printed - oracle| / max(1, |oracle|): how far the printed form is
  /// from the truth, which is what flags an erratum.
  double printed_discrepancy = 0.0;
  Verdict verdict = Verdict::Fail;
  std::string detail;  // error text or note
};

struct VerificationReport {
  std::vector<ReportRow> rows;
  int pass_count = 0;
  int fail_count = 0;
  int mismatch_count = 0;
  double rel_tol = 0.0;
  double wall_ms = 0.0;
};

/// Evaluate a rational-valued arithmetic expression (+ - * / unary minus,
/// parentheses, integer literals, parameter names) over exact rationals.
Rational eval_param_expr(std::string_view text, const std::map<std::string, Rational>& env);

/// The corpus JSON bundled into the library, and the bundled list of
/// citation anchors every entry's anchor must appear in.
const std::string& default_corpus_json_text();
const std::vector<std::string>& bundled_anchors();

/// Parse a corpus document. Validates the schema, parses every integrand
/// (all bindings), builds every closed form, and rejects duplicate
/// gr_id + binding pairs. Errors carry the entry index / gr_id.
std::vector<CorpusEntry> parse_corpus_json(const std::string& json_text);

/// Load from a file path, or the embedded default corpus.
std::vector<CorpusEntry> load_corpus(const std::string& path);
std::vector<CorpusEntry> load_default_corpus();

/// Instantiate the entry's integrand at one binding.
TrigIntegrand instantiate_integrand(const CorpusEntry& entry, const ParamBinding& binding);

/// Instantiate the expected / corrected closed form at one binding.
ClosedForm instantiate_expected_form(const CorpusEntry& entry, const ParamBinding& binding);
std::optional<ClosedForm> instantiate_corrected_form(const CorpusEntry& entry,
                                                     const ParamBinding& binding);

/// Serialize a closed form into the same node-tagged expression JSON the
/// corpus uses (compact, single line).
std::string closed_form_to_expression_json(const ClosedForm& cf);

/// Verify one entry at one binding: evaluate the printed form (and the
/// corrected form when present), run the quadrature oracle, and assign the
/// verdict. Throws with gr_id context on divergence/overflow.
ReportRow verify_entry(const CorpusEntry& entry, const ParamBinding& binding, double rel_tol);

/// Verify every entry x binding, fanning out across `parallelism` workers.
/// Row order is deterministic (sorted by gr_id, then binding) regardless of
/// parallelism; row-level errors become Fail rows instead of aborting.
VerificationReport run_corpus(std::span<const CorpusEntry> entries, double rel_tol,
                              unsigned parallelism);

std::string report_to_markdown(const VerificationReport& report);
std::string report_to_json(const VerificationReport& report);

}  // namespace trigbeta
