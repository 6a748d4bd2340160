#include "trigbeta/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "trigbeta/quad.hpp"

namespace trigbeta {

namespace detail {
// defined in the generated corpus_data.cpp
const char* embedded_corpus_json();
const char* embedded_anchor_list();
}  // namespace detail

using nlohmann::json;

// ---- parameter expression evaluation ---------------------------------------

namespace {

// expr   := term { ('+'|'-') term }
// term   := unary { ('*'|'/') unary }
// unary  := '-' unary | atom
// atom   := integer | param | '(' expr ')'
class ParamExprParser {
 public:
  ParamExprParser(std::string_view text, const std::map<std::string, Rational>& env)
      : text_(text), env_(env) {}

  Rational run() {
    const Rational v = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw DomainError("trailing input in parameter expression '" + std::string(text_) + "'");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Rational expr() {
    Rational v = term();
    for (;;) {
      if (accept('+')) v = v + term();
      else if (accept('-')) v = v - term();
      else return v;
    }
  }

  Rational term() {
    Rational v = unary();
    for (;;) {
      if (accept('*')) v = v * unary();
      else if (accept('/')) v = v / unary();
      else return v;
    }
  }

  Rational unary() {
    if (accept('-')) return -unary();
    return atom();
  }

  Rational atom() {
    skip_ws();
    if (accept('(')) {
      const Rational v = expr();
      if (!accept(')')) throw DomainError("missing ')' in parameter expression");
      return v;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::int64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        if (v < 0) throw OverflowError("integer literal out of range");
        ++pos_;
      }
      return Rational(v);
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string name(text_.substr(pos_, end - pos_));
      pos_ = end;
      const auto it = env_.find(name);
      if (it == env_.end()) throw DomainError("unknown parameter '" + name + "'");
      return it->second;
    }
    throw DomainError("malformed parameter expression '" + std::string(text_) + "'");
  }

  std::string_view text_;
  const std::map<std::string, Rational>& env_;
  std::size_t pos_ = 0;
};

std::map<std::string, Rational> make_env(const CorpusEntry& entry, const ParamBinding& binding) {
  if (binding.size() != entry.params.size())
    throw DomainError("binding arity mismatch for entry " + entry.gr_id);
  std::map<std::string, Rational> env;
  for (std::size_t i = 0; i < entry.params.size(); ++i)
    env[entry.params[i]] = Rational(binding[i]);
  return env;
}

Rational field_rational(const json& j, const char* field,
                        const std::map<std::string, Rational>& env) {
  if (!j.contains(field) || !j[field].is_string())
    throw DomainError(std::string("expression node missing string field '") + field + "'");
  return eval_param_expr(j[field].get<std::string>(), env);
}

std::int64_t field_integer(const json& j, const char* field,
                           const std::map<std::string, Rational>& env) {
  const Rational r = field_rational(j, field, env);
  if (!r.is_integer())
    throw DomainError(std::string("field '") + field + "' must evaluate to an integer");
  return r.num();
}

ClosedForm closed_form_from_json(const json& j, const std::map<std::string, Rational>& env) {
  if (!j.is_object() || !j.contains("node"))
    throw DomainError("expression node must be an object with a 'node' tag");
  const std::string tag = j["node"].get<std::string>();
  if (tag == "const") return ClosedForm::constant(field_rational(j, "value", env));
  if (tag == "pi") return ClosedForm::pi();
  if (tag == "gamma") return ClosedForm::gamma(field_rational(j, "arg", env));
  if (tag == "beta")
    return ClosedForm::beta(field_rational(j, "a", env), field_rational(j, "b", env));
  if (tag == "sinpi") return ClosedForm::sin_pi(field_rational(j, "arg", env));
  if (tag == "cospi") return ClosedForm::cos_pi(field_rational(j, "arg", env));
  if (tag == "binom")
    return ClosedForm::binom(field_integer(j, "n", env), field_integer(j, "k", env));
  if (tag == "fact") return ClosedForm::fact(field_integer(j, "n", env));
  if (tag == "pow")
    return ClosedForm::pow(closed_form_from_json(j.at("base"), env),
                           field_rational(j, "exp", env));
  if (tag == "mul") {
    if (!j.contains("factors") || !j["factors"].is_array())
      throw DomainError("mul node requires a 'factors' array");
    std::vector<ClosedForm> fs;
    for (const json& f : j["factors"]) fs.push_back(closed_form_from_json(f, env));
    return ClosedForm::mul(std::move(fs));
  }
  throw DomainError("unknown expression node tag '" + tag + "'");
}

Interval interval_from_string(const std::string& s) {
  if (s == "pi/2") return Interval::HalfPi;
  if (s == "pi/4") return Interval::QuarterPi;
  throw DomainError("interval must be \"pi/2\" or \"pi/4\", got \"" + s + "\"");
}

EntryStatus status_from_string(const std::string& s) {
  if (s == "verified") return EntryStatus::Verified;
  if (s == "erratum_suspected") return EntryStatus::ErratumSuspected;
  if (s == "corrected") return EntryStatus::Corrected;
  throw DomainError("unknown status \"" + s + "\"");
}

const char* status_to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Verified: return "verified";
    case EntryStatus::ErratumSuspected: return "erratum_suspected";
    case EntryStatus::Corrected: return "corrected";
  }
  return "?";
}

const char* verdict_to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::ExpectedMismatch: return "expected_mismatch";
  }
  return "?";
}

std::string binding_text(const CorpusEntry& entry, const ParamBinding& binding) {
  std::string s;
  for (std::size_t i = 0; i < binding.size(); ++i) {
    if (i) s += ", ";
    s += entry.params[i] + "=" + std::to_string(binding[i]);
  }
  return s;
}

}  // namespace

Rational eval_param_expr(std::string_view text, const std::map<std::string, Rational>& env) {
  return ParamExprParser(text, env).run();
}

const std::string& default_corpus_json_text() {
  static const std::string text = detail::embedded_corpus_json();
  return text;
}

const std::vector<std::string>& bundled_anchors() {
  static const std::vector<std::string> anchors = [] {
    std::vector<std::string> out;
    std::istringstream in(detail::embedded_anchor_list());
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) out.push_back(line);
    }
    return out;
  }();
  return anchors;
}

std::vector<CorpusEntry> parse_corpus_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("corpus JSON is malformed: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw DomainError("corpus document must be an object with an 'entries' array");

  std::vector<CorpusEntry> entries;
  std::set<std::string> seen;  // gr_id + serialized binding
  std::size_t index = 0;
  for (const json& je : doc["entries"]) {
    CorpusEntry e;
    const std::string where = "corpus entry #" + std::to_string(index);
    try {
      e.gr_id = je.at("gr_id").get<std::string>();
      e.anchor = je.at("paper_anchor").get<std::string>();
      e.interval = interval_from_string(je.at("interval").get<std::string>());
      e.status = status_from_string(je.at("status").get<std::string>());
      e.note = je.value("note", std::string());
      if ((e.status != EntryStatus::Verified) && e.note.empty())
        throw DomainError("non-verified status requires a note");

      const json& ji = je.at("integrand");
      if (ji.is_string()) {
        e.integrand_dsl = ji.get<std::string>();
      } else if (ji.is_object()) {
        const json& jt = ji.at("template");
        e.integrand_template =
            IntegrandTemplate{jt.at("alpha").get<std::string>(), jt.at("beta").get<std::string>(),
                              jt.at("gamma").get<std::string>()};
        for (const json& p : ji.at("params")) e.params.push_back(p.get<std::string>());
        for (const json& b : ji.at("bindings")) {
          ParamBinding binding;
          for (const json& v : b) binding.push_back(v.get<std::int64_t>());
          if (binding.size() != e.params.size())
            throw DomainError("binding arity does not match params");
          e.bindings.push_back(std::move(binding));
        }
        if (e.bindings.empty()) throw DomainError("parametric entry has no bindings");
      } else {
        throw DomainError("integrand must be DSL text or a template object");
      }

      e.expected_form_src = je.at("expected_form").dump();
      if (je.contains("corrected_form")) e.corrected_form_src = je["corrected_form"].dump();
      if (e.status == EntryStatus::Corrected && !e.corrected_form_src)
        throw DomainError("corrected status requires corrected_form");

      // validate every binding up front: integrand parses/instantiates and
      // the closed forms are well-formed
      std::vector<ParamBinding> all = e.bindings;
      if (all.empty()) all.push_back({});
      for (const ParamBinding& b : all) {
        const TrigIntegrand ti = instantiate_integrand(e, b);
        if (ti.interval != e.interval)
          throw DomainError("DSL interval disagrees with the entry interval");
        (void)instantiate_expected_form(e, b);
        (void)instantiate_corrected_form(e, b);
        std::string key = e.gr_id + "|";
        for (std::int64_t v : b) key += std::to_string(v) + ",";
        if (!seen.insert(key).second)
          throw DomainError("duplicate gr_id + binding: " + e.gr_id);
      }
    } catch (const json::exception& ex) {
      throw DomainError(where + " (" + e.gr_id + "): " + ex.what());
    } catch (const Error& ex) {
      throw DomainError(where + " (" + e.gr_id + "): " + ex.what());
    }
    entries.push_back(std::move(e));
    ++index;
  }
  return entries;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open corpus file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus_json(ss.str());
}

std::vector<CorpusEntry> load_default_corpus() {
  return parse_corpus_json(default_corpus_json_text());
}

TrigIntegrand instantiate_integrand(const CorpusEntry& entry, const ParamBinding& binding) {
  if (entry.integrand_dsl) {
    TrigIntegrand ti = parse_integrand(*entry.integrand_dsl);
    return ti;
  }
  const auto env = make_env(entry, binding);
  const IntegrandTemplate& t = *entry.integrand_template;
  TrigIntegrand ti;
  ti.sin_exp = eval_param_expr(t.alpha_expr, env);
  ti.cos_exp = eval_param_expr(t.beta_expr, env);
  ti.cos2x_exp = eval_param_expr(t.gamma_expr, env);
  ti.interval = entry.interval;
  if (ti.interval == Interval::HalfPi && !ti.cos2x_exp.is_zero())
    throw DomainError("cos(2x) exponent on the half-pi interval");
  return ti;
}

ClosedForm instantiate_expected_form(const CorpusEntry& entry, const ParamBinding& binding) {
  const auto env = make_env(entry, binding);
  return closed_form_from_json(json::parse(entry.expected_form_src), env);
}

std::optional<ClosedForm> instantiate_corrected_form(const CorpusEntry& entry,
                                                     const ParamBinding& binding) {
  if (!entry.corrected_form_src) return std::nullopt;
  const auto env = make_env(entry, binding);
  return closed_form_from_json(json::parse(*entry.corrected_form_src), env);
}

namespace {

json closed_form_to_json_node(const ClosedForm& cf) {
  switch (cf.kind()) {
    case NodeKind::Const:
      return {{"node", "const"}, {"value", cf.const_value().str()}};
    case NodeKind::Pi:
      return {{"node", "pi"}};
    case NodeKind::Gamma:
      return {{"node", "gamma"}, {"arg", cf.gamma_arg().str()}};
    case NodeKind::Beta:
      return {{"node", "beta"}, {"a", cf.beta_a().str()}, {"b", cf.beta_b().str()}};
    case NodeKind::SinPi:
      return {{"node", "sinpi"}, {"arg", cf.trig_arg().str()}};
    case NodeKind::CosPi:
      return {{"node", "cospi"}, {"arg", cf.trig_arg().str()}};
    case NodeKind::Binom:
      return {{"node", "binom"},
              {"n", std::to_string(cf.binom_n())},
              {"k", std::to_string(cf.binom_k())}};
    case NodeKind::Fact:
      return {{"node", "fact"}, {"n", std::to_string(cf.fact_n())}};
    case NodeKind::Pow:
      return {{"node", "pow"},
              {"base", closed_form_to_json_node(cf.pow_base())},
              {"exp", cf.pow_exp().str()}};
    case NodeKind::Mul: {
      json fs = json::array();
      for (const ClosedForm& f : cf.factors()) fs.push_back(closed_form_to_json_node(f));
      return {{"node", "mul"}, {"factors", std::move(fs)}};
    }
  }
  throw Error("unreachable node kind");
}

}  // namespace

std::string closed_form_to_expression_json(const ClosedForm& cf) {
  return closed_form_to_json_node(cf).dump();
}

ReportRow verify_entry(const CorpusEntry& entry, const ParamBinding& binding, double rel_tol) {
  ReportRow row;
  row.gr_id = entry.gr_id;
  row.binding = binding;
  row.binding_str = binding_text(entry, binding);
  row.status = entry.status;
  row.detail = entry.note;
  try {
    const TrigIntegrand ti = instantiate_integrand(entry, binding);
    const ClosedForm expected = instantiate_expected_form(entry, binding);
    const auto corrected = instantiate_corrected_form(entry, binding);

    const QuadratureResult q = integrate(ti);
    row.oracle_value = q.value;
    row.oracle_error = q.error_estimate;
    row.closed_value = eval_closed_form(expected);
    if (corrected) row.corrected_value = eval_closed_form(*corrected);

    const double target = corrected ? *row.corrected_value : row.closed_value;
    row.rel_discrepancy = std::fabs(target - q.value) /
                          std::max({1.0, std::fabs(target), std::fabs(q.value)});
    row.printed_discrepancy =
        std::fabs(row.closed_value - q.value) / std::max(1.0, std::fabs(q.value));

    const bool target_ok = row.rel_discrepancy <= rel_tol && q.converged;
    const bool printed_off = row.printed_discrepancy > rel_tol;
    switch (entry.status) {
      case EntryStatus::Verified:
        row.verdict = target_ok ? Verdict::Pass : Verdict::Fail;
        break;
      case EntryStatus::ErratumSuspected:
        row.verdict = printed_off ? Verdict::ExpectedMismatch : Verdict::Fail;
        break;
      case EntryStatus::Corrected:
        row.verdict = (target_ok && printed_off) ? Verdict::ExpectedMismatch : Verdict::Fail;
        break;
    }
    if (!q.converged) row.detail = "oracle did not converge; " + row.detail;
  } catch (const Error& ex) {
    throw Error("entry " + entry.gr_id +
                (row.binding_str.empty() ? "" : " [" + row.binding_str + "]") + ": " + ex.what());
  }
  return row;
}

VerificationReport run_corpus(std::span<const CorpusEntry> entries, double rel_tol,
                              unsigned parallelism) {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  const auto t0 = std::chrono::steady_clock::now();

  struct Task {
    const CorpusEntry* entry;
    ParamBinding binding;
  };
  std::vector<Task> tasks;
  for (const CorpusEntry& e : entries) {
    if (e.bindings.empty()) {
      tasks.push_back({&e, {}});
    } else {
      for (const ParamBinding& b : e.bindings) tasks.push_back({&e, b});
    }
  }

  std::vector<ReportRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        rows[i] = verify_entry(*tasks[i].entry, tasks[i].binding, rel_tol);
      } catch (const std::exception& ex) {
        ReportRow& r = rows[i];
        r.gr_id = tasks[i].entry->gr_id;
        r.binding = tasks[i].binding;
        r.binding_str = binding_text(*tasks[i].entry, tasks[i].binding);
        r.status = tasks[i].entry->status;
        r.verdict = Verdict::Fail;
        r.detail = ex.what();
      }
    }
  };

  const unsigned jobs = std::max(1u, parallelism);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i + 1 < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.gr_id != b.gr_id) return a.gr_id < b.gr_id;
    return a.binding < b.binding;
  });

  VerificationReport report;
  report.rows = std::move(rows);
  report.rel_tol = rel_tol;
  for (const ReportRow& r : report.rows) {
    switch (r.verdict) {
      case Verdict::Pass: ++report.pass_count; break;
      case Verdict::Fail: ++report.fail_count; break;
      case Verdict::ExpectedMismatch: ++report.mismatch_count; break;
    }
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace {

std::string fmt(double v, const char* spec = "%.15e") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

std::string report_to_markdown(const VerificationReport& report) {
  std::string s;
  s += "# corpus verification\n\n";
  s += "rel_tol = " + fmt(report.rel_tol, "%.3e") + "\n\n";
  s += "| gr_id | binding | status | closed form | oracle | rel disc | verdict | note |\n";
  s += "|---|---|---|---|---|---|---|---|\n";
  for (const ReportRow& r : report.rows) {
    s += "| " + r.gr_id + " | " + r.binding_str + " | " + status_to_string(r.status) + " | " +
         fmt(r.closed_value) + " | " + fmt(r.oracle_value) + " | " +
         fmt(r.rel_discrepancy, "%.3e") + " | " + verdict_to_string(r.verdict) + " | " + r.detail +
         " |\n";
  }
  s += "\nsummary: pass=" + std::to_string(report.pass_count) +
       " fail=" + std::to_string(report.fail_count) +
       " expected_mismatch=" + std::to_string(report.mismatch_count) +
       " rows=" + std::to_string(report.rows.size()) + "\n";
  s += "wall_ms: " + fmt(report.wall_ms, "%.1f") + "\n";
  return s;
}

std::string report_to_json(const VerificationReport& report) {
  json rows = json::array();
  for (const ReportRow& r : report.rows) {
    json jr;
    jr["gr_id"] = r.gr_id;
    jr["binding"] = r.binding;
    jr["binding_str"] = r.binding_str;
    jr["status"] = status_to_string(r.status);
    jr["closed_value"] = fmt(r.closed_value);
    if (r.corrected_value) jr["corrected_value"] = fmt(*r.corrected_value);
    jr["oracle_value"] = fmt(r.oracle_value);
    jr["oracle_error"] = fmt(r.oracle_error, "%.3e");
    jr["rel_discrepancy"] = fmt(r.rel_discrepancy, "%.3e");
    jr["printed_discrepancy"] = fmt(r.printed_discrepancy, "%.3e");
    jr["verdict"] = verdict_to_string(r.verdict);
    jr["note"] = r.detail;
    rows.push_back(std::move(jr));
  }
  json doc;
  doc["rel_tol"] = report.rel_tol;
  doc["rows"] = std::move(rows);
  doc["summary"] = {{"pass", report.pass_count},
                    {"fail", report.fail_count},
                    {"expected_mismatch", report.mismatch_count}};
  doc["wall_ms"] = report.wall_ms;
  return doc.dump(2) + "\n";
}

}  // namespace trigbeta
