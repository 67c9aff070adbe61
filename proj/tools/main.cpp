// Command line front end: classification of first-layer p-groups over a
// cyclic base, quotient presentations, heuristic tables, the quadratic and
// function-field surveys, CSV ingestion, and the cross-validation battery.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iwasawa/classification.hpp"
#include "iwasawa/data_io.hpp"
#include "iwasawa/function_field.hpp"
#include "iwasawa/group_ring.hpp"
#include "iwasawa/heuristics.hpp"
#include "iwasawa/quadform.hpp"
#include "iwasawa/reiner.hpp"
#include "iwasawa/verify.hpp"

namespace {

using iwasawa::AbelianPGroupShape;
using iwasawa::ReinerIdeal;
using nlohmann::json;

struct Options {
  bool json = false;
  int exit_code = 0;  // 0 iff zero anomalies / failures
};

std::string q4(const mpq_class& x) { return iwasawa::format_fixed(x, 4); }

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

std::string shape_line(long p, const AbelianPGroupShape& shape) {
  return shape.str() + "  (group " + shape.group_notation(p) + ", order " +
         std::to_string(p) + "^" + std::to_string(shape.order_exponent()) + ")";
}

// ---------------------------------------------------------------- classify

void run_classify(Options& opt, long p, int m, int r, int j, bool verify_snf,
                  bool verify_brute) {
  ReinerIdeal ideal{p, m, r, j};
  AbelianPGroupShape closed = iwasawa::table1_shape(p, m, r, j);
  json out{{"p", p}, {"m", m}, {"r", r}, {"j", j},
           {"shape", closed.str()},
           {"group", closed.group_notation(p)},
           {"order_exponent", closed.order_exponent()},
           {"lambda_one", iwasawa::is_lambda_one_pair(m, closed)}};
  std::string text = "parameters: p=" + std::to_string(p) + " m=" + std::to_string(m) +
                     " r=" + std::to_string(r) + " j=" + std::to_string(j) + "\n" +
                     "shape: " + shape_line(p, closed) + "\n";
  if (verify_snf) {
    AbelianPGroupShape snf = iwasawa::quotient_shape_snf(ideal);
    bool agrees = snf == closed;
    out["snf_shape"] = snf.str();
    out["snf_agrees"] = agrees;
    text += "elimination: " + (agrees ? std::string("agrees") : "MISMATCH " + snf.str()) + "\n";
    if (!agrees) opt.exit_code = 1;
  }
  if (verify_brute) {
    int n = std::min(iwasawa::brute_force_precision(ideal), 5);
    if (!iwasawa::brute_force_in_budget(ideal, n)) {
      out["brute"] = "skipped (enumeration budget)";
      text += "counting oracle: skipped (enumeration budget)\n";
    } else {
      AbelianPGroupShape counted = iwasawa::quotient_brute_force(ideal, n);
      std::vector<int> expect = closed.exponents();
      for (int& e : expect) e = std::min(e, n);
      bool agrees = counted == AbelianPGroupShape(expect);
      out["brute_shape"] = counted.str();
      out["brute_agrees"] = agrees;
      text += "counting oracle (precision " + std::to_string(n) + "): " +
              (agrees ? std::string("agrees") : "MISMATCH " + counted.str()) + "\n";
      if (!agrees) opt.exit_code = 1;
    }
  }
  emit(opt, out, text);
}

// --------------------------------------------------------------- enumerate

void run_enumerate(Options& opt, long p, int m, int max_exp) {
  std::vector<iwasawa::EnumeratedShape> shapes = iwasawa::theorem1_enumerate(p, m, max_exp);
  json rows = json::array();
  std::string text = "possible first layers over a cyclic base of order " +
                     iwasawa::pow_of(p, m).get_str() + " (order exponent <= " +
                     std::to_string(max_exp) + ")\n";
  size_t shape_w = 5, group_w = 5;
  for (const auto& e : shapes) {
    shape_w = std::max(shape_w, e.shape.str().size());
    group_w = std::max(group_w, e.shape.group_notation(p).size());
  }
  auto pad = [](std::string s, size_t w) {
    s.resize(std::max(s.size(), w + 2), ' ');
    return s;
  };
  text += pad("r", 3) + pad("shape", shape_w) + pad("group", group_w) + "j-count\n";
  for (const auto& e : shapes) {
    rows.push_back(json{{"r", e.r},
                        {"shape", e.shape.str()},
                        {"group", e.shape.group_notation(p)},
                        {"j_count", e.j_count}});
    text += pad(std::to_string(e.r), 3) + pad(e.shape.str(), shape_w) +
            pad(e.shape.group_notation(p), group_w) + std::to_string(e.j_count) + "\n";
  }
  emit(opt, json{{"p", p}, {"m", m}, {"max_exp", max_exp}, {"shapes", rows}}, text);
}

// ---------------------------------------------------------------- quotient

void run_quotient(Options& opt, long p, int m, int r, int j, bool show_matrix) {
  (void)show_matrix;  // the presentation is always shown; flag kept for scripts
  ReinerIdeal ideal{p, m, r, j};
  iwasawa::QuotientModel model = iwasawa::quotient_model(ideal);
  json matrix = json::array();
  std::string text = "ideal (p=" + std::to_string(p) + ", m=" + std::to_string(m) +
                     ", r=" + std::to_string(r) + ", j=" + std::to_string(j) +
                     ") at precision " + std::to_string(model.precision) + "\n";
  text += "relation matrix (column i is T^i * alpha on the basis 1, T, ..., T^" +
          std::to_string(p - 1) + ", mod " +
          iwasawa::pow_of(p, model.precision).get_str() + "):\n";
  for (int row = 0; row < model.matrix.rows(); ++row) {
    json jrow = json::array();
    text += "  [";
    for (int col = 0; col < model.matrix.cols(); ++col) {
      std::string v = model.matrix.at(row, col).get_str();
      jrow.push_back(v);
      text += (col ? " " : "") + v;
    }
    text += "]\n";
    matrix.push_back(std::move(jrow));
  }
  json divisors = json::array();
  text += "divisor valuations: [";
  for (size_t i = 0; i < model.divisors.divisor_valuations.size(); ++i) {
    divisors.push_back(model.divisors.divisor_valuations[i]);
    text += (i ? ", " : "") + std::to_string(model.divisors.divisor_valuations[i]);
  }
  text += "]\n";
  text += "shape: " + shape_line(p, model.shape) + "\n";
  emit(opt,
       json{{"p", p}, {"m", m}, {"r", r}, {"j", j},
            {"precision", model.precision},
            {"matrix", matrix},
            {"divisor_valuations", divisors},
            {"shape", model.shape.str()},
            {"group", model.shape.group_notation(p)}},
       text);
}

// -------------------------------------------------------------- heuristics

void run_lambda(Options& opt, long p, const std::string& model, int max_r) {
  bool want_ejv = model.empty() || model == "ejv";
  bool want_new = model.empty() || model == "new";
  json rows = json::array();
  std::string text = "lambda distribution for p=" + std::to_string(p) + "\n";
  text += "r      ";
  if (want_ejv) text += "ejv        ";
  if (want_new) text += "new";
  text += "\n";
  for (int r = 1; r <= max_r; ++r) {
    json row{{"r", r}};
    std::string line = std::to_string(r);
    line.resize(7, ' ');
    if (want_ejv) {
      std::string v = iwasawa::format_fixed(iwasawa::ejv_lambda_prob(p, r).numeric(), 5);
      row["ejv"] = v;
      v.resize(11, ' ');
      line += v;
    }
    if (want_new) {
      std::string v = iwasawa::format_fixed(iwasawa::new_lambda_prob(p, r).numeric(), 5);
      row["new"] = v;
      line += v;
    }
    text += line + "\n";
    rows.push_back(std::move(row));
  }
  emit(opt, json{{"p", p}, {"max_r", max_r}, {"rows", rows}}, text);
}

void run_a1(Options& opt, long p, int m, int max_r) {
  iwasawa::PredictedDistribution dist = iwasawa::predicted_a1_distribution(p, m, max_r);
  json rows = json::array();
  std::string text = "predicted first layer over a cyclic base of order " +
                     iwasawa::pow_of(p, m).get_str() + " (r <= " +
                     std::to_string(max_r) + ")\n";
  size_t shape_w = 5, group_w = 5;
  for (const auto& s : dist.shares) {
    shape_w = std::max(shape_w, s.shape.str().size());
    group_w = std::max(group_w, s.shape.group_notation(p).size());
  }
  auto pad = [](std::string s, size_t w) {
    s.resize(std::max(s.size(), w + 2), ' ');
    return s;
  };
  text += pad("shape", shape_w) + pad("group", group_w) + pad("r", 3) + "probability\n";
  for (const auto& s : dist.shares) {
    rows.push_back(json{{"shape", s.shape.str()},
                        {"group", s.shape.group_notation(p)},
                        {"r", s.r},
                        {"j_count", s.j_count},
                        {"probability", q4(s.probability)}});
    text += pad(s.shape.str(), shape_w) + pad(s.shape.group_notation(p), group_w) +
            pad(std::to_string(s.r), 3) + q4(s.probability) + "\n";
  }
  text += "tail mass beyond r=" + std::to_string(max_r) + ": " + q4(dist.tail_mass) + "\n";
  emit(opt,
       json{{"p", p}, {"m", m}, {"max_r", max_r}, {"rows", rows},
            {"tail_mass", q4(dist.tail_mass)}},
       text);
}

void run_compat(Options& opt, long p) {
  iwasawa::CompatibilityReport report = iwasawa::compatibility_check(p);
  std::string exact = report.exact.get_str();
  json masses = json::array();
  std::string text = "lambda=1 compatibility for p=" + std::to_string(p) + "\n";
  text += "exact target (p-1)/p = " + exact + "\n";
  text += "ejv(1) / clm_cyclic   = " + report.lambda_ratio.coeff().get_str() +
          " (eta power " + std::to_string(report.lambda_ratio.eta_power()) + ")\n";
  for (size_t i = 0; i < report.cyclic_mass.size(); ++i) {
    masses.push_back(report.cyclic_mass[i].get_str());
    text += "cyclic mass at m=" + std::to_string(i + 1) + "      = " +
            report.cyclic_mass[i].get_str() + "\n";
  }
  text += std::string("all routes agree: ") + (report.ok ? "yes" : "NO") + "\n";
  if (!report.ok) opt.exit_code = 1;
  emit(opt,
       json{{"p", p}, {"exact", exact},
            {"lambda_ratio", report.lambda_ratio.coeff().get_str()},
            {"eta_power", report.lambda_ratio.eta_power()},
            {"cyclic_mass", masses},
            {"ok", report.ok}},
       text);
}

// ----------------------------------------------------------------- surveys

// Family of discriminants: an explicit residue ("0", "2", "-1") or a
// pattern in the j-parametrized style "-1-3j", "-3j", "-2-5k" meaning
// d = -c - p*index, i.e. d == -c (mod p).
int parse_family(const std::string& text, long p) {
  static const std::regex plain("^-?[0-9]+$");
  static const std::regex offset("^-([0-9]+)-([0-9]+)[a-z]$");
  static const std::regex bare("^-([0-9]+)[a-z]$");
  std::smatch match;
  long value = 0;
  if (std::regex_match(text, match, plain)) {
    value = std::stol(text);
  } else if (std::regex_match(text, match, offset)) {
    if (std::stol(match[2]) != p)
      throw CLI::ValidationError("--family", "pattern prime does not match --p");
    value = -std::stol(match[1]);
  } else if (std::regex_match(text, match, bare)) {
    if (std::stol(match[1]) != p)
      throw CLI::ValidationError("--family", "pattern prime does not match --p");
    value = 0;
  } else {
    throw CLI::ValidationError("--family", "expected a residue or a pattern like -1-3j");
  }
  return static_cast<int>(((value % p) + p) % p);
}

void run_survey_quad(Options& opt, long p, const std::string& family_text,
                     long long min_abs, long long max_abs, int jobs) {
  int family = parse_family(family_text, p);
  iwasawa::QuadSurveyResult survey = iwasawa::survey_quad(p, family, min_abs, max_abs, jobs);
  long long divisible = survey.surveyed - survey.coprime;
  mpq_class fraction = survey.surveyed
      ? mpq_class(static_cast<long>(divisible), static_cast<unsigned long>(survey.surveyed))
      : mpq_class(0);
  fraction.canonicalize();
  json by_m = json::object();
  std::string text = "quadratic survey: p=" + std::to_string(p) + ", d == " +
                     std::to_string(survey.family) + " (mod " + std::to_string(p) +
                     "), " + std::to_string(min_abs) + " <= |d| <= " + std::to_string(max_abs) + "\n";
  text += "fundamental non-split discriminants: " + std::to_string(survey.surveyed) +
          " (trivial excluded: " + std::to_string(survey.trivial_excluded) + ")\n";
  text += std::to_string(p) + " | h for " + std::to_string(divisible) + " of " +
          std::to_string(survey.surveyed) + "  (fraction " + q4(fraction) + ")\n";
  text += "noncyclic p-part: " + std::to_string(survey.noncyclic) + "\n";
  text += "cyclic p-part by m:";
  for (const auto& [m, count] : survey.cyclic_by_m) {
    by_m[std::to_string(m)] = count;
    text += " " + std::to_string(m) + ":" + std::to_string(count);
  }
  text += "\n";
  emit(opt,
       json{{"p", p}, {"family", survey.family},
            {"min_abs", min_abs}, {"max_abs", max_abs},
            {"surveyed", survey.surveyed},
            {"trivial_excluded", survey.trivial_excluded},
            {"divisible", divisible},
            {"divisible_fraction", q4(fraction)},
            {"noncyclic", survey.noncyclic},
            {"cyclic_by_m", by_m}},
       text);
}

void run_survey_ff(Options& opt, bool full, long long first_n, int jobs) {
  iwasawa::FFSurvey survey = iwasawa::survey_ff(3, 7, full ? -1 : first_n, jobs);
  if (opt.json)
    std::cout << iwasawa::render_ff_json(survey);
  else
    std::cout << iwasawa::render_ff_text(survey);
}

// ------------------------------------------------------------------ ingest

void run_ingest(Options& opt, const std::string& file, long p, int m) {
  iwasawa::IngestReport report = iwasawa::ingest_csv(file, p);
  iwasawa::Tabulation table = iwasawa::tabulate(report.records, p, m);
  if (opt.json) {
    json j = json::parse(iwasawa::render_json(table));
    j["warnings"] = report.warnings;
    j["anomalies"] = report.anomalies;
    j["records"] = report.records.size();
    std::cout << j.dump(2) << '\n';
  } else {
    std::string text;
    text += "ingested " + std::to_string(report.records.size()) + " records from " + file + "\n";
    for (const std::string& w : report.warnings) text += "warning: " + w + "\n";
    for (const std::string& a : report.anomalies) text += "ANOMALY: " + a + "\n";
    text += iwasawa::render_text(table);
    std::cout << text;
  }
  if (!report.anomalies.empty()) opt.exit_code = 1;
}

// ------------------------------------------------------------------ verify

void run_verify(Options& opt, long p, int max_m, int max_r) {
  iwasawa::VerifyResult result = iwasawa::verify_battery(p, max_m, max_r);
  json j{{"p", p}, {"max_m", max_m}, {"max_r", max_r},
         {"cases", result.cases}, {"failures", result.failures}, {"ok", result.ok()}};
  std::string text;
  if (result.ok()) {
    text = "all checks passed: " + std::to_string(result.cases) + " cases\n";
  } else {
    for (const std::string& f : result.failures) text += "FAILED: " + f + "\n";
    text += std::to_string(result.failures.size()) + " of " +
            std::to_string(result.cases) + " checks failed\n";
    opt.exit_code = 1;
  }
  emit(opt, j, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-layer class-group structures over cyclic bases: exact "
               "classification, heuristics, and desk-scale surveys"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "emit JSON instead of aligned text");

  long p = 3;
  int m = 1, r = 1, j = 1, max_exp = 6, max_r = 6, max_m = 2, jobs = 1;
  bool verify_snf = false, verify_brute = false, show_matrix = false, full = false;
  long long min_abs = 3, max_abs = 100000, first_n = 200;
  std::string model_name, family_text, file_path;

  CLI::App* classify = app.add_subcommand("classify", "closed-form first-layer shape");
  classify->fallthrough();
  classify->add_option("--p", p, "odd prime")->required();
  classify->add_option("--m", m, "base order exponent")->required();
  classify->add_option("--r", r, "ideal index parameter")->required();
  classify->add_option("--j", j, "unit parameter in [1, p-1]")->required();
  classify->add_flag("--verify-snf", verify_snf, "cross-check with elimination");
  classify->add_flag("--verify-brute", verify_brute, "cross-check with the counting oracle");

  CLI::App* enumerate = app.add_subcommand("enumerate", "all admissible first-layer shapes");
  enumerate->fallthrough();
  enumerate->add_option("--p", p, "odd prime")->required();
  enumerate->add_option("--m", m, "base order exponent")->required();
  enumerate->add_option("--max-exp", max_exp, "largest order exponent listed")->required();

  CLI::App* quotient = app.add_subcommand("quotient", "relation matrix and divisors");
  quotient->fallthrough();
  quotient->add_option("--p", p, "odd prime")->required();
  quotient->add_option("--m", m, "base order exponent")->required();
  quotient->add_option("--r", r, "ideal index parameter")->required();
  quotient->add_option("--j", j, "unit parameter")->required();
  quotient->add_flag("--show-matrix", show_matrix, "print the relation matrix (default)");

  CLI::App* heuristics = app.add_subcommand("heuristics", "predicted distributions");
  heuristics->require_subcommand(1);
  heuristics->fallthrough();
  CLI::App* lambda = heuristics->add_subcommand("lambda", "lambda = r probabilities");
  lambda->fallthrough();
  lambda->add_option("--p", p, "odd prime")->required();
  lambda->add_option("--model", model_name, "ejv or new (default: both)")
      ->check(CLI::IsMember({"ejv", "new"}));
  lambda->add_option("--max-r", max_r, "largest r listed");
  CLI::App* a1 = heuristics->add_subcommand("a1", "first-layer shape probabilities");
  a1->fallthrough();
  a1->add_option("--p", p, "odd prime")->required();
  a1->add_option("--m", m, "base order exponent")->required();
  int a1_max_r = 10;
  a1->add_option("--max-r", a1_max_r, "window depth (default 10)");
  CLI::App* compat = heuristics->add_subcommand("compat", "lambda=1 identity across models");
  compat->fallthrough();
  compat->add_option("--p", p, "odd prime")->required();

  CLI::App* survey = app.add_subcommand("survey", "desk-scale statistics");
  survey->require_subcommand(1);
  survey->fallthrough();
  CLI::App* quad = survey->add_subcommand("quad", "imaginary quadratic discriminants");
  quad->fallthrough();
  quad->add_option("--p", p, "odd prime")->required();
  quad->add_option("--family", family_text, "residue of d mod p, or a pattern like -1-3j")
      ->required();
  quad->add_option("--min", min_abs, "smallest |d|")->required();
  quad->add_option("--max", max_abs, "largest |d|")->required();
  quad->add_option("--jobs", jobs, "worker threads");
  CLI::App* ff = survey->add_subcommand("ff", "degree-7 function-field family");
  ff->fallthrough();
  CLI::Option* full_opt = ff->add_flag("--full", full, "survey the whole family");
  ff->add_option("--first", first_n, "survey the first N in lex order (default 200)")
      ->excludes(full_opt);
  ff->add_option("--jobs", jobs, "worker threads");

  CLI::App* ingest = app.add_subcommand("ingest", "CSV of externally computed records");
  ingest->fallthrough();
  ingest->add_option("--file", file_path, "CSV path with header d,a0,a1")->required();
  ingest->add_option("--p", p, "odd prime")->required();
  ingest->add_option("--m", m, "base order exponent to tabulate")->required();

  CLI::App* verify = app.add_subcommand("verify", "full cross-validation battery");
  verify->fallthrough();
  verify->add_option("--p", p, "odd prime")->required();
  verify->add_option("--max-m", max_m, "largest base exponent")->required();
  verify->add_option("--max-r", max_r, "largest index parameter")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) run_classify(opt, p, m, r, j, verify_snf, verify_brute);
    if (enumerate->parsed()) run_enumerate(opt, p, m, max_exp);
    if (quotient->parsed()) run_quotient(opt, p, m, r, j, show_matrix);
    if (lambda->parsed()) run_lambda(opt, p, model_name, max_r);
    if (a1->parsed()) run_a1(opt, p, m, a1_max_r);
    if (compat->parsed()) run_compat(opt, p);
    if (quad->parsed()) run_survey_quad(opt, p, family_text, min_abs, max_abs, jobs);
    if (ff->parsed()) run_survey_ff(opt, full, first_n, jobs);
    if (ingest->parsed()) run_ingest(opt, file_path, p, m);
    if (verify->parsed()) run_verify(opt, p, max_m, max_r);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return opt.exit_code;
}
