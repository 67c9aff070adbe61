#include "iwasawa/data_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "iwasawa/classification.hpp"
#include "iwasawa/padic.hpp"

namespace iwasawa {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

// is `a1` one of the possible first-layer shapes over a cyclic base of
// order p^m0?
bool first_layer_admissible(long p, int m0, const AbelianPGroupShape& a1) {
  int e = a1.order_exponent();
  if (e <= m0) return false;
  for (const EnumeratedShape& entry : theorem1_enumerate(p, m0, e))
    if (entry.shape == a1) return true;
  return false;
}

std::string q4(const mpq_class& x) { return format_fixed(x, 4); }

}  // namespace

IngestReport ingest_csv(const std::string& path, long p) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("ingest: cannot open " + path);
  IngestReport report;
  std::set<std::string> seen;
  std::string raw;
  long line_no = 0;
  bool header_done = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    std::string at = path + ":" + std::to_string(line_no);
    if (!header_done) {
      if (fields != std::vector<std::string>{"d", "a0", "a1"})
        throw std::runtime_error("ingest: " + at + ": expected header `d,a0,a1`, got `" +
                                 line + "`");
      header_done = true;
      continue;
    }
    if (fields.size() != 3 || fields[0].empty())
      throw std::runtime_error("ingest: " + at + ": expected 3 fields `d,a0,a1`, got `" +
                               line + "`");
    std::string digits = fields[0][0] == '-' ? fields[0].substr(1) : fields[0];
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::runtime_error("ingest: " + at + ": bad discriminant `" + fields[0] + "`");
    SurveyRecord rec;
    rec.d = fields[0];
    rec.source = at;
    try {
      rec.a0 = AbelianPGroupShape::parse(fields[1]);
      rec.a1 = AbelianPGroupShape::parse(fields[2]);
    } catch (const std::exception& e) {
      throw std::runtime_error("ingest: " + at + ": " + e.what());
    }
    if (!seen.insert(rec.d).second) {
      report.warnings.push_back(at + ": duplicate d = " + rec.d + " (first record kept)");
      continue;
    }
    if (rec.a0.is_cyclic() && !first_layer_admissible(p, rec.a0.max_exponent(), rec.a1)) {
      rec.anomalous = true;
      report.anomalies.push_back(
          at + ": d = " + rec.d + ": a1 = " + rec.a1.str() +
          " is not an admissible first layer over a cyclic base of order " +
          pow_of(p, rec.a0.max_exponent()).get_str() +
          " — this would contradict the classification");
    }
    report.records.push_back(std::move(rec));
  }
  if (!header_done)
    throw std::runtime_error("ingest: " + path + ": missing header `d,a0,a1`");
  return report;
}

std::string render_csv(const std::vector<SurveyRecord>& records) {
  std::ostringstream out;
  out << "d,a0,a1\n";
  for (const SurveyRecord& rec : records)
    out << rec.d << ',' << rec.a0.str() << ',' << rec.a1.str() << '\n';
  return out.str();
}

Tabulation tabulate(const std::vector<SurveyRecord>& records, long p, int m) {
  if (m < 1) throw std::invalid_argument("tabulate: m >= 1");
  Tabulation table;
  table.p = p;
  table.m = m;
  table.max_r = 10;
  std::vector<const SurveyRecord*> matching;
  for (const SurveyRecord& rec : records) {
    if (rec.a0.is_cyclic() && rec.a0.max_exponent() == m) {
      matching.push_back(&rec);
      if (!rec.anomalous)
        table.max_r = std::max(table.max_r, rec.a1.order_exponent() - m);
    } else {
      ++table.excluded;
    }
  }
  table.matching = static_cast<long long>(matching.size());

  PredictedDistribution dist = predicted_a1_distribution(p, m, table.max_r);
  std::map<AbelianPGroupShape, size_t> index;
  for (const PredictedShare& share : dist.shares) {
    TabulatedShape row;
    row.shape = share.shape;
    row.r = share.r;
    row.predicted = share.probability;
    index.emplace(share.shape, table.rows.size());
    table.rows.push_back(std::move(row));
  }
  for (const SurveyRecord* rec : matching) {
    if (rec->anomalous) {
      ++table.anomalous;
      continue;
    }
    auto it = index.find(rec->a1);
    if (it == index.end())
      throw arithmetic_error("tabulate: admissible shape missing from the window");
    ++table.rows[it->second].count;
  }

  long long denominator = table.matching - table.anomalous;
  if (denominator == 0) {
    table.note = "no tabulatable records with a cyclic base of order p^m";
    return table;
  }
  mpq_class window_mass = 0;
  for (const TabulatedShape& row : table.rows) window_mass += row.predicted;
  mpq_class mean = 0;
  for (TabulatedShape& row : table.rows) {
    row.empirical = mpq_class(static_cast<long>(row.count),
                              static_cast<unsigned long>(denominator));
    row.empirical.canonicalize();
    mpq_class dev = abs(row.empirical - row.predicted / window_mass);
    table.max_abs_deviation = std::max(table.max_abs_deviation, dev);
    mean += dev;
  }
  mean /= static_cast<long>(table.rows.size());
  table.mean_abs_deviation = mean;
  return table;
}

std::vector<SurveyRecord> synthetic_records(long p, int m, int max_r) {
  PredictedDistribution dist = predicted_a1_distribution(p, m, max_r);
  mpz_class scale = pow_of(p, max_r);
  std::vector<SurveyRecord> out;
  long long next_d = 1;
  for (const PredictedShare& share : dist.shares) {
    mpq_class count_q = share.probability * scale;
    count_q.canonicalize();
    if (count_q.get_den() != 1)
      throw arithmetic_error("synthetic_records: share does not clear p^max_r");
    long long count = count_q.get_num().get_si();
    for (long long i = 0; i < count; ++i) {
      SurveyRecord rec;
      rec.d = "-" + std::to_string(next_d++);
      rec.a0 = AbelianPGroupShape(std::vector<int>{m});
      rec.a1 = share.shape;
      rec.source = "synthetic";
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::string render_text(const Tabulation& table) {
  std::ostringstream out;
  out << "first-layer tabulation: p=" << table.p << ", base cyclic of order "
      << pow_of(table.p, table.m).get_str() << "\n";
  out << "records: matching=" << table.matching << " excluded=" << table.excluded
      << " anomalous=" << table.anomalous << " (window r <= " << table.max_r << ")\n";
  if (!table.note.empty()) {
    out << "note: " << table.note << "\n";
    return out.str();
  }
  size_t shape_w = 5, group_w = 5;
  for (const TabulatedShape& row : table.rows) {
    shape_w = std::max(shape_w, row.shape.str().size());
    group_w = std::max(group_w, row.shape.group_notation(table.p).size());
  }
  out << '\n';
  out << std::left;
  auto pad = [&out](const std::string& s, size_t w) {
    out << s;
    for (size_t i = s.size(); i < w + 2; ++i) out << ' ';
  };
  pad("shape", shape_w);
  pad("group", group_w);
  pad("count", 8);
  pad("empirical", 9);
  out << "predicted\n";
  for (const TabulatedShape& row : table.rows) {
    pad(row.shape.str(), shape_w);
    pad(row.shape.group_notation(table.p), group_w);
    pad(std::to_string(row.count), 8);
    pad(q4(row.empirical), 9);
    out << q4(row.predicted) << '\n';
  }
  out << "\ndeviation vs predicted (window-normalized): max=" << q4(table.max_abs_deviation)
      << " mean=" << q4(table.mean_abs_deviation) << '\n';
  return out.str();
}

std::string render_json(const Tabulation& table) {
  nlohmann::json j;
  j["p"] = table.p;
  j["m"] = table.m;
  j["max_r"] = table.max_r;
  j["matching"] = table.matching;
  j["excluded"] = table.excluded;
  j["anomalous"] = table.anomalous;
  if (!table.note.empty()) j["note"] = table.note;
  j["rows"] = nlohmann::json::array();
  for (const TabulatedShape& row : table.rows) {
    nlohmann::json r;
    r["shape"] = row.shape.str();
    r["group"] = row.shape.group_notation(table.p);
    r["r"] = row.r;
    r["count"] = row.count;
    r["empirical"] = q4(row.empirical);
    r["predicted"] = q4(row.predicted);
    j["rows"].push_back(std::move(r));
  }
  j["max_abs_deviation"] = q4(table.max_abs_deviation);
  j["mean_abs_deviation"] = q4(table.mean_abs_deviation);
  return j.dump(2) + "\n";
}

namespace {

// order-class comparison for the e0 = 1 slice of a survey: count, empirical
// fraction, and the predicted order distribution over the same window
struct OrderRow {
  int order_exponent = 0;
  std::string label;
  long long count = 0;
  mpq_class empirical;
  mpq_class predicted;
};

std::vector<OrderRow> order_rows(const FFSurvey& survey) {
  long long total = 0;
  int max_e1 = 6;
  for (const auto& [e1, count] : survey.e1_hist_e0_one) {
    total += count;
    max_e1 = std::max(max_e1, e1);
  }
  std::vector<OrderRow> rows;
  if (total == 0) return rows;
  std::map<int, mpq_class> predicted = predicted_order_distribution(survey.p, 1, max_e1);
  for (const auto& [e1, share] : predicted) {
    OrderRow row;
    row.order_exponent = e1;
    row.label = shape_label_for_order(survey.p, 1, e1);
    auto it = survey.e1_hist_e0_one.find(e1);
    row.count = it == survey.e1_hist_e0_one.end() ? 0 : it->second;
    row.empirical = mpq_class(static_cast<long>(row.count), static_cast<unsigned long>(total));
    row.empirical.canonicalize();
    row.predicted = share;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<long> ascending_coefficients(const PrimePoly& h) {
  std::vector<long> c(static_cast<size_t>(h.degree() + 1));
  for (int i = 0; i <= h.degree(); ++i) c[static_cast<size_t>(i)] = h.coeff(i);
  return c;
}

}  // namespace

std::string render_ff_text(const FFSurvey& survey) {
  std::ostringstream out;
  out << "function-field survey: p=" << survey.p << ", base degree=" << survey.degree
      << ", family=" << survey.family_size << ", surveyed=" << survey.surveyed << '\n';
  out << "base class number divisible by " << survey.p << ": " << survey.divisible
      << " of " << survey.surveyed << '\n';
  out << "e0 histogram:";
  for (const auto& [e0, count] : survey.e0_hist) out << ' ' << e0 << ':' << count;
  out << '\n';
  out << "e1 histogram (e0 = 1):";
  for (const auto& [e1, count] : survey.e1_hist_e0_one) out << ' ' << e1 << ':' << count;
  out << '\n';
  std::vector<OrderRow> rows = order_rows(survey);
  if (!rows.empty()) {
    size_t label_w = 5;
    for (const OrderRow& row : rows) label_w = std::max(label_w, row.label.size());
    out << "\nfirst-layer order classes for e0 = 1:\n";
    auto pad = [&out](const std::string& s, size_t w) {
      out << s;
      for (size_t i = s.size(); i < w + 2; ++i) out << ' ';
    };
    pad("order", 6);
    pad("class", label_w);
    pad("count", 6);
    pad("empirical", 9);
    out << "predicted\n";
    for (const OrderRow& row : rows) {
      pad(pow_of(survey.p, row.order_exponent).get_str(), 6);
      pad(row.label, label_w);
      pad(std::to_string(row.count), 6);
      pad(q4(row.empirical), 9);
      out << q4(row.predicted) << '\n';
    }
  }
  out << "\n# h coefficients ascending (c0..c" << survey.degree
      << "), then h0, e0, h1, e1, class\n";
  for (const FirstLayerRecord& rec : survey.records) {
    bool first = true;
    for (long c : ascending_coefficients(rec.h)) {
      if (!first) out << ',';
      first = false;
      out << c;
    }
    out << '\t' << rec.h0.get_str() << '\t' << rec.e0 << '\t' << rec.h1.get_str()
        << '\t' << rec.e1 << '\t' << rec.label << '\n';
  }
  return out.str();
}

std::string render_ff_json(const FFSurvey& survey) {
  nlohmann::json j;
  j["p"] = survey.p;
  j["degree"] = survey.degree;
  j["family_size"] = survey.family_size;
  j["surveyed"] = survey.surveyed;
  j["divisible"] = survey.divisible;
  j["e0_histogram"] = nlohmann::json::object();
  for (const auto& [e0, count] : survey.e0_hist)
    j["e0_histogram"][std::to_string(e0)] = count;
  j["e1_histogram_e0_one"] = nlohmann::json::object();
  for (const auto& [e1, count] : survey.e1_hist_e0_one)
    j["e1_histogram_e0_one"][std::to_string(e1)] = count;
  j["order_classes"] = nlohmann::json::array();
  for (const OrderRow& row : order_rows(survey)) {
    nlohmann::json r;
    r["order"] = pow_of(survey.p, row.order_exponent).get_str();
    r["class"] = row.label;
    r["count"] = row.count;
    r["empirical"] = q4(row.empirical);
    r["predicted"] = q4(row.predicted);
    j["order_classes"].push_back(std::move(r));
  }
  j["records"] = nlohmann::json::array();
  for (const FirstLayerRecord& rec : survey.records) {
    nlohmann::json r;
    r["h"] = ascending_coefficients(rec.h);
    r["h0"] = rec.h0.get_str();
    r["e0"] = rec.e0;
    r["h1"] = rec.h1.get_str();
    r["e1"] = rec.e1;
    r["class"] = rec.label;
    j["records"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

}  // namespace iwasawa
