#pragma once

// CSV ingestion of externally computed class-group records, the
// empirical-vs-predicted tabulation built on top of them, and the plain-text
// / JSON renderers shared with the command line tool.
//
// The ingestion path doubles as a falsification harness: every record whose
// base group is cyclic is checked against the admissible first-layer list,
// and violations are surfaced as loud findings rather than dropped.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "iwasawa/function_field.hpp"
#include "iwasawa/heuristics.hpp"
#include "iwasawa/shape.hpp"

namespace iwasawa {

struct SurveyRecord {
  std::string d;           // discriminant literal (opaque dedup key)
  AbelianPGroupShape a0;   // base-layer p-group
  AbelianPGroupShape a1;   // first-layer p-group
  std::string source;      // "path:line" provenance
  bool anomalous = false;  // a0 cyclic but a1 outside the admissible list
};

struct IngestReport {
  std::vector<SurveyRecord> records;
  std::vector<std::string> warnings;   // duplicate keys (first kept)
  std::vector<std::string> anomalies;  // would-be theorem counterexamples
};

// Reads `path`: header line `d,a0,a1`, then one record per line, `#` starting
// a comment, shapes in dot-exponent form ("2" = Z/p^2, "1.1" = Z/p x Z/p,
// "0" = trivial).  A malformed line raises std::runtime_error naming the line
// number.  A duplicate d keeps the first record and adds a warning.
IngestReport ingest_csv(const std::string& path, long p);

// Inverse of ingest_csv's reader: header plus one CSV line per record.
std::string render_csv(const std::vector<SurveyRecord>& records);

struct TabulatedShape {
  AbelianPGroupShape shape;
  int r = 0;               // order exponent minus m
  long long count = 0;
  mpq_class empirical;     // count / matching (0 when matching = 0)
  mpq_class predicted;     // raw predicted share (tail beyond the window excluded)
};

struct Tabulation {
  long p = 0;
  int m = 0;
  int max_r = 0;
  long long matching = 0;   // records with a0 cyclic of order p^m
  long long excluded = 0;   // records with any other a0
  long long anomalous = 0;  // matching records flagged at ingestion
  std::vector<TabulatedShape> rows;
  // Deviation compares the empirical distribution against the predicted one
  // *conditioned on the displayed window* (both renormalized to total mass
  // one), so data drawn exactly proportional to the prediction scores an
  // exact zero no matter how much tail the window cuts off.
  mpq_class max_abs_deviation;
  mpq_class mean_abs_deviation;
  std::string note;  // set when the table is empty or rows were off-window
};

// Filters to records whose a0 is cyclic of order p^m and lines their
// first-layer shapes up against the predicted distribution.  The window
// grows past max(10, ...) if the data contains deeper shapes, so every
// admissible ingested shape lands on a predicted row; inadmissible ones are
// counted in `anomalous` only.
Tabulation tabulate(const std::vector<SurveyRecord>& records, long p, int m);

// Synthetic survey drawn exactly proportional to the predicted distribution:
// each shape with share n / p^max_r contributes exactly n records.  With
// max_r >= tabulate's window (10) the draw spans every displayed row and
// tabulates with exactly zero deviation.
std::vector<SurveyRecord> synthetic_records(long p, int m, int max_r);

// Renderers.  Text tables are aligned, values at 4 decimal places; the JSON
// rendering carries the identical numeric content.
std::string render_text(const Tabulation& table);
std::string render_json(const Tabulation& table);
std::string render_ff_text(const FFSurvey& survey);
std::string render_ff_json(const FFSurvey& survey);

}  // namespace iwasawa
