#include "ontmed/evaluator.hpp"

#include <cmath>

namespace ontmed {

double harmonic_f(double precision, double recall) {
  double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

double round_half_up(double value, int digits) {
  double scale = std::pow(10.0, digits);
  double scaled = value * scale;
  // 1e-9 absorbs representation error such as 0.645 * 100 = 64.49999...
  double rounded = scaled >= 0.0 ? std::floor(scaled + 0.5 + 1e-9) : -std::floor(-scaled + 0.5 + 1e-9);
  return rounded / scale;
}

QueryScore score_query(const AnswerSet& computed, const AnswerSet& reference, bool answered) {
  if (computed.query_id != reference.query_id) {
    throw EvaluationError("query id mismatch: computed '" + computed.query_id + "' vs reference '" +
                          reference.query_id + "'");
  }
  QueryScore s{computed.query_id, answered, 0.0, 0.0, 0.0};
  if (!answered) return s;

  std::size_t overlap = 0;
  for (const auto& t : computed.tuples) overlap += reference.tuples.contains(t) ? 1 : 0;
  const auto n_computed = static_cast<double>(computed.tuples.size());
  const auto n_reference = static_cast<double>(reference.tuples.size());

  if (computed.tuples.empty()) {
    s.precision = reference.tuples.empty() ? 1.0 : 0.0;
  } else {
    s.precision = static_cast<double>(overlap) / n_computed;
  }
  s.recall = reference.tuples.empty() ? 1.0 : static_cast<double>(overlap) / n_reference;
  s.fmeasure = harmonic_f(s.precision, s.recall);
  return s;
}

EvaluationResult aggregate(const std::vector<QueryScore>& scores) {
  if (scores.empty()) throw EvaluationError("cannot aggregate an empty score list");
  EvaluationResult r;
  r.per_query = scores;
  r.total_queries = scores.size();
  for (const auto& s : scores) {
    if (s.answered) ++r.answered_count;
    r.avg_precision += s.precision;
    r.avg_recall += s.recall;
    r.avg_fmeasure += s.fmeasure;
  }
  const auto n = static_cast<double>(scores.size());
  r.avg_precision /= n;
  r.avg_recall /= n;
  r.avg_fmeasure /= n;
  r.h_fmeasure = harmonic_f(r.avg_precision, r.avg_recall);
  return r;
}

}  // namespace ontmed
