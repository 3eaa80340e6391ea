#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ontmed/mediator.hpp"

namespace ontmed {

struct QueryScore {
  std::string query_id;
  bool answered = false;
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;

  friend bool operator==(const QueryScore&, const QueryScore&) = default;
};

struct EvaluationResult {
  std::vector<QueryScore> per_query;
  std::size_t answered_count = 0;
  std::size_t total_queries = 0;
  double avg_precision = 0.0;
  double avg_recall = 0.0;
  /// Mean of per-query F-measures.
  double avg_fmeasure = 0.0;
  /// Harmonic mean of avg_precision and avg_recall.
  double h_fmeasure = 0.0;

  friend bool operator==(const EvaluationResult&, const EvaluationResult&) = default;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2PR / (P + R), or 0 when P + R == 0.
double harmonic_f(double precision, double recall);

/// Rounds half away from zero at `digits` decimals, absorbing binary
/// representation error (0.645 rounds to 0.65).
double round_half_up(double value, int digits);

/// Throws EvaluationError when the query ids differ.
QueryScore score_query(const AnswerSet& computed, const AnswerSet& reference, bool answered);

/// Macro averages over all queries; unanswered queries contribute zeros.
/// Throws EvaluationError on an empty list.
EvaluationResult aggregate(const std::vector<QueryScore>& scores);

}  // namespace ontmed
