#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "annosent/model.hpp"
#include "annosent/scoring.hpp"

namespace annosent {

struct AnnotationCounts {
  std::map<AnnotationKind, std::size_t> per_kind;
  std::size_t total = 0;

  bool operator==(const AnnotationCounts&) const = default;
};

enum class WeightMode { Literal, Adjusted };
enum class Verdict { Positive, Negative, Objective };

std::string_view to_string(WeightMode mode);
std::string_view to_string(Verdict verdict);

struct WeightedTerm {
  std::string annotation_id;
  double score = 0.0;
  std::size_t meta_count = 0;  // direct meta-annotations on this annotation
  double weight = 0.0;
  bool excluded = false;
  std::optional<std::string> exclusion_reason;
};

struct DocumentSentiment {
  std::string doc_id;
  AnnotationCounts counts;
  std::vector<WeightedTerm> terms;  // ordered by annotation_id
  double weighted_score = 0.0;
  Verdict verdict = Verdict::Objective;
  WeightMode mode = WeightMode::Adjusted;
  double epsilon = 1e-9;
};

struct AggregateOptions {
  WeightMode mode = WeightMode::Adjusted;
  double epsilon = 1e-9;
  bool score_spans = false;
  /// Count unscored Highlight/Underline marks in the weight denominator N.
  bool n_includes_marks = false;
};

/// Buckets every annotation of the document by kind, meta-annotations
/// included.
AnnotationCounts count_annotations(std::span<const Annotation> annotations,
                                   const std::string& doc_id);

/// Weighted collective sentiment with parent-contradiction exclusion.
/// Weight per term is meta_count/N (Literal) or (1+meta_count)/N (Adjusted);
/// the sum runs over non-excluded terms in annotation_id order.
/// Throws MissingScore when a scoreable annotation has no score entry.
DocumentSentiment collective_sentiment(
    std::span<const Annotation> annotations,
    const std::map<std::string, AnnotationScore>& scores,
    const std::string& doc_id, const AggregateOptions& options = {});

}  // namespace annosent
