#include "annosent/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "annosent/errors.hpp"

namespace annosent {

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::Literal ? "literal" : "adjusted";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Positive:
      return "positive";
    case Verdict::Negative:
      return "negative";
    case Verdict::Objective:
      return "objective";
  }
  return "?";
}

AnnotationCounts count_annotations(std::span<const Annotation> annotations,
                                   const std::string& doc_id) {
  AnnotationCounts counts;
  for (const Annotation& a : annotations) {
    if (a.doc_id != doc_id) continue;
    ++counts.per_kind[a.kind];
    ++counts.total;
  }
  return counts;
}

namespace {

int sign_of(double value) { return value > 0.0 ? 1 : value < 0.0 ? -1 : 0; }

}  // namespace

DocumentSentiment collective_sentiment(
    std::span<const Annotation> annotations,
    const std::map<std::string, AnnotationScore>& scores,
    const std::string& doc_id, const AggregateOptions& options) {
  DocumentSentiment result;
  result.doc_id = doc_id;
  result.mode = options.mode;
  result.epsilon = options.epsilon;
  result.counts = count_annotations(annotations, doc_id);

  std::vector<const Annotation*> doc_annotations;
  for (const Annotation& a : annotations)
    if (a.doc_id == doc_id) doc_annotations.push_back(&a);

  std::map<std::string, std::size_t> meta_counts;
  for (const Annotation* a : doc_annotations)
    if (const auto* p = std::get_if<ParentTarget>(&a->target))
      ++meta_counts[p->parent_annotation_id];

  std::vector<const Annotation*> scoreable;
  std::size_t denominator = 0;
  for (const Annotation* a : doc_annotations) {
    if (kind_scoreable(a->kind, options.score_spans)) {
      scoreable.push_back(a);
      ++denominator;
    } else if (options.n_includes_marks &&
               (a->kind == AnnotationKind::Highlight ||
                a->kind == AnnotationKind::Underline)) {
      ++denominator;
    }
  }
  std::sort(scoreable.begin(), scoreable.end(),
            [](const Annotation* x, const Annotation* y) {
              return x->annotation_id < y->annotation_id;
            });

  auto score_of = [&](const std::string& id) -> double {
    auto it = scores.find(id);
    if (it == scores.end())
      throw MissingScore("no score for annotation " + id);
    return it->second.sentiment_score;
  };

  double total = 0.0;
  for (const Annotation* a : scoreable) {
    WeightedTerm term;
    term.annotation_id = a->annotation_id;
    term.score = score_of(a->annotation_id);
    auto mc = meta_counts.find(a->annotation_id);
    term.meta_count = mc == meta_counts.end() ? 0 : mc->second;
    double numerator = options.mode == WeightMode::Literal
                           ? static_cast<double>(term.meta_count)
                           : static_cast<double>(1 + term.meta_count);
    term.weight = denominator == 0 ? 0.0
                                   : numerator / static_cast<double>(denominator);
    if (const auto* p = std::get_if<ParentTarget>(&a->target)) {
      // Contradiction check uses the parent's original score even when the
      // parent itself ends up excluded.
      auto parent_score = scores.find(p->parent_annotation_id);
      if (parent_score != scores.end() &&
          sign_of(term.score) * sign_of(parent_score->second.sentiment_score) <
              0) {
        term.excluded = true;
        term.exclusion_reason = "contradicts parent";
      }
    }
    if (!term.excluded) total += term.score * term.weight;
    result.terms.push_back(std::move(term));
  }

  result.weighted_score = total;
  if (total > options.epsilon)
    result.verdict = Verdict::Positive;
  else if (total < -options.epsilon)
    result.verdict = Verdict::Negative;
  else
    result.verdict = Verdict::Objective;
  return result;
}

}  // namespace annosent
