#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "annosent/lexicon.hpp"

namespace annosent {

struct PolarityTriple {
  double positivity = 0.0;
  double negativity = 0.0;
  double objectivity = 0.0;

  bool operator==(const PolarityTriple&) const = default;
};

struct SignedWordScore {
  std::string token;
  PolarityTriple triple;  // after any negation swap
  double signed_max = 0.0;

  bool operator==(const SignedWordScore&) const = default;
};

struct AnnotationScore {
  std::string annotation_id;
  std::vector<SignedWordScore> words;
  double sentiment_score = 0.0;  // mean of signed maxima, 0 when no words
  std::size_t word_count = 0;
  bool no_sentiment_words = false;
};

/// Interchanges positivity and negativity; objectivity is untouched.
PolarityTriple apply_negation(const LexiconEntry& entry);
PolarityTriple apply_negation(const PolarityTriple& triple);

/// Largest of the three scores, negative iff negativity strictly exceeds
/// both others (tie priority positivity >= objectivity >= negativity).
/// Throws ScoreOutOfRange when a component leaves [0, 1].
double signed_max_polarity(const PolarityTriple& triple);

struct ScoreOptions {
  /// Drop words whose objectivity is the strict maximum of the triple.
  bool drop_objective = false;
};

AnnotationScore score_annotation(std::string_view body, const Lexicon& lexicon,
                                 const std::set<std::string>& stoplist,
                                 const ScoreOptions& options = {});

}  // namespace annosent
