#include "annosent/scoring.hpp"

#include <algorithm>

#include "annosent/errors.hpp"
#include "annosent/textprep.hpp"

namespace annosent {

PolarityTriple apply_negation(const PolarityTriple& triple) {
  return {triple.negativity, triple.positivity, triple.objectivity};
}

PolarityTriple apply_negation(const LexiconEntry& entry) {
  return apply_negation(
      PolarityTriple{entry.positivity, entry.negativity, entry.objectivity});
}

double signed_max_polarity(const PolarityTriple& triple) {
  for (double v : {triple.positivity, triple.negativity, triple.objectivity})
    if (v < 0.0 || v > 1.0)
      throw ScoreOutOfRange("polarity component outside [0,1]");
  double magnitude =
      std::max({triple.positivity, triple.negativity, triple.objectivity});
  bool negative = triple.negativity > triple.positivity &&
                  triple.negativity > triple.objectivity;
  return negative ? -magnitude : magnitude;
}

AnnotationScore score_annotation(std::string_view body, const Lexicon& lexicon,
                                 const std::set<std::string>& stoplist,
                                 const ScoreOptions& options) {
  AnnotationScore result;
  for (const SentimentWord& word :
       extract_sentiment_words(body, lexicon, stoplist)) {
    PolarityTriple triple{word.entry.positivity, word.entry.negativity,
                          word.entry.objectivity};
    if (word.negated) triple = apply_negation(triple);
    if (options.drop_objective && triple.objectivity > triple.positivity &&
        triple.objectivity > triple.negativity)
      continue;
    result.words.push_back(
        {word.token.surface, triple, signed_max_polarity(triple)});
  }
  result.word_count = result.words.size();
  if (result.word_count == 0) {
    result.sentiment_score = 0.0;
    result.no_sentiment_words = true;
    return result;
  }
  double sum = 0.0;
  for (const SignedWordScore& w : result.words) sum += w.signed_max;
  result.sentiment_score = sum / static_cast<double>(result.word_count);
  return result;
}

}  // namespace annosent
