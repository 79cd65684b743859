#pragma once

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "annosent/lexicon.hpp"

namespace annosent {

struct Token {
  std::string surface;    // lowercase, no whitespace
  std::size_t position;   // index in the token stream

  bool operator==(const Token&) const = default;
};

struct SentimentWord {
  Token token;
  LexiconEntry entry;
  bool negated = false;

  bool operator==(const SentimentWord&) const = default;
};

bool is_negation_word(std::string_view surface);  // "not" or "never"

/// Lowercases and splits on any non-alphanumeric character.
std::vector<Token> tokenize(std::string_view text);

/// Throws StoplistContainsNegation when the stoplist holds "not"/"never".
std::vector<Token> remove_stopwords(const std::vector<Token>& tokens,
                                    const std::set<std::string>& stoplist);

/// One lowercase word per line, '#' comments. Throws
/// StoplistContainsNegation.
std::set<std::string> load_stoplist(std::istream& in);

const std::set<std::string>& default_stoplist();

/// Fallback chain: raw lookup, then one suffix stripped of
/// "ing"/"ed"/"es"/"s"/"ly" when the remainder keeps >= 3 characters.
std::optional<LexiconEntry> resolve(const Token& token, const Lexicon& lexicon);

/// tokenize -> remove_stopwords -> resolve, with negation marking. A
/// negation token toggles a pending flip regardless of its own lexicon
/// membership; the next resolved non-negation word consumes the
/// accumulated parity, so a double negation cancels out. Negation words
/// that resolve are emitted themselves, never negated.
std::vector<SentimentWord> extract_sentiment_words(
    std::string_view text, const Lexicon& lexicon,
    const std::set<std::string>& stoplist);

}  // namespace annosent
