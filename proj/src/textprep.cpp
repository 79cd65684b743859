#include "annosent/textprep.hpp"

#include <array>
#include <cctype>

#include "annosent/errors.hpp"

namespace annosent {

bool is_negation_word(std::string_view surface) {
  return surface == "not" || surface == "never";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back({current, tokens.size()});
      current.clear();
    }
  };
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc))
      current.push_back(static_cast<char>(std::tolower(uc)));
    else
      flush();
  }
  flush();
  return tokens;
}

namespace {

void check_stoplist(const std::set<std::string>& stoplist) {
  for (const char* word : {"not", "never"})
    if (stoplist.contains(word))
      throw StoplistContainsNegation(std::string("stoplist contains negation word '") +
                                     word + "'");
}

}  // namespace

std::vector<Token> remove_stopwords(const std::vector<Token>& tokens,
                                    const std::set<std::string>& stoplist) {
  check_stoplist(stoplist);
  std::vector<Token> kept;
  for (const Token& t : tokens)
    if (!stoplist.contains(t.surface)) kept.push_back(t);
  return kept;
}

std::set<std::string> load_stoplist(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string word;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)))
        word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (!word.empty()) words.insert(word);
  }
  check_stoplist(words);
  return words;
}

const std::set<std::string>& default_stoplist() {
  static const std::set<std::string> words = {"this", "is", "but",  "so",
                                              "a",    "an", "the",  "it",
                                              "i",    "am", "with", "one"};
  return words;
}

std::optional<LexiconEntry> resolve(const Token& token, const Lexicon& lexicon) {
  if (const LexiconEntry* e = lexicon.lookup(token.surface)) return *e;
  static constexpr std::array<std::string_view, 5> suffixes = {"ing", "ed", "es",
                                                               "s", "ly"};
  for (std::string_view suffix : suffixes) {
    if (token.surface.size() < suffix.size() + 3) continue;
    if (!token.surface.ends_with(suffix)) continue;
    std::string stem = token.surface.substr(0, token.surface.size() - suffix.size());
    if (const LexiconEntry* e = lexicon.lookup(stem)) return *e;
  }
  return std::nullopt;
}

std::vector<SentimentWord> extract_sentiment_words(
    std::string_view text, const Lexicon& lexicon,
    const std::set<std::string>& stoplist) {
  std::vector<SentimentWord> words;
  bool pending_flip = false;
  for (const Token& token : remove_stopwords(tokenize(text), stoplist)) {
    if (is_negation_word(token.surface)) {
      // Operator role is independent of lexicon membership; the word is
      // also scored when the lexicon knows it.
      if (std::optional<LexiconEntry> entry = resolve(token, lexicon))
        words.push_back({token, *entry, false});
      pending_flip = !pending_flip;
      continue;
    }
    std::optional<LexiconEntry> entry = resolve(token, lexicon);
    if (!entry) continue;
    words.push_back({token, *entry, pending_flip});
    pending_flip = false;
  }
  return words;
}

}  // namespace annosent
