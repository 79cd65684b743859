#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "annosent/errors.hpp"
#include "annosent/textprep.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace annosent;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::string> word_surfaces(const std::vector<SentimentWord>& words) {
  std::vector<std::string> out;
  for (const SentimentWord& w : words) out.push_back(w.token.surface);
  return out;
}

}  // namespace

TEST_CASE("tokenize: Fig 2 Ann1") {
  CHECK(surfaces(tokenize("This article is quite well but not so good.")) ==
        std::vector<std::string>{"this", "article", "is", "quite", "well",
                                 "but", "not", "so", "good"});
}

TEST_CASE("tokenize: empty and punctuation") {
  CHECK(tokenize("").empty());
  CHECK(surfaces(tokenize("well-written!!")) ==
        std::vector<std::string>{"well", "written"});
  CHECK(surfaces(tokenize("isn't")) == std::vector<std::string>{"isn", "t"});
  auto tokens = tokenize("A b  c");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].position == 0);
  CHECK(tokens[2].position == 2);
}

TEST_CASE("remove_stopwords: default stoplist on Ann1") {
  auto kept = remove_stopwords(
      tokenize("This article is quite well but not so good."),
      default_stoplist());
  CHECK(surfaces(kept) ==
        std::vector<std::string>{"article", "quite", "well", "not", "good"});
}

TEST_CASE("remove_stopwords: trivia") {
  CHECK(remove_stopwords({}, default_stoplist()).empty());
  auto kept = remove_stopwords(tokenize("not"), default_stoplist());
  CHECK(surfaces(kept) == std::vector<std::string>{"not"});
}

TEST_CASE("stoplist may not contain negation words") {
  CHECK_THROWS_AS(remove_stopwords({}, {"the", "not"}),
                  StoplistContainsNegation);
  std::istringstream bad("the\nnever\n");
  CHECK_THROWS_AS(load_stoplist(bad), StoplistContainsNegation);
}

TEST_CASE("load_stoplist: comments and case folding") {
  std::istringstream in("# header\nThe\nis  # trailing comment\n\nso\n");
  auto words = load_stoplist(in);
  CHECK(words == std::set<std::string>{"the", "is", "so"});
}

TEST_CASE("resolve: fallback chain") {
  Lexicon lex = fixtures::table1_lexicon();
  auto satisfy = resolve({"satisfy", 0}, lex);
  REQUIRE(satisfy.has_value());
  CHECK(satisfy->positivity == 0.5);
  // "satisfied" strips to "satisfi", which the Table-1 fixture lacks.
  CHECK_FALSE(resolve({"satisfied", 0}, lex).has_value());
  CHECK_FALSE(resolve({"zz", 0}, lex).has_value());

  std::istringstream mini("walk\tv\t0.25\t0\n");
  Lexicon walking = load_lexicon(mini, LexiconFormat::MiniTSV);
  for (const char* form : {"walk", "walking", "walked", "walks"}) {
    auto hit = resolve({form, 0}, walking);
    REQUIRE_MESSAGE(hit.has_value(), form);
    CHECK(hit->lemma == "walk");
  }
  // remainder must keep >= 3 characters
  std::istringstream tiny("us\tn\t0.5\t0\n");
  Lexicon us = load_lexicon(tiny, LexiconFormat::MiniTSV);
  CHECK_FALSE(resolve({"used", 0}, us).has_value());
  CHECK(resolve({"us", 0}, us).has_value());
}

TEST_CASE("extract: Fig 2 Ann1 with Good negated") {
  Lexicon lex = fixtures::table1_lexicon();
  auto words = extract_sentiment_words(
      "This article is quite well but not so good.", lex, default_stoplist());
  REQUIRE(word_surfaces(words) ==
          std::vector<std::string>{"quite", "well", "not", "good"});
  CHECK_FALSE(words[0].negated);
  CHECK_FALSE(words[1].negated);
  CHECK_FALSE(words[2].negated);
  CHECK(words[3].negated);
}

TEST_CASE("extract: Ann6 single word") {
  Lexicon lex = fixtures::table1_lexicon();
  auto words =
      extract_sentiment_words("It is bad one.", lex, default_stoplist());
  REQUIRE(words.size() == 1);
  CHECK(words[0].token.surface == "bad");
  CHECK_FALSE(words[0].negated);
}

TEST_CASE("extract: never triggers the swap with and without a lexicon entry") {
  Lexicon lex = fixtures::table1_lexicon();
  auto words = extract_sentiment_words("never best", lex, default_stoplist());
  REQUIRE(word_surfaces(words) == std::vector<std::string>{"best"});
  CHECK(words[0].negated);

  std::istringstream extra(
      "best\ta\t0.75\t0\nnever\tr\t0\t0.5\n");
  Lexicon with_never = load_lexicon(extra, LexiconFormat::MiniTSV);
  auto words2 =
      extract_sentiment_words("never best", with_never, default_stoplist());
  REQUIRE(word_surfaces(words2) == std::vector<std::string>{"never", "best"});
  CHECK_FALSE(words2[0].negated);
  CHECK(words2[1].negated);
}

TEST_CASE("extract: double negation cancels") {
  Lexicon lex = fixtures::table1_lexicon();
  auto words =
      extract_sentiment_words("not not good", lex, default_stoplist());
  REQUIRE(word_surfaces(words) ==
          std::vector<std::string>{"not", "not", "good"});
  CHECK_FALSE(words[0].negated);
  CHECK_FALSE(words[1].negated);
  CHECK_FALSE(words[2].negated);
}

TEST_CASE("extract: negation skips unresolved tokens") {
  Lexicon lex = fixtures::table1_lexicon();
  auto words = extract_sentiment_words("not really good", lex,
                                       default_stoplist());
  REQUIRE(word_surfaces(words) == std::vector<std::string>{"not", "good"});
  CHECK(words[1].negated);
}

TEST_CASE("property: extraction output maps back to the token stream") {
  Lexicon lex = fixtures::table1_lexicon();
  std::mt19937 rng(3);
  const std::array<std::string, 10> vocab = {
      "quite", "well", "not",     "good",     "satisfy",
      "best",  "bad",  "article", "research", "the"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    std::size_t n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      if (!text.empty()) text += " ";
      text += vocab[rng() % vocab.size()];
    }
    auto tokens = tokenize(text);
    auto words = extract_sentiment_words(text, lex, default_stoplist());
    CHECK(words.size() <= tokens.size());
    for (const SentimentWord& w : words) {
      bool found = false;
      for (const Token& t : tokens)
        found = found || (t.surface == w.token.surface &&
                          t.position == w.token.position);
      CHECK(found);
    }
    // Determinism
    CHECK(extract_sentiment_words(text, lex, default_stoplist()) == words);
  }
}

TEST_CASE("property: stopwords between negation and target do not matter") {
  Lexicon lex = fixtures::table1_lexicon();
  std::mt19937 rng(5);
  const std::array<std::string, 5> stops = {"so", "the", "a", "it", "is"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string negation = (rng() % 2 == 0) ? "not" : "never";
    std::string target = (rng() % 2 == 0) ? "good" : "best";
    std::string padded = negation;
    std::size_t pads = 1 + rng() % 3;
    for (std::size_t i = 0; i < pads; ++i)
      padded += " " + stops[rng() % stops.size()];
    padded += " " + target;
    std::string plain = negation + " " + target;
    auto strip_positions = [](std::vector<SentimentWord> words) {
      for (SentimentWord& w : words) w.token.position = 0;
      return words;
    };
    CHECK(strip_positions(
              extract_sentiment_words(padded, lex, default_stoplist())) ==
          strip_positions(
              extract_sentiment_words(plain, lex, default_stoplist())));
  }
}
