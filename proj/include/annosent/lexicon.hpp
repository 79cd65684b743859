#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace annosent {

enum class PosCategory { Adjective, Adverb, Verb, Noun };

std::string_view to_string(PosCategory pos);

/// SentiWordNet POS letter: a -> Adjective, r -> Adverb, v -> Verb,
/// n -> Noun. Anything else is not scoreable.
std::optional<PosCategory> pos_from_letter(char letter);

struct LexiconEntry {
  std::string lemma;  // lowercase
  PosCategory pos = PosCategory::Adjective;
  int sense_rank = 1;
  double positivity = 0.0;
  double negativity = 0.0;
  double objectivity = 1.0;

  bool operator==(const LexiconEntry&) const = default;
};

enum class LexiconFormat { SWN3, MiniTSV };

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::string source_description)
      : source_description_(std::move(source_description)) {}

  /// Keeps the entry with the smallest sense_rank per (lemma, pos).
  void add(LexiconEntry entry);

  const LexiconEntry* find(std::string_view lemma, PosCategory pos) const;

  /// Cross-POS lookup with priority Adjective > Adverb > Verb > Noun.
  const LexiconEntry* lookup(std::string_view token) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::string& source_description() const { return source_description_; }

  const std::map<std::pair<std::string, PosCategory>, LexiconEntry>& entries()
      const {
    return entries_;
  }

 private:
  std::map<std::pair<std::string, PosCategory>, LexiconEntry> entries_;
  std::string source_description_;
};

/// Throws MalformedLine, ScoreOutOfRange, DuplicateEntry (MiniTSV only).
Lexicon load_lexicon(std::istream& source, LexiconFormat format,
                     std::string source_description = "");

}  // namespace annosent
