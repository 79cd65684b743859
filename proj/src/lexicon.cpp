#include "annosent/lexicon.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "annosent/errors.hpp"

namespace annosent {

std::string_view to_string(PosCategory pos) {
  switch (pos) {
    case PosCategory::Adjective:
      return "a";
    case PosCategory::Adverb:
      return "r";
    case PosCategory::Verb:
      return "v";
    case PosCategory::Noun:
      return "n";
  }
  return "?";
}

std::optional<PosCategory> pos_from_letter(char letter) {
  switch (letter) {
    case 'a':
      return PosCategory::Adjective;
    case 'r':
      return PosCategory::Adverb;
    case 'v':
      return PosCategory::Verb;
    case 'n':
      return PosCategory::Noun;
    default:
      return std::nullopt;
  }
}

void Lexicon::add(LexiconEntry entry) {
  auto key = std::make_pair(entry.lemma, entry.pos);
  auto it = entries_.find(key);
  if (it == entries_.end() || entry.sense_rank < it->second.sense_rank)
    entries_[key] = std::move(entry);
}

const LexiconEntry* Lexicon::find(std::string_view lemma,
                                  PosCategory pos) const {
  auto it = entries_.find(std::make_pair(std::string(lemma), pos));
  return it == entries_.end() ? nullptr : &it->second;
}

const LexiconEntry* Lexicon::lookup(std::string_view token) const {
  static constexpr std::array priority = {PosCategory::Adjective,
                                          PosCategory::Adverb, PosCategory::Verb,
                                          PosCategory::Noun};
  for (PosCategory pos : priority)
    if (const LexiconEntry* e = find(token, pos)) return e;
  return nullptr;
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

double parse_score(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw MalformedLine(line_no, "bad score '" + text + "'");
  if (value < 0.0 || value > 1.0)
    throw ScoreOutOfRange("line " + std::to_string(line_no) + ": score " +
                          text + " outside [0,1]");
  return value;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void load_swn3_line(Lexicon& lexicon, const std::string& line,
                    std::size_t line_no) {
  // POS <tab> ID <tab> PosScore <tab> NegScore <tab> SynsetTerms <tab> Gloss
  std::vector<std::string> fields = split_tabs(line);
  if (fields.size() < 5) throw MalformedLine(line_no, "expected 6 tab-separated fields");
  if (fields[0].size() != 1) throw MalformedLine(line_no, "bad POS field '" + fields[0] + "'");
  std::optional<PosCategory> pos = pos_from_letter(fields[0][0]);
  if (!pos) return;  // unscoreable POS, skipped
  double positivity = parse_score(fields[2], line_no);
  double negativity = parse_score(fields[3], line_no);
  double objectivity = 1.0 - positivity - negativity;
  if (objectivity < -1e-9)
    throw ScoreOutOfRange("line " + std::to_string(line_no) +
                          ": positivity + negativity exceeds 1");
  if (objectivity < 0.0) objectivity = 0.0;

  std::istringstream terms(fields[4]);
  std::string term;
  while (terms >> term) {
    std::size_t hash = term.rfind('#');
    if (hash == std::string::npos || hash + 1 == term.size())
      throw MalformedLine(line_no, "synset term '" + term + "' lacks #rank");
    int rank = 0;
    const char* first = term.data() + hash + 1;
    const char* last = term.data() + term.size();
    auto [ptr, ec] = std::from_chars(first, last, rank);
    if (ec != std::errc{} || ptr != last || rank < 1)
      throw MalformedLine(line_no, "bad sense rank in '" + term + "'");
    lexicon.add({lower(term.substr(0, hash)), *pos, rank, positivity,
                 negativity, objectivity});
  }
}

void load_mini_line(Lexicon& lexicon, const std::string& line,
                    std::size_t line_no) {
  // lemma <tab> pos <tab> positivity <tab> negativity
  std::vector<std::string> fields = split_tabs(line);
  if (fields.size() != 4) throw MalformedLine(line_no, "expected 4 tab-separated fields");
  if (fields[1].size() != 1) throw MalformedLine(line_no, "bad POS field '" + fields[1] + "'");
  std::optional<PosCategory> pos = pos_from_letter(fields[1][0]);
  if (!pos) throw MalformedLine(line_no, "unscoreable POS '" + fields[1] + "'");
  double positivity = parse_score(fields[2], line_no);
  double negativity = parse_score(fields[3], line_no);
  if (positivity + negativity > 1.0 + 1e-9)
    throw ScoreOutOfRange("line " + std::to_string(line_no) +
                          ": positivity + negativity exceeds 1");
  std::string lemma = lower(fields[0]);
  if (lexicon.find(lemma, *pos))
    throw DuplicateEntry("line " + std::to_string(line_no) + ": duplicate entry " +
                         lemma + "/" + std::string(to_string(*pos)));
  double objectivity = std::max(0.0, 1.0 - positivity - negativity);
  lexicon.add({lemma, *pos, 1, positivity, negativity, objectivity});
}

}  // namespace

Lexicon load_lexicon(std::istream& source, LexiconFormat format,
                     std::string source_description) {
  Lexicon lexicon(std::move(source_description));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (format == LexiconFormat::SWN3)
      load_swn3_line(lexicon, line, line_no);
    else
      load_mini_line(lexicon, line, line_no);
  }
  return lexicon;
}

}  // namespace annosent
