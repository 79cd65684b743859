#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "annosent/aggregate.hpp"
#include "annosent/errors.hpp"
#include "annosent/ingest.hpp"
#include "annosent/lexicon.hpp"
#include "annosent/model.hpp"
#include "annosent/scoring.hpp"
#include "annosent/store.hpp"
#include "annosent/textprep.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace annosent;

namespace {

struct CliConfig {
  std::string store_path;
  std::string lexicon_path;
  std::string lexicon_format = "mini";
  std::string stoplist_path;
  std::string mode = "adjusted";
  double epsilon = 1e-9;
  std::string output = "plain";
  bool score_spans = false;
  bool drop_objective = false;
  bool n_includes_marks = false;
  bool dtd_strict = false;
  bool rescore = false;
};

std::string fmt_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  std::string s = buffer;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

Lexicon load_lexicon_file(const CliConfig& config) {
  if (config.lexicon_path.empty())
    throw Error("a lexicon is required; pass --lexicon");
  std::ifstream in(config.lexicon_path, std::ios::binary);
  if (!in) throw IoFailure("cannot open lexicon " + config.lexicon_path);
  LexiconFormat format = config.lexicon_format == "swn3" ? LexiconFormat::SWN3
                                                         : LexiconFormat::MiniTSV;
  return load_lexicon(in, format, config.lexicon_path);
}

std::set<std::string> load_stoplist_file(const CliConfig& config) {
  if (config.stoplist_path.empty()) return default_stoplist();
  std::ifstream in(config.stoplist_path);
  if (!in) throw IoFailure("cannot open stoplist " + config.stoplist_path);
  return load_stoplist(in);
}

AggregateOptions aggregate_options(const CliConfig& config) {
  AggregateOptions options;
  options.mode =
      config.mode == "literal" ? WeightMode::Literal : WeightMode::Adjusted;
  options.epsilon = config.epsilon;
  options.score_spans = config.score_spans;
  options.n_includes_marks = config.n_includes_marks;
  return options;
}

json score_to_json(const AnnotationScore& score) {
  json words = json::array();
  for (const SignedWordScore& w : score.words)
    words.push_back({{"token", w.token},
                     {"positivity", w.triple.positivity},
                     {"negativity", w.triple.negativity},
                     {"objectivity", w.triple.objectivity},
                     {"signed_max", w.signed_max}});
  return {{"id", score.annotation_id},
          {"words", words},
          {"sentiment_score", score.sentiment_score},
          {"word_count", score.word_count},
          {"no_sentiment_words", score.no_sentiment_words}};
}

json sentiment_to_json(const DocumentSentiment& s) {
  json terms = json::array();
  for (const WeightedTerm& t : s.terms) {
    json jt = {{"id", t.annotation_id},
               {"score", t.score},
               {"meta_count", t.meta_count},
               {"weight", t.weight},
               {"excluded", t.excluded}};
    if (t.exclusion_reason) jt["exclusion_reason"] = *t.exclusion_reason;
    terms.push_back(std::move(jt));
  }
  return {{"doc", s.doc_id},
          {"terms", terms},
          {"weighted_score", s.weighted_score},
          {"verdict", std::string(to_string(s.verdict))},
          {"mode", std::string(to_string(s.mode))},
          {"epsilon", s.epsilon}};
}

json counts_to_json(const AnnotationCounts& counts) {
  json per_kind = json::object();
  for (const auto& [kind, count] : counts.per_kind)
    per_kind[std::string(to_string(kind))] = count;
  return {{"per_kind", per_kind}, {"total", counts.total}};
}

int cmd_ingest(const CliConfig& config, const std::string& input) {
  IngestReport report;
  std::string ext = fs::path(input).extension().string();
  if (ext == ".pdf") {
    report = extract_pdf_annotations(input);
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + input);
    if (ext == ".xml") {
      std::ostringstream buffer;
      buffer << in.rdbuf();
      report = parse_annotation_xml(buffer.str(), {config.dtd_strict});
    } else {
      report = parse_annotation_jsonl(in);
    }
  }
  Store store = Store::open(config.store_path);
  UpsertCounts counts = store.upsert(report);
  if (config.output == "json") {
    std::cout << json{{"annotations_inserted", counts.annotations_inserted},
                      {"annotations_updated", counts.annotations_updated},
                      {"documents_inserted", counts.documents_inserted},
                      {"documents_updated", counts.documents_updated},
                      {"warnings", report.warnings}}
                     .dump()
              << '\n';
  } else {
    for (const std::string& warning : report.warnings)
      std::cerr << "warning: " << warning << '\n';
    std::cout << counts.annotations_inserted << " annotations inserted, "
              << counts.annotations_updated << " updated ("
              << counts.documents_inserted << " documents inserted)\n";
  }
  return 0;
}

int cmd_counts(const CliConfig& config, const std::string& file_name) {
  Store store = Store::open(config.store_path);
  FileQueryResult result = store.query_by_file(file_name);
  if (config.output == "json") {
    std::cout << json{{"doc", result.document.doc_id},
                      {"counts", counts_to_json(result.counts)}}
                     .dump()
              << '\n';
    return 0;
  }
  static constexpr AnnotationKind order[] = {
      AnnotationKind::Comment,   AnnotationKind::Note,
      AnnotationKind::Help,      AnnotationKind::Insert,
      AnnotationKind::Paragraph, AnnotationKind::Highlight,
      AnnotationKind::Underline, AnnotationKind::Unknown};
  for (AnnotationKind kind : order) {
    auto it = result.counts.per_kind.find(kind);
    std::size_t n = it == result.counts.per_kind.end() ? 0 : it->second;
    std::cout << to_string(kind) << "s: " << n << '\n';
  }
  std::cout << "total: " << result.counts.total << '\n';
  return 0;
}

std::vector<AnnotationScore> score_document(const CliConfig& config,
                                            Store& store,
                                            const std::string& doc_id) {
  Lexicon lexicon = load_lexicon_file(config);
  std::set<std::string> stoplist = load_stoplist_file(config);
  ScoreOptions options{config.drop_objective};
  std::vector<AnnotationScore> scores;
  for (const Annotation& a : store.annotations_for_doc(doc_id)) {
    if (!kind_scoreable(a.kind, config.score_spans)) continue;
    AnnotationScore score = score_annotation(a.body, lexicon, stoplist, options);
    score.annotation_id = a.annotation_id;
    scores.push_back(std::move(score));
  }
  store.put_scores(scores, lexicon);
  return scores;
}

int cmd_score(const CliConfig& config, const std::string& file_name) {
  Store store = Store::open(config.store_path);
  FileQueryResult result = store.query_by_file(file_name);
  std::vector<AnnotationScore> scores =
      score_document(config, store, result.document.doc_id);
  if (config.output == "json") {
    json rows = json::array();
    for (const AnnotationScore& score : scores) rows.push_back(score_to_json(score));
    std::cout << json{{"doc", result.document.doc_id}, {"scores", rows}}.dump()
              << '\n';
    return 0;
  }
  for (const AnnotationScore& score : scores) {
    std::cout << score.annotation_id << ":";
    for (const SignedWordScore& w : score.words)
      std::cout << " " << w.token << "(" << fmt_number(w.triple.positivity)
                << "," << fmt_number(w.triple.negativity) << ","
                << fmt_number(w.triple.objectivity) << ")="
                << fmt_number(w.signed_max);
    std::cout << " S.S=" << fmt_number(score.sentiment_score);
    if (score.no_sentiment_words) std::cout << " [no sentiment words]";
    std::cout << '\n';
  }
  return 0;
}

int cmd_collective(const CliConfig& config, const std::string& file_name) {
  Store store = Store::open(config.store_path);
  FileQueryResult result = store.query_by_file(file_name);
  const std::string& doc_id = result.document.doc_id;
  std::vector<Annotation> annotations = store.annotations_for_doc(doc_id);

  std::map<std::string, AnnotationScore> scores;
  bool need_rescore = config.rescore;
  if (!need_rescore) {
    for (const Annotation& a : annotations) {
      if (!kind_scoreable(a.kind, config.score_spans)) continue;
      std::optional<AnnotationScore> stored = store.score_for(a.annotation_id);
      if (!stored) {
        need_rescore = true;
        break;
      }
      scores[a.annotation_id] = std::move(*stored);
    }
  }
  if (need_rescore) {
    scores.clear();
    for (AnnotationScore& score : score_document(config, store, doc_id))
      scores[score.annotation_id] = std::move(score);
  }

  DocumentSentiment sentiment =
      collective_sentiment(annotations, scores, doc_id, aggregate_options(config));
  store.put_document_sentiment(sentiment);

  if (config.output == "json") {
    std::cout << sentiment_to_json(sentiment).dump() << '\n';
    return 0;
  }
  for (const WeightedTerm& t : sentiment.terms) {
    std::cout << t.annotation_id << ": score " << fmt_number(t.score)
              << " weight " << fmt_number(t.weight);
    if (t.excluded)
      std::cout << " excluded: " << t.exclusion_reason.value_or("");
    std::cout << '\n';
  }
  std::cout << "weighted_score: " << fmt_number(sentiment.weighted_score) << '\n';
  std::cout << "verdict: " << to_string(sentiment.verdict) << '\n';
  return 0;
}

int cmd_query(const CliConfig& config, const std::string& by,
              const std::string& key) {
  Store store = Store::open(config.store_path);
  if (by == "annotator") {
    auto rows = store.query_by_annotator(key);
    if (config.output == "json") {
      json out = json::array();
      for (const auto& [a, score] : rows) {
        json j = {{"id", a.annotation_id},
                  {"kind", std::string(to_string(a.kind))},
                  {"body", a.body},
                  {"doc", a.doc_id},
                  {"created_at", a.created_at}};
        if (score) j["score"] = score_to_json(*score);
        out.push_back(std::move(j));
      }
      std::cout << json{{"annotator", key}, {"annotations", out}}.dump() << '\n';
      return 0;
    }
    for (const auto& [a, score] : rows) {
      std::cout << a.annotation_id << " [" << to_string(a.kind) << "] "
                << a.body;
      if (score) std::cout << " S.S=" << fmt_number(score->sentiment_score);
      std::cout << '\n';
    }
    return 0;
  }
  FileQueryResult result = store.query_by_file(key);
  if (config.output == "json") {
    json j = {{"doc", result.document.doc_id},
              {"file_name", result.document.file_name},
              {"counts", counts_to_json(result.counts)}};
    if (result.sentiment) j["sentiment"] = sentiment_to_json(*result.sentiment);
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::cout << "doc: " << result.document.doc_id << '\n';
  std::cout << "total annotations: " << result.counts.total << '\n';
  if (result.sentiment) {
    std::cout << "weighted_score: " << fmt_number(result.sentiment->weighted_score)
              << '\n';
    std::cout << "verdict: " << to_string(result.sentiment->verdict) << '\n';
  } else {
    std::cout << "verdict: (not computed)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annotation sentiment analyzer"};
  app.require_subcommand(1);

  CliConfig config;
  app.add_option("--store", config.store_path, "store file path")->required();
  app.add_option("--lexicon", config.lexicon_path, "lexicon file path");
  app.add_option("--lexicon-format", config.lexicon_format, "mini or swn3")
      ->check(CLI::IsMember({"mini", "swn3"}));
  app.add_option("--stoplist", config.stoplist_path, "stoplist file path");
  app.add_option("--mode", config.mode, "weighting mode")
      ->check(CLI::IsMember({"literal", "adjusted"}));
  app.add_option("--epsilon", config.epsilon, "objective verdict band")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", config.output, "plain or json")
      ->check(CLI::IsMember({"plain", "json"}));
  app.add_flag("--score-spans", config.score_spans,
               "score highlight/underline span text");
  app.add_flag("--drop-objective", config.drop_objective,
               "drop objectivity-dominant words");
  app.add_flag("--n-includes-marks", config.n_includes_marks,
               "count unscored marks in the weight denominator");
  app.add_flag("--dtd-strict", config.dtd_strict,
               "warn on XML Type values beyond the DTD");

  std::string input, file_name, query_by, query_key;
  CLI::App* ingest = app.add_subcommand("ingest", "parse and store a file");
  ingest->add_option("input", input, "xml, jsonl or pdf file")->required();
  CLI::App* counts = app.add_subcommand("counts", "annotation counts per kind");
  counts->add_option("file_name", file_name)->required();
  CLI::App* score = app.add_subcommand("score", "score every annotation");
  score->add_option("file_name", file_name)->required();
  CLI::App* collective =
      app.add_subcommand("collective", "collective document sentiment");
  collective->add_option("file_name", file_name)->required();
  collective->add_flag("--rescore", config.rescore,
                       "recompute scores instead of reusing stored ones");
  CLI::App* query = app.add_subcommand("query", "query the store");
  query->add_option("--by", query_by, "annotator or file")
      ->required()
      ->check(CLI::IsMember({"annotator", "file"}));
  query->add_option("key", query_key)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return cmd_ingest(config, input);
    if (counts->parsed()) return cmd_counts(config, file_name);
    if (score->parsed()) return cmd_score(config, file_name);
    if (collective->parsed()) return cmd_collective(config, file_name);
    if (query->parsed()) return cmd_query(config, query_by, query_key);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
