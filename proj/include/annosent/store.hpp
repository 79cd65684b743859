#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "annosent/aggregate.hpp"
#include "annosent/ingest.hpp"
#include "annosent/model.hpp"
#include "annosent/scoring.hpp"

namespace annosent {

struct UpsertCounts {
  std::size_t documents_inserted = 0;
  std::size_t documents_updated = 0;
  std::size_t annotations_inserted = 0;
  std::size_t annotations_updated = 0;
};

struct FileQueryResult {
  DocumentRecord document;
  AnnotationCounts counts;
  std::optional<DocumentSentiment> sentiment;
};

/// Single-file SQLite store with the five logical relations: documents,
/// annotations, annotation_relations, sentiment_words, sentiment_annotations
/// (plus a per-document collective sentiment cache). Single writer; a
/// concurrent write attempt raises StoreLocked instead of blocking.
class Store {
 public:
  static constexpr int kSchemaVersion = 1;

  static Store open(const std::filesystem::path& location);

  Store(Store&&) noexcept;
  Store& operator=(Store&&) noexcept;
  ~Store();

  /// Idempotent: re-inserting identical rows reports zero changes.
  UpsertCounts upsert(const IngestReport& report);

  /// Overwrites any previous score rows for the same annotations and caches
  /// the lexicon rows that produced them.
  void put_scores(const std::vector<AnnotationScore>& scores,
                  const Lexicon& lexicon);

  void put_document_sentiment(const DocumentSentiment& sentiment);

  std::vector<std::pair<Annotation, std::optional<AnnotationScore>>>
  query_by_annotator(const std::string& annotator_id);

  /// Throws UnknownDocument.
  FileQueryResult query_by_file(const std::string& file_name);

  std::vector<DocumentRecord> all_documents();
  std::vector<Annotation> annotations_for_doc(const std::string& doc_id);
  std::optional<AnnotationScore> score_for(const std::string& annotation_id);

  void dump(std::ostream& out);
  void restore(std::istream& in);

 private:
  Store();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace annosent
