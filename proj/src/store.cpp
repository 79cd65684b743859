#include "annosent/store.hpp"

#include <sqlite3.h>

#include <sstream>

#include "annosent/errors.hpp"
#include "json.hpp"

using nlohmann::json;

namespace annosent {

namespace {

struct Stmt {
  Stmt(sqlite3* db, const char* sql) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt, nullptr) != SQLITE_OK)
      throw IoFailure(std::string("prepare failed: ") + sqlite3_errmsg(db));
  }
  ~Stmt() { sqlite3_finalize(stmt); }
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  Stmt& bind(int index, const std::string& value) {
    sqlite3_bind_text(stmt, index, value.c_str(), -1, SQLITE_TRANSIENT);
    return *this;
  }
  Stmt& bind(int index, std::int64_t value) {
    sqlite3_bind_int64(stmt, index, value);
    return *this;
  }
  Stmt& bind(int index, double value) {
    sqlite3_bind_double(stmt, index, value);
    return *this;
  }
  Stmt& bind_null(int index) {
    sqlite3_bind_null(stmt, index);
    return *this;
  }

  bool step() {
    int rc = sqlite3_step(stmt);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    if (rc == SQLITE_BUSY || rc == SQLITE_LOCKED)
      throw StoreLocked("store is locked by another writer");
    throw IoFailure(std::string("step failed: ") +
                    sqlite3_errmsg(sqlite3_db_handle(stmt)));
  }

  std::string text(int col) {
    const unsigned char* value = sqlite3_column_text(stmt, col);
    return value == nullptr ? std::string()
                            : reinterpret_cast<const char*>(value);
  }
  bool is_null(int col) { return sqlite3_column_type(stmt, col) == SQLITE_NULL; }
  std::int64_t integer(int col) { return sqlite3_column_int64(stmt, col); }
  double real(int col) { return sqlite3_column_double(stmt, col); }

  sqlite3_stmt* stmt = nullptr;
};

constexpr const char* kSchemaSql = R"sql(
CREATE TABLE documents(
  doc_id TEXT PRIMARY KEY,
  file_name TEXT NOT NULL,
  title TEXT,
  author TEXT,
  keywords TEXT,
  summary TEXT,
  created_at TEXT);
CREATE TABLE annotations(
  annotation_id TEXT PRIMARY KEY,
  doc_id TEXT NOT NULL,
  author_id TEXT NOT NULL,
  kind TEXT NOT NULL,
  body TEXT NOT NULL,
  target_type TEXT NOT NULL,
  target_ref TEXT NOT NULL,
  page_index INTEGER,
  created_at TEXT NOT NULL);
CREATE TABLE annotation_relations(
  child_id TEXT PRIMARY KEY REFERENCES annotations(annotation_id),
  parent_id TEXT NOT NULL REFERENCES annotations(annotation_id));
CREATE TABLE sentiment_words(
  lemma TEXT NOT NULL,
  pos TEXT NOT NULL,
  positivity REAL NOT NULL,
  negativity REAL NOT NULL,
  objectivity REAL NOT NULL,
  source TEXT,
  PRIMARY KEY(lemma, pos));
CREATE TABLE sentiment_annotations(
  annotation_id TEXT PRIMARY KEY REFERENCES annotations(annotation_id),
  sentiment_score REAL NOT NULL,
  word_count INTEGER NOT NULL,
  no_sentiment_words INTEGER NOT NULL,
  words_json TEXT NOT NULL);
CREATE TABLE document_sentiments(
  doc_id TEXT PRIMARY KEY REFERENCES documents(doc_id),
  payload_json TEXT NOT NULL);
)sql";

json words_to_json(const std::vector<SignedWordScore>& words) {
  json array = json::array();
  for (const SignedWordScore& w : words)
    array.push_back({{"token", w.token},
                     {"positivity", w.triple.positivity},
                     {"negativity", w.triple.negativity},
                     {"objectivity", w.triple.objectivity},
                     {"signed_max", w.signed_max}});
  return array;
}

std::vector<SignedWordScore> words_from_json(const json& array) {
  std::vector<SignedWordScore> words;
  for (const json& j : array)
    words.push_back({j.at("token").get<std::string>(),
                     {j.at("positivity").get<double>(),
                      j.at("negativity").get<double>(),
                      j.at("objectivity").get<double>()},
                     j.at("signed_max").get<double>()});
  return words;
}

json sentiment_to_json(const DocumentSentiment& s) {
  json per_kind = json::object();
  for (const auto& [kind, count] : s.counts.per_kind)
    per_kind[std::string(to_string(kind))] = count;
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
          {"per_kind", per_kind},
          {"total", s.counts.total},
          {"terms", terms},
          {"weighted_score", s.weighted_score},
          {"verdict", std::string(to_string(s.verdict))},
          {"mode", std::string(to_string(s.mode))},
          {"epsilon", s.epsilon}};
}

DocumentSentiment sentiment_from_json(const json& j) {
  DocumentSentiment s;
  s.doc_id = j.at("doc").get<std::string>();
  for (const auto& [name, count] : j.at("per_kind").items())
    s.counts.per_kind[kind_from_string(name)] = count.get<std::size_t>();
  s.counts.total = j.at("total").get<std::size_t>();
  for (const json& jt : j.at("terms")) {
    WeightedTerm t;
    t.annotation_id = jt.at("id").get<std::string>();
    t.score = jt.at("score").get<double>();
    t.meta_count = jt.at("meta_count").get<std::size_t>();
    t.weight = jt.at("weight").get<double>();
    t.excluded = jt.at("excluded").get<bool>();
    if (jt.contains("exclusion_reason"))
      t.exclusion_reason = jt.at("exclusion_reason").get<std::string>();
    s.terms.push_back(std::move(t));
  }
  s.weighted_score = j.at("weighted_score").get<double>();
  std::string verdict = j.at("verdict").get<std::string>();
  s.verdict = verdict == "positive"   ? Verdict::Positive
              : verdict == "negative" ? Verdict::Negative
                                      : Verdict::Objective;
  s.mode = j.at("mode").get<std::string>() == "literal" ? WeightMode::Literal
                                                        : WeightMode::Adjusted;
  s.epsilon = j.at("epsilon").get<double>();
  return s;
}

}  // namespace

struct Store::Impl {
  sqlite3* db = nullptr;

  ~Impl() {
    if (db != nullptr) sqlite3_close(db);
  }

  void exec(const char* sql) {
    char* err = nullptr;
    int rc = sqlite3_exec(db, sql, nullptr, nullptr, &err);
    if (rc == SQLITE_OK) return;
    std::string message = err == nullptr ? "unknown" : err;
    sqlite3_free(err);
    if (rc == SQLITE_BUSY || rc == SQLITE_LOCKED)
      throw StoreLocked("store is locked by another writer");
    throw IoFailure("exec failed: " + message);
  }

  int user_version() {
    Stmt s(db, "PRAGMA user_version");
    s.step();
    return static_cast<int>(s.integer(0));
  }

  bool has_tables() {
    Stmt s(db, "SELECT count(*) FROM sqlite_master WHERE type = 'table'");
    s.step();
    return s.integer(0) > 0;
  }

  struct Txn {
    explicit Txn(Impl& impl) : impl(impl) { impl.exec("BEGIN IMMEDIATE"); }
    ~Txn() {
      if (!committed) sqlite3_exec(impl.db, "ROLLBACK", nullptr, nullptr, nullptr);
    }
    void commit() {
      impl.exec("COMMIT");
      committed = true;
    }
    Impl& impl;
    bool committed = false;
  };

  void upsert_document(const DocumentRecord& doc, UpsertCounts& counts) {
    {
      Stmt select(db,
                  "SELECT file_name, title, author, keywords, summary, "
                  "created_at FROM documents WHERE doc_id = ?1");
      select.bind(1, doc.doc_id);
      if (select.step()) {
        DocumentRecord existing;
        existing.doc_id = doc.doc_id;
        existing.file_name = select.text(0);
        if (!select.is_null(1)) existing.title = select.text(1);
        if (!select.is_null(2)) existing.author = select.text(2);
        if (!select.is_null(3))
          existing.keywords =
              json::parse(select.text(3)).get<std::vector<std::string>>();
        if (!select.is_null(4)) existing.summary = select.text(4);
        if (!select.is_null(5)) existing.created_at = select.text(5);
        if (existing == doc) return;
        ++counts.documents_updated;
      } else {
        ++counts.documents_inserted;
      }
    }
    Stmt insert(db,
                "INSERT OR REPLACE INTO documents "
                "(doc_id, file_name, title, author, keywords, summary, "
                "created_at) VALUES (?1,?2,?3,?4,?5,?6,?7)");
    insert.bind(1, doc.doc_id).bind(2, doc.file_name);
    doc.title ? (void)insert.bind(3, *doc.title) : (void)insert.bind_null(3);
    doc.author ? (void)insert.bind(4, *doc.author) : (void)insert.bind_null(4);
    doc.keywords.empty() ? (void)insert.bind_null(5)
                         : (void)insert.bind(5, json(doc.keywords).dump());
    doc.summary ? (void)insert.bind(6, *doc.summary) : (void)insert.bind_null(6);
    doc.created_at ? (void)insert.bind(7, *doc.created_at)
                   : (void)insert.bind_null(7);
    insert.step();
  }

  static Annotation annotation_from_row(Stmt& s) {
    Annotation a;
    a.annotation_id = s.text(0);
    a.doc_id = s.text(1);
    a.author_id = s.text(2);
    a.kind = kind_from_string(s.text(3));
    a.body = s.text(4);
    std::string target_type = s.text(5);
    if (target_type == "page")
      a.target = PageTarget{s.text(6), static_cast<int>(s.integer(7))};
    else
      a.target = ParentTarget{s.text(6)};
    a.created_at = s.text(8);
    return a;
  }

  static constexpr const char* kAnnotationColumns =
      "annotation_id, doc_id, author_id, kind, body, target_type, target_ref, "
      "page_index, created_at";

  void upsert_annotation(const Annotation& a, UpsertCounts& counts) {
    {
      Stmt select(db,
                  "SELECT annotation_id, doc_id, author_id, kind, body, "
                  "target_type, target_ref, page_index, created_at "
                  "FROM annotations WHERE annotation_id = ?1");
      select.bind(1, a.annotation_id);
      if (select.step()) {
        if (annotation_from_row(select) == a) return;
        ++counts.annotations_updated;
      } else {
        ++counts.annotations_inserted;
      }
    }
    Stmt insert(db,
                "INSERT OR REPLACE INTO annotations "
                "(annotation_id, doc_id, author_id, kind, body, target_type, "
                "target_ref, page_index, created_at) "
                "VALUES (?1,?2,?3,?4,?5,?6,?7,?8,?9)");
    insert.bind(1, a.annotation_id)
        .bind(2, a.doc_id)
        .bind(3, a.author_id)
        .bind(4, std::string(to_string(a.kind)))
        .bind(5, a.body);
    if (const auto* page = std::get_if<PageTarget>(&a.target)) {
      insert.bind(6, std::string("page"))
          .bind(7, page->doc_id)
          .bind(8, static_cast<std::int64_t>(page->page_index));
    } else {
      insert.bind(6, std::string("annotation"))
          .bind(7, std::get<ParentTarget>(a.target).parent_annotation_id)
          .bind_null(8);
    }
    insert.bind(9, a.created_at);
    insert.step();

    Stmt drop(db, "DELETE FROM annotation_relations WHERE child_id = ?1");
    drop.bind(1, a.annotation_id);
    drop.step();
    if (const auto* parent = std::get_if<ParentTarget>(&a.target)) {
      Stmt relation(db,
                    "INSERT INTO annotation_relations (child_id, parent_id) "
                    "VALUES (?1, ?2)");
      relation.bind(1, a.annotation_id).bind(2, parent->parent_annotation_id);
      relation.step();
    }
  }

  std::optional<AnnotationScore> read_score(const std::string& annotation_id) {
    Stmt s(db,
           "SELECT sentiment_score, word_count, no_sentiment_words, words_json "
           "FROM sentiment_annotations WHERE annotation_id = ?1");
    s.bind(1, annotation_id);
    if (!s.step()) return std::nullopt;
    AnnotationScore score;
    score.annotation_id = annotation_id;
    score.sentiment_score = s.real(0);
    score.word_count = static_cast<std::size_t>(s.integer(1));
    score.no_sentiment_words = s.integer(2) != 0;
    score.words = words_from_json(json::parse(s.text(3)));
    return score;
  }
};

Store::Store() : impl_(std::make_unique<Impl>()) {}
Store::Store(Store&&) noexcept = default;
Store& Store::operator=(Store&&) noexcept = default;
Store::~Store() = default;

Store Store::open(const std::filesystem::path& location) {
  Store store;
  if (sqlite3_open(location.string().c_str(), &store.impl_->db) != SQLITE_OK)
    throw IoFailure("cannot open store at " + location.string());
  sqlite3_busy_timeout(store.impl_->db, 0);
  if (!store.impl_->has_tables()) {
    Impl::Txn txn(*store.impl_);
    store.impl_->exec(kSchemaSql);
    store.impl_->exec(
        ("PRAGMA user_version = " + std::to_string(kSchemaVersion)).c_str());
    txn.commit();
  } else if (store.impl_->user_version() != kSchemaVersion) {
    throw SchemaMismatch("store at " + location.string() + " has schema version " +
                         std::to_string(store.impl_->user_version()) +
                         ", expected " + std::to_string(kSchemaVersion));
  }
  return store;
}

UpsertCounts Store::upsert(const IngestReport& report) {
  UpsertCounts counts;
  Impl::Txn txn(*impl_);
  for (const DocumentRecord& doc : report.documents)
    impl_->upsert_document(doc, counts);
  for (const Annotation& a : report.annotations)
    impl_->upsert_annotation(a, counts);
  txn.commit();
  return counts;
}

void Store::put_scores(const std::vector<AnnotationScore>& scores,
                       const Lexicon& lexicon) {
  Impl::Txn txn(*impl_);
  for (const AnnotationScore& score : scores) {
    Stmt insert(impl_->db,
                "INSERT OR REPLACE INTO sentiment_annotations "
                "(annotation_id, sentiment_score, word_count, "
                "no_sentiment_words, words_json) VALUES (?1,?2,?3,?4,?5)");
    insert.bind(1, score.annotation_id)
        .bind(2, score.sentiment_score)
        .bind(3, static_cast<std::int64_t>(score.word_count))
        .bind(4, static_cast<std::int64_t>(score.no_sentiment_words ? 1 : 0))
        .bind(5, words_to_json(score.words).dump());
    insert.step();
    // Cache the lexicon rows that produced these word scores.
    for (const SignedWordScore& w : score.words) {
      const LexiconEntry* entry = lexicon.lookup(w.token);
      if (entry == nullptr) continue;
      Stmt word(impl_->db,
                "INSERT OR REPLACE INTO sentiment_words "
                "(lemma, pos, positivity, negativity, objectivity, source) "
                "VALUES (?1,?2,?3,?4,?5,?6)");
      word.bind(1, entry->lemma)
          .bind(2, std::string(to_string(entry->pos)))
          .bind(3, entry->positivity)
          .bind(4, entry->negativity)
          .bind(5, entry->objectivity)
          .bind(6, lexicon.source_description());
      word.step();
    }
  }
  txn.commit();
}

void Store::put_document_sentiment(const DocumentSentiment& sentiment) {
  Impl::Txn txn(*impl_);
  Stmt insert(impl_->db,
              "INSERT OR REPLACE INTO document_sentiments (doc_id, payload_json) "
              "VALUES (?1, ?2)");
  insert.bind(1, sentiment.doc_id).bind(2, sentiment_to_json(sentiment).dump());
  insert.step();
  txn.commit();
}

std::vector<std::pair<Annotation, std::optional<AnnotationScore>>>
Store::query_by_annotator(const std::string& annotator_id) {
  Stmt select(impl_->db,
              "SELECT annotation_id, doc_id, author_id, kind, body, "
              "target_type, target_ref, page_index, created_at "
              "FROM annotations WHERE author_id = ?1 "
              "ORDER BY created_at, annotation_id");
  select.bind(1, annotator_id);
  std::vector<std::pair<Annotation, std::optional<AnnotationScore>>> out;
  while (select.step()) {
    Annotation a = Impl::annotation_from_row(select);
    std::optional<AnnotationScore> score = impl_->read_score(a.annotation_id);
    out.emplace_back(std::move(a), std::move(score));
  }
  return out;
}

FileQueryResult Store::query_by_file(const std::string& file_name) {
  FileQueryResult result;
  {
    Stmt select(impl_->db,
                "SELECT doc_id, file_name, title, author, keywords, summary, "
                "created_at FROM documents WHERE file_name = ?1 ORDER BY doc_id");
    select.bind(1, file_name);
    if (!select.step()) throw UnknownDocument("no document with file name '" +
                                              file_name + "'");
    result.document.doc_id = select.text(0);
    result.document.file_name = select.text(1);
    if (!select.is_null(2)) result.document.title = select.text(2);
    if (!select.is_null(3)) result.document.author = select.text(3);
    if (!select.is_null(4))
      result.document.keywords =
          json::parse(select.text(4)).get<std::vector<std::string>>();
    if (!select.is_null(5)) result.document.summary = select.text(5);
    if (!select.is_null(6)) result.document.created_at = select.text(6);
  }
  {
    Stmt select(impl_->db,
                "SELECT kind, count(*) FROM annotations WHERE doc_id = ?1 "
                "GROUP BY kind");
    select.bind(1, result.document.doc_id);
    while (select.step()) {
      std::size_t n = static_cast<std::size_t>(select.integer(1));
      result.counts.per_kind[kind_from_string(select.text(0))] += n;
      result.counts.total += n;
    }
  }
  {
    Stmt select(impl_->db,
                "SELECT payload_json FROM document_sentiments WHERE doc_id = ?1");
    select.bind(1, result.document.doc_id);
    if (select.step())
      result.sentiment = sentiment_from_json(json::parse(select.text(0)));
  }
  return result;
}

std::vector<DocumentRecord> Store::all_documents() {
  Stmt select(impl_->db,
              "SELECT doc_id, file_name, title, author, keywords, summary, "
              "created_at FROM documents ORDER BY doc_id");
  std::vector<DocumentRecord> out;
  while (select.step()) {
    DocumentRecord doc;
    doc.doc_id = select.text(0);
    doc.file_name = select.text(1);
    if (!select.is_null(2)) doc.title = select.text(2);
    if (!select.is_null(3)) doc.author = select.text(3);
    if (!select.is_null(4))
      doc.keywords = json::parse(select.text(4)).get<std::vector<std::string>>();
    if (!select.is_null(5)) doc.summary = select.text(5);
    if (!select.is_null(6)) doc.created_at = select.text(6);
    out.push_back(std::move(doc));
  }
  return out;
}

std::vector<Annotation> Store::annotations_for_doc(const std::string& doc_id) {
  Stmt select(impl_->db,
              "SELECT annotation_id, doc_id, author_id, kind, body, "
              "target_type, target_ref, page_index, created_at "
              "FROM annotations WHERE doc_id = ?1 ORDER BY annotation_id");
  select.bind(1, doc_id);
  std::vector<Annotation> out;
  while (select.step()) out.push_back(Impl::annotation_from_row(select));
  return out;
}

std::optional<AnnotationScore> Store::score_for(const std::string& annotation_id) {
  return impl_->read_score(annotation_id);
}

void Store::dump(std::ostream& out) {
  for (const DocumentRecord& doc : all_documents()) {
    json j = {{"type", "document"},
              {"doc", doc.doc_id},
              {"file_name", doc.file_name}};
    if (doc.title) j["title"] = *doc.title;
    if (doc.author) j["author"] = *doc.author;
    if (!doc.keywords.empty()) j["keywords"] = doc.keywords;
    if (doc.summary) j["summary"] = *doc.summary;
    if (doc.created_at) j["created_at"] = *doc.created_at;
    out << j.dump() << '\n';
  }
  {
    Stmt select(impl_->db,
                "SELECT annotation_id, doc_id, author_id, kind, body, "
                "target_type, target_ref, page_index, created_at "
                "FROM annotations ORDER BY annotation_id");
    while (select.step()) {
      Annotation a = Impl::annotation_from_row(select);
      json target;
      if (const auto* page = std::get_if<PageTarget>(&a.target))
        target = {{"type", "page"}, {"ref", page->doc_id}, {"page", page->page_index}};
      else
        target = {{"type", "annotation"},
                  {"ref", std::get<ParentTarget>(a.target).parent_annotation_id}};
      out << json{{"type", "annotation"}, {"id", a.annotation_id},
                  {"author", a.author_id}, {"kind", std::string(to_string(a.kind))},
                  {"body", a.body},        {"target", target},
                  {"created_at", a.created_at}, {"doc", a.doc_id}}
                 .dump()
          << '\n';
    }
  }
  {
    Stmt select(impl_->db,
                "SELECT child_id, parent_id FROM annotation_relations "
                "ORDER BY child_id");
    while (select.step())
      out << json{{"type", "relation"},
                  {"child", select.text(0)},
                  {"parent", select.text(1)}}
                 .dump()
          << '\n';
  }
  {
    Stmt select(impl_->db,
                "SELECT lemma, pos, positivity, negativity, objectivity, source "
                "FROM sentiment_words ORDER BY lemma, pos");
    while (select.step())
      out << json{{"type", "word"},          {"lemma", select.text(0)},
                  {"pos", select.text(1)},   {"positivity", select.real(2)},
                  {"negativity", select.real(3)},
                  {"objectivity", select.real(4)}, {"source", select.text(5)}}
                 .dump()
          << '\n';
  }
  {
    Stmt select(impl_->db,
                "SELECT annotation_id, sentiment_score, word_count, "
                "no_sentiment_words, words_json FROM sentiment_annotations "
                "ORDER BY annotation_id");
    while (select.step())
      out << json{{"type", "score"},
                  {"id", select.text(0)},
                  {"sentiment_score", select.real(1)},
                  {"word_count", select.integer(2)},
                  {"no_sentiment_words", select.integer(3) != 0},
                  {"words", json::parse(select.text(4))}}
                 .dump()
          << '\n';
  }
  {
    Stmt select(impl_->db,
                "SELECT payload_json FROM document_sentiments ORDER BY doc_id");
    while (select.step())
      out << json{{"type", "document_sentiment"},
                  {"payload", json::parse(select.text(0))}}
                 .dump()
          << '\n';
  }
}

void Store::restore(std::istream& in) {
  Impl::Txn txn(*impl_);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw IoFailure("dump line " + std::to_string(line_no) + ": " + e.what());
    }
    std::string type = j.value("type", "");
    if (type == "document") {
      Stmt insert(impl_->db,
                  "INSERT OR REPLACE INTO documents "
                  "(doc_id, file_name, title, author, keywords, summary, "
                  "created_at) VALUES (?1,?2,?3,?4,?5,?6,?7)");
      insert.bind(1, j.at("doc").get<std::string>())
          .bind(2, j.at("file_name").get<std::string>());
      j.contains("title") ? (void)insert.bind(3, j.at("title").get<std::string>())
                          : (void)insert.bind_null(3);
      j.contains("author") ? (void)insert.bind(4, j.at("author").get<std::string>())
                           : (void)insert.bind_null(4);
      j.contains("keywords") ? (void)insert.bind(5, j.at("keywords").dump())
                             : (void)insert.bind_null(5);
      j.contains("summary") ? (void)insert.bind(6, j.at("summary").get<std::string>())
                            : (void)insert.bind_null(6);
      j.contains("created_at")
          ? (void)insert.bind(7, j.at("created_at").get<std::string>())
          : (void)insert.bind_null(7);
      insert.step();
    } else if (type == "annotation") {
      Stmt insert(impl_->db,
                  "INSERT OR REPLACE INTO annotations "
                  "(annotation_id, doc_id, author_id, kind, body, target_type, "
                  "target_ref, page_index, created_at) "
                  "VALUES (?1,?2,?3,?4,?5,?6,?7,?8,?9)");
      const json& target = j.at("target");
      insert.bind(1, j.at("id").get<std::string>())
          .bind(2, j.at("doc").get<std::string>())
          .bind(3, j.at("author").get<std::string>())
          .bind(4, j.at("kind").get<std::string>())
          .bind(5, j.at("body").get<std::string>())
          .bind(6, target.at("type").get<std::string>())
          .bind(7, target.at("ref").get<std::string>());
      target.contains("page")
          ? (void)insert.bind(8, target.at("page").get<std::int64_t>())
          : (void)insert.bind_null(8);
      insert.bind(9, j.at("created_at").get<std::string>());
      insert.step();
    } else if (type == "relation") {
      Stmt insert(impl_->db,
                  "INSERT OR REPLACE INTO annotation_relations "
                  "(child_id, parent_id) VALUES (?1, ?2)");
      insert.bind(1, j.at("child").get<std::string>())
          .bind(2, j.at("parent").get<std::string>());
      insert.step();
    } else if (type == "word") {
      Stmt insert(impl_->db,
                  "INSERT OR REPLACE INTO sentiment_words "
                  "(lemma, pos, positivity, negativity, objectivity, source) "
                  "VALUES (?1,?2,?3,?4,?5,?6)");
      insert.bind(1, j.at("lemma").get<std::string>())
          .bind(2, j.at("pos").get<std::string>())
          .bind(3, j.at("positivity").get<double>())
          .bind(4, j.at("negativity").get<double>())
          .bind(5, j.at("objectivity").get<double>())
          .bind(6, j.value("source", ""));
      insert.step();
    } else if (type == "score") {
      Stmt insert(impl_->db,
                  "INSERT OR REPLACE INTO sentiment_annotations "
                  "(annotation_id, sentiment_score, word_count, "
                  "no_sentiment_words, words_json) VALUES (?1,?2,?3,?4,?5)");
      insert.bind(1, j.at("id").get<std::string>())
          .bind(2, j.at("sentiment_score").get<double>())
          .bind(3, j.at("word_count").get<std::int64_t>())
          .bind(4, static_cast<std::int64_t>(j.at("no_sentiment_words").get<bool>() ? 1 : 0))
          .bind(5, j.at("words").dump());
      insert.step();
    } else if (type == "document_sentiment") {
      Stmt insert(impl_->db,
                  "INSERT OR REPLACE INTO document_sentiments "
                  "(doc_id, payload_json) VALUES (?1, ?2)");
      insert.bind(1, j.at("payload").at("doc").get<std::string>())
          .bind(2, j.at("payload").dump());
      insert.step();
    } else {
      throw IoFailure("dump line " + std::to_string(line_no) +
                      ": unknown record type '" + type + "'");
    }
  }
  txn.commit();
}

}  // namespace annosent
