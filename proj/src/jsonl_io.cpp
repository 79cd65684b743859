#include <string>

#include "annosent/errors.hpp"
#include "annosent/ingest.hpp"
#include "ingest_common.hpp"
#include "json.hpp"

using nlohmann::json;

namespace annosent {

namespace {

json target_to_json(const AnnotationTarget& target) {
  if (const auto* page = std::get_if<PageTarget>(&target))
    return {{"type", "page"}, {"ref", page->doc_id}, {"page", page->page_index}};
  return {{"type", "annotation"},
          {"ref", std::get<ParentTarget>(target).parent_annotation_id}};
}

AnnotationTarget target_from_json(const json& j, std::size_t line_no) {
  std::string type = j.at("type").get<std::string>();
  std::string ref = j.at("ref").get<std::string>();
  if (type == "page") return PageTarget{ref, j.value("page", 0)};
  if (type == "annotation") return ParentTarget{ref};
  throw SchemaViolation("line " + std::to_string(line_no) +
                        ": unknown target type '" + type + "'");
}

DocumentRecord document_from_json(const json& j) {
  DocumentRecord doc;
  doc.doc_id = j.at("doc").get<std::string>();
  doc.file_name = j.value("file_name", doc.doc_id);
  if (j.contains("title")) doc.title = j.at("title").get<std::string>();
  if (j.contains("author")) doc.author = j.at("author").get<std::string>();
  if (j.contains("keywords"))
    doc.keywords = j.at("keywords").get<std::vector<std::string>>();
  if (j.contains("summary")) doc.summary = j.at("summary").get<std::string>();
  if (j.contains("created_at")) doc.created_at = j.at("created_at").get<std::string>();
  return doc;
}

json document_to_json(const DocumentRecord& doc) {
  json j = {{"doc", doc.doc_id}, {"file_name", doc.file_name}};
  if (doc.title) j["title"] = *doc.title;
  if (doc.author) j["author"] = *doc.author;
  if (!doc.keywords.empty()) j["keywords"] = doc.keywords;
  if (doc.summary) j["summary"] = *doc.summary;
  if (doc.created_at) j["created_at"] = *doc.created_at;
  return j;
}

}  // namespace

IngestReport parse_annotation_jsonl(std::istream& in) {
  IngestReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaViolation("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      if (j.contains("document")) {
        report.documents.push_back(document_from_json(j.at("document")));
        continue;
      }
      Annotation a;
      a.annotation_id = j.at("id").get<std::string>();
      a.author_id = j.at("author").get<std::string>();
      a.kind = kind_from_string(j.at("kind").get<std::string>());
      a.body = j.value("body", "");
      a.target = target_from_json(j.at("target"), line_no);
      a.created_at = j.value("created_at", "");
      a.doc_id = j.at("doc").get<std::string>();
      report.annotations.push_back(std::move(a));
    } catch (const json::exception& e) {
      throw SchemaViolation("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  detail::finalize_report(report);
  return report;
}

void export_annotation_jsonl(const IngestReport& report, std::ostream& out) {
  for (const DocumentRecord& doc : report.documents)
    out << json{{"document", document_to_json(doc)}}.dump() << '\n';
  for (const Annotation& a : report.annotations) {
    json j = {{"id", a.annotation_id},
              {"author", a.author_id},
              {"kind", std::string(to_string(a.kind))},
              {"body", a.body},
              {"target", target_to_json(a.target)},
              {"created_at", a.created_at},
              {"doc", a.doc_id}};
    out << j.dump() << '\n';
  }
}

}  // namespace annosent
