#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "annosent/errors.hpp"
#include "annosent/ingest.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace annosent;

namespace {

const char* kSingle = R"(<?xml version="1.0"?>
<Annotation_List>
  <Annotation>
    <Author>A</Author>
    <Type>comment</Type>
    <Annotation_on p_id="P1" page="0"/>
    <Comment comment_id="c1">It is bad one.</Comment>
    <Date_Time>2011-01-01T00:00:00Z</Date_Time>
    <Paper paper_id="P1"/>
  </Annotation>
</Annotation_List>
)";

std::string wrap(const std::string& annotations) {
  return "<?xml version=\"1.0\"?>\n<Annotation_List>" + annotations +
         "</Annotation_List>";
}

std::string annotation_xml(const std::string& id, const std::string& target_attr,
                           const std::string& type = "comment",
                           const std::string& body = "text") {
  return "<Annotation><Author>A</Author><Type>" + type +
         "</Type><Annotation_on " + target_attr + "/><Comment comment_id=\"" +
         id + "\">" + body +
         "</Comment><Date_Time>t0</Date_Time><Paper paper_id=\"P1\"/>"
         "</Annotation>";
}

}  // namespace

TEST_CASE("parse: single comment annotation") {
  IngestReport report = parse_annotation_xml(kSingle);
  REQUIRE(report.annotations.size() == 1);
  const Annotation& a = report.annotations[0];
  CHECK(a.annotation_id == "c1");
  CHECK(a.author_id == "A");
  CHECK(a.kind == AnnotationKind::Comment);
  CHECK(a.body == "It is bad one.");
  CHECK(a.doc_id == "P1");
  CHECK(std::get<PageTarget>(a.target).page_index == 0);
  REQUIRE(report.documents.size() == 1);
  CHECK(report.documents[0].doc_id == "P1");
}

TEST_CASE("parse: empty list") {
  IngestReport report = parse_annotation_xml("<Annotation_List/>");
  CHECK(report.annotations.empty());
  CHECK(report.documents.empty());
}

TEST_CASE("parse: dangling c_id") {
  CHECK_THROWS_AS(
      parse_annotation_xml(wrap(annotation_xml("c1", "c_id=\"missing\""))),
      DanglingReference);
}

TEST_CASE("parse: both p_id and c_id rejected") {
  CHECK_THROWS_AS(
      parse_annotation_xml(wrap(annotation_xml("c1", "p_id=\"P1\" c_id=\"x\""))),
      SchemaViolation);
}

TEST_CASE("parse: neither p_id nor c_id rejected") {
  CHECK_THROWS_AS(parse_annotation_xml(wrap(annotation_xml("c1", ""))),
                  SchemaViolation);
}

TEST_CASE("parse: missing required element") {
  std::string broken = wrap(
      "<Annotation><Author>A</Author>"
      "<Annotation_on p_id=\"P1\"/><Comment comment_id=\"c1\">x</Comment>"
      "<Date_Time>t</Date_Time><Paper paper_id=\"P1\"/></Annotation>");
  CHECK_THROWS_AS(parse_annotation_xml(broken), SchemaViolation);
}

TEST_CASE("parse: syntax error") {
  CHECK_THROWS_AS(parse_annotation_xml("<Annotation_List>"), XmlSyntaxError);
  CHECK_THROWS_AS(parse_annotation_xml("not xml at all"), XmlSyntaxError);
}

TEST_CASE("parse: meta chain resolves doc through the parent") {
  std::string xml = wrap(annotation_xml("c1", "p_id=\"P1\" page=\"2\"") +
                         annotation_xml("c2", "c_id=\"c1\"", "note"));
  IngestReport report = parse_annotation_xml(xml);
  REQUIRE(report.annotations.size() == 2);
  CHECK(report.annotations[1].kind == AnnotationKind::Note);
  CHECK(std::get<ParentTarget>(report.annotations[1].target).parent_annotation_id ==
        "c1");
  CHECK(report.annotations[1].doc_id == "P1");
}

TEST_CASE("parse: unrecognized type maps to Unknown") {
  IngestReport report =
      parse_annotation_xml(wrap(annotation_xml("c1", "p_id=\"P1\"", "remark")));
  CHECK(report.annotations[0].kind == AnnotationKind::Unknown);
}

TEST_CASE("dtd-strict warns on highlight/underline types") {
  std::string xml = wrap(annotation_xml("c1", "p_id=\"P1\"", "highlight"));
  CHECK(parse_annotation_xml(xml).warnings.empty());
  IngestReport strict = parse_annotation_xml(xml, {true});
  REQUIRE(strict.warnings.size() == 1);
  CHECK(strict.annotations[0].kind == AnnotationKind::Highlight);
}

TEST_CASE("export: empty report") {
  IngestReport empty;
  std::string xml = export_annotation_xml(empty);
  CHECK(xml.find("<Annotation_List/>") != std::string::npos);
  CHECK(parse_annotation_xml(xml).annotations.empty());
}

TEST_CASE("round trip: single annotation and meta edge") {
  IngestReport report = parse_annotation_xml(kSingle);
  IngestReport again = parse_annotation_xml(export_annotation_xml(report));
  CHECK(again.annotations == report.annotations);

  std::string xml = wrap(annotation_xml("c1", "p_id=\"P1\"") +
                         annotation_xml("c2", "c_id=\"c1\"") +
                         annotation_xml("c3", "p_id=\"P1\" page=\"4\""));
  IngestReport three = parse_annotation_xml(xml);
  IngestReport back = parse_annotation_xml(export_annotation_xml(three));
  CHECK(back.annotations == three.annotations);
}

TEST_CASE("round trip: escaping and random corpora; export is idempotent") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    IngestReport report;
    report.annotations = fixtures::random_corpus(rng, 15, "P1");
    std::string xml = export_annotation_xml(report);
    IngestReport parsed = parse_annotation_xml(xml);
    CHECK(parsed.annotations == report.annotations);
    CHECK(export_annotation_xml(parsed) == xml);
  }
}

TEST_CASE("parsed reports always pass validate_graph") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    IngestReport report;
    report.annotations = fixtures::random_corpus(rng, 10, "P1");
    IngestReport parsed = parse_annotation_xml(export_annotation_xml(report));
    CHECK(validate_graph(parsed.annotations).empty());
  }
}

TEST_CASE("jsonl: Fig 2 fixture loads with document record") {
  std::ifstream in(fixtures::data_dir() / "fig2.jsonl");
  REQUIRE(in.good());
  IngestReport report = parse_annotation_jsonl(in);
  CHECK(report.annotations.size() == 7);
  REQUIRE(report.documents.size() == 1);
  CHECK(report.documents[0].file_name == "article.pdf");
  CHECK(report.annotations[0].body ==
        "This article is quite well but not so good.");
}

TEST_CASE("jsonl: round trip") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    IngestReport report;
    report.annotations = fixtures::random_corpus(rng, 10, "P1");
    std::stringstream buffer;
    export_annotation_jsonl(report, buffer);
    IngestReport parsed = parse_annotation_jsonl(buffer);
    CHECK(parsed.annotations == report.annotations);
  }
}

TEST_CASE("jsonl: bad input") {
  std::istringstream garbage("{not json\n");
  CHECK_THROWS_AS(parse_annotation_jsonl(garbage), SchemaViolation);
  std::istringstream dangling(
      R"({"id":"a","author":"A","kind":"comment","body":"","target":{"type":"annotation","ref":"ghost"},"doc":"P1"})");
  CHECK_THROWS_AS(parse_annotation_jsonl(dangling), DanglingReference);
}
