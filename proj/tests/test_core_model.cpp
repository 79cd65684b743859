#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>

#include "annosent/model.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace annosent;
using fixtures::make_annotation;

TEST_CASE("empty graph has no violations") {
  CHECK(validate_graph({}).empty());
}

TEST_CASE("valid two-node chain") {
  std::vector<Annotation> graph = {
      make_annotation("a1", PageTarget{"D", 0}, "D"),
      make_annotation("a2", ParentTarget{"a1"}, "D"),
  };
  CHECK(validate_graph(graph).empty());
}

TEST_CASE("two-node cycle is reported once") {
  std::vector<Annotation> graph = {
      make_annotation("a1", ParentTarget{"a2"}, "D"),
      make_annotation("a2", ParentTarget{"a1"}, "D"),
  };
  auto violations = validate_graph(graph);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == ViolationKind::Cycle);
  CHECK(violations[0].id == "a1");
}

TEST_CASE("missing parent") {
  std::vector<Annotation> graph = {
      make_annotation("a1", ParentTarget{"ghost"}, "D"),
  };
  auto violations = validate_graph(graph);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == ViolationKind::MissingParent);
  CHECK(violations[0].id == "a1");
}

TEST_CASE("duplicate id") {
  std::vector<Annotation> graph = {
      make_annotation("a1", PageTarget{"D", 0}, "D"),
      make_annotation("a1", PageTarget{"D", 1}, "D"),
  };
  auto violations = validate_graph(graph);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == ViolationKind::DuplicateId);
}

TEST_CASE("doc mismatch through a parent chain") {
  std::vector<Annotation> graph = {
      make_annotation("a1", PageTarget{"D", 0}, "D"),
      make_annotation("a2", ParentTarget{"a1"}, "OTHER"),
  };
  auto violations = validate_graph(graph);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == ViolationKind::DocMismatch);
  CHECK(violations[0].id == "a2");
}

TEST_CASE("page target doc must match declared doc") {
  std::vector<Annotation> graph = {
      make_annotation("a1", PageTarget{"OTHER", 0}, "D"),
  };
  auto violations = validate_graph(graph);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == ViolationKind::DocMismatch);
}

TEST_CASE("resolve_doc walks to the root") {
  std::vector<Annotation> graph = {
      make_annotation("a1", PageTarget{"D", 0}, "D"),
      make_annotation("a2", ParentTarget{"a1"}, "D"),
      make_annotation("a3", ParentTarget{"a2"}, "D"),
  };
  CHECK(resolve_doc(graph[2], graph) == "D");
  CHECK(resolve_doc(graph[0], graph) == "D");
}

TEST_CASE("validate_graph is order-insensitive and idempotent") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto corpus = fixtures::random_corpus(rng, 20, "D");
    // Inject occasional damage so violations are exercised too.
    if (!corpus.empty() && trial % 3 == 0)
      corpus.push_back(make_annotation("broken", ParentTarget{"nowhere"}, "D"));
    auto baseline = validate_graph(corpus);
    CHECK(validate_graph(corpus) == baseline);
    auto shuffled = corpus;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(validate_graph(shuffled) == baseline);
  }
}

TEST_CASE("accepted graphs admit a topological order") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto corpus = fixtures::random_corpus(rng, 20, "D");
    REQUIRE(validate_graph(corpus).empty());
    // Kahn-style peel: repeatedly remove nodes whose parent is already out.
    std::map<std::string, bool> placed;
    std::size_t remaining = corpus.size();
    bool progress = true;
    while (remaining > 0 && progress) {
      progress = false;
      for (const Annotation& a : corpus) {
        if (placed[a.annotation_id]) continue;
        const auto* parent = std::get_if<ParentTarget>(&a.target);
        if (parent == nullptr || placed[parent->parent_annotation_id]) {
          placed[a.annotation_id] = true;
          --remaining;
          progress = true;
        }
      }
    }
    CHECK(remaining == 0);
  }
}

TEST_CASE("kind scoreability") {
  CHECK(kind_scoreable(AnnotationKind::Comment, false));
  CHECK(kind_scoreable(AnnotationKind::Note, false));
  CHECK_FALSE(kind_scoreable(AnnotationKind::Highlight, false));
  CHECK(kind_scoreable(AnnotationKind::Highlight, true));
  CHECK(kind_scoreable(AnnotationKind::Underline, true));
  CHECK_FALSE(kind_scoreable(AnnotationKind::Unknown, true));
  CHECK_FALSE(kind_scoreable(AnnotationKind::Help, false));
}

TEST_CASE("kind string round trip") {
  for (AnnotationKind kind :
       {AnnotationKind::Comment, AnnotationKind::Note, AnnotationKind::Help,
        AnnotationKind::Insert, AnnotationKind::Paragraph,
        AnnotationKind::Highlight, AnnotationKind::Underline,
        AnnotationKind::Unknown})
    CHECK(kind_from_string(std::string(to_string(kind))) == kind);
  CHECK(kind_from_string("observation") == AnnotationKind::Unknown);
  CHECK_FALSE(kind_is_recognized("observation"));
  CHECK(kind_is_recognized("unknown"));
}
