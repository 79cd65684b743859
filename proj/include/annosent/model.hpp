#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace annosent {

enum class AnnotationKind {
  Comment,
  Note,
  Help,
  Insert,
  Paragraph,
  Highlight,
  Underline,
  Unknown,
};

std::string_view to_string(AnnotationKind kind);
AnnotationKind kind_from_string(std::string_view name);  // unrecognized -> Unknown
bool kind_is_recognized(std::string_view name);

/// Highlight/Underline carry an optional quoted span instead of a comment
/// body; they are scored only when span scoring is enabled.
bool kind_scoreable(AnnotationKind kind, bool score_spans);

struct DocumentRecord {
  std::string doc_id;
  std::string file_name;
  std::optional<std::string> title;
  std::optional<std::string> author;
  std::vector<std::string> keywords;
  std::optional<std::string> summary;
  std::optional<std::string> created_at;  // ISO-8601 UTC

  bool operator==(const DocumentRecord&) const = default;
};

struct PageTarget {
  std::string doc_id;
  int page_index = 0;  // 0-based

  bool operator==(const PageTarget&) const = default;
};

struct ParentTarget {
  std::string parent_annotation_id;

  bool operator==(const ParentTarget&) const = default;
};

using AnnotationTarget = std::variant<PageTarget, ParentTarget>;

struct Annotation {
  std::string annotation_id;
  std::string author_id;
  AnnotationKind kind = AnnotationKind::Unknown;
  std::string body;  // may be empty; quoted span for Highlight/Underline
  AnnotationTarget target;
  std::string created_at;  // ISO-8601 UTC, may be empty
  std::string doc_id;      // document reachable through target

  bool is_meta() const { return std::holds_alternative<ParentTarget>(target); }

  bool operator==(const Annotation&) const = default;
};

enum class ViolationKind { MissingParent, Cycle, DuplicateId, DocMismatch };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string id;  // offending annotation id (smallest member for a cycle)
  std::string detail;

  bool operator==(const Violation&) const = default;
  auto operator<=>(const Violation&) const = default;
};

/// Checks id uniqueness, parent resolution, acyclicity of the meta-annotation
/// graph and doc_id consistency. Violations are returned sorted, so the result
/// is insensitive to input order.
std::vector<Violation> validate_graph(std::span<const Annotation> annotations);

/// Document of the root ancestor; nullopt when the chain is broken or cyclic.
std::optional<std::string> resolve_doc(const Annotation& annotation,
                                       std::span<const Annotation> all);

}  // namespace annosent
