#include "annosent/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace annosent {

std::string_view to_string(AnnotationKind kind) {
  switch (kind) {
    case AnnotationKind::Comment:
      return "comment";
    case AnnotationKind::Note:
      return "note";
    case AnnotationKind::Help:
      return "help";
    case AnnotationKind::Insert:
      return "insert";
    case AnnotationKind::Paragraph:
      return "paragraph";
    case AnnotationKind::Highlight:
      return "highlight";
    case AnnotationKind::Underline:
      return "underline";
    case AnnotationKind::Unknown:
      return "unknown";
  }
  return "unknown";
}

AnnotationKind kind_from_string(std::string_view name) {
  if (name == "comment") return AnnotationKind::Comment;
  if (name == "note") return AnnotationKind::Note;
  if (name == "help") return AnnotationKind::Help;
  if (name == "insert") return AnnotationKind::Insert;
  if (name == "paragraph") return AnnotationKind::Paragraph;
  if (name == "highlight") return AnnotationKind::Highlight;
  if (name == "underline") return AnnotationKind::Underline;
  return AnnotationKind::Unknown;
}

bool kind_is_recognized(std::string_view name) {
  return name == "unknown" ||
         kind_from_string(name) != AnnotationKind::Unknown;
}

bool kind_scoreable(AnnotationKind kind, bool score_spans) {
  switch (kind) {
    case AnnotationKind::Comment:
    case AnnotationKind::Note:
      return true;
    case AnnotationKind::Highlight:
    case AnnotationKind::Underline:
      return score_spans;
    default:
      return false;
  }
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MissingParent:
      return "MissingParent";
    case ViolationKind::Cycle:
      return "Cycle";
    case ViolationKind::DuplicateId:
      return "DuplicateId";
    case ViolationKind::DocMismatch:
      return "DocMismatch";
  }
  return "?";
}

namespace {

struct GraphIndex {
  std::unordered_map<std::string, const Annotation*> by_id;
  std::vector<std::string> duplicates;
};

GraphIndex build_index(std::span<const Annotation> annotations) {
  GraphIndex index;
  for (const Annotation& a : annotations) {
    auto [it, inserted] = index.by_id.emplace(a.annotation_id, &a);
    if (!inserted) index.duplicates.push_back(a.annotation_id);
  }
  return index;
}

const std::string* parent_of(const Annotation& a) {
  if (const auto* p = std::get_if<ParentTarget>(&a.target))
    return &p->parent_annotation_id;
  return nullptr;
}

}  // namespace

std::optional<std::string> resolve_doc(const Annotation& annotation,
                                       std::span<const Annotation> all) {
  GraphIndex index = build_index(all);
  const Annotation* cur = &annotation;
  std::set<std::string> seen;
  while (const std::string* parent = parent_of(*cur)) {
    if (!seen.insert(cur->annotation_id).second) return std::nullopt;  // cycle
    auto it = index.by_id.find(*parent);
    if (it == index.by_id.end()) return std::nullopt;
    cur = it->second;
  }
  return std::get<PageTarget>(cur->target).doc_id;
}

std::vector<Violation> validate_graph(std::span<const Annotation> annotations) {
  std::vector<Violation> out;
  GraphIndex index = build_index(annotations);

  {
    std::set<std::string> reported;
    for (const std::string& id : index.duplicates)
      if (reported.insert(id).second)
        out.push_back({ViolationKind::DuplicateId, id, "id appears more than once"});
  }

  // Each node has at most one parent, so cycles are simple loops. Walk the
  // parent chain of every node; the chain ends at a page target, a missing
  // parent, or a node already classified.
  enum class State { Unvisited, OnPath, Done };
  std::unordered_map<std::string, State> state;
  for (const auto& [id, a] : index.by_id) state[id] = State::Unvisited;

  std::unordered_map<std::string, std::optional<std::string>> root_doc;
  std::set<std::string> missing_reported;

  for (const auto& [start_id, start] : index.by_id) {
    if (state[start_id] != State::Unvisited) continue;
    std::vector<const Annotation*> path;
    const Annotation* cur = start;
    std::optional<std::string> doc;  // doc of the chain's root, if resolvable
    while (true) {
      State& s = state[cur->annotation_id];
      if (s == State::Done) {
        doc = root_doc[cur->annotation_id];
        break;
      }
      if (s == State::OnPath) {
        // Found a cycle: the members are the path suffix starting at cur.
        auto first = std::find(path.begin(), path.end(), cur);
        std::vector<std::string> members;
        for (auto it = first; it != path.end(); ++it)
          members.push_back((*it)->annotation_id);
        std::sort(members.begin(), members.end());
        std::string detail = "cycle:";
        for (const std::string& m : members) detail += " " + m;
        out.push_back({ViolationKind::Cycle, members.front(), detail});
        doc = std::nullopt;
        break;
      }
      s = State::OnPath;
      path.push_back(cur);
      const std::string* parent = parent_of(*cur);
      if (!parent) {
        doc = std::get<PageTarget>(cur->target).doc_id;
        break;
      }
      auto it = index.by_id.find(*parent);
      if (it == index.by_id.end()) {
        if (missing_reported.insert(cur->annotation_id).second)
          out.push_back({ViolationKind::MissingParent, cur->annotation_id,
                         "parent " + *parent + " not found"});
        doc = std::nullopt;
        break;
      }
      cur = it->second;
    }
    for (const Annotation* a : path) {
      state[a->annotation_id] = State::Done;
      root_doc[a->annotation_id] = doc;
    }
  }

  for (const auto& [id, a] : index.by_id) {
    const std::optional<std::string>& doc = root_doc[id];
    if (doc && *doc != a->doc_id)
      out.push_back({ViolationKind::DocMismatch, id,
                     "declared doc " + a->doc_id + " but resolves to " + *doc});
  }

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace annosent
