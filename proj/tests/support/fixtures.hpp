#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "annosent/lexicon.hpp"
#include "annosent/model.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return ANNOSENT_DATA_DIR; }

inline annosent::Lexicon table1_lexicon() {
  std::ifstream in(data_dir() / "mini_lexicon.tsv");
  return annosent::load_lexicon(in, annosent::LexiconFormat::MiniTSV,
                                "table1-mini");
}

inline const std::array<std::string, 7>& fig2_bodies() {
  static const std::array<std::string, 7> bodies = {
      "This article is quite well but not so good.",
      "I am satisfy with this comment.",
      "It is not a good one.",
      "This is the best article.",
      "It is good article but not best one.",
      "It is bad one.",
      "Not best one but quite well.",
  };
  return bodies;
}

inline annosent::Annotation make_annotation(
    std::string id, annosent::AnnotationTarget target, std::string doc_id,
    annosent::AnnotationKind kind = annosent::AnnotationKind::Comment,
    std::string body = "", std::string author = "author1") {
  annosent::Annotation a;
  a.annotation_id = std::move(id);
  a.author_id = std::move(author);
  a.kind = kind;
  a.body = std::move(body);
  a.target = std::move(target);
  a.created_at = "2011-01-01T00:00:00Z";
  a.doc_id = std::move(doc_id);
  return a;
}

inline std::vector<annosent::Annotation> fig2_annotations() {
  std::vector<annosent::Annotation> out;
  for (std::size_t i = 0; i < fig2_bodies().size(); ++i)
    out.push_back(make_annotation("ann" + std::to_string(i + 1),
                                  annosent::PageTarget{"P1", 0}, "P1",
                                  annosent::AnnotationKind::Comment,
                                  fig2_bodies()[i]));
  return out;
}

// Random annotation corpus over one document: mixed kinds, meta chains of
// arbitrary depth, always a valid graph.
inline std::vector<annosent::Annotation> random_corpus(std::mt19937& rng,
                                                       std::size_t max_size,
                                                       const std::string& doc_id) {
  using namespace annosent;
  static const std::array<AnnotationKind, 5> kinds = {
      AnnotationKind::Comment, AnnotationKind::Highlight,
      AnnotationKind::Underline, AnnotationKind::Note, AnnotationKind::Unknown};
  static const std::array<std::string, 6> phrases = {
      "quite well written",  "not so good", "the best article",
      "it is bad one",       "",            "research & <markup> text"};
  std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_size)(rng);
  std::vector<Annotation> out;
  for (std::size_t i = 0; i < n; ++i) {
    AnnotationKind kind = kinds[rng() % kinds.size()];
    AnnotationTarget target;
    if (!out.empty() && rng() % 3 == 0)
      target = ParentTarget{out[rng() % out.size()].annotation_id};
    else
      target = PageTarget{doc_id, static_cast<int>(rng() % 5)};
    out.push_back(make_annotation(
        doc_id + "-a" + std::to_string(i), target, doc_id, kind,
        std::string(phrases[rng() % phrases.size()]),
        "annotator" + std::to_string(rng() % 4)));
  }
  return out;
}

class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    std::mt19937_64 rng(std::random_device{}());
    path_ = base / ("annosent-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& bytes) {
    std::filesystem::path p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << bytes;
    return p;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
