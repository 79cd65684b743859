// Minimal reader for standard PDF annotation dictionaries and the document
// information dictionary. Objects are collected by a sequential scan of
// `N G obj ... endobj` ranges (later definitions win, which also covers
// incremental updates); stream payloads are skipped, never decoded.
// Malformed cross-reference tables are not repaired and encrypted files are
// rejected.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "annosent/errors.hpp"
#include "annosent/ingest.hpp"

namespace annosent {

namespace {

struct PdfNull {};
struct PdfName {
  std::string value;
};
struct PdfString {
  std::string value;  // decoded bytes
};
struct PdfRef {
  int number = 0;
  int generation = 0;
};

struct PdfObject;
using PdfObjectPtr = std::shared_ptr<PdfObject>;
using PdfArray = std::vector<PdfObjectPtr>;
using PdfDict = std::map<std::string, PdfObjectPtr>;

struct PdfObject {
  std::variant<PdfNull, bool, double, PdfString, PdfName, PdfArray, PdfDict,
               PdfRef>
      value;
};

bool is_pdf_whitespace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\0';
}

bool is_pdf_delimiter(char c) {
  return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' ||
         c == ']' || c == '{' || c == '}' || c == '/' || c == '%';
}

std::string utf16be_to_utf8(const std::string& bytes) {
  std::string out;
  for (std::size_t i = 2; i + 1 < bytes.size(); i += 2) {
    unsigned cp = (static_cast<unsigned char>(bytes[i]) << 8) |
                  static_cast<unsigned char>(bytes[i + 1]);
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

std::string decode_text_string(std::string bytes) {
  if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0xFE &&
      static_cast<unsigned char>(bytes[1]) == 0xFF)
    return utf16be_to_utf8(bytes);
  return bytes;
}

class Parser {
 public:
  Parser(const std::string& data, std::size_t pos) : data_(data), pos_(pos) {}

  std::size_t pos() const { return pos_; }

  void skip_ws() {
    while (pos_ < data_.size()) {
      if (is_pdf_whitespace(data_[pos_])) {
        ++pos_;
      } else if (data_[pos_] == '%') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r')
          ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_keyword(std::string_view word) {
    skip_ws();
    if (data_.compare(pos_, word.size(), word) != 0) return false;
    std::size_t end = pos_ + word.size();
    if (end < data_.size() && !is_pdf_whitespace(data_[end]) &&
        !is_pdf_delimiter(data_[end]))
      return false;
    return true;
  }

  bool consume_keyword(std::string_view word) {
    if (!at_keyword(word)) return false;
    pos_ += word.size();
    return true;
  }

  PdfObjectPtr parse_object() {
    skip_ws();
    if (pos_ >= data_.size()) throw PdfUnreadable("unexpected end of file");
    char c = data_[pos_];
    if (c == '<') {
      if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') return parse_dict();
      return parse_hex_string();
    }
    if (c == '(') return parse_literal_string();
    if (c == '/') return parse_name();
    if (c == '[') return parse_array();
    if (consume_keyword("true")) return make(true);
    if (consume_keyword("false")) return make(false);
    if (consume_keyword("null")) return make(PdfNull{});
    if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
      return parse_number_or_ref();
    throw PdfUnreadable("unexpected character '" + std::string(1, c) +
                        "' at offset " + std::to_string(pos_));
  }

  // Skips an optional stream payload following a dictionary.
  void skip_stream(const PdfDict& dict,
                   const std::map<int, PdfObjectPtr>& objects) {
    if (!consume_keyword("stream")) return;
    if (pos_ < data_.size() && data_[pos_] == '\r') ++pos_;
    if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
    auto length_it = dict.find("Length");
    if (length_it != dict.end()) {
      const PdfObject* len = length_it->second.get();
      if (const auto* ref = std::get_if<PdfRef>(&len->value)) {
        auto obj = objects.find(ref->number);
        len = obj == objects.end() ? nullptr : obj->second.get();
      }
      if (len != nullptr)
        if (const double* n = std::get_if<double>(&len->value))
          pos_ = std::min(data_.size(), pos_ + static_cast<std::size_t>(*n));
    }
    std::size_t end = data_.find("endstream", pos_);
    if (end == std::string::npos) throw PdfUnreadable("unterminated stream");
    pos_ = end + std::string_view("endstream").size();
  }

 private:
  template <typename T>
  static PdfObjectPtr make(T value) {
    auto obj = std::make_shared<PdfObject>();
    obj->value = std::move(value);
    return obj;
  }

  PdfObjectPtr parse_dict() {
    pos_ += 2;  // <<
    PdfDict dict;
    while (true) {
      skip_ws();
      if (pos_ + 1 < data_.size() && data_[pos_] == '>' && data_[pos_ + 1] == '>') {
        pos_ += 2;
        return make(std::move(dict));
      }
      if (pos_ >= data_.size() || data_[pos_] != '/')
        throw PdfUnreadable("dictionary key must be a name");
      std::string key = parse_name_raw();
      dict[key] = parse_object();
    }
  }

  PdfObjectPtr parse_array() {
    ++pos_;  // [
    PdfArray array;
    while (true) {
      skip_ws();
      if (pos_ >= data_.size()) throw PdfUnreadable("unterminated array");
      if (data_[pos_] == ']') {
        ++pos_;
        return make(std::move(array));
      }
      array.push_back(parse_object());
    }
  }

  std::string parse_name_raw() {
    ++pos_;  // /
    std::string name;
    while (pos_ < data_.size() && !is_pdf_whitespace(data_[pos_]) &&
           !is_pdf_delimiter(data_[pos_])) {
      if (data_[pos_] == '#' && pos_ + 2 < data_.size()) {
        auto hex = [](char h) -> int {
          if (h >= '0' && h <= '9') return h - '0';
          if (h >= 'a' && h <= 'f') return h - 'a' + 10;
          if (h >= 'A' && h <= 'F') return h - 'A' + 10;
          return -1;
        };
        int hi = hex(data_[pos_ + 1]), lo = hex(data_[pos_ + 2]);
        if (hi >= 0 && lo >= 0) {
          name.push_back(static_cast<char>(hi * 16 + lo));
          pos_ += 3;
          continue;
        }
      }
      name.push_back(data_[pos_++]);
    }
    return name;
  }

  PdfObjectPtr parse_name() { return make(PdfName{parse_name_raw()}); }

  PdfObjectPtr parse_literal_string() {
    ++pos_;  // (
    std::string out;
    int depth = 1;
    while (pos_ < data_.size()) {
      char c = data_[pos_++];
      if (c == '\\') {
        if (pos_ >= data_.size()) break;
        char e = data_[pos_++];
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 't': out.push_back('\t'); break;
          case 'b': out.push_back('\b'); break;
          case 'f': out.push_back('\f'); break;
          case '(': out.push_back('('); break;
          case ')': out.push_back(')'); break;
          case '\\': out.push_back('\\'); break;
          case '\r':
            if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
            break;  // line continuation
          case '\n': break;
          default:
            if (e >= '0' && e <= '7') {
              int value = e - '0';
              for (int i = 0; i < 2 && pos_ < data_.size() &&
                              data_[pos_] >= '0' && data_[pos_] <= '7'; ++i)
                value = value * 8 + (data_[pos_++] - '0');
              out.push_back(static_cast<char>(value & 0xFF));
            } else {
              out.push_back(e);
            }
        }
      } else if (c == '(') {
        ++depth;
        out.push_back(c);
      } else if (c == ')') {
        if (--depth == 0) return make(PdfString{std::move(out)});
        out.push_back(c);
      } else {
        out.push_back(c);
      }
    }
    throw PdfUnreadable("unterminated string");
  }

  PdfObjectPtr parse_hex_string() {
    ++pos_;  // <
    std::string out;
    int hi = -1;
    while (pos_ < data_.size()) {
      char c = data_[pos_++];
      if (c == '>') {
        if (hi >= 0) out.push_back(static_cast<char>(hi * 16));
        return make(PdfString{std::move(out)});
      }
      int digit;
      if (c >= '0' && c <= '9') digit = c - '0';
      else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
      else if (is_pdf_whitespace(c)) continue;
      else throw PdfUnreadable("bad hex string digit");
      if (hi < 0) {
        hi = digit;
      } else {
        out.push_back(static_cast<char>(hi * 16 + digit));
        hi = -1;
      }
    }
    throw PdfUnreadable("unterminated hex string");
  }

  PdfObjectPtr parse_number_or_ref() {
    std::size_t save = pos_;
    double first = parse_number();
    if (first >= 0 && first == static_cast<int>(first)) {
      std::size_t after_first = pos_;
      skip_ws();
      std::size_t gen_start = pos_;
      if (pos_ < data_.size() &&
          std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
        double gen = parse_number();
        if (gen >= 0 && gen == static_cast<int>(gen) && consume_keyword("R"))
          return make(PdfRef{static_cast<int>(first), static_cast<int>(gen)});
      }
      (void)gen_start;
      pos_ = after_first;
    } else {
      pos_ = save;
      first = parse_number();
    }
    return make(first);
  }

  double parse_number() {
    std::size_t start = pos_;
    if (pos_ < data_.size() && (data_[pos_] == '+' || data_[pos_] == '-')) ++pos_;
    while (pos_ < data_.size() &&
           (std::isdigit(static_cast<unsigned char>(data_[pos_])) ||
            data_[pos_] == '.'))
      ++pos_;
    if (pos_ == start) throw PdfUnreadable("expected number");
    return std::stod(data_.substr(start, pos_ - start));
  }

  const std::string& data_;
  std::size_t pos_;
};

struct PdfDocument {
  std::map<int, PdfObjectPtr> objects;
  PdfDict trailer;

  const PdfObject* deref(const PdfObjectPtr& obj) const {
    const PdfObject* cur = obj.get();
    int hops = 0;
    while (cur != nullptr) {
      const auto* ref = std::get_if<PdfRef>(&cur->value);
      if (ref == nullptr) return cur;
      if (++hops > 64) throw PdfUnreadable("reference loop");
      auto it = objects.find(ref->number);
      cur = it == objects.end() ? nullptr : it->second.get();
    }
    return nullptr;
  }

  const PdfObject* dict_get(const PdfDict& dict, const std::string& key) const {
    auto it = dict.find(key);
    return it == dict.end() ? nullptr : deref(it->second);
  }

  std::optional<std::string> dict_get_string(const PdfDict& dict,
                                             const std::string& key) const {
    const PdfObject* obj = dict_get(dict, key);
    if (obj == nullptr) return std::nullopt;
    const auto* s = std::get_if<PdfString>(&obj->value);
    if (s == nullptr) return std::nullopt;
    return decode_text_string(s->value);
  }

  std::optional<std::string> dict_get_name(const PdfDict& dict,
                                           const std::string& key) const {
    const PdfObject* obj = dict_get(dict, key);
    if (obj == nullptr) return std::nullopt;
    const auto* n = std::get_if<PdfName>(&obj->value);
    if (n == nullptr) return std::nullopt;
    return n->value;
  }
};

PdfDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PdfUnreadable("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string data = buffer.str();

  if (data.rfind("%PDF-", 0) != 0)
    throw PdfUnreadable(path.string() + ": missing %PDF header");

  PdfDocument doc;
  // Sequential scan for indirect object definitions.
  std::size_t pos = 0;
  while (true) {
    std::size_t obj_at = data.find("obj", pos);
    if (obj_at == std::string::npos) break;
    std::size_t end = obj_at + 3;
    if (end < data.size() && !is_pdf_whitespace(data[end]) &&
        !is_pdf_delimiter(data[end])) {
      pos = end;
      continue;
    }
    // Backtrack over "N G" immediately before the keyword.
    std::size_t p = obj_at;
    auto skip_back_ws = [&] {
      while (p > 0 && is_pdf_whitespace(data[p - 1])) --p;
    };
    auto read_back_int = [&]() -> std::optional<int> {
      std::size_t stop = p;
      while (p > 0 && std::isdigit(static_cast<unsigned char>(data[p - 1]))) --p;
      if (p == stop) return std::nullopt;
      return std::stoi(data.substr(p, stop - p));
    };
    skip_back_ws();
    std::optional<int> generation = read_back_int();
    skip_back_ws();
    std::optional<int> number = read_back_int();
    if (!generation || !number ||
        (p > 0 && !is_pdf_whitespace(data[p - 1]) && !is_pdf_delimiter(data[p - 1]))) {
      pos = end;
      continue;
    }
    try {
      Parser parser(data, end);
      PdfObjectPtr obj = parser.parse_object();
      if (const auto* dict = std::get_if<PdfDict>(&obj->value))
        parser.skip_stream(*dict, doc.objects);
      doc.objects[*number] = std::move(obj);
      pos = parser.pos();
    } catch (const PdfUnreadable&) {
      pos = end;  // false positive inside binary data; keep scanning
    }
  }
  if (doc.objects.empty())
    throw PdfUnreadable(path.string() + ": no indirect objects found");

  std::size_t trailer_at = data.rfind("trailer");
  if (trailer_at != std::string::npos) {
    try {
      Parser parser(data, trailer_at + std::string_view("trailer").size());
      PdfObjectPtr obj = parser.parse_object();
      if (const auto* dict = std::get_if<PdfDict>(&obj->value))
        doc.trailer = *dict;
    } catch (const PdfUnreadable&) {
      // tolerated; the catalog is found by scanning below
    }
  }
  if (doc.trailer.contains("Encrypt"))
    throw PdfEncrypted(path.string() + ": encrypted PDFs are not supported");
  return doc;
}

const PdfDict* find_catalog(const PdfDocument& doc) {
  if (const PdfObject* root = doc.dict_get(doc.trailer, "Root"))
    if (const auto* dict = std::get_if<PdfDict>(&root->value)) return dict;
  for (const auto& [number, obj] : doc.objects)
    if (const auto* dict = std::get_if<PdfDict>(&obj->value))
      if (auto type = doc.dict_get_name(*dict, "Type"); type == "Catalog")
        return dict;
  return nullptr;
}

void collect_pages(const PdfDocument& doc, const PdfDict& node,
                   std::vector<const PdfDict*>& pages, int depth = 0) {
  if (depth > 64) throw PdfUnreadable("page tree too deep");
  std::optional<std::string> type = doc.dict_get_name(node, "Type");
  const PdfObject* kids = doc.dict_get(node, "Kids");
  if (type == "Page" || (type != "Pages" && kids == nullptr)) {
    pages.push_back(&node);
    return;
  }
  if (kids == nullptr) return;
  const auto* array = std::get_if<PdfArray>(&kids->value);
  if (array == nullptr) return;
  for (const PdfObjectPtr& kid : *array)
    if (const PdfObject* k = doc.deref(kid))
      if (const auto* dict = std::get_if<PdfDict>(&k->value))
        collect_pages(doc, *dict, pages, depth + 1);
}

std::vector<const PdfDict*> document_pages(const PdfDocument& doc) {
  const PdfDict* catalog = find_catalog(doc);
  if (catalog == nullptr) throw PdfUnreadable("no document catalog");
  const PdfObject* pages_root = doc.dict_get(*catalog, "Pages");
  if (pages_root == nullptr) return {};
  const auto* dict = std::get_if<PdfDict>(&pages_root->value);
  if (dict == nullptr) return {};
  std::vector<const PdfDict*> pages;
  collect_pages(doc, *dict, pages);
  return pages;
}

AnnotationKind kind_from_subtype(std::string_view subtype) {
  if (subtype == "Text") return AnnotationKind::Comment;
  if (subtype == "Highlight") return AnnotationKind::Highlight;
  if (subtype == "Underline") return AnnotationKind::Underline;
  if (subtype == "FreeText") return AnnotationKind::Note;
  return AnnotationKind::Unknown;
}

std::optional<std::string> iso_from_pdf_date(const std::string& raw) {
  std::string_view s = raw;
  if (s.rfind("D:", 0) == 0) s.remove_prefix(2);
  if (s.size() < 4) return std::nullopt;
  auto digits = [&](std::size_t at, std::size_t n,
                    const char* fallback) -> std::string {
    if (at + n > s.size()) return fallback;
    for (std::size_t i = 0; i < n; ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[at + i]))) return fallback;
    return std::string(s.substr(at, n));
  };
  std::string year = digits(0, 4, "");
  if (year.empty()) return std::nullopt;
  return year + "-" + digits(4, 2, "01") + "-" + digits(6, 2, "01") + "T" +
         digits(8, 2, "00") + ":" + digits(10, 2, "00") + ":" +
         digits(12, 2, "00") + "Z";
}

std::vector<std::string> split_keywords(const std::string& raw) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    std::size_t b = current.find_first_not_of(" \t");
    std::size_t e = current.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(current.substr(b, e - b + 1));
    current.clear();
  };
  for (char c : raw) {
    if (c == ',' || c == ';')
      flush();
    else
      current.push_back(c);
  }
  flush();
  return out;
}

DocumentRecord metadata_record(const PdfDocument& doc,
                               const std::filesystem::path& path) {
  DocumentRecord record;
  record.doc_id = path.stem().string();
  record.file_name = path.filename().string();
  const PdfObject* info = doc.dict_get(doc.trailer, "Info");
  if (info == nullptr) return record;
  const auto* dict = std::get_if<PdfDict>(&info->value);
  if (dict == nullptr) return record;
  record.title = doc.dict_get_string(*dict, "Title");
  record.author = doc.dict_get_string(*dict, "Author");
  record.summary = doc.dict_get_string(*dict, "Subject");
  if (auto keywords = doc.dict_get_string(*dict, "Keywords"))
    record.keywords = split_keywords(*keywords);
  if (auto date = doc.dict_get_string(*dict, "CreationDate"))
    record.created_at = iso_from_pdf_date(*date);
  return record;
}

}  // namespace

IngestReport extract_pdf_annotations(const std::filesystem::path& path) {
  PdfDocument doc = load_document(path);
  IngestReport report;
  DocumentRecord record = metadata_record(doc, path);
  std::string doc_id = record.doc_id;
  report.documents.push_back(std::move(record));

  std::vector<const PdfDict*> pages = document_pages(doc);
  std::size_t counter = 0;
  for (std::size_t page_index = 0; page_index < pages.size(); ++page_index) {
    const PdfObject* annots = doc.dict_get(*pages[page_index], "Annots");
    if (annots == nullptr) continue;
    const auto* array = std::get_if<PdfArray>(&annots->value);
    if (array == nullptr) continue;
    for (const PdfObjectPtr& entry : *array) {
      const PdfObject* obj = doc.deref(entry);
      if (obj == nullptr) continue;
      const auto* dict = std::get_if<PdfDict>(&obj->value);
      if (dict == nullptr) continue;
      Annotation a;
      a.annotation_id = doc_id + "#a" + std::to_string(++counter);
      a.kind = kind_from_subtype(doc.dict_get_name(*dict, "Subtype").value_or(""));
      a.body = doc.dict_get_string(*dict, "Contents").value_or("");
      a.author_id = doc.dict_get_string(*dict, "T").value_or("unknown");
      if (auto modified = doc.dict_get_string(*dict, "M"))
        a.created_at = iso_from_pdf_date(*modified).value_or("");
      a.target = PageTarget{doc_id, static_cast<int>(page_index)};
      a.doc_id = doc_id;
      report.annotations.push_back(std::move(a));
    }
  }
  return report;
}

DocumentRecord extract_pdf_metadata(const std::filesystem::path& path) {
  PdfDocument doc = load_document(path);
  return metadata_record(doc, path);
}

}  // namespace annosent
