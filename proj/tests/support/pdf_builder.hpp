#pragma once

// Builds small classic-xref PDFs byte by byte, independently of the reader
// under test.

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace pdfgen {

struct PdfAnnotation {
  std::string subtype;  // Text, Highlight, Underline, FreeText, ...
  std::string contents;
  std::string author;  // /T, empty = omitted
};

struct PdfInfo {
  std::string title, author, keywords, subject, creation_date;
};

struct PdfSpec {
  std::vector<std::vector<PdfAnnotation>> pages;  // annotations per page
  PdfInfo info;
  bool with_info = false;
  bool encrypted = false;  // writes an /Encrypt entry in the trailer
};

inline std::string escape_pdf_string(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '(' || c == ')' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string build_pdf(const PdfSpec& spec) {
  struct Obj {
    int number;
    std::string body;
  };
  std::vector<Obj> objects;
  int next = 1;
  auto add = [&](std::string body) {
    objects.push_back({next, std::move(body)});
    return next++;
  };

  int catalog_num = next++;  // reserved, emitted below
  int pages_num = next++;

  std::vector<int> page_nums;
  std::string kids;
  for (const auto& page : spec.pages) {
    std::string annots;
    for (const auto& a : page) {
      std::string body = "<< /Type /Annot /Subtype /" + a.subtype +
                         " /Rect [100 100 200 120] /Contents (" +
                         escape_pdf_string(a.contents) + ")";
      if (!a.author.empty())
        body += " /T (" + escape_pdf_string(a.author) + ")";
      body += " >>";
      annots += std::to_string(add(std::move(body))) + " 0 R ";
    }
    std::string body = "<< /Type /Page /Parent " + std::to_string(pages_num) +
                       " 0 R /MediaBox [0 0 612 792]";
    if (!annots.empty()) body += " /Annots [" + annots + "]";
    body += " >>";
    page_nums.push_back(add(std::move(body)));
  }

  {
    std::string kids_body = "<< /Type /Pages /Kids [";
    for (int p : page_nums) kids_body += std::to_string(p) + " 0 R ";
    kids_body += "] /Count " + std::to_string(page_nums.size()) + " >>";
    objects.push_back({pages_num, std::move(kids_body)});
  }
  objects.push_back({catalog_num, "<< /Type /Catalog /Pages " +
                                      std::to_string(pages_num) + " 0 R >>"});

  int info_num = 0;
  if (spec.with_info) {
    std::string body = "<<";
    if (!spec.info.title.empty())
      body += " /Title (" + escape_pdf_string(spec.info.title) + ")";
    if (!spec.info.author.empty())
      body += " /Author (" + escape_pdf_string(spec.info.author) + ")";
    if (!spec.info.keywords.empty())
      body += " /Keywords (" + escape_pdf_string(spec.info.keywords) + ")";
    if (!spec.info.subject.empty())
      body += " /Subject (" + escape_pdf_string(spec.info.subject) + ")";
    if (!spec.info.creation_date.empty())
      body += " /CreationDate (" + escape_pdf_string(spec.info.creation_date) + ")";
    body += " >>";
    info_num = add(std::move(body));
  }

  std::string out = "%PDF-1.4\n";
  std::vector<std::pair<int, std::size_t>> offsets;
  for (const Obj& obj : objects) {
    offsets.emplace_back(obj.number, out.size());
    out += std::to_string(obj.number) + " 0 obj\n" + obj.body + "\nendobj\n";
  }

  std::size_t xref_at = out.size();
  std::sort(offsets.begin(), offsets.end());
  out += "xref\n0 " + std::to_string(next) + "\n";
  out += "0000000000 65535 f \n";
  for (const auto& [number, offset] : offsets) {
    char line[32];
    std::snprintf(line, sizeof(line), "%010zu 00000 n \n", offset);
    out += line;
  }
  out += "trailer\n<< /Size " + std::to_string(next) + " /Root " +
         std::to_string(catalog_num) + " 0 R";
  if (info_num != 0) out += " /Info " + std::to_string(info_num) + " 0 R";
  if (spec.encrypted) out += " /Encrypt 99 0 R";
  out += " >>\nstartxref\n" + std::to_string(xref_at) + "\n%%EOF\n";
  return out;
}

}  // namespace pdfgen
