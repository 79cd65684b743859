#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "annosent/model.hpp"

namespace annosent {

struct IngestReport {
  std::vector<DocumentRecord> documents;
  std::vector<Annotation> annotations;
  std::vector<std::string> warnings;
};

struct XmlOptions {
  /// Warn on Type values outside the DTD ("highlight"/"underline").
  bool dtd_strict = false;
};

/// Annotation_List XML per the DTD, with the documented `page` attribute
/// extension on Annotation_on. Throws XmlSyntaxError, SchemaViolation,
/// DanglingReference.
IngestReport parse_annotation_xml(std::string_view bytes,
                                  const XmlOptions& options = {});

std::string export_annotation_xml(const IngestReport& report);

/// One JSON object per line. Annotation lines carry
/// {id, author, kind, body, target{type, ref, page?}, created_at, doc};
/// document lines carry {document:{doc, file_name, ...}}. Documents not
/// declared explicitly are created from the annotations' doc ids.
IngestReport parse_annotation_jsonl(std::istream& in);

void export_annotation_jsonl(const IngestReport& report, std::ostream& out);

/// Reads the page annotation dictionaries of a PDF. Subtype mapping:
/// Text -> Comment, Highlight -> Highlight, Underline -> Underline,
/// FreeText -> Note, anything else -> Unknown. Throws PdfUnreadable,
/// PdfEncrypted.
IngestReport extract_pdf_annotations(const std::filesystem::path& path);

/// Reads the document information dictionary. Absent fields stay absent.
DocumentRecord extract_pdf_metadata(const std::filesystem::path& path);

}  // namespace annosent
