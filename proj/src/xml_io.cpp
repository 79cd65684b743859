#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <set>
#include <sstream>

#include "annosent/errors.hpp"
#include "annosent/ingest.hpp"
#include "ingest_common.hpp"

namespace pt = boost::property_tree;

namespace annosent {

namespace detail {

void finalize_report(IngestReport& report) {
  std::vector<Violation> violations = validate_graph(report.annotations);
  for (const Violation& v : violations) {
    if (v.kind == ViolationKind::MissingParent)
      throw DanglingReference(v.id + ": " + v.detail);
    throw SchemaViolation(std::string(to_string(v.kind)) + " " + v.id + ": " +
                          v.detail);
  }
  std::set<std::string> known;
  for (const DocumentRecord& d : report.documents) known.insert(d.doc_id);
  for (const Annotation& a : report.annotations) {
    if (known.insert(a.doc_id).second) {
      DocumentRecord doc;
      doc.doc_id = a.doc_id;
      doc.file_name = a.doc_id;
      report.documents.push_back(std::move(doc));
    }
  }
}

}  // namespace detail

namespace {

const pt::ptree& require_child(const pt::ptree& node, const std::string& name,
                               const std::string& context) {
  auto child = node.get_child_optional(name);
  if (!child) throw SchemaViolation(context + ": missing <" + name + ">");
  return *child;
}

std::string require_attr(const pt::ptree& node, const std::string& name,
                         const std::string& context) {
  auto value = node.get_optional<std::string>("<xmlattr>." + name);
  if (!value) throw SchemaViolation(context + ": missing attribute " + name);
  return *value;
}

Annotation parse_annotation_element(const pt::ptree& node,
                                    const XmlOptions& options,
                                    std::vector<std::string>& warnings) {
  Annotation a;
  const pt::ptree& comment = require_child(node, "Comment", "Annotation");
  a.annotation_id = require_attr(comment, "comment_id", "Comment");
  a.body = comment.get_value<std::string>();

  const std::string context = "Annotation " + a.annotation_id;
  a.author_id = require_child(node, "Author", context).get_value<std::string>();
  std::string type = require_child(node, "Type", context).get_value<std::string>();
  a.kind = kind_from_string(type);
  if (options.dtd_strict &&
      (a.kind == AnnotationKind::Highlight || a.kind == AnnotationKind::Underline))
    warnings.push_back(context + ": Type '" + type +
                       "' is an extension beyond the DTD");
  a.created_at = require_child(node, "Date_Time", context).get_value<std::string>();
  a.doc_id = require_attr(require_child(node, "Paper", context), "paper_id", context);

  const pt::ptree& target = require_child(node, "Annotation_on", context);
  auto p_id = target.get_optional<std::string>("<xmlattr>.p_id");
  auto c_id = target.get_optional<std::string>("<xmlattr>.c_id");
  if (p_id && c_id)
    throw SchemaViolation(context + ": Annotation_on carries both p_id and c_id");
  if (!p_id && !c_id)
    throw SchemaViolation(context + ": Annotation_on carries neither p_id nor c_id");
  if (p_id) {
    if (*p_id != a.doc_id)
      throw SchemaViolation(context + ": p_id '" + *p_id +
                            "' does not match paper_id '" + a.doc_id + "'");
    int page = target.get<int>("<xmlattr>.page", 0);
    if (page < 0) throw SchemaViolation(context + ": negative page index");
    a.target = PageTarget{*p_id, page};
  } else {
    a.target = ParentTarget{*c_id};
  }
  return a;
}

void append_escaped(std::string& out, const std::string& text) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
}

}  // namespace

IngestReport parse_annotation_xml(std::string_view bytes,
                                  const XmlOptions& options) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(bytes)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw XmlSyntaxError(e.what());
  }

  auto root = tree.get_child_optional("Annotation_List");
  if (!root) throw SchemaViolation("root element must be Annotation_List");

  IngestReport report;
  for (const auto& [name, node] : *root) {
    if (name == "<xmlattr>") continue;
    if (name != "Annotation")
      throw SchemaViolation("unexpected element <" + name + "> in Annotation_List");
    report.annotations.push_back(
        parse_annotation_element(node, options, report.warnings));
  }
  detail::finalize_report(report);
  return report;
}

std::string export_annotation_xml(const IngestReport& report) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  if (report.annotations.empty()) {
    out += "<Annotation_List/>\n";
    return out;
  }
  out += "<Annotation_List>\n";
  for (const Annotation& a : report.annotations) {
    out += "<Annotation>";
    out += "<Author>";
    append_escaped(out, a.author_id);
    out += "</Author><Type>";
    append_escaped(out, std::string(to_string(a.kind)));
    out += "</Type>";
    if (const auto* page = std::get_if<PageTarget>(&a.target)) {
      out += "<Annotation_on p_id=\"";
      append_escaped(out, page->doc_id);
      out += "\" page=\"" + std::to_string(page->page_index) + "\"/>";
    } else {
      out += "<Annotation_on c_id=\"";
      append_escaped(out, std::get<ParentTarget>(a.target).parent_annotation_id);
      out += "\"/>";
    }
    out += "<Comment comment_id=\"";
    append_escaped(out, a.annotation_id);
    out += "\">";
    append_escaped(out, a.body);
    out += "</Comment><Date_Time>";
    append_escaped(out, a.created_at);
    out += "</Date_Time><Paper paper_id=\"";
    append_escaped(out, a.doc_id);
    out += "\"/></Annotation>\n";
  }
  out += "</Annotation_List>\n";
  return out;
}

}  // namespace annosent
