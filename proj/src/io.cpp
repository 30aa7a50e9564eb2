#include "toristab/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "toristab/errors.hpp"

namespace toristab {
namespace {

using Json = nlohmann::ordered_json;

// 1-based line/column of a byte position, for syntax error reports.
std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte);
    std::ostringstream msg;
    msg << "JSON syntax error at line " << line << ", column " << column;
    throw ParseError(msg.str(), line, column);
  }
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const Json& field(const Json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

void check_keys(const Json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) fail(where, "unknown field \"" + item.key() + "\"");
  }
}

Rational rational_value(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected a rational string \"p/q\" or an integer");
}

int int_value(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::string string_value(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json offset_json(const Rational& offset) { return format_rational(offset); }

Json normal_json(const ZVec& normal) {
  Json arr = Json::array();
  for (const Int& entry : normal) arr.push_back(entry.convert_to<long long>());
  return arr;
}

}  // namespace

PolytopeDocument parse_polytope_document(const std::string& text) {
  Json doc = parse_json(text);
  check_keys(doc, "document", {"name", "dim", "facets", "metadata"});

  PolytopeDocument out;
  out.name = string_value(field(doc, "document", "name"), "name");
  out.dim = int_value(field(doc, "document", "dim"), "dim");
  if (out.dim < 1) fail("dim", "must be a positive integer");

  const Json& facets = field(doc, "document", "facets");
  if (!facets.is_array() || facets.empty()) fail("facets", "expected a nonempty array");
  for (std::size_t j = 0; j < facets.size(); ++j) {
    const std::string where = "facets[" + std::to_string(j) + "]";
    const Json& facet = facets[j];
    check_keys(facet, where, {"normal", "offset"});

    FacetDocument fd;
    const Json& normal = field(facet, where, "normal");
    if (!normal.is_array() || static_cast<int>(normal.size()) != out.dim)
      fail(where + ".normal", "expected an array of " + std::to_string(out.dim) +
                                  " integers");
    for (const Json& entry : normal)
      fd.normal.push_back(Int(int_value(entry, where + ".normal")));
    fd.offset = rational_value(field(facet, where, "offset"), where + ".offset");
    out.facets.push_back(std::move(fd));
  }

  if (auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) fail("metadata", "expected an object of strings");
    for (const auto& item : it->items())
      out.metadata.emplace_back(item.key(),
                                string_value(item.value(), "metadata." + item.key()));
  }
  return out;
}

std::string serialize_polytope_document(const PolytopeDocument& doc) {
  Json j;
  j["name"] = doc.name;
  j["dim"] = doc.dim;
  Json facets = Json::array();
  for (const FacetDocument& fd : doc.facets) {
    Json facet;
    facet["normal"] = normal_json(fd.normal);
    facet["offset"] = offset_json(fd.offset);
    facets.push_back(std::move(facet));
  }
  j["facets"] = std::move(facets);
  if (!doc.metadata.empty()) {
    Json meta;
    for (const auto& [key, value] : doc.metadata) meta[key] = value;
    j["metadata"] = std::move(meta);
  }
  return dump(j);
}

Polytope document_to_polytope(const PolytopeDocument& doc) {
  std::vector<HalfSpace> facets;
  for (const FacetDocument& fd : doc.facets) {
    QVec normal;
    for (const Int& entry : fd.normal) normal.push_back(Rational(entry));
    facets.push_back(canonical_halfspace(normal, fd.offset));
  }
  return make_polytope(doc.dim, std::move(facets), doc.name);
}

Polytope parse_polytope(const std::string& text) {
  return document_to_polytope(parse_polytope_document(text));
}

std::string serialize_polytope(const Polytope& p) {
  PolytopeDocument doc;
  doc.name = p.name;
  doc.dim = p.dim;
  for (const HalfSpace& h : p.facets) doc.facets.push_back({h.normal, h.offset});
  return serialize_polytope_document(doc);
}

PLConvexFn parse_pl_function(const std::string& text) {
  Json doc = parse_json(text);
  check_keys(doc, "document", {"pieces"});

  const Json& pieces = field(doc, "document", "pieces");
  if (!pieces.is_array() || pieces.empty()) fail("pieces", "expected a nonempty array");

  PLConvexFn f;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const std::string where = "pieces[" + std::to_string(k) + "]";
    const Json& piece = pieces[k];
    check_keys(piece, where, {"a", "c"});

    const Json& a = field(piece, where, "a");
    if (!a.is_array() || a.empty()) fail(where + ".a", "expected a nonempty array");
    if (k > 0 && a.size() != f.pieces.front().linear.size())
      fail(where + ".a", "all pieces must have the same arity");
    QVec linear;
    for (std::size_t i = 0; i < a.size(); ++i)
      linear.push_back(
          rational_value(a[i], where + ".a[" + std::to_string(i) + "]"));
    Rational constant = rational_value(field(piece, where, "c"), where + ".c");
    f.pieces.emplace_back(std::move(linear), std::move(constant));
  }
  return f;
}

std::string serialize_pl_function(const PLConvexFn& f) {
  Json j;
  Json pieces = Json::array();
  for (const AffineFn& piece : f.pieces) {
    Json p;
    Json a = Json::array();
    for (const Rational& entry : piece.linear) a.push_back(format_rational(entry));
    p["a"] = std::move(a);
    p["c"] = format_rational(piece.constant);
    pieces.push_back(std::move(p));
  }
  j["pieces"] = std::move(pieces);
  return dump(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error("cannot read file: " + path);
  return buffer.str();
}

}  // namespace toristab
