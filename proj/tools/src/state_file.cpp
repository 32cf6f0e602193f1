#include "qportrait_cli/state_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qportrait/errors.hpp"
#include "qportrait/text_format.hpp"

namespace qp::cli {

using nlohmann::json;

LayoutSpec parse_layout(const std::string& text) {
  LayoutSpec spec;
  if (text.rfind("p=", 0) == 0) {
    int p = 0;
    if (!parse_int(std::string_view(text).substr(2), p) || p < 1 || p > 10) {
      raise(Errc::ParseError, "layout '" + text + "': qubit count must be 1..10");
    }
    spec.qubits = true;
    spec.p = p;
    return spec;
  }
  const auto x = text.find('x');
  int nl = 0, ns = 0;
  if (x == std::string::npos || !parse_int(std::string_view(text).substr(0, x), nl) ||
      !parse_int(std::string_view(text).substr(x + 1), ns)) {
    raise(Errc::ParseError, "layout '" + text + "' is neither NLxNS nor p=K");
  }
  if (nl < 2 || ns < 2) raise(Errc::ParseError, "layout '" + text + "': factors must be at least 2");
  spec.bipartite = BipartiteLayout(nl, ns);
  return spec;
}

std::string layout_string(const LayoutSpec& layout) {
  if (layout.qubits) return "p=" + std::to_string(layout.p);
  return std::to_string(layout.bipartite.n_l) + "x" + std::to_string(layout.bipartite.n_s);
}

namespace {

[[noreturn]] void bad(const std::string& source, const std::string& msg) {
  raise(Errc::ParseError, source + ": " + msg);
}

RealMatrix read_block(const json& doc, const char* key, int dim, const std::string& source) {
  if (!doc.contains(key)) bad(source, std::string("missing field '") + key + "'");
  const json& rows = doc.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    bad(source, std::string("field '") + key + "' must be a " + std::to_string(dim) + "x" +
                    std::to_string(dim) + " array");
  }
  RealMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      bad(source, std::string("row ") + std::to_string(i) + " of '" + key + "' has wrong length");
    }
    for (int j = 0; j < dim; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) bad(source, std::string("'") + key + "' entry is not a number");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

}  // namespace

StateFile parse_state_file(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(source, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad(source, "top level must be an object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_integer()) bad(source, "missing integer field 'dim'");
  const int dim = doc.at("dim").get<int>();
  if (dim < 1 || dim > 1024) bad(source, "dim out of range");

  StateFile file;
  file.matrix = read_block(doc, "re", dim, source).cast<Complex>() +
                Complex(0.0, 1.0) * read_block(doc, "im", dim, source).cast<Complex>();
  if (doc.contains("layout")) {
    if (!doc.at("layout").is_string()) bad(source, "'layout' must be a string");
    file.layout = parse_layout(doc.at("layout").get<std::string>());
    if (file.layout->dim() != dim) {
      raise(Errc::DimensionMismatch, source + ": layout " + layout_string(*file.layout) +
                                         " does not match dim " + std::to_string(dim));
    }
  }
  return file;
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::ParseError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_file(buf.str(), path);
}

std::string write_state_file(const ComplexMatrix& m, const std::optional<LayoutSpec>& layout) {
  // Written by hand so each matrix row sits on its own line.
  const auto n = static_cast<int>(m.rows());
  std::ostringstream out;
  out << "{\n  \"dim\": " << n << ",\n";
  if (layout) out << "  \"layout\": \"" << layout_string(*layout) << "\",\n";
  auto block = [&](const char* key, bool imag) {
    out << "  \"" << key << "\": [\n";
    for (int i = 0; i < n; ++i) {
      out << "    [";
      for (int j = 0; j < n; ++j) {
        out << (j ? ", " : "") << format_real(imag ? m(i, j).imag() : m(i, j).real());
      }
      out << (i + 1 < n ? "],\n" : "]\n");
    }
    out << "  ]";
  };
  block("re", false);
  out << ",\n";
  block("im", true);
  out << "\n}\n";
  return out.str();
}

DensityMatrix load_density(const StateFile& file) { return DensityMatrix(file.matrix); }

}  // namespace qp::cli
