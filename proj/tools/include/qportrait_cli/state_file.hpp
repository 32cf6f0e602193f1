#pragma once

#include <optional>
#include <string>

#include "qportrait/composite.hpp"
#include "qportrait/numkernel.hpp"
#include "qportrait/qudit.hpp"

namespace qp::cli {

/// Either a bipartite split NLxNS or a register of p qubits.
struct LayoutSpec {
  bool qubits = false;
  int p = 0;
  BipartiteLayout bipartite;

  int dim() const { return qubits ? (1 << p) : bipartite.dim(); }
};

/// "2x3" or "p=3"; throws ParseError.
LayoutSpec parse_layout(const std::string& text);
std::string layout_string(const LayoutSpec& layout);

/// JSON document {"dim": N, "re": [[...]], "im": [[...]], "layout": "..."}.
struct StateFile {
  ComplexMatrix matrix;
  std::optional<LayoutSpec> layout;
};

StateFile parse_state_file(const std::string& text, const std::string& source);
StateFile read_state_file(const std::string& path);
/// One matrix row per line, entries in the report float format.
std::string write_state_file(const ComplexMatrix& m, const std::optional<LayoutSpec>& layout);

/// The matrix as a validated density matrix; layout checked against dim.
DensityMatrix load_density(const StateFile& file);

}  // namespace qp::cli
