#pragma once

#include <optional>
#include <string>

#include "fpd/diagram.hpp"

namespace fpd {

struct DiagramRecord {
  AbstractDiagram diagram;
  std::optional<Decoration> decoration;
};

/// Text interchange format. The diagram is written in labelled canonical
/// order, so diagrams equal up to relabelling serialize identically. A
/// decoration, when given, is carried along the relabelling.
std::string write_diagram(const AbstractDiagram& d, const Decoration* decoration = nullptr);
/// Throws ParseError on malformed input and InvalidArgument when the parsed
/// cells violate the diagram invariants.
DiagramRecord read_diagram(const std::string& text);

}  // namespace fpd
