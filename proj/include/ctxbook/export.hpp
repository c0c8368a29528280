#pragma once

#include "ctxbook/io.hpp"
#include "ctxbook/wps.hpp"

#include <string>

namespace ctxbook {

/// A graph in DOT syntax plus the same content as structured data.
struct GraphExport {
  std::string dot;
  Json data;
};

/// Base vertices X with an edge per pair inside a maximal context; a fiber of
/// outcome nodes over each measurement; an edge between outcome nodes for
/// each pair inside a support section.
GraphExport export_bundle_diagram(const EmpiricalModel& model, const Limits& limits = {});

/// Vertices are the single-measurement events Ē(x↦o) with μ > 0; a simplex
/// is a nonempty intersection of vertex events for distinct measurements.
/// A simplex is `supported` when every face over a context has μ > 0. Edges
/// over contexts are drawn solid when they lie in a supported simplex over
/// X, dashed otherwise; edges outside contexts are dotted.
GraphExport export_nerve(const WpsRepresentation& rep);

}  // namespace ctxbook
