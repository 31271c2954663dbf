#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "chi2opt/nonlinear.hpp"

namespace chi2opt {

enum class Mode { Signal, Idler };
enum class Process { SPDC, DFG, SFG, SHG, CascadedSPDC, VacuumLoop, Other };
enum class PropagatorMode { Analytic1D, Numeric1D };

/// An endpoint of a propagator line: either a vertex or a current source.
struct Endpoint {
  bool is_vertex = false;
  int index = 0;
  bool operator==(const Endpoint&) const = default;
};

/// Directed propagator line: photon emitted at `from`, absorbed at `to`.
struct DiagramEdge {
  Endpoint from;
  Endpoint to;
  Mode mode = Mode::Signal;
};

struct VacuumLeg {
  int vertex = 0;
  bool incoming = true;  // dashed vacuum line entering (true) or leaving
};

/// A chi^(2) Feynman diagram. Vertices are the nonlinear interaction points
/// (exactly two propagator lines each, one signal and one idler); sources
/// are current insertions carrying coordinate labels.
struct Diagram {
  int n_vertices = 0;
  std::vector<DiagramEdge> edges;
  std::vector<std::string> source_labels;  // index = source endpoint id
  std::vector<VacuumLeg> vacuum_legs;
  Process process = Process::Other;
  bool mode_swapped = false;  // signal<->idler orientation of the topology

  int n_propagators() const { return static_cast<int>(edges.size()); }
  int n_sources() const { return static_cast<int>(source_labels.size()); }

  /// Canonical form: lexicographically minimal edge list over vertex and
  /// source relabelings, with the mode orientation tag appended. Two
  /// diagrams are equal iff their canonical forms are.
  std::string canonical_form() const;
  /// One-line ASCII adjacency description for the CLI.
  std::string describe() const;
  bool evaluable() const { return process != Process::VacuumLoop; }
};

/// All topologically distinct diagrams with V vertices and P mode-labelled
/// propagators, in canonical order. Supported orders: (0,1), (1,2), and the
/// second-order catalogue (2, P in 2..4); each topology is emitted in both
/// signal/idler orientations.
std::vector<Diagram> enumerate_diagrams(int V, int P);

/// s! where s is the number of current sources (source-exchange symmetry).
long symmetry_factor(const Diagram& d);

struct SourceCoordinate {
  double omega = 0.0;
  double x = 0.0;
};

struct EvaluationContext {
  Chi2Medium medium;
  ThreeWaveKinematics kin;
  PropagatorMode propagator_mode = PropagatorMode::Analytic1D;
  std::map<std::string, SourceCoordinate> coordinates;
  QuadratureOptions quadrature;
};

/// Feynman-rule evaluation (hbar = 1): edge -> G/i, vertex -> (i/3!) int dz
/// lambda(z), source -> i. Vertex positions are integrated over the medium
/// extent. Vacuum-loop diagrams are rejected by renormalisation policy.
Complex evaluate_amplitude(const Diagram& d, const EvaluationContext& ctx);

/// Cross sections with hbar = 1: first order, sigma = X2(x-y) identically
/// for SPDC/DFG/SFG/SHG; cascaded SPDC, sigma = 24 X2(x1-x2) X2(x3-x4).
Complex cross_section(Process process, const EvaluationContext& ctx,
                      const std::vector<SourceCoordinate>& coords);

const char* to_string(Process p);
const char* to_string(Mode m);

}  // namespace chi2opt
