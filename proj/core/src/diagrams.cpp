#include "chi2opt/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chi2opt/constants.hpp"
#include "chi2opt/errors.hpp"
#include "chi2opt/quadrature.hpp"

namespace chi2opt {

using constants::c0;
using constants::pi;

namespace {

constexpr Complex kImag(0.0, 1.0);

Endpoint vertex(int i) { return {true, i}; }
Endpoint source(int i) { return {false, i}; }

DiagramEdge edge(Endpoint from, Endpoint to, Mode m) { return {from, to, m}; }

Mode flip(Mode m) { return m == Mode::Signal ? Mode::Idler : Mode::Signal; }

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

Diagram make_diagram(int V, std::vector<DiagramEdge> edges, int n_sources,
                     std::vector<VacuumLeg> legs, Process process) {
  Diagram d;
  d.n_vertices = V;
  d.edges = std::move(edges);
  d.source_labels = default_labels(n_sources);
  d.vacuum_legs = std::move(legs);
  d.process = process;
  return d;
}

Diagram swapped(Diagram d) {
  for (DiagramEdge& e : d.edges) e.mode = flip(e.mode);
  d.mode_swapped = true;
  return d;
}

void append_both_orientations(std::vector<Diagram>& out, Diagram d) {
  out.push_back(d);
  out.push_back(swapped(std::move(d)));
}

std::vector<Diagram> in_canonical_order(std::vector<Diagram> out) {
  std::sort(out.begin(), out.end(), [](const Diagram& a, const Diagram& b) {
    return a.canonical_form() < b.canonical_form();
  });
  return out;
}

std::string endpoint_token(const Endpoint& e, const std::vector<int>& vperm,
                           const std::vector<int>& sperm) {
  if (e.is_vertex) return "v" + std::to_string(vperm[e.index]);
  return "s" + std::to_string(sperm[e.index]);
}

}  // namespace

std::string Diagram::canonical_form() const {
  std::vector<int> vperm(n_vertices);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::vector<int> sperm(n_sources());
  std::iota(sperm.begin(), sperm.end(), 0);

  std::string best;
  std::vector<int> vp = vperm;
  do {
    std::vector<int> sp = sperm;
    do {
      std::vector<std::string> tokens;
      for (const DiagramEdge& e : edges) {
        tokens.push_back(std::string(to_string(e.mode)) + ":" +
                         endpoint_token(e.from, vp, sp) + ">" +
                         endpoint_token(e.to, vp, sp));
      }
      for (const VacuumLeg& l : vacuum_legs) {
        tokens.push_back(std::string(l.incoming ? "vac-in@" : "vac-out@") +
                         "v" + std::to_string(vp[l.vertex]));
      }
      std::sort(tokens.begin(), tokens.end());
      std::string form;
      for (const std::string& t : tokens) form += t + ";";
      form += mode_swapped ? "|swap" : "|base";
      if (best.empty() || form < best) best = form;
    } while (std::next_permutation(sp.begin(), sp.end()));
  } while (std::next_permutation(vp.begin(), vp.end()));
  return best;
}

std::string Diagram::describe() const {
  std::ostringstream os;
  os << to_string(process) << " [V=" << n_vertices << ", P=" << n_propagators()
     << ", sources=" << n_sources() << (mode_swapped ? ", swapped" : "")
     << "]:";
  auto name = [&](const Endpoint& e) {
    if (e.is_vertex) return "v" + std::to_string(e.index);
    return source_labels[e.index];
  };
  for (const DiagramEdge& e : edges) {
    os << " " << name(e.from) << " --" << (e.mode == Mode::Signal ? "S" : "I")
       << "--> " << name(e.to);
  }
  for (const VacuumLeg& l : vacuum_legs) {
    os << " vac" << (l.incoming ? ">" : "<") << "v" << l.vertex;
  }
  return os.str();
}

std::vector<Diagram> enumerate_diagrams(int V, int P) {
  std::vector<Diagram> out;
  if (V == 0 && P == 1) {
    // Bare propagator between two current sources.
    out.push_back(make_diagram(
        0, {edge(source(0), source(1), Mode::Signal)}, 2, {}, Process::Other));
    return in_canonical_order(std::move(out));
  }
  if (V == 1 && P == 2) {
    // Down-conversion: both lines emitted, vacuum line in.
    append_both_orientations(
        out, make_diagram(1,
                          {edge(vertex(0), source(0), Mode::Signal),
                           edge(vertex(0), source(1), Mode::Idler)},
                          2, {{0, true}}, Process::SPDC));
    // Difference-frequency conversion: one absorbed, one emitted.
    append_both_orientations(
        out, make_diagram(1,
                          {edge(source(0), vertex(0), Mode::Idler),
                           edge(vertex(0), source(1), Mode::Signal)},
                          2, {{0, false}}, Process::DFG));
    // Sum-frequency conversion: both lines absorbed, vacuum line out.
    append_both_orientations(
        out, make_diagram(1,
                          {edge(source(0), vertex(0), Mode::Signal),
                           edge(source(1), vertex(0), Mode::Idler)},
                          2, {{0, false}}, Process::SFG));
    return in_canonical_order(std::move(out));
  }
  if (V == 2 && P == 2) {
    // Fully contracted SPDC followed by SFG: the sourceless vacuum loop.
    append_both_orientations(
        out, make_diagram(2,
                          {edge(vertex(0), vertex(1), Mode::Signal),
                           edge(vertex(0), vertex(1), Mode::Idler)},
                          0, {{0, true}, {1, false}}, Process::VacuumLoop));
    return in_canonical_order(std::move(out));
  }
  if (V == 2 && P == 3) {
    // SPDC feeding DFG through one internal line.
    append_both_orientations(
        out, make_diagram(2,
                          {edge(vertex(0), source(0), Mode::Signal),
                           edge(vertex(0), vertex(1), Mode::Idler),
                           edge(vertex(1), source(1), Mode::Signal)},
                          2, {{0, true}, {1, false}}, Process::Other));
    // DFG feeding SFG.
    append_both_orientations(
        out, make_diagram(2,
                          {edge(source(0), vertex(0), Mode::Idler),
                           edge(vertex(0), vertex(1), Mode::Signal),
                           edge(source(1), vertex(1), Mode::Idler)},
                          2, {{0, false}, {1, false}}, Process::Other));
    // DFG feeding DFG (conversion chain).
    append_both_orientations(
        out, make_diagram(2,
                          {edge(source(0), vertex(0), Mode::Idler),
                           edge(vertex(0), vertex(1), Mode::Signal),
                           edge(vertex(1), source(1), Mode::Idler)},
                          2, {{0, false}, {1, false}}, Process::Other));
    return in_canonical_order(std::move(out));
  }
  if (V == 2 && P == 4) {
    // Two independent down-conversions: cascaded SPDC.
    append_both_orientations(
        out, make_diagram(2,
                          {edge(vertex(0), source(0), Mode::Signal),
                           edge(vertex(0), source(1), Mode::Idler),
                           edge(vertex(1), source(2), Mode::Signal),
                           edge(vertex(1), source(3), Mode::Idler)},
                          4, {{0, true}, {1, true}}, Process::CascadedSPDC));
    // Two independent up-conversions.
    append_both_orientations(
        out, make_diagram(2,
                          {edge(source(0), vertex(0), Mode::Signal),
                           edge(source(1), vertex(0), Mode::Idler),
                           edge(source(2), vertex(1), Mode::Signal),
                           edge(source(3), vertex(1), Mode::Idler)},
                          4, {{0, false}, {1, false}}, Process::Other));
    return in_canonical_order(std::move(out));
  }
  throw UnsupportedOrderError("enumerate_diagrams: unsupported order V=" +
                              std::to_string(V) + ", P=" + std::to_string(P));
}

long symmetry_factor(const Diagram& d) {
  long f = 1;
  for (int s = 2; s <= d.n_sources(); ++s) f *= s;
  return f;
}

namespace {

struct ModePropagators {
  DressedPropagator signal;
  DressedPropagator idler;

  const DressedPropagator& of(Mode m) const {
    return m == Mode::Signal ? signal : idler;
  }
};

std::vector<double> numeric_grid(const MediumProfile& profile, double omega,
                                 double lo, double hi) {
  double n_max = 1.0;
  for (const Region& r : profile.regions()) {
    const double mid = 0.5 * (r.x_start + r.x_end);
    n_max = std::max(n_max, profile.index(omega, mid).real());
  }
  const double wavelength = 2.0 * pi / (omega / c0 * n_max);
  const double pad = 0.5 * wavelength;
  lo -= pad;
  hi += pad;
  const int n = std::max(41, static_cast<int>(std::ceil((hi - lo) / (wavelength / 40.0))) + 1);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
  return grid;
}

ModePropagators build_propagators(const EvaluationContext& ctx, double lo,
                                  double hi) {
  if (ctx.propagator_mode == PropagatorMode::Analytic1D) {
    const Complex ks = ctx.kin.k_s;
    const Complex ki = ctx.kin.k_i;
    return {DressedPropagator::analytic(
                WaveVectorModel([ks](double) { return ks; })),
            DressedPropagator::analytic(
                WaveVectorModel([ki](double) { return ki; }))};
  }
  const MediumProfile vac = MediumProfile::vacuum();
  const MediumProfile& profile =
      ctx.medium.linear ? *ctx.medium.linear : vac;
  return {DressedPropagator::numeric(
              profile, ctx.kin.omega_s,
              numeric_grid(profile, ctx.kin.omega_s, lo, hi)),
          DressedPropagator::numeric(
              profile, ctx.kin.omega_i,
              numeric_grid(profile, ctx.kin.omega_i, lo, hi))};
}

Complex ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

Complex evaluate_amplitude(const Diagram& d, const EvaluationContext& ctx) {
  if (!d.evaluable()) {
    throw RenormalisationPolicyError(
        "vacuum-loop diagrams are removed by renormalisation and cannot be "
        "evaluated");
  }
  if (d.n_vertices > 2) {
    throw UnsupportedOrderError("evaluate_amplitude: more than 2 vertices");
  }
  ctx.medium.validate();
  ctx.kin.validate();
  if (!energy_allowed(ctx.kin)) {
    throw ForbiddenProcessError("evaluate_amplitude: energy conservation violated");
  }

  std::vector<double> source_x(d.n_sources());
  double lo = ctx.medium.x_start, hi = ctx.medium.x_end;
  for (int i = 0; i < d.n_sources(); ++i) {
    const auto it = ctx.coordinates.find(d.source_labels[i]);
    if (it == ctx.coordinates.end()) {
      throw ValidationError("evaluate_amplitude: missing coordinate for source '" +
                            d.source_labels[i] + "'");
    }
    source_x[i] = it->second.x;
    lo = std::min(lo, source_x[i]);
    hi = std::max(hi, source_x[i]);
  }

  const ModePropagators props = build_propagators(ctx, lo, hi);

  auto edge_value = [&](const DiagramEdge& e,
                        const std::vector<double>& z) -> Complex {
    auto pos = [&](const Endpoint& ep) {
      return ep.is_vertex ? z[ep.index] : source_x[ep.index];
    };
    const double omega =
        e.mode == Mode::Signal ? ctx.kin.omega_s : ctx.kin.omega_i;
    return props.of(e.mode).evaluate(omega, pos(e.to), pos(e.from));
  };

  std::vector<double> z(d.n_vertices, 0.0);
  std::function<Complex(int)> integrate_vertices = [&](int v) -> Complex {
    if (v == d.n_vertices) {
      Complex prod = 1.0;
      for (const DiagramEdge& e : d.edges) prod *= edge_value(e, z);
      for (int j = 0; j < d.n_vertices; ++j) {
        prod *= effective_coupling(ctx.medium, ctx.kin.pump, z[j]);
      }
      return prod;
    }
    auto inner = [&](double zv) -> Complex {
      z[v] = zv;
      return integrate_vertices(v + 1);
    };
    return integrate(inner, ctx.medium.x_start, ctx.medium.x_end,
                     ctx.quadrature)
        .value;
  };

  // hbar = 1 Feynman rules: source -> i, vertex -> (i/3!) int dz lambda,
  // edge -> G/i.
  const Complex prefactor =
      ipow(d.n_sources() + d.n_vertices - d.n_propagators()) /
      std::pow(6.0, d.n_vertices);
  return prefactor * integrate_vertices(0);
}

Complex cross_section(Process process, const EvaluationContext& ctx,
                      const std::vector<SourceCoordinate>& coords) {
  auto biphoton = [&](const SourceCoordinate& a,
                      const SourceCoordinate& b) -> Complex {
    if (ctx.propagator_mode == PropagatorMode::Analytic1D) {
      return biphoton_1d_analytic(ctx.medium, ctx.kin, a.x, b.x);
    }
    const double lo = std::min({a.x, b.x, ctx.medium.x_start});
    const double hi = std::max({a.x, b.x, ctx.medium.x_end});
    const ModePropagators props = build_propagators(ctx, lo, hi);
    return biphoton_numeric(ctx.medium, ctx.kin, props.signal, props.idler,
                            a.x, b.x, ctx.quadrature);
  };

  switch (process) {
    case Process::SPDC:
    case Process::DFG:
    case Process::SFG:
    case Process::SHG: {
      if (coords.size() != 2) {
        throw ValidationError("cross_section: first-order process needs 2 coordinates");
      }
      // All four first-order processes share one propagator expression.
      return biphoton(coords[0], coords[1]);
    }
    case Process::CascadedSPDC: {
      if (coords.size() != 4) {
        throw ValidationError("cross_section: cascaded process needs 4 coordinates");
      }
      return 24.0 * biphoton(coords[0], coords[1]) *
             biphoton(coords[2], coords[3]);
    }
    case Process::VacuumLoop:
      throw RenormalisationPolicyError(
          "vacuum-loop contributions are removed by renormalisation");
    default:
      throw ValidationError("cross_section: process has no cross section");
  }
}

const char* to_string(Process p) {
  switch (p) {
    case Process::SPDC: return "spdc";
    case Process::DFG: return "dfg";
    case Process::SFG: return "sfg";
    case Process::SHG: return "shg";
    case Process::CascadedSPDC: return "cascaded-spdc";
    case Process::VacuumLoop: return "vacuum-loop";
    default: return "other";
  }
}

const char* to_string(Mode m) { return m == Mode::Signal ? "S" : "I"; }

}  // namespace chi2opt
