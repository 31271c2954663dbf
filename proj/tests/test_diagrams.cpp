#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include <doctest.h>

#include "chi2opt/constants.hpp"
#include "chi2opt/diagrams.hpp"
#include "chi2opt/errors.hpp"

using namespace chi2opt;
using constants::c0;

namespace {

constexpr double kOmegaPump = 2.4e15;
constexpr double kChi = 3e-7;
constexpr double kLength = 1e-5;

EvaluationContext make_context() {
  EvaluationContext ctx;
  ctx.medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  ctx.kin.pump.amplitude = 2.0;
  ctx.kin.pump.phase = 0.4;
  ctx.kin.pump.omega_p = kOmegaPump;
  ctx.kin.pump.k_p = kOmegaPump / c0;
  ctx.kin.omega_s = ctx.kin.omega_i = 0.5 * kOmegaPump;
  ctx.kin.k_s = ctx.kin.k_i = -0.5 * kOmegaPump / c0;
  ctx.kin.pump.omega_p = kOmegaPump;
  ctx.coordinates["x1"] = {ctx.kin.omega_s, -1e-6};
  ctx.coordinates["x2"] = {ctx.kin.omega_i, -2e-6};
  ctx.coordinates["x3"] = {ctx.kin.omega_s, -3e-6};
  ctx.coordinates["x4"] = {ctx.kin.omega_i, -4e-6};
  return ctx;
}

// Orientation-tag-free canonical form, for comparing raw graphs.
std::string graph_form(Diagram d) {
  d.mode_swapped = false;
  return d.canonical_form();
}

Diagram flipped(Diagram d) {
  for (DiagramEdge& e : d.edges) {
    e.mode = e.mode == Mode::Signal ? Mode::Idler : Mode::Signal;
  }
  return d;
}

// Brute-force universe of stub-pairing diagrams, independent of the
// catalogue in enumerate_diagrams. A chi^(2) vertex carries one signal and
// one idler photon stub; the vertex species fixes their directions:
//   species 0: both emitted        (vacuum line in)
//   species 1: S absorbed, I emitted (vacuum line out)
//   species 2: I absorbed, S emitted (vacuum line out)
//   species 3: both absorbed       (vacuum line out)
struct Stub {
  bool out;
};

struct VertexSpec {
  Stub s, i;
  bool vac_in;
};

const VertexSpec kSpecies[4] = {
    {{true}, {true}, true},
    {{false}, {true}, false},
    {{true}, {false}, false},
    {{false}, {false}, false},
};

Diagram build_bruteforce(const std::vector<int>& species,
                         const std::vector<std::pair<Mode, int>>& contractions) {
  // contractions: (mode, direction) with direction = emitting vertex index
  // for two-vertex diagrams; remaining stubs attach to numbered sources.
  Diagram d;
  d.n_vertices = static_cast<int>(species.size());
  int n_sources = 0;
  for (std::size_t v = 0; v < species.size(); ++v) {
    const VertexSpec& spec = kSpecies[species[v]];
    d.vacuum_legs.push_back({static_cast<int>(v), spec.vac_in});
    for (Mode m : {Mode::Signal, Mode::Idler}) {
      const Stub stub = m == Mode::Signal ? spec.s : spec.i;
      bool contracted = false;
      for (const auto& [cm, emitter] : contractions) {
        if (cm == m && ((stub.out && emitter == static_cast<int>(v)) ||
                        (!stub.out && emitter != static_cast<int>(v)))) {
          contracted = true;
        }
      }
      if (contracted) continue;
      const Endpoint vertex_ep{true, static_cast<int>(v)};
      const Endpoint source_ep{false, n_sources++};
      if (stub.out) {
        d.edges.push_back({vertex_ep, source_ep, m});
      } else {
        d.edges.push_back({source_ep, vertex_ep, m});
      }
    }
  }
  for (const auto& [m, emitter] : contractions) {
    d.edges.push_back({{true, emitter}, {true, 1 - emitter}, m});
  }
  d.source_labels.assign(n_sources, "");
  for (int i = 0; i < n_sources; ++i) {
    d.source_labels[i] = "x" + std::to_string(i + 1);
  }
  return d;
}

}  // namespace

TEST_CASE("pinned enumeration counts") {
  CHECK(enumerate_diagrams(0, 1).size() == 1);
  CHECK(enumerate_diagrams(1, 2).size() == 6);
  CHECK(enumerate_diagrams(2, 2).size() == 2);
  CHECK(enumerate_diagrams(2, 3).size() == 6);
  CHECK(enumerate_diagrams(2, 4).size() == 4);
  std::size_t total = 0;
  for (int P = 2; P <= 4; ++P) total += enumerate_diagrams(2, P).size();
  CHECK(total == 12);
}

TEST_CASE("unsupported orders error out explicitly") {
  CHECK_THROWS_AS(enumerate_diagrams(3, 2), UnsupportedOrderError);
  CHECK_THROWS_AS(enumerate_diagrams(1, 3), UnsupportedOrderError);
  CHECK_THROWS_AS(enumerate_diagrams(0, 2), UnsupportedOrderError);
  CHECK_THROWS_AS(enumerate_diagrams(2, 5), UnsupportedOrderError);
}

TEST_CASE("canonical forms are unique and sorted") {
  const std::vector<std::pair<int, int>> orders{
      {0, 1}, {1, 2}, {2, 2}, {2, 3}, {2, 4}};
  for (auto [V, P] : orders) {
    const auto diagrams = enumerate_diagrams(V, P);
    std::vector<std::string> forms;
    for (const Diagram& d : diagrams) forms.push_back(d.canonical_form());
    CHECK(std::is_sorted(forms.begin(), forms.end()));
    CHECK(std::set<std::string>(forms.begin(), forms.end()).size() ==
          forms.size());
  }
}

TEST_CASE("canonical form is invariant under relabeling") {
  // hand-permuted copy of the SPDC-feeds-DFG chain
  Diagram d;
  d.n_vertices = 2;
  d.edges = {{{true, 0}, {false, 0}, Mode::Signal},
             {{true, 0}, {true, 1}, Mode::Idler},
             {{true, 1}, {false, 1}, Mode::Signal}};
  d.vacuum_legs = {{0, true}, {1, false}};
  d.source_labels = {"x1", "x2"};

  Diagram permuted;
  permuted.n_vertices = 2;
  permuted.edges = {{{true, 1}, {false, 1}, Mode::Signal},
                    {{true, 1}, {true, 0}, Mode::Idler},
                    {{true, 0}, {false, 0}, Mode::Signal}};
  permuted.vacuum_legs = {{1, true}, {0, false}};
  permuted.source_labels = {"x1", "x2"};

  CHECK(d.canonical_form() == permuted.canonical_form());
}

TEST_CASE("diagram set is closed under the signal-idler swap involution") {
  const std::vector<std::pair<int, int>> orders{{1, 2}, {2, 2}, {2, 3}, {2, 4}};
  for (auto [V, P] : orders) {
    const auto diagrams = enumerate_diagrams(V, P);
    std::set<std::string> graph_forms;
    for (const Diagram& d : diagrams) graph_forms.insert(graph_form(d));
    for (const Diagram& d : diagrams) {
      CHECK(graph_forms.count(graph_form(flipped(d))) == 1);
    }
  }
}

TEST_CASE("every vertex carries exactly one signal and one idler line") {
  const std::vector<std::pair<int, int>> orders{{1, 2}, {2, 2}, {2, 3}, {2, 4}};
  for (auto [V, P] : orders) {
    for (const Diagram& d : enumerate_diagrams(V, P)) {
      for (int v = 0; v < d.n_vertices; ++v) {
        int signal = 0, idler = 0, legs = 0;
        for (const DiagramEdge& e : d.edges) {
          const int hits = (e.from == Endpoint{true, v}) +
                           (e.to == Endpoint{true, v});
          if (e.mode == Mode::Signal) signal += hits;
          else idler += hits;
        }
        for (const VacuumLeg& l : d.vacuum_legs) legs += l.vertex == v;
        CHECK(signal == 1);
        CHECK(idler == 1);
        CHECK(legs == 1);
      }
    }
  }
}

TEST_CASE("brute-force first-order oracle reproduces the catalogue") {
  // universe: one vertex, all species, no contraction possible
  std::set<std::string> universe;
  for (int t = 0; t < 4; ++t) universe.insert(graph_form(build_bruteforce({t}, {})));
  CHECK(universe.size() == 4);  // SPDC, the two DFG orientations, SFG

  std::set<std::string> catalogue;
  for (const Diagram& d : enumerate_diagrams(1, 2)) {
    catalogue.insert(graph_form(d));
  }
  CHECK(catalogue == universe);

  // quotient by the global mode flip: the 3 diagrams of the first order
  std::set<std::string> orbits;
  for (const std::string& f : universe) {
    for (int t = 0; t < 4; ++t) {
      const Diagram d = build_bruteforce({t}, {});
      if (graph_form(d) == f) {
        orbits.insert(std::min(f, graph_form(flipped(d))));
      }
    }
  }
  CHECK(orbits.size() == 3);
}

TEST_CASE("brute-force second-order universe contains the catalogue") {
  // all species pairs, all consistent contraction sets
  std::set<std::string> universe;
  for (int t0 = 0; t0 < 4; ++t0) {
    for (int t1 = 0; t1 < 4; ++t1) {
      const std::vector<std::vector<std::pair<Mode, int>>> options = [&] {
        std::vector<std::vector<std::pair<Mode, int>>> all{{}};
        for (Mode m : {Mode::Signal, Mode::Idler}) {
          std::vector<std::pair<Mode, int>> feasible;
          const Stub s0 = m == Mode::Signal ? kSpecies[t0].s : kSpecies[t0].i;
          const Stub s1 = m == Mode::Signal ? kSpecies[t1].s : kSpecies[t1].i;
          if (s0.out && !s1.out) feasible.push_back({m, 0});
          if (s1.out && !s0.out) feasible.push_back({m, 1});
          std::vector<std::vector<std::pair<Mode, int>>> next;
          for (const auto& base : all) {
            next.push_back(base);
            for (const auto& c : feasible) {
              auto with = base;
              with.push_back(c);
              next.push_back(with);
            }
          }
          all = std::move(next);
        }
        return all;
      }();
      for (const auto& contractions : options) {
        universe.insert(graph_form(build_bruteforce({t0, t1}, contractions)));
      }
    }
  }

  std::size_t found = 0;
  for (int P = 2; P <= 4; ++P) {
    for (const Diagram& d : enumerate_diagrams(2, P)) {
      CHECK(universe.count(graph_form(d)) == 1);
      ++found;
    }
  }
  CHECK(found == 12);
}

TEST_CASE("symmetry factors") {
  for (const Diagram& d : enumerate_diagrams(1, 2)) CHECK(symmetry_factor(d) == 2);
  for (const Diagram& d : enumerate_diagrams(2, 2)) CHECK(symmetry_factor(d) == 1);
  for (const Diagram& d : enumerate_diagrams(2, 4)) {
    CHECK(symmetry_factor(d) == 24);
  }
}

TEST_CASE("SPDC amplitude reproduces the biphoton propagator") {
  const EvaluationContext ctx = make_context();
  const auto diagrams = enumerate_diagrams(1, 2);
  const auto it =
      std::find_if(diagrams.begin(), diagrams.end(), [](const Diagram& d) {
        return d.process == Process::SPDC && !d.mode_swapped;
      });
  REQUIRE(it != diagrams.end());

  const Complex amp = evaluate_amplitude(*it, ctx);
  const Complex X = biphoton_1d_analytic(
      ctx.medium, ctx.kin, ctx.coordinates.at("x1").x, ctx.coordinates.at("x2").x);
  // rules: i^2 (sources) x (i/6) vertex x (1/i)^2 edges, with the vertex
  // quadrature equal to -X for this geometry
  const Complex expected = -Complex(0.0, 1.0 / 6.0) * X;
  CHECK(std::abs(amp - expected) < 1e-6 * std::abs(expected));
}

TEST_CASE("source-exchange symmetry of first-order amplitudes") {
  EvaluationContext ctx = make_context();
  for (const Diagram& d : enumerate_diagrams(1, 2)) {
    if (d.mode_swapped) continue;
    EvaluationContext exchanged = ctx;
    std::swap(exchanged.coordinates["x1"], exchanged.coordinates["x2"]);
    const Complex a = evaluate_amplitude(d, ctx);
    const Complex b = evaluate_amplitude(flipped(d), exchanged);
    CHECK(std::abs(a - b) <= 1e-9 * std::abs(a));
  }
}

TEST_CASE("vacuum loop is enumerated but not evaluable") {
  const EvaluationContext ctx = make_context();
  for (const Diagram& d : enumerate_diagrams(2, 2)) {
    CHECK(d.process == Process::VacuumLoop);
    CHECK(!d.evaluable());
    CHECK_THROWS_AS(evaluate_amplitude(d, ctx), RenormalisationPolicyError);
  }
}

TEST_CASE("amplitude validation errors") {
  EvaluationContext ctx = make_context();
  const Diagram spdc = enumerate_diagrams(1, 2).front();

  EvaluationContext missing = ctx;
  missing.coordinates.clear();
  CHECK_THROWS_AS(evaluate_amplitude(spdc, missing), ValidationError);

  EvaluationContext detuned = ctx;
  detuned.kin.omega_i = 0.7 * kOmegaPump;
  CHECK_THROWS_AS(evaluate_amplitude(spdc, detuned), ForbiddenProcessError);

  EvaluationContext empty = ctx;
  empty.medium = Chi2Medium::homogeneous(0.0, 0.0, kLength);
  CHECK(evaluate_amplitude(spdc, empty) == Complex(0.0));
}

TEST_CASE("second-order amplitude factorises for the cascaded topology") {
  EvaluationContext ctx = make_context();
  ctx.quadrature.rel_tol = 1e-8;
  const auto diagrams = enumerate_diagrams(2, 4);
  const auto it =
      std::find_if(diagrams.begin(), diagrams.end(), [](const Diagram& d) {
        return d.process == Process::CascadedSPDC && !d.mode_swapped;
      });
  REQUIRE(it != diagrams.end());

  const Complex amp = evaluate_amplitude(*it, ctx);
  const Complex Xa = biphoton_1d_analytic(
      ctx.medium, ctx.kin, ctx.coordinates.at("x1").x, ctx.coordinates.at("x2").x);
  const Complex Xb = biphoton_1d_analytic(
      ctx.medium, ctx.kin, ctx.coordinates.at("x3").x, ctx.coordinates.at("x4").x);
  // i^4 x (i/6)^2 x (1/i)^4 x (-Xa)(-Xb) = -(1/36) Xa Xb
  const Complex expected = -Xa * Xb / 36.0;
  CHECK(std::abs(amp - expected) < 1e-6 * std::abs(expected));
}

TEST_CASE("cross sections: first-order equality and cascaded factor 24") {
  const EvaluationContext ctx = make_context();
  const std::vector<SourceCoordinate> pair{ctx.coordinates.at("x1"),
                                           ctx.coordinates.at("x2")};
  const Complex spdc = cross_section(Process::SPDC, ctx, pair);
  const Complex dfg = cross_section(Process::DFG, ctx, pair);
  const Complex sfg = cross_section(Process::SFG, ctx, pair);
  const Complex shg = cross_section(Process::SHG, ctx, pair);
  CHECK(spdc == dfg);
  CHECK(spdc == sfg);
  CHECK(spdc == shg);

  const std::vector<SourceCoordinate> quad{pair[0], pair[1], pair[0], pair[1]};
  const Complex casc = cross_section(Process::CascadedSPDC, ctx, quad);
  CHECK(std::abs(casc - 24.0 * spdc * spdc) < 1e-12 * std::abs(casc));

  CHECK_THROWS_AS(cross_section(Process::SPDC, ctx, quad), ValidationError);
  CHECK_THROWS_AS(cross_section(Process::CascadedSPDC, ctx, pair),
                  ValidationError);
  CHECK_THROWS_AS(cross_section(Process::VacuumLoop, ctx, pair),
                  RenormalisationPolicyError);
}

TEST_CASE("cross sections via the numeric propagator route") {
  EvaluationContext ctx = make_context();
  // vacuum dressed propagators carry k = +omega/c, so phase matching needs
  // forward signal and idler with a counter-propagating pump
  ctx.kin.k_s = ctx.kin.k_i = 0.5 * kOmegaPump / c0;
  ctx.kin.pump.k_p = -kOmegaPump / c0;
  const std::vector<SourceCoordinate> pair{ctx.coordinates.at("x1"),
                                           ctx.coordinates.at("x2")};
  const Complex analytic = cross_section(Process::SPDC, ctx, pair);
  ctx.propagator_mode = PropagatorMode::Numeric1D;
  const Complex numeric = cross_section(Process::SPDC, ctx, pair);
  CHECK(std::abs(std::abs(numeric) - std::abs(analytic)) <
        1e-5 * std::abs(analytic));
}
