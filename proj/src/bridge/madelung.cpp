#include "madelab/bridge/madelung.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

namespace madelab {

WaveFunction madelung_forward(const RealField& n, const ActionField& S_m,
                              const PhysicalParams& params, double time) {
  params.validate();
  require_same_grid(n.grid(), S_m.grid(), "madelung_forward");
  const RealField S = S_m.values();
  std::vector<cplx> v(n.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (n[i] < 0.0)
      throw InvalidArgument("madelung_forward: negative density at node " +
                            std::to_string(i));
    v[i] = std::sqrt(n[i]) * std::polar(1.0, S[i] / params.hbar);
  }
  return WaveFunction(ComplexField(n.grid(), std::move(v)), params, time);
}

WaveFunction madelung_forward(const QStochasticState& st, const PhysicalParams& params) {
  return madelung_forward(st.n, st.S, params, st.time);
}

namespace {

// Non-periodic 4-neighbourhood.
std::vector<std::size_t> neighbours(const GridSpec& g, std::size_t i) {
  std::vector<std::size_t> out;
  const auto [i0, i1] = g.unflatten(i);
  if (i0 > 0) out.push_back(g.flatten(i0 - 1, i1));
  if (i0 + 1 < g.points(0)) out.push_back(g.flatten(i0 + 1, i1));
  if (g.dims() == 2) {
    if (i1 > 0) out.push_back(g.flatten(i0, i1 - 1));
    if (i1 + 1 < g.points(1)) out.push_back(g.flatten(i0, i1 + 1));
  }
  return out;
}

bool on_boundary(const GridSpec& g, std::size_t i) {
  const auto [i0, i1] = g.unflatten(i);
  if (i0 == 0 || i0 + 1 == g.points(0)) return true;
  return g.dims() == 2 && (i1 == 0 || i1 + 1 == g.points(1));
}

void reject_interior_nodes(const GridSpec& g, const std::vector<char>& below) {
  std::vector<char> seen(below.size(), 0);
  std::vector<Point> nodes;
  for (std::size_t s = 0; s < below.size(); ++s) {
    if (!below[s] || seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    bool boundary = false;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      boundary = boundary || on_boundary(g, comp[k]);
      for (std::size_t j : neighbours(g, comp[k]))
        if (below[j] && !seen[j]) {
          seen[j] = 1;
          comp.push_back(j);
        }
    }
    if (!boundary)
      for (std::size_t i : comp) nodes.push_back(g.node(i));
  }
  if (nodes.empty()) return;
  std::string msg = "wave function has " + std::to_string(nodes.size()) +
                    " node point(s); phase undefined near q = (";
  msg += std::to_string(nodes.front()[0]);
  if (g.dims() == 2) msg += ", " + std::to_string(nodes.front()[1]);
  msg += ")";
  throw NodeError(msg, std::move(nodes));
}

void reject_vortices(const GridSpec& g, const ComplexField& psi,
                     const std::vector<char>& below) {
  if (g.dims() != 2) return;
  std::vector<Point> cores;
  auto jump = [&](std::size_t a, std::size_t b) { return std::arg(psi[b] * std::conj(psi[a])); };
  for (int i = 0; i + 1 < g.points(0); ++i)
    for (int j = 0; j + 1 < g.points(1); ++j) {
      const std::size_t a = g.flatten(i, j), b = g.flatten(i + 1, j),
                        c = g.flatten(i + 1, j + 1), d = g.flatten(i, j + 1);
      if (below[a] || below[b] || below[c] || below[d]) continue;
      const double w = jump(a, b) + jump(b, c) + jump(c, d) + jump(d, a);
      if (std::abs(w) > std::numbers::pi) {
        const Point q = g.node(a);
        cores.push_back({q[0] + 0.5 * g.spacing(0), q[1] + 0.5 * g.spacing(1)});
      }
    }
  if (!cores.empty())
    throw VortexError("phase winds around " + std::to_string(cores.size()) +
                          " plaquette(s); S_m would be multivalued",
                      std::move(cores));
}

}  // namespace

MadelungPair madelung_inverse(const WaveFunction& psi, double node_eps,
                              std::optional<std::size_t> reference) {
  const GridSpec& g = psi.grid();
  const RealField n = abs_squared(psi.field);
  const double peak = max_abs(n);
  if (!(peak > 0.0)) throw InvalidArgument("madelung_inverse: zero wave function");
  std::vector<char> below(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) below[i] = n[i] <= node_eps * peak;
  reject_interior_nodes(g, below);
  reject_vortices(g, psi.field, below);

  std::size_t ref = reference.value_or(
      std::max_element(n.data().begin(), n.data().end()) - n.data().begin());
  if (ref >= n.size()) throw InvalidArgument("madelung_inverse: reference node out of range");

  // Spanning tree: breadth first through the resolved region, then out
  // into the tails.
  std::vector<double> phase(n.size(), 0.0);
  std::vector<char> done(n.size(), 0);
  std::deque<std::size_t> resolved{ref}, tails;
  done[ref] = 1;
  auto visit = [&](std::deque<std::size_t>& q, bool tail_pass) {
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop_front();
      for (std::size_t j : neighbours(g, i)) {
        if (done[j]) continue;
        if (below[j] && !tail_pass) {
          tails.push_back(i);
          continue;
        }
        done[j] = 1;
        phase[j] = phase[i] + std::arg(psi.field[j] * std::conj(psi.field[i]));
        q.push_back(j);
      }
    }
  };
  visit(resolved, false);
  visit(tails, true);

  std::vector<double> S(n.size());
  for (std::size_t i = 0; i < S.size(); ++i) S[i] = psi.params.hbar * phase[i];
  return {n, RealField(g, std::move(S)), ref};
}

}  // namespace madelab
