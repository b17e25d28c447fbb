#include <algorithm>
#include <cmath>
#include <vector>

#include "fbar/error.hpp"
#include "fbar/stack_sim.hpp"

namespace fbar {

namespace {

constexpr std::size_t kMinElementsPerLayer = 10;

struct Mesh {
  std::vector<std::size_t> elements;  // per layer
  std::size_t piezo_top = 0;          // node index of the upper piezo face
  std::size_t piezo_bottom = 0;
  std::size_t nodes = 0;
};

Mesh build_mesh(const Stack& s, std::size_t nodes) {
  const std::size_t n_layers = s.layers.size();
  if (nodes < kMinElementsPerLayer * n_layers + 1)
    throw ValidationError("fd oracle needs at least " +
                          std::to_string(kMinElementsPerLayer * n_layers + 1) + " nodes (10 per layer)");
  double total = 0.0;
  for (const Layer& l : s.layers) total += l.thickness;
  Mesh mesh;
  const double budget = static_cast<double>(nodes - 1);
  std::size_t node = 0;
  for (std::size_t i = 0; i < n_layers; ++i) {
    const auto share = static_cast<std::size_t>(std::lround(budget * s.layers[i].thickness / total));
    const std::size_t n = std::max(kMinElementsPerLayer, share);
    mesh.elements.push_back(n);
    if (i == s.piezo_index) {
      mesh.piezo_top = node;
      mesh.piezo_bottom = node + n;
    }
    node += n;
  }
  mesh.nodes = node + 1;
  return mesh;
}

// Solves a complex symmetric tridiagonal system in place (Thomas algorithm).
// diag: n, off: n-1 (coupling between i and i+1). rhs overwritten with solution.
void solve_tridiagonal(std::vector<cplx> diag, const std::vector<cplx>& off, std::vector<cplx>& rhs) {
  const std::size_t n = diag.size();
  std::vector<cplx> upper(off);
  for (std::size_t i = 1; i < n; ++i) {
    const cplx m = off[i - 1] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace

ComplexSpectrum fd_oracle_admittance(const Stack& s, std::span<const double> freqs, std::size_t nodes) {
  require_valid(s);
  const Mesh mesh = build_mesh(s, nodes);
  const Layer& piezo = s.piezo();
  const double e = piezo.material.e33;
  const double eps = piezo.material.eps33_s;
  const double d = piezo.thickness;
  const cplx j{0.0, 1.0};

  ComplexSpectrum out{{freqs.begin(), freqs.end()}, {}, Quantity::admittance};
  out.values.reserve(freqs.size());

  std::vector<cplx> diag(mesh.nodes), off(mesh.nodes - 1), rhs(mesh.nodes);
  for (double f : freqs) {
    if (!(f > 0.0)) throw ValidationError("frequencies must be positive");
    const double w = 2.0 * kPi * f;
    if (e == 0.0) {
      out.values.push_back(j * w * eps * s.area / d);
      continue;
    }
    std::fill(diag.begin(), diag.end(), cplx{});
    // Element matrices: c/h [1 -1; -1 1] - w^2 rho h / 6 [2 1; 1 2].
    std::size_t node = 0;
    for (std::size_t li = 0; li < s.layers.size(); ++li) {
      const Layer& l = s.layers[li];
      const std::size_t n = mesh.elements[li];
      const double h = l.thickness / static_cast<double>(n);
      const cplx k = lossy_stiffness(l.material) / h;
      const double m = w * w * l.material.density * h / 6.0;
      for (std::size_t el = 0; el < n; ++el, ++node) {
        diag[node] += k - 2.0 * m;
        diag[node + 1] += k - 2.0 * m;
        off[node] = -k - m;
      }
    }
    // Piezo coupling: (K - w^2 M - (e^2 / (eps d)) b b^T) u = (e V / d) b, b = e_bottom - e_top.
    // The rank-one term is handled with Sherman-Morrison.
    std::fill(rhs.begin(), rhs.end(), cplx{});
    rhs[mesh.piezo_bottom] = 1.0;
    rhs[mesh.piezo_top] = -1.0;
    solve_tridiagonal(diag, off, rhs);
    const cplx btx = rhs[mesh.piezo_bottom] - rhs[mesh.piezo_top];
    const double alpha = e * e / (eps * d);
    const double beta = e / d;  // unit drive voltage
    const cplx delta_u = beta * btx / (1.0 - alpha * btx);
    const cplx displacement = (eps + e * delta_u) / d;
    out.values.push_back(j * w * s.area * displacement);
  }
  return out;
}

ComplexSpectrum fd_oracle_admittance(const Stack& s, const FrequencyGrid& g, std::size_t nodes) {
  const auto f = g.frequencies();
  return fd_oracle_admittance(s, f, nodes);
}

}  // namespace fbar
