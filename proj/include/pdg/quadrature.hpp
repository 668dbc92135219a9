#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pdg/types.hpp"

namespace pdg {

/// One-dimensional Gauss-Lobatto rule on [-1, 1] with its Lagrange basis.
template <typename Scalar = double>
struct GLQuadrature {
  int degree = 0;
  VectorX<Scalar> nodes;    // ascending, includes -1 and 1
  VectorX<Scalar> weights;  // positive, sum to 2
  // diff(i, j) = derivative of the i-th Lagrange polynomial at node j.
  MatrixX<Scalar> diff;
  VectorX<Scalar> barycentric;

  int size() const { return degree + 1; }

  /// Values of every Lagrange basis polynomial at x.
  VectorX<Scalar> basis_at(Scalar x) const {
    const int n = size();
    VectorX<Scalar> phi(n);
    for (int i = 0; i < n; ++i) {
      if (x == nodes[i]) {
        phi.setZero();
        phi[i] = Scalar(1);
        return phi;
      }
    }
    Scalar denom = 0;
    for (int i = 0; i < n; ++i) {
      phi[i] = barycentric[i] / (x - nodes[i]);
      denom += phi[i];
    }
    return phi / denom;
  }
};

namespace detail {

// Legendre polynomials P_n(x) and P_{n-1}(x) by the three-term recurrence.
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_pair(int n, Scalar x) {
  Scalar p_prev = 1;
  Scalar p = x;
  for (int k = 2; k <= n; ++k) {
    Scalar next = ((2 * k - 1) * x * p - (k - 1) * p_prev) / k;
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

}  // namespace detail

/// Gauss-Lobatto points, weights and differentiation matrix for 1 <= d <= 8.
template <typename Scalar = double>
GLQuadrature<Scalar> gauss_lobatto(int d) {
  if (d < 1 || d > 8) {
    throw std::invalid_argument("gauss_lobatto: unsupported degree " + std::to_string(d));
  }
  const int n = d + 1;
  GLQuadrature<Scalar> q;
  q.degree = d;
  q.nodes.resize(n);
  q.weights.resize(n);

  // Newton iteration on (1 - x^2) P'_d, started from Chebyshev-Lobatto points.
  for (int i = 0; i < n; ++i) {
    Scalar x = -std::cos(std::numbers::pi_v<Scalar> * Scalar(i) / Scalar(d));
    for (int it = 0; it < 100; ++it) {
      auto [p, p_prev] = detail::legendre_pair(d, x);
      Scalar dx = (x * p - p_prev) / (Scalar(n) * p);
      x -= dx;
      if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon()) break;
    }
    q.nodes[i] = x;
  }
  q.nodes[0] = -1;
  q.nodes[d] = 1;
  for (int i = 0; i < n; ++i) {
    auto [p, p_prev] = detail::legendre_pair(d, q.nodes[i]);
    q.weights[i] = Scalar(2) / (Scalar(d) * Scalar(n) * p * p);
  }

  q.barycentric.resize(n);
  for (int i = 0; i < n; ++i) {
    Scalar prod = 1;
    for (int k = 0; k < n; ++k) {
      if (k != i) prod *= q.nodes[i] - q.nodes[k];
    }
    q.barycentric[i] = Scalar(1) / prod;
  }

  // Standard collocation derivative D(j, i) = l_i'(x_j), stored transposed.
  q.diff.resize(n, n);
  for (int j = 0; j < n; ++j) {
    Scalar row_sum = 0;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      Scalar v = (q.barycentric[i] / q.barycentric[j]) / (q.nodes[j] - q.nodes[i]);
      q.diff(i, j) = v;
      row_sum += v;
    }
    q.diff(j, j) = -row_sum;
  }
  return q;
}

/// Smallest distance between two consecutive reference nodes.
template <typename Scalar>
Scalar min_node_spacing(const GLQuadrature<Scalar>& q) {
  Scalar best = std::numeric_limits<Scalar>::max();
  for (int i = 0; i + 1 < q.size(); ++i) best = std::min(best, q.nodes[i + 1] - q.nodes[i]);
  return best;
}

}  // namespace pdg
