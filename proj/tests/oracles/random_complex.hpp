#pragma once

#include <algorithm>
#include <cstdint>

#include "mlsa/persistence.hpp"
#include "mlsa/random.hpp"

namespace oracle {

// Random monotone complex with <= max_vertices vertices. Values are small
// multiples of 0.5 so equal-value ties are common.
inline mlsa::FilteredComplex random_complex(mlsa::Rng& rng, std::uint32_t max_vertices) {
  mlsa::FilteredComplex c;
  const auto n = static_cast<std::uint32_t>(1 + rng.below(max_vertices));
  for (std::uint32_t v = 0; v < n; ++v) c.add_vertex(0.5 * static_cast<double>(rng.below(5)));
  const double edge_p = rng.uniform(0.2, 0.8);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (rng.uniform() >= edge_p) continue;
      const double base = std::max(c.vertex_value(a), c.vertex_value(b));
      c.add_edge(a, b, base + 0.5 * static_cast<double>(rng.below(3)));
    }
  }
  const double tri_p = rng.uniform(0.1, 0.7);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      for (std::uint32_t d = b + 1; d < n; ++d) {
        std::uint32_t e[3];
        try {
          e[0] = c.find_edge(a, b);
          e[1] = c.find_edge(a, d);
          e[2] = c.find_edge(b, d);
        } catch (const std::invalid_argument&) {
          continue;
        }
        if (rng.uniform() >= tri_p) continue;
        const double base =
            std::max({c.edge_value(e[0]), c.edge_value(e[1]), c.edge_value(e[2])});
        c.add_triangle(a, b, d, base + 0.5 * static_cast<double>(rng.below(2)));
      }
    }
  }
  return c;
}

}  // namespace oracle
