#pragma once

#include <cstddef>
#include <vector>

#include "mlsa/persistence.hpp"

namespace mlsa {

// Ground metric between dots is the l-infinity norm on the plane, so a dot sits
// at distance persistence/2 from the diagonal. Infinite-death dots can only be
// matched to each other; unequal counts give an infinite distance.
double linf_distance(const Dot& a, const Dot& b);
double diagonal_distance(const Dot& d);

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);
double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b, double p);

// Persistences after capping, sorted descending, truncated or zero-padded to k.
std::vector<double> top_k_persistences(const PersistenceDiagram& d, std::size_t k, double cap);

}  // namespace mlsa
