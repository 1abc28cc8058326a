#pragma once

#include "structura/canonical.hpp"

#include <vector>

namespace structura {

inline constexpr int kCatalogCap = 8;

/// Every graph on n vertices up to isomorphism, sorted by canonical code.
/// Built lazily by extending each (n-1)-vertex class with a new vertex of
/// every possible neighbourhood. Throws SizeCapExceeded above kCatalogCap.
const std::vector<UnlabeledGraph>& allGraphs(int n);

} // namespace structura
