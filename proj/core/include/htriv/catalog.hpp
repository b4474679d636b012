#pragma once

// Small built-in fans: projective spaces, products, Hirzebruch surfaces,
// blow-ups and a few stacky variants with non-primitive ray generators.

#include "htriv/fan.hpp"

#include <string>
#include <vector>

namespace htriv {

struct CatalogEntry {
    std::string name;
    std::string description;
    StackyFan fan;
};

const std::vector<CatalogEntry>& catalog();

/// Throws PreconditionError for an unknown name.
const StackyFan& catalog_fan(const std::string& name);

/// Complete 2D fan whose cones join consecutive rays cyclically; rays must be
/// listed counter-clockwise.
StackyFan cyclic_fan_2d(const std::vector<IntVector>& rays);

}  // namespace htriv
