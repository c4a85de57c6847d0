#pragma once

#include "crquad/model.hpp"
#include "crquad/nondegeneracy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crquad {

// Named models with hand-checked classification facts. The expectations are
// used by the test suite to pin classifier behavior.
struct CatalogEntry {
    std::string name;
    std::string summary;
    QuadricModel model;
    bool expect_a;
    bool expect_b;
    bool expect_tumanov;
    Dominance expect_dominance;
    std::optional<std::vector<Rational>> expect_tumanov_witness;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);  // throws ParseError if unknown

}  // namespace crquad
