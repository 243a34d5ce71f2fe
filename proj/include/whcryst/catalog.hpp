#pragma once

// Built-in group catalog and input resolution.
//
// A small set of plane and space groups ships inside the binary so the tool
// runs without external files. Entries are addressed as "catalog:<name>";
// any other source string is treated as a path to a JSON group file. The
// embedded texts are generated from data/groups/*.json at build time, so the
// files stay the single auditable source.

#include <string>
#include <vector>

#include "whcryst/cryst_group.hpp"

namespace whcryst {

struct CatalogEntry {
    std::string name;
    int dim = 0;
    std::string summary;
};

/// Shipped entries, dimension 2 first, alphabetical within a dimension.
const std::vector<CatalogEntry>& catalog_entries();

/// Raw JSON text of one entry. Throws NotInCatalogError for unknown names.
const std::string& catalog_json(const std::string& name);

/// Parse and validate one entry.
CrystGroup catalog_group(const std::string& name);

/// Resolve "catalog:<name>" to an embedded entry, anything else to a file on
/// disk. Throws ParseError when the file cannot be read.
CrystGroup load_group_source(const std::string& source);

} // namespace whcryst
