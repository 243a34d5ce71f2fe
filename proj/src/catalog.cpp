#include "whcryst/catalog.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "whcryst/errors.hpp"

namespace whcryst {

namespace embedded {
const std::string& group_p1();
const std::string& group_p2();
const std::string& group_pg();
const std::string& group_Pmm();
const std::string& group_p4();
const std::string& group_p6();
const std::string& group_p6mm();
const std::string& group_P1();
const std::string& group_P3c();
const std::string& group_P42();
const std::string& group_P6mm();
const std::string& group_Pmmm();
const std::string& group_PmmxZ();
} // namespace embedded

namespace {

struct RawEntry {
    const char* name;
    const std::string& (*text)();
};

// Dimension 2 first, alphabetical within a dimension (case-insensitive).
const RawEntry kRaw[] = {
    {"p1", embedded::group_p1},       {"p2", embedded::group_p2},
    {"p4", embedded::group_p4},       {"p6", embedded::group_p6},
    {"p6mm", embedded::group_p6mm},   {"pg", embedded::group_pg},
    {"Pmm", embedded::group_Pmm},     {"P1", embedded::group_P1},
    {"P3c", embedded::group_P3c},     {"P42", embedded::group_P42},
    {"P6mm", embedded::group_P6mm},   {"Pmmm", embedded::group_Pmmm},
    {"PmmxZ", embedded::group_PmmxZ},
};

} // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;
        for (const RawEntry& r : kRaw) {
            nlohmann::json doc = nlohmann::json::parse(r.text());
            CatalogEntry e;
            e.name = r.name;
            e.dim = doc.at("dim").get<int>();
            e.summary = doc.value("summary", "");
            out.push_back(std::move(e));
        }
        return out;
    }();
    return entries;
}

const std::string& catalog_json(const std::string& name) {
    for (const RawEntry& r : kRaw)
        if (name == r.name) return r.text();
    throw NotInCatalogError("no catalog entry named '" + name + "'");
}

CrystGroup catalog_group(const std::string& name) {
    return parse_group(catalog_json(name), "catalog:" + name);
}

CrystGroup load_group_source(const std::string& source) {
    const std::string prefix = "catalog:";
    if (source.rfind(prefix, 0) == 0) return catalog_group(source.substr(prefix.size()));
    std::ifstream in(source);
    if (!in) throw ParseError(source + ": cannot read file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_group(buf.str(), source);
}

} // namespace whcryst
