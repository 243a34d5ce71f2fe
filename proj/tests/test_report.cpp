#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "whcryst/catalog.hpp"
#include "whcryst/errors.hpp"
#include "whcryst/geometry.hpp"
#include "whcryst/report.hpp"

using namespace whcryst;

namespace {

std::multimap<std::string, int> entry_tally(const WhReport& r) {
    std::multimap<std::string, int> out;
    for (const auto& e : r.entries) out.insert({descriptor_str(e.descriptor), 1});
    return out;
}

WhReport report_for(const CatalogEntry& e, int jobs = 1) {
    CrystGroup g = catalog_group(e.name);
    return e.dim == 3 ? whitehead_group(g, jobs) : corollary2(g, jobs);
}

} // namespace

TEST_CASE("catalog entries parse and validate") {
    const auto& entries = catalog_entries();
    CHECK(entries.size() == 13);
    // dimension 2 first, alphabetical (case-insensitive) within a dimension
    auto fold = [](const std::string& s) {
        std::string out = s;
        for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    };
    CHECK(std::is_sorted(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
        return a.dim < b.dim || (a.dim == b.dim && fold(a.name) < fold(b.name));
    }));
    for (const char* name : {"p1", "p2", "Pmm", "p4", "p6", "PmmxZ", "P1", "P6mm"})
        CHECK(std::any_of(entries.begin(), entries.end(),
                          [&](const CatalogEntry& e) { return e.name == name; }));
    for (const auto& e : entries) {
        CAPTURE(e.name);
        CrystGroup g = catalog_group(e.name);
        CHECK(g.name == e.name);
        CHECK(g.dim == e.dim);
        CHECK(!e.summary.empty());
    }
    // P1 ships in both dimensions
    CHECK(catalog_group("p1").dim == 2);
    CHECK(catalog_group("P1").dim == 3);
    // the dim-3 D6 entry uses the hexagonal Gram form
    CrystGroup hex = catalog_group("P6mm");
    PointStabilizer origin = point_stabilizer(hex, VecQ{Rat(0), Rat(0), Rat(0)});
    CHECK(identify_type(origin.table) == FiniteType::D6);
    CHECK(hex.gram.g.at(0, 1) == Rat(-1, 2));
    CHECK_THROWS_AS(catalog_json("nosuch"), NotInCatalogError);
}

TEST_CASE("group sources resolve through catalog URIs and files") {
    CrystGroup a = load_group_source("catalog:Pmm");
    CHECK(a.name == "Pmm");
    CHECK(a.cosets.size() == 4);

    const char* path = "tmp_group_source.json";
    {
        std::ofstream out(path);
        out << fixtures::p2_json();
    }
    CrystGroup b = load_group_source(path);
    CHECK(b.name == "p2");
    std::remove(path);
    CHECK_THROWS_AS(load_group_source("no/such/file.json"), ParseError);
    CHECK_THROWS_AS(load_group_source("catalog:zzz"), NotInCatalogError);
}

TEST_CASE("torsion-free groups have vanishing Whitehead group") {
    WhReport r = whitehead_group(fixtures::from_json(fixtures::P1_json()));
    CHECK(r.entries.empty());
    CHECK(r.total.is_zero());
    CHECK(!r.infinitely_generated);
    CHECK(r.finiteness_note.find("zero bucket") != std::string::npos);
    CHECK_THROWS_AS(whitehead_group(fixtures::from_json(fixtures::p2_json())), DimensionError);
}

TEST_CASE("product of Pmm with Z is infinitely generated with four Nil classes") {
    WhReport r = whitehead_group(fixtures::from_json(fixtures::PmmxZ_json()));
    REQUIRE(r.entries.size() == 4);
    auto tally = entry_tally(r);
    CHECK(tally.count("Semidirect(F=D2, phi=Trivial)") == 4);
    for (const auto& e : r.entries) {
        CHECK(e.value.status == KStatus::InfinitelyGenerated);
        CHECK(e.value.summands == std::map<std::string, int>{{"Nil1(Z[D2])", 2}});
        CHECK(!e.value.citations.empty());
        CHECK(e.location.find("along (0, 0, 1)") != std::string::npos);
    }
    CHECK(r.total.summands == std::map<std::string, int>{{"Nil1(Z[D2])", 8}});
    CHECK(r.total.status == KStatus::InfinitelyGenerated);
    CHECK(r.infinitely_generated);
}

TEST_CASE("two-Nil evaluation matches the product evaluation") {
    SUBCASE("Pmm lists four dihedral classes") {
        WhReport r = corollary2(fixtures::from_json(fixtures::pmm_json()));
        CHECK(r.group == "PmmxZ");
        REQUIRE(r.entries.size() == 4);
        for (const auto& e : r.entries)
            CHECK(e.value.summands == std::map<std::string, int>{{"Nil1(Z[D2])", 2}});
        CHECK(r.total.summands == std::map<std::string, int>{{"Nil1(Z[D2])", 8}});
        CHECK(r.infinitely_generated);
    }
    SUBCASE("p2 lists four cyclic classes and collapses to zero") {
        WhReport r = corollary2(fixtures::from_json(fixtures::p2_json()));
        REQUIRE(r.entries.size() == 4);
        auto tally = entry_tally(r);
        CHECK(tally.count("Semidirect(F=C2, phi=Trivial)") == 4);
        for (const auto& e : r.entries) CHECK(e.value.is_zero());
        CHECK(r.total.is_zero());
        CHECK(!r.infinitely_generated);
    }
    SUBCASE("torsion-free input gives the empty sum") {
        WhReport r = corollary2(fixtures::from_json(fixtures::p1_json()));
        CHECK(r.entries.empty());
        CHECK(r.total.is_zero());
    }
    SUBCASE("wrong dimension is rejected") {
        CHECK_THROWS_AS(corollary2(fixtures::from_json(fixtures::P1_json())), DimensionError);
    }
}

TEST_CASE("report totals satisfy the sum algebra invariants") {
    for (const auto& ce : catalog_entries()) {
        CAPTURE(ce.name);
        WhReport r = report_for(ce);
        KValue total;
        bool any_ig = false;
        for (const auto& e : r.entries) {
            total = direct_sum(total, e.value);
            any_ig = any_ig || e.value.status == KStatus::InfinitelyGenerated;
        }
        CHECK(r.total == total);
        CHECK(r.infinitely_generated == any_ig);
        // citation-trail fidelity: nothing nonzero is reported without a source
        for (const auto& e : r.entries) {
            if (!e.value.is_zero()) CHECK(!e.value.citations.empty());
            for (const auto& c : e.value.citations) CHECK(!c.empty());
        }
        if (!r.total.is_zero()) CHECK(!r.total.citations.empty());
    }
}

TEST_CASE("reports are deterministic across runs and thread counts") {
    for (const auto& ce : catalog_entries()) {
        CAPTURE(ce.name);
        std::string a = report_text(report_for(ce, 1));
        std::string b = report_text(report_for(ce, 3));
        CHECK(a == b);
        std::string ja = report_json(report_for(ce, 1));
        std::string jb = report_json(report_for(ce, 3));
        CHECK(ja == jb);
    }
}

TEST_CASE("hexagonal D6 group reports dihedral and cyclic Nil summands") {
    WhReport r = whitehead_group(fixtures::from_json(fixtures::P6mm_json()));
    auto tally = entry_tally(r);
    CHECK(tally.count("Semidirect(F=D6, phi=Trivial)") == 1);
    CHECK(tally.count("Semidirect(F=D3, phi=Trivial)") == 1);
    CHECK(tally.count("Semidirect(F=D2, phi=Trivial)") == 1);
    CHECK(r.infinitely_generated);  // the D2 class contributes
    CHECK(r.total.summands.count("Nil1(Z[D2])") == 1);
    CHECK(r.total.summands.count("Nil1(Z[D3])") == 1);
    CHECK(r.total.summands.count("Nil1(Z[D6])") == 1);
}

TEST_CASE("text rendering lists classes with values and citations") {
    WhReport r = whitehead_group(fixtures::from_json(fixtures::PmmxZ_json()));
    std::string text = report_text(r);
    CHECK(text.find("Wh report for PmmxZ (dim 3)") == 0);
    CHECK(text.find("classes listed: 4") != std::string::npos);
    CHECK(text.find("[4] Semidirect(F=D2, phi=Trivial)") != std::string::npos);
    CHECK(text.find("value: 2*Nil1(Z[D2]) (infinitely generated)") != std::string::npos);
    CHECK(text.find("total: 8*Nil1(Z[D2]) (infinitely generated)") != std::string::npos);
    CHECK(text.find("infinitely generated: yes") != std::string::npos);
    CHECK(text.find("cite: ") != std::string::npos);
}

TEST_CASE("json rendering follows the versioned schema") {
    using nlohmann::json;
    SUBCASE("infinitely generated product report") {
        WhReport r = whitehead_group(fixtures::from_json(fixtures::PmmxZ_json()));
        json doc = json::parse(report_json(r));
        CHECK(doc.at("schema") == "whcryst-report");
        CHECK(doc.at("version") == 1);
        CHECK(doc.at("group") == "PmmxZ");
        CHECK(doc.at("dim") == 3);
        REQUIRE(doc.at("classes").size() == 4);
        const json& c0 = doc.at("classes")[0];
        CHECK(c0.at("descriptor") == "Semidirect(F=D2, phi=Trivial)");
        CHECK(c0.at("value").at("free_rank").is_null());
        CHECK(c0.at("value").at("status") == "InfinitelyGenerated");
        REQUIRE(c0.at("value").at("summands").size() == 1);
        CHECK(c0.at("value").at("summands")[0].at("symbol") == "Nil1(Z[D2])");
        CHECK(c0.at("value").at("summands")[0].at("mult") == 2);
        CHECK(!c0.at("citations").empty());
        CHECK(doc.at("infinitely_generated") == true);
        CHECK(doc.at("total").at("summands")[0].at("mult") == 8);
    }
    SUBCASE("zero total serializes with rank zero and no summands") {
        WhReport r = corollary2(fixtures::from_json(fixtures::p2_json()));
        json doc = json::parse(report_json(r));
        CHECK(doc.at("total").at("free_rank") == 0);
        CHECK(doc.at("total").at("summands").empty());
        CHECK(doc.at("total").at("status") == "Zero");
        CHECK(doc.at("infinitely_generated") == false);
    }
    SUBCASE("bounded values carry their bounds") {
        WhReport r = whitehead_group(fixtures::from_json(fixtures::Pmmm_json()));
        json doc = json::parse(report_json(r));
        REQUIRE(!doc.at("classes").empty());
        const json& v = doc.at("classes")[0].at("value");
        CHECK(v.at("status") == "UnknownBounded");
        REQUIRE(v.contains("bounds"));
        CHECK(v.at("bounds").size() == 3);
    }
}
