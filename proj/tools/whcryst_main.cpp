// Command-line front end: validate group files, list subgroup classes,
// evaluate Whitehead group reports, and run the self-verification suite.
//
// Exit codes: 0 success, 1 rejected input (parse/validation/dimension),
// 2 internal invariant violation.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "whcryst/brute_force.hpp"
#include "whcryst/catalog.hpp"
#include "whcryst/errors.hpp"
#include "whcryst/geometry.hpp"
#include "whcryst/ktheory.hpp"
#include "whcryst/report.hpp"
#include "whcryst/vc_enumerate.hpp"

namespace {

using namespace whcryst;

FiniteGroupTable point_group_table(const CrystGroup& g) {
    auto pg = point_group(g);
    return make_table(
        pg, [](const MatZ& a, const MatZ& b) { return mz_mul(a, b); },
        [](const MatZ& a, const MatZ& b) { return a == b; });
}

int cmd_validate(const std::string& source) {
    CrystGroup g = load_group_source(source);
    std::cout << "point group: " << type_name(identify_type(point_group_table(g)))
              << "; OK\n";
    return 0;
}

void print_finite_classes(const std::vector<FiniteClass>& fc) {
    std::cout << "maximal finite classes: " << fc.size() << "\n";
    for (size_t i = 0; i < fc.size(); ++i)
        std::cout << "  [" << i + 1 << "] " << type_name(fc[i].type) << " at "
                  << vec_str(fc[i].point) << " [" << fc[i].certificate << "]\n";
}

int cmd_classes(const std::string& source, int jobs) {
    CrystGroup g = load_group_source(source);
    std::cout << "group: " << g.name << " (dim " << g.dim << ")\n";
    if (g.dim == 2) {
        print_finite_classes(maximal_finite_classes(g));
        return 0;
    }
    SubgroupClassList cl = maximal_vc_classes(g, jobs);
    print_finite_classes(cl.finite_classes);
    std::cout << "maximal infinite virtually cyclic classes: " << cl.vc_classes.size()
              << "\n";
    for (size_t i = 0; i < cl.vc_classes.size(); ++i) {
        const VCClass& c = cl.vc_classes[i];
        std::cout << "  [" << i + 1 << "] " << descriptor_str(c.descriptor) << " on "
                  << line_str(c.line) << " [" << c.certificate << "]\n";
    }
    std::cout << "note: " << cl.zero_bucket_note << "\n";
    return 0;
}

int cmd_wh(const std::string& source, int jobs, bool json) {
    CrystGroup g = load_group_source(source);
    WhReport r = whitehead_group(g, jobs);
    std::cout << (json ? report_json(r) : report_text(r));
    return 0;
}

int cmd_corollary2(const std::string& source, int jobs, bool json) {
    CrystGroup g = load_group_source(source);
    WhReport r = corollary2(g, jobs);
    std::cout << (json ? report_json(r) : report_text(r));
    return 0;
}

int cmd_catalog() {
    std::cout << "built-in groups:\n";
    size_t width = 0;
    for (const CatalogEntry& e : catalog_entries()) width = std::max(width, e.name.size());
    for (const CatalogEntry& e : catalog_entries()) {
        std::cout << "  " << e.name << std::string(width - e.name.size(), ' ')
                  << "  dim " << e.dim << "  " << e.summary << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// selftest

struct SelftestRun {
    int total = 0;
    int passed = 0;

    void row(const std::string& label, bool ok, const std::string& detail = "") {
        ++total;
        if (ok) ++passed;
        std::cout << label << ": " << (ok ? "PASS" : "FAIL");
        if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
    }

    template <typename Fn>
    void check(const std::string& label, Fn&& fn) {
        try {
            row(label, fn());
        } catch (const std::exception& e) {
            row(label, false, e.what());
        }
    }
};

uint32_t pick(std::mt19937& rng, uint32_t n) { return rng() % n; }

VecQ random_point(std::mt19937& rng, int dim) {
    VecQ p(dim);
    for (int i = 0; i < dim; ++i) {
        Int num = Int(static_cast<int>(pick(rng, 33)) - 16);
        Int den = Int(static_cast<int>(pick(rng, 6)) + 1);
        p[i] = Rat(num, den);
    }
    return p;
}

std::optional<VecZ> random_direction(std::mt19937& rng) {
    VecZ h(3);
    for (int i = 0; i < 3; ++i) h[i] = Int(static_cast<int>(pick(rng, 7)) - 3);
    if (vz_is_zero(h)) return std::nullopt;
    return primitive_vector(vq_from_z(h));
}

int cmd_selftest(int radius, long seed, int jobs) {
    SelftestRun st;
    std::cout << "selftest (radius " << radius << ", seed " << seed << ")\n";

    st.check("Out(C2) trivial", [] {
        return out_group(reference_table(FiniteType::C2)).table.n == 1;
    });
    st.check("Out(D3) trivial", [] {
        return out_group(reference_table(FiniteType::D3)).table.n == 1;
    });
    st.check("Out(C3), Out(C4), Out(C6), Out(D4), Out(D6) of order 2", [] {
        for (FiniteType t : {FiniteType::C3, FiniteType::C4, FiniteType::C6,
                             FiniteType::D4, FiniteType::D6})
            if (out_group(reference_table(t)).table.n != 2) return false;
        return true;
    });
    st.check("Out(D2) ≅ D3", [] {
        const OutGroup out = out_group(reference_table(FiniteType::D2));
        return out.table.n == 6 && identify_type(out.table) == FiniteType::D3;
    });
    st.check("Out(D2) classes of orders 1, 2, 3", [] {
        const OutGroup out = out_group(reference_table(FiniteType::D2));
        auto classes = conjugacy_classes(out.table);
        std::multiset<int> orders;
        for (const auto& cl : classes) orders.insert(out.table.element_order(cl.front()));
        return classes.size() == 3 && orders == std::multiset<int>{1, 2, 3};
    });
    st.check("A4xC2 pair and cyclic-subgroup class counts are 6 and 6", [] {
        const FiniteGroupTable& t = reference_table(FiniteType::A4xC2);
        return inverse_pair_classes(t) == 6 && cyclic_subgroup_classes(t) == 6;
    });
    st.check("free rank r - q = 0 across the finite-type catalog", [] {
        for (FiniteType t : catalog_types())
            if (bass_rank(reference_table(t)) != 0) return false;
        return true;
    });
    st.check("cocompact realizability rejects the four excluded shapes", [] {
        using T = FiniteType;
        return !amalgam_realizable(T::D2, T::C4xC2, T::C4xC2, true) &&
               !amalgam_realizable(T::D2, T::C4xC2, T::D2xC2, true) &&
               !amalgam_realizable(T::D2, T::C4xC2, T::D4, true) &&
               !semidirect_realizable(T::D2, PhiClass::Order3);
    });
    st.check("point-group element orders lie in {1, 2, 3, 4, 6}", [] {
        const std::set<int> allowed = {1, 2, 3, 4, 6};
        for (const CatalogEntry& e : catalog_entries())
            for (const MatZ& j : point_group(catalog_group(e.name))) {
                auto ord = mat_order(j);
                if (!ord || !allowed.count(*ord)) return false;
            }
        return true;
    });
    st.check("window oracle matches the stratum count on plane groups", [&] {
        for (const CatalogEntry& e : catalog_entries()) {
            if (e.dim != 2) continue;
            CrystGroup g = catalog_group(e.name);
            int expect = 0;
            for (const FiniteClass& c : maximal_finite_classes(g))
                if (c.type != FiniteType::Trivial) ++expect;
            if (brute_force_max_finite_classes(g, radius) != expect) return false;
        }
        return true;
    });
    st.check("seeded stabilizer sweep stays in the classification tables", [&] {
        std::mt19937 rng(static_cast<uint32_t>(seed));
        for (const CatalogEntry& e : catalog_entries()) {
            CrystGroup g = catalog_group(e.name);
            for (int i = 0; i < 40; ++i)
                identify_type(point_stabilizer(g, random_point(rng, g.dim)).table);
            CrystGroup g3 = g.dim == 2 ? product_with_Z(g) : g;
            for (int i = 0; i < 12; ++i) {
                auto h = random_direction(rng);
                if (!h) continue;
                Line l = make_line(random_point(rng, 3), *h);
                VCDescriptor d = classify_line_stabilizer(line_stabilizer(g3, l));
                if (!descriptor_realizable(d, true)) return false;
            }
        }
        return true;
    });
    st.check("Wh(F) = 0 for every catalog finite type", [] {
        for (FiniteType t : catalog_types())
            if (!wh_finite(t, reference_table(t)).is_zero()) return false;
        return true;
    });
    st.check("catalog reports evaluate within budget", [&] {
        for (const CatalogEntry& e : catalog_entries()) {
            CrystGroup g = catalog_group(e.name);
            auto start = std::chrono::steady_clock::now();
            WhReport r = e.dim == 3 ? whitehead_group(g, jobs) : corollary2(g, jobs);
            auto elapsed = std::chrono::steady_clock::now() - start;
            if (elapsed > std::chrono::seconds(10)) return false;
            if (r.group.empty()) return false;
        }
        return true;
    });

    std::cout << "selftest: " << st.passed << "/" << st.total << " rows passed\n";
    return st.passed == st.total ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Whitehead group reports for plane and space crystallographic groups"};
    app.require_subcommand(1);

    int jobs = 1;
    int radius = 2;
    long seed = 1;
    bool json_wh = false;
    bool json_c2 = false;
    std::string src_validate, src_classes, src_wh, src_c2;

    app.add_option("--jobs", jobs, "worker threads for the line enumeration")
        ->check(CLI::Range(1, 64));
    app.add_option("--radius", radius,
                   "translation window radius for brute-force cross-checks")
        ->check(CLI::Range(1, 6));
    app.add_option("--seed", seed, "seed for the randomized selftest sweeps");

    CLI::App* validate =
        app.add_subcommand("validate", "parse a group source and print its point-group type");
    validate->add_option("source", src_validate, "group file or catalog:<name>")->required();
    validate->fallthrough();

    CLI::App* classes =
        app.add_subcommand("classes", "list maximal finite and virtually cyclic classes");
    classes->add_option("source", src_classes, "group file or catalog:<name>")->required();
    classes->fallthrough();

    CLI::App* wh = app.add_subcommand("wh", "Whitehead group report for a dim-3 group");
    wh->add_option("source", src_wh, "group file or catalog:<name>")->required();
    wh->add_flag("--json", json_wh, "emit the machine-readable report");
    wh->fallthrough();

    CLI::App* c2 = app.add_subcommand(
        "corollary2", "evaluate Wh(G x Z) for a dim-2 G from its finite classes");
    c2->add_option("source", src_c2, "group file or catalog:<name>")->required();
    c2->add_flag("--json", json_c2, "emit the machine-readable report");
    c2->fallthrough();

    CLI::App* catalog = app.add_subcommand("catalog", "list the built-in groups");
    catalog->fallthrough();

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the verification suite and print a pass/fail matrix");
    selftest->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(src_validate);
        if (app.got_subcommand(classes)) return cmd_classes(src_classes, jobs);
        if (app.got_subcommand(wh)) return cmd_wh(src_wh, jobs, json_wh);
        if (app.got_subcommand(c2)) return cmd_corollary2(src_c2, jobs, json_c2);
        if (app.got_subcommand(catalog)) return cmd_catalog();
        if (app.got_subcommand(selftest)) return cmd_selftest(radius, seed, jobs);
    } catch (const InternalError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const TableViolationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
