// Seeded property tests. Seeds are fixed so failures reproduce exactly.

#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "whcryst/brute_force.hpp"
#include "whcryst/catalog.hpp"
#include "whcryst/errors.hpp"
#include "whcryst/geometry.hpp"
#include "whcryst/ktheory.hpp"
#include "whcryst/vc_classify.hpp"
#include "whcryst/vc_enumerate.hpp"

using namespace whcryst;

namespace {

uint32_t pick(std::mt19937& rng, uint32_t n) { return rng() % n; }

VecQ random_point(std::mt19937& rng, int dim) {
    VecQ p(dim);
    for (int i = 0; i < dim; ++i) {
        Int num = Int(static_cast<int>(pick(rng, 41)) - 20);
        Int den = Int(static_cast<int>(pick(rng, 6)) + 1);
        p[i] = Rat(num, den);
    }
    return p;
}

std::vector<VCDescriptor> all_realizable() {
    std::vector<VCDescriptor> all = realizable_amalgams(false);
    for (const VCDescriptor& d : realizable_semidirects()) all.push_back(d);
    return all;
}

} // namespace

TEST_CASE("descriptor text round-trips over the realizability tables") {
    for (bool cocompact : {true, false})
        for (const VCDescriptor& d : realizable_amalgams(cocompact)) {
            CAPTURE(descriptor_str(d));
            CHECK(parse_descriptor(descriptor_str(d)) == d);
        }
    for (const VCDescriptor& d : realizable_semidirects())
        CHECK(parse_descriptor(descriptor_str(d)) == d);

    CHECK_THROWS_AS(parse_descriptor("Amalgam(F=D2)"), UnknownDescriptorError);
    CHECK_THROWS_AS(parse_descriptor("Semidirect(F=C5, phi=Inv)"), UnknownDescriptorError);
    CHECK_THROWS_AS(parse_descriptor(""), UnknownDescriptorError);
}

TEST_CASE("direct sum is commutative, associative, and has the zero identity") {
    std::mt19937 rng(90210u);
    const std::vector<VCDescriptor> pool = all_realizable();
    VCDescriptor zd;  // Semidirect(F=Trivial, phi=Trivial), the infinite cyclic case
    const KValue zero = wh_vc(zd);
    REQUIRE(zero.is_zero());

    for (int trial = 0; trial < 60; ++trial) {
        KValue a = wh_vc(pool[pick(rng, static_cast<uint32_t>(pool.size()))]);
        KValue b = wh_vc(pool[pick(rng, static_cast<uint32_t>(pool.size()))]);
        KValue c = wh_vc(pool[pick(rng, static_cast<uint32_t>(pool.size()))]);

        CHECK(direct_sum(a, b) == direct_sum(b, a));
        CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
        CHECK(direct_sum(a, zero) == a);

        const KValue ab = direct_sum(a, b);
        if (a.status == KStatus::InfinitelyGenerated ||
            b.status == KStatus::InfinitelyGenerated)
            CHECK(ab.status == KStatus::InfinitelyGenerated);
        if (a.free_rank && b.free_rank)
            CHECK(ab.free_rank == *a.free_rank + *b.free_rank);
        for (const auto& [sym, mult] : a.summands) {
            auto it = ab.summands.find(sym);
            REQUIRE(it != ab.summands.end());
            CHECK(it->second >= mult);
        }
    }
}

TEST_CASE("fixed point sets respect the defining eigen relations") {
    std::mt19937 rng(7117u);
    const auto& entries = catalog_entries();
    for (int trial = 0; trial < 80; ++trial) {
        const CatalogEntry& e = entries[pick(rng, static_cast<uint32_t>(entries.size()))];
        CrystGroup g = catalog_group(e.name);
        std::vector<MatZ> pg = point_group(g);
        std::vector<MatZ> mats;
        std::set<uint32_t> used;
        int k = 1 + static_cast<int>(pick(rng, 3));
        for (int i = 0; i < k; ++i) {
            uint32_t idx = pick(rng, static_cast<uint32_t>(pg.size()));
            if (used.insert(idx).second) mats.push_back(pg[idx]);
        }
        CAPTURE(e.name);
        FixedSets fs = fixed_sets(mats, g.dim);

        for (const VecZ& v : fs.e0)
            for (const MatZ& j : mats) CHECK(mz_apply_z(j, v) == v);

        std::set<VecZ> seen;
        for (const VecZ& v : fs.e1_axes) {
            CHECK(primitive_vector(vq_from_z(v)) == v);
            CHECK(seen.insert(v).second);
            bool flipped = false;
            for (const MatZ& j : mats) {
                VecZ img = mz_apply_z(j, v);
                VecZ neg(v.size());
                for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
                bool fix = img == v, flip = img == neg;
                CHECK((fix || flip));
                flipped = flipped || flip;
            }
            CHECK(flipped);
        }
    }
}

TEST_CASE("point stabilizer orders divide the point group and match their type") {
    std::mt19937 rng(5150u);
    for (const CatalogEntry& e : catalog_entries()) {
        CrystGroup g = catalog_group(e.name);
        const size_t pg_order = point_group(g).size();
        for (int i = 0; i < 60; ++i) {
            PointStabilizer ps = point_stabilizer(g, random_point(rng, g.dim));
            CAPTURE(e.name);
            CHECK(pg_order % ps.table.n == 0);
            CHECK(type_order(identify_type(ps.table)) == ps.table.n);
        }
    }
}

TEST_CASE("window oracle agrees with the stratum count on the plane groups") {
    for (const CatalogEntry& e : catalog_entries()) {
        if (e.dim != 2) continue;
        CrystGroup g = catalog_group(e.name);
        int stratum = 0;
        for (const FiniteClass& c : maximal_finite_classes(g))
            if (c.type != FiniteType::Trivial) ++stratum;
        CAPTURE(e.name);
        CHECK(brute_force_max_finite_classes(g, 2) == stratum);
        CHECK(brute_force_max_finite_classes(g, 3) == stratum);
    }
}
