#include <doctest.h>

#include <algorithm>

#include "whcryst/errors.hpp"
#include "whcryst/ktheory.hpp"

using namespace whcryst;

namespace {

VCDescriptor semidirect(FiniteType f, PhiClass phi) {
    VCDescriptor d;
    d.amalgam = false;
    d.fiber = f;
    d.phi = phi;
    return d;
}

VCDescriptor amalgam(FiniteType f, FiniteType a, FiniteType b) {
    VCDescriptor d;
    d.amalgam = true;
    d.fiber = f;
    d.va = a;
    d.vb = b;
    return d;
}

bool cites_mention(const KValue& v, const std::string& needle) {
    return std::any_of(v.citations.begin(), v.citations.end(), [&](const std::string& c) {
        return c.find(needle) != std::string::npos;
    });
}

} // namespace

TEST_CASE("bass rank vanishes across the catalog") {
    for (FiniteType t : catalog_types()) {
        CAPTURE(type_name(t));
        CHECK(bass_rank(reference_table(t)) == 0);
    }
    // The order-24 product A4 x C2 has six cyclic-subgroup classes matched
    // by six inverse-pair classes.
    const FiniteGroupTable& a4c2 = reference_table(FiniteType::A4xC2);
    CHECK(inverse_pair_classes(a4c2) == 6);
    CHECK(cyclic_subgroup_classes(a4c2) == 6);
    CHECK(bass_rank(make_trivial()) == 0);
    CHECK(bass_rank(make_cyclic(6)) == 0); // r = 4, q = 4
    CHECK(inverse_pair_classes(make_cyclic(6)) == 4);
    CHECK(cyclic_subgroup_classes(make_cyclic(6)) == 4);
}

TEST_CASE("facts table covers the catalog with citations") {
    const KFactsDB& db = KFactsDB::builtin();
    CHECK(db.version() >= 1);
    CHECK(db.records().size() == catalog_types().size());

    for (const KFactRecord& r : db.records()) {
        CAPTURE(type_name(r.type));
        CHECK(r.wh.is_zero());
        CHECK(!r.wh.citations.empty());
        CHECK(!r.ktilde0.citations.empty());
        CHECK(!r.kminus1.citations.empty());
        CHECK(!r.sk1_cite.empty());
        CHECK(!r.nil1_cite.empty());
        // status Zero iff rank zero and no summands
        for (const KValue* v : {&r.wh, &r.ktilde0, &r.kminus1}) {
            bool empty = v->free_rank == 0 && v->summands.empty();
            CHECK(v->is_zero() == empty);
        }
    }

    std::vector<FiniteType> sk1_types;
    for (const KFactRecord& r : db.records())
        if (r.sk1_zero) sk1_types.push_back(r.type);
    std::vector<FiniteType> expected = {
        FiniteType::D2,    FiniteType::D3,    FiniteType::D4,    FiniteType::D6,
        FiniteType::C4xC2, FiniteType::C6xC2, FiniteType::D2xC2, FiniteType::D4xC2,
        FiniteType::D6xC2, FiniteType::A4,    FiniteType::A4xC2};
    std::sort(sk1_types.begin(), sk1_types.end());
    std::sort(expected.begin(), expected.end());
    CHECK(sk1_types == expected);
}

TEST_CASE("recorded lower k values") {
    const KFactsDB& db = KFactsDB::builtin();

    SUBCASE("reduced projective class group") {
        for (FiniteType t : {FiniteType::Trivial, FiniteType::C2, FiniteType::C3,
                             FiniteType::C4, FiniteType::C6, FiniteType::D2, FiniteType::D3,
                             FiniteType::D4, FiniteType::D6})
            CHECK(lower_k(t, LowerK::Ktilde0, db).is_zero());
        for (FiniteType t : {FiniteType::C4xC2, FiniteType::C6xC2, FiniteType::D2xC2,
                             FiniteType::D4xC2, FiniteType::D6xC2}) {
            KValue v = lower_k(t, LowerK::Ktilde0, db);
            CHECK(v.status == KStatus::Unknown);
            CHECK(v.summands.count("Ktilde0(Z[" + type_name(t) + "])") == 1);
            CHECK(cites_mention(v, "does not vanish"));
        }
        for (FiniteType t : {FiniteType::A4, FiniteType::S4, FiniteType::A4xC2,
                             FiniteType::S4xC2}) {
            KValue v = lower_k(t, LowerK::Ktilde0, db);
            CHECK(v.status == KStatus::Unknown);
            CHECK(v.summands.empty());
        }
        // The order-12 dihedral table is the canonical class of D3 x C2, so
        // the alias resolves to the Pearson vanishing record.
        CHECK(lower_k(FiniteType::D3xC2, LowerK::Ktilde0, db).is_zero());
    }

    SUBCASE("negative k") {
        for (FiniteType t : {FiniteType::Trivial, FiniteType::C2, FiniteType::C3,
                             FiniteType::C4, FiniteType::D2, FiniteType::D3, FiniteType::D4})
            CHECK(lower_k(t, LowerK::Kminus1, db).is_zero());
        for (FiniteType t : {FiniteType::C6, FiniteType::D6}) {
            KValue v = lower_k(t, LowerK::Kminus1, db);
            CHECK(v.status == KStatus::Finite);
            CHECK(v.free_rank == 1);
            CHECK(kvalue_str(v) == "Z");
        }
        CHECK(lower_k(FiniteType::A4, LowerK::Kminus1, db).status == KStatus::Unknown);
    }
}

TEST_CASE("nil facts") {
    CHECK(nil_fact(FiniteType::Trivial) == NilFact::Zero);
    CHECK(nil_fact(FiniteType::C2) == NilFact::Zero);
    CHECK(nil_fact(FiniteType::D2) == NilFact::NonzeroInfinitelyGenerated);
    for (FiniteType t : {FiniteType::C3, FiniteType::C4, FiniteType::C6, FiniteType::D3,
                         FiniteType::D4, FiniteType::D6, FiniteType::A4, FiniteType::S4})
        CHECK(nil_fact(t) == NilFact::Unknown);
}

TEST_CASE("whitehead groups of catalog finite types vanish") {
    for (FiniteType t : catalog_types()) {
        CAPTURE(type_name(t));
        KValue v = wh_finite(t, reference_table(t));
        CHECK(v.is_zero());
        CHECK(!v.citations.empty());
        CHECK(cites_mention(v, "path:"));
    }
    KValue d2 = wh_finite(FiniteType::D2, reference_table(FiniteType::D2));
    CHECK(cites_mention(d2, "Oliver"));
    CHECK(cites_mention(d2, "rank formula"));
    KValue c2 = wh_finite(FiniteType::C2, reference_table(FiniteType::C2));
    CHECK(cites_mention(c2, "Whitehead"));
    CHECK(cites_mention(c2, "direct table lookup"));
    KValue s4 = wh_finite(FiniteType::S4, reference_table(FiniteType::S4));
    CHECK(cites_mention(s4, "Oliver"));

    CHECK_THROWS_AS(wh_finite(FiniteType::C2, reference_table(FiniteType::C3)),
                    ValidationError);
}

TEST_CASE("direct sum algebra") {
    KValue zero;
    KValue z1;
    z1.free_rank = 1;
    z1.status = KStatus::Finite;
    KValue nil;
    nil.free_rank = std::nullopt;
    nil.summands["Nil1(Z[D2])"] = 2;
    nil.status = KStatus::InfinitelyGenerated;
    KValue unk;
    unk.free_rank = std::nullopt;
    unk.status = KStatus::Unknown;
    KValue bounded;
    bounded.free_rank = std::nullopt;
    bounded.status = KStatus::UnknownBounded;
    bounded.bounds = {"Wh(D2xC2)", "Ktilde0(Z[D2])"};

    CHECK(direct_sum(zero, z1) == z1);
    CHECK(direct_sum(z1, zero) == z1);
    CHECK(direct_sum(nil, zero) == nil);
    CHECK(direct_sum(z1, nil) == direct_sum(nil, z1));
    CHECK(direct_sum(direct_sum(z1, nil), unk) == direct_sum(z1, direct_sum(nil, unk)));
    CHECK(direct_sum(nil, unk).status == KStatus::InfinitelyGenerated);
    CHECK(direct_sum(unk, bounded).status == KStatus::Unknown);
    CHECK(direct_sum(bounded, zero).status == KStatus::UnknownBounded);
    CHECK(direct_sum(bounded, zero).bounds == bounded.bounds);
    CHECK(direct_sum(bounded, z1).status == KStatus::Unknown);
    KValue two = direct_sum(z1, z1);
    CHECK(two.free_rank == 2);
    CHECK(kvalue_str(two) == "Z^2");
    CHECK(kvalue_str(zero) == "0");
}

TEST_CASE("whitehead groups of virtually cyclic descriptors") {
    SUBCASE("translation and reflection line quotients vanish") {
        KValue z = wh_vc(semidirect(FiniteType::Trivial, PhiClass::Trivial));
        CHECK(z.is_zero());
        CHECK(cites_mention(z, "Bass"));
        KValue zc2 = wh_vc(semidirect(FiniteType::C2, PhiClass::Trivial));
        CHECK(zc2.is_zero());
        CHECK(cites_mention(zc2, "Pearson"));
        CHECK(cites_mention(zc2, "Bass-Heller-Swan"));
        KValue dinf = wh_vc(amalgam(FiniteType::Trivial, FiniteType::C2, FiniteType::C2));
        CHECK(dinf.is_zero());
        KValue dinfc2 = wh_vc(amalgam(FiniteType::C2, FiniteType::D2, FiniteType::D2));
        CHECK(dinfc2.is_zero());
        CHECK(cites_mention(dinfc2, "Pearson"));
    }

    SUBCASE("infinitely generated product") {
        KValue v = wh_vc(semidirect(FiniteType::D2, PhiClass::Trivial));
        CHECK(v.status == KStatus::InfinitelyGenerated);
        CHECK(v.summands.size() == 1);
        CHECK(v.summands.at("Nil1(Z[D2])") == 2);
        CHECK(kvalue_str(v) == "2*Nil1(Z[D2]) (infinitely generated)");
        CHECK(cites_mention(v, "Farrell"));
        CHECK(cites_mention(v, "van der Kallen"));
    }

    SUBCASE("symbolic products") {
        KValue v = wh_vc(semidirect(FiniteType::C6, PhiClass::Trivial));
        CHECK(v.status == KStatus::Unknown);
        CHECK(v.summands.count("Nil1(Z[C6])") == 1);
        CHECK(v.summands.at("Nil1(Z[C6])") == 2);
        KValue d6 = wh_vc(semidirect(FiniteType::D6, PhiClass::Trivial));
        CHECK(d6.summands.at("Nil1(Z[D6])") == 2);
        CHECK(d6.status == KStatus::Unknown);
    }

    SUBCASE("twisted products stay symbolic") {
        KValue v = wh_vc(semidirect(FiniteType::C3, PhiClass::Inv));
        CHECK(v.status == KStatus::Unknown);
        CHECK(v.summands.count("Wh(Semidirect(F=C3, phi=Inv))") == 1);
        CHECK(!v.citations.empty());
    }

    SUBCASE("amalgams over c2 vanish by the exact sequence") {
        KValue v = wh_vc(amalgam(FiniteType::C2, FiniteType::C4, FiniteType::C4));
        CHECK(v.is_zero());
        CHECK(cites_mention(v, "Waldhausen"));
    }

    SUBCASE("larger fibers are bounded, not resolved") {
        KValue v = wh_vc(amalgam(FiniteType::D2, FiniteType::D2xC2, FiniteType::D2xC2));
        CHECK(v.status == KStatus::UnknownBounded);
        std::vector<std::string> expect = {"Wh(D2xC2)", "Wh(D2xC2)", "Ktilde0(Z[D2])"};
        CHECK(v.bounds == expect);
        CHECK(kvalue_str(v) == "unknown (bounded by Wh(D2xC2) + Wh(D2xC2) + Ktilde0(Z[D2]))");
        CHECK(cites_mention(v, "Waldhausen"));
    }

    SUBCASE("descriptors outside the realizable tables are rejected") {
        CHECK_THROWS_AS(wh_vc(semidirect(FiniteType::C4xC2, PhiClass::Trivial)),
                        UnknownDescriptorError);
        CHECK_THROWS_AS(wh_vc(amalgam(FiniteType::S4, FiniteType::S4xC2, FiniteType::S4xC2)),
                        UnknownDescriptorError);
    }

    SUBCASE("every realizable descriptor yields a cited value") {
        for (bool cocompact : {true, false}) {
            for (const VCDescriptor& d : realizable_amalgams(cocompact)) {
                KValue v = wh_vc(d);
                CAPTURE(descriptor_str(d));
                CHECK(!v.citations.empty());
                CHECK((v.is_zero() == (v.free_rank == 0 && v.summands.empty())));
            }
        }
        for (const VCDescriptor& d : realizable_semidirects()) {
            KValue v = wh_vc(d);
            CAPTURE(descriptor_str(d));
            CHECK(!v.citations.empty());
        }
    }
}

TEST_CASE("facts parser rejects malformed tables") {
    CHECK_THROWS_AS(KFactsDB::parse("nonsense", "<t>"), ParseError);
    CHECK_THROWS_AS(KFactsDB::parse("{}", "<t>"), ParseError);
    CHECK_THROWS_AS(
        KFactsDB::parse(R"({"format": "whcryst-kfacts", "version": 1, "facts": []})", "<t>"),
        ParseError);
}
