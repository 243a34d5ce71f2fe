#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "whcryst/geometry.hpp"
#include "whcryst/vc_classify.hpp"

using namespace whcryst;

namespace {

VCDescriptor classify_line(const std::string& json, const VecQ& p, const VecZ& h) {
    CrystGroup g = fixtures::from_json(json);
    LineStabilizer ls = line_stabilizer(g, make_line(p, h));
    return classify_line_stabilizer(ls);
}

} // namespace

TEST_CASE("descriptor text round trips") {
    VCDescriptor a;
    a.amalgam = true;
    a.fiber = FiniteType::D2;
    a.va = FiniteType::D4;
    a.vb = FiniteType::D2xC2;
    canonicalize(a);
    CHECK(descriptor_str(a) == "Amalgam(F=D2, A=D2xC2, B=D4)");
    CHECK(parse_descriptor("Amalgam(F=D2, A=D2xC2, B=D4)") == a);
    CHECK(parse_descriptor("Amalgam(F=D2, A=D4, B=D2xC2)") == a); // vertex order is canonicalized

    VCDescriptor s;
    s.amalgam = false;
    s.fiber = FiniteType::C6;
    s.phi = PhiClass::Inv;
    CHECK(descriptor_str(s) == "Semidirect(F=C6, phi=Inv)");
    CHECK(parse_descriptor("Semidirect(F=C6, phi=Inv)") == s);
    CHECK(parse_descriptor(" Semidirect( F=C6 , phi=Inv ) ") == s);

    CHECK(parse_descriptor("Amalgam(F=D3xC2, A=C2, B=C2)").fiber == FiniteType::D6);

    CHECK_THROWS_AS(parse_descriptor("Amalgam(F=D2, A=D4)"), UnknownDescriptorError);
    CHECK_THROWS_AS(parse_descriptor("Semidirect(F=D2, phi=Order5)"), UnknownDescriptorError);
    CHECK_THROWS_AS(parse_descriptor("Semidirect(F=C7, phi=Inv)"), UnknownDescriptorError);
    CHECK_THROWS_AS(parse_descriptor("Banana(F=C2)"), UnknownDescriptorError);
    CHECK_THROWS_AS(parse_descriptor("Amalgam(F=C2, A=D2, B=D2"), UnknownDescriptorError);
}

TEST_CASE("mirror axis of Pmm is an infinite dihedral amalgam over C2") {
    VCDescriptor d = classify_line(fixtures::pmm_json(), {Rat(0), Rat(0)}, {Int(0), Int(1)});
    CHECK(d.amalgam);
    CHECK(d.fiber == FiniteType::C2);
    CHECK(d.va == FiniteType::D2);
    CHECK(d.vb == FiniteType::D2);
    CHECK(descriptor_str(d) == "Amalgam(F=C2, A=D2, B=D2)");
    CHECK(descriptor_realizable(d, true));
}

TEST_CASE("vertical lines of p2 give the infinite dihedral group or Z") {
    // x = 0 passes through half-turn centers, so the stabilizer is D-infinity.
    VCDescriptor d = classify_line(fixtures::p2_json(), {Rat(0), Rat(0)}, {Int(0), Int(1)});
    CHECK(d.amalgam);
    CHECK(d.fiber == FiniteType::Trivial);
    CHECK(d.va == FiniteType::C2);
    CHECK(d.vb == FiniteType::C2);
    CHECK(descriptor_realizable(d, true));

    // x = 1/4 maps to x = 3/4 under every half turn; only translations remain.
    VCDescriptor z = classify_line(fixtures::p2_json(), {Rat(1, 4), Rat(0)}, {Int(0), Int(1)});
    CHECK_FALSE(z.amalgam);
    CHECK(z.fiber == FiniteType::Trivial);
    CHECK(z.phi == PhiClass::Trivial);
    CHECK(descriptor_str(z) == "Semidirect(F=Trivial, phi=Trivial)");
}

TEST_CASE("screw axis of P42 is C2 x Z") {
    VCDescriptor d = classify_line(fixtures::P42_json(), {Rat(0), Rat(0), Rat(0)}, {Int(0), Int(0), Int(1)});
    CHECK_FALSE(d.amalgam);
    CHECK(d.fiber == FiniteType::C2);
    CHECK(d.phi == PhiClass::Trivial);
    CHECK(descriptor_str(d) == "Semidirect(F=C2, phi=Trivial)");
    CHECK(descriptor_realizable(d, true));
}

TEST_CASE("glide axis of P3c twists C3 by inversion") {
    VCDescriptor d = classify_line(fixtures::P3c_json(), {Rat(0), Rat(0), Rat(0)}, {Int(0), Int(0), Int(1)});
    CHECK_FALSE(d.amalgam);
    CHECK(d.fiber == FiniteType::C3);
    CHECK(d.phi == PhiClass::Inv);
    CHECK(descriptor_str(d) == "Semidirect(F=C3, phi=Inv)");
    CHECK(descriptor_realizable(d, true));
}

TEST_CASE("vertical axes of P6mm are untwisted products") {
    VCDescriptor d6 = classify_line(fixtures::P6mm_json(), {Rat(0), Rat(0), Rat(0)}, {Int(0), Int(0), Int(1)});
    CHECK_FALSE(d6.amalgam);
    CHECK(d6.fiber == FiniteType::D6);
    CHECK(d6.phi == PhiClass::Trivial);

    VCDescriptor d3 = classify_line(fixtures::P6mm_json(), {Rat(1, 3), Rat(2, 3), Rat(0)}, {Int(0), Int(0), Int(1)});
    CHECK_FALSE(d3.amalgam);
    CHECK(d3.fiber == FiniteType::D3);
    CHECK(d3.phi == PhiClass::Trivial);

    VCDescriptor d2 = classify_line(fixtures::P6mm_json(), {Rat(1, 2), Rat(0), Rat(0)}, {Int(0), Int(0), Int(1)});
    CHECK_FALSE(d2.amalgam);
    CHECK(d2.fiber == FiniteType::D2);
    CHECK(d2.phi == PhiClass::Trivial);

    for (const auto& d : {d6, d3, d2}) CHECK(descriptor_realizable(d, true));
}

TEST_CASE("coordinate axis of Pmmm amalgamates two copies of D2xC2 over D2") {
    VCDescriptor d = classify_line(fixtures::Pmmm_json(), {Rat(0), Rat(0), Rat(0)}, {Int(0), Int(0), Int(1)});
    CHECK(d.amalgam);
    CHECK(d.fiber == FiniteType::D2);
    CHECK(d.va == FiniteType::D2xC2);
    CHECK(d.vb == FiniteType::D2xC2);
    CHECK(descriptor_str(d) == "Amalgam(F=D2, A=D2xC2, B=D2xC2)");
    CHECK(descriptor_realizable(d, true));
}

TEST_CASE("vertical axes of PmmxZ are D2 x Z") {
    for (const VecQ& p : {VecQ{Rat(0), Rat(0), Rat(0)}, VecQ{Rat(1, 2), Rat(0), Rat(0)},
                          VecQ{Rat(0), Rat(1, 2), Rat(0)}, VecQ{Rat(1, 2), Rat(1, 2), Rat(0)}}) {
        VCDescriptor d = classify_line(fixtures::PmmxZ_json(), p, {Int(0), Int(0), Int(1)});
        CHECK_FALSE(d.amalgam);
        CHECK(d.fiber == FiniteType::D2);
        CHECK(d.phi == PhiClass::Trivial);
        CHECK(descriptor_str(d) == "Semidirect(F=D2, phi=Trivial)");
        CHECK(descriptor_realizable(d, true));
    }
}

TEST_CASE("monodromy permutation is a fiber automorphism") {
    CrystGroup g = fixtures::from_json(fixtures::P3c_json());
    LineStabilizer ls = line_stabilizer(g, make_line({Rat(0), Rat(0), Rat(0)}, {Int(0), Int(0), Int(1)}));
    std::vector<int> perm = monodromy_permutation(ls);
    REQUIRE(perm.size() == 3);
    CHECK(perm[0] == 0);
    // Conjugation by the half-turn glide inverts the order-3 rotations.
    CHECK(perm[1] == ls.fiber_table.inverse_of(1));
    CHECK(perm[2] == ls.fiber_table.inverse_of(2));
    CHECK(outer_class_order(ls.fiber_table, perm) == 2);
}

TEST_CASE("amalgam realizability tables") {
    using T = FiniteType;
    CHECK(amalgam_realizable(T::Trivial, T::C2, T::C2, true));
    CHECK(amalgam_realizable(T::C2, T::D2, T::C4, true)); // order-insensitive
    CHECK(amalgam_realizable(T::C3, T::C6, T::D3, true));
    CHECK(amalgam_realizable(T::C4, T::D4, T::C4xC2, true));
    CHECK(amalgam_realizable(T::C6, T::D6, T::D6, true));
    CHECK(amalgam_realizable(T::D3, T::D6, T::D6, true));
    CHECK(amalgam_realizable(T::D4, T::D4xC2, T::D4xC2, true));
    CHECK(amalgam_realizable(T::D6, T::D6xC2, T::D6xC2, true));

    // These three occur only without cocompactness.
    CHECK_FALSE(amalgam_realizable(T::D2, T::C4xC2, T::C4xC2, true));
    CHECK(amalgam_realizable(T::D2, T::C4xC2, T::C4xC2, false));
    CHECK_FALSE(amalgam_realizable(T::D2, T::D4, T::C4xC2, true));
    CHECK(amalgam_realizable(T::D2, T::D4, T::C4xC2, false));
    CHECK_FALSE(amalgam_realizable(T::D2, T::C4xC2, T::D2xC2, true));
    CHECK(amalgam_realizable(T::D2, T::C4xC2, T::D2xC2, false));

    // Shapes outside both lists.
    CHECK_FALSE(amalgam_realizable(T::Trivial, T::C2, T::C4, false));
    CHECK_FALSE(amalgam_realizable(T::C4, T::C4, T::C4, false));
    CHECK_FALSE(amalgam_realizable(T::D3, T::D6, T::C6xC2, false));
    CHECK_FALSE(amalgam_realizable(T::A4, T::S4, T::S4, false));

    CHECK(realizable_amalgams(true).size() == 19);
    CHECK(realizable_amalgams(false).size() == 22);

    // Index-two sanity across the whole list.
    for (const auto& d : realizable_amalgams(false)) {
        CHECK(type_order(d.va) == 2 * type_order(d.fiber));
        CHECK(type_order(d.vb) == 2 * type_order(d.fiber));
        CHECK(descriptor_realizable(d, false));
    }
}

TEST_CASE("semidirect realizability tables") {
    using T = FiniteType;
    CHECK(semidirect_realizable(T::Trivial, PhiClass::Trivial));
    CHECK(semidirect_realizable(T::C2, PhiClass::Trivial));
    CHECK_FALSE(semidirect_realizable(T::C2, PhiClass::Inv));
    CHECK(semidirect_realizable(T::C3, PhiClass::Inv));
    CHECK(semidirect_realizable(T::C4, PhiClass::Inv));
    CHECK(semidirect_realizable(T::C6, PhiClass::Inv));
    CHECK(semidirect_realizable(T::D2, PhiClass::Inv));
    CHECK_FALSE(semidirect_realizable(T::D2, PhiClass::Order3));
    CHECK(semidirect_realizable(T::D3, PhiClass::Trivial));
    CHECK_FALSE(semidirect_realizable(T::D3, PhiClass::Inv));
    CHECK(semidirect_realizable(T::D4, PhiClass::Inv));
    CHECK(semidirect_realizable(T::D6, PhiClass::Inv));
    CHECK_FALSE(semidirect_realizable(T::C4xC2, PhiClass::Trivial));
    CHECK_FALSE(semidirect_realizable(T::A4, PhiClass::Trivial));

    auto all = realizable_semidirects();
    CHECK(all.size() == 15);
    CHECK(std::is_sorted(all.begin(), all.end()));
    for (const auto& d : all) CHECK(descriptor_realizable(d, true));
}
