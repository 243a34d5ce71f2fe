#pragma once

/**
 * @file vc_classify.hpp
 * @brief Isomorphism classification of infinite virtually cyclic groups
 *        arising as line stabilizers, and the realizability tables.
 *
 * Every such group either surjects onto Z (semidirect shape F x| Z, with
 * the monodromy recorded by its outer class) or onto the infinite dihedral
 * group (amalgam shape A *_F B with F of index two in both vertices).
 */

#include <string>
#include <vector>

#include "whcryst/finite_group.hpp"
#include "whcryst/geometry.hpp"

namespace whcryst {

enum class PhiClass { Trivial, Inv, Order3 };

std::string phi_name(PhiClass p);

struct VCDescriptor {
    bool amalgam = false;
    FiniteType fiber = FiniteType::Trivial;
    PhiClass phi = PhiClass::Trivial;     // semidirect only
    FiniteType va = FiniteType::Trivial;  // amalgam only, canonical order
    FiniteType vb = FiniteType::Trivial;

    bool operator==(const VCDescriptor& o) const;
    bool operator<(const VCDescriptor& o) const;
};

/// "Amalgam(F=D2, A=D2xC2, B=D4)" or "Semidirect(F=C6, phi=Inv)".
std::string descriptor_str(const VCDescriptor& d);
/// Inverse of descriptor_str. Throws UnknownDescriptorError.
VCDescriptor parse_descriptor(const std::string& text);

/// Canonical vertex order: ascending group order, then name.
void canonicalize(VCDescriptor& d);

/// Classify a computed line stabilizer.
VCDescriptor classify_line_stabilizer(const LineStabilizer& ls);

/// Monodromy of a semidirect-shape stabilizer as a permutation of the
/// fiber element list (conjugation by the minimal translation witness).
std::vector<int> monodromy_permutation(const LineStabilizer& ls);

/// Realizability as the maximal infinite virtually cyclic subgroup of a
/// cocompact crystallographic group (the strict list), or of one acting
/// properly but not necessarily cocompactly (three extra amalgam rows).
bool amalgam_realizable(FiniteType f, FiniteType a, FiniteType b, bool cocompact);
bool semidirect_realizable(FiniteType f, PhiClass phi);
bool descriptor_realizable(const VCDescriptor& d, bool cocompact);

/// The full descriptor lists, canonically ordered.
std::vector<VCDescriptor> realizable_amalgams(bool cocompact);
std::vector<VCDescriptor> realizable_semidirects();

} // namespace whcryst
