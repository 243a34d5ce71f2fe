#pragma once

/**
 * @file vc_enumerate.hpp
 * @brief Conjugacy classes of maximal finite subgroups and maximal
 *        virtually infinite cyclic subgroups.
 *
 * Finite subgroups are exactly the point stabilizers; a stabilizer is
 * maximal when its fixed set is a single point, or when its fixed set is a
 * jump-free stratum (no point of the stratum has a strictly larger
 * stabilizer). Infinite virtually cyclic subgroups are line stabilizers;
 * the enumeration scans the finitely many point-group eigen-axis
 * directions, picks out the lines pinned by a rotation of the induced
 * action on the parallel-line family, and certifies maximality through the
 * uniqueness of the invariant line. Families with trivial or
 * reflection-only pointwise stabilizer carry no Whitehead-group content
 * (types Z, D-infinity, Z x C2, D-infinity x C2 all have vanishing Wh) and
 * are summarized in a note instead of being listed.
 */

#include <optional>
#include <string>
#include <vector>

#include "whcryst/cryst_group.hpp"
#include "whcryst/geometry.hpp"
#include "whcryst/vc_classify.hpp"

namespace whcryst {

struct FiniteClass {
    FiniteType type = FiniteType::Trivial;
    VecQ point;                  // representative fixed point
    PointStabilizer stab;
    int fix_dim = 0;             // dimension of the stabilizer's fixed set
    std::string certificate;     // "isolated-fixed-point" | "jump-free-stratum" | "torsion-free"
};

/// Conjugacy class representatives of maximal finite subgroups (dim 2 or 3).
std::vector<FiniteClass> maximal_finite_classes(const CrystGroup& g);

struct VCClass {
    VCDescriptor descriptor;
    Line line;                   // representative invariant line
    LineStabilizer stab;
    std::string certificate;     // "unique-invariant-line"
};

struct SubgroupClassList {
    std::vector<FiniteClass> finite_classes;
    std::vector<VCClass> vc_classes;
    std::string zero_bucket_note;
};

/// Full enumeration for a three-dimensional group. Directions are processed
/// independently (in `jobs` threads when jobs > 1); the merge is
/// deterministic. Throws DimensionError for dim != 3.
SubgroupClassList maximal_vc_classes(const CrystGroup& g, int jobs = 1);

/// Generating set of a computed line stabilizer: the pointwise part, the
/// minimal translation witness, and one orientation-reversing element.
SubgroupSpec line_stabilizer_spec(const CrystGroup& g, const LineStabilizer& ls);

struct InvariantLineReport {
    enum class Kind { None, Unique, Several, Infinite } kind = Kind::None;
    std::vector<Line> lines;     // the isolated invariant lines found
    std::string family;          // description when Kind::Infinite
};

/// All lines invariant under the subgroup generated by s.gens.
InvariantLineReport invariant_lines(const CrystGroup& g, const SubgroupSpec& s);

struct MaximalityCertificate {
    bool maximal = false;
    std::string kind;            // "unique-invariant-line" | "direct-check" | "not-maximal"
    std::optional<Line> witness; // when not maximal: a line with a strictly larger stabilizer
};

/// Decide maximality of an infinite virtually cyclic subgroup presented by
/// generators together with a line it preserves. Throws ValidationError
/// when some generator does not preserve the line.
MaximalityCertificate certify_maximal(const CrystGroup& g, const SubgroupSpec& s, const Line& l);

} // namespace whcryst
