#pragma once

/**
 * @file geometry.hpp
 * @brief Stabilizers of points and lines, fibers, and induced actions.
 *
 * A line is stored as a canonical base point plus a primitive integer
 * direction. Stabilizers of lines are infinite; they are represented by one
 * entry per contributing coset together with the progression of admissible
 * sliding parameters, which is always an arithmetic progression of step one
 * in the chosen normalization.
 */

#include <optional>
#include <vector>

#include "whcryst/cryst_group.hpp"
#include "whcryst/finite_group.hpp"
#include "whcryst/intsolve.hpp"

namespace whcryst {

/// Affine line { p + t h }. Canonical: h primitive with positive leading
/// entry, p orthogonal to h in the standard dot product.
struct Line {
    VecQ p;
    VecZ h;
};

Line make_line(const VecQ& p, const VecZ& h);
bool same_line(const Line& a, const Line& b);

/// The finite stabilizer of a point, with its multiplication table. The
/// element list and the table share indices; index 0 is the identity.
struct PointStabilizer {
    VecQ point;
    std::vector<AffineIsometry> elements;
    FiniteGroupTable table;
};

PointStabilizer point_stabilizer(const CrystGroup& g, const VecQ& q);

/// Setwise stabilizer of a line. Every element acts on the line parameter
/// as t -> eps t + s; per contributing coset the admissible s form a
/// progression. The full group is { rep * (translation by k h) : k in Z }
/// over all entries.
struct LineStabilizer {
    Line line;
    struct CosetEntry {
        AffineIsometry rep; // witness with s = progression value s0
        int eps;            // action J h = eps h
        Progression s;      // admissible sliding parameters
    };
    std::vector<CosetEntry> entries;

    Rat tmin;             // generator of the induced translation subgroup
    bool has_reflection;  // whether the induced action is infinite dihedral

    std::vector<AffineIsometry> fiber; // pointwise stabilizer, identity first
    FiniteGroupTable fiber_table;

    // Reflection data (only meaningful when has_reflection): the two
    // reflection point classes xa and xb = xa + tmin/2, and the finite
    // vertex groups fixing one point of each class.
    Rat xa, xb;
    std::vector<AffineIsometry> vertex_a, vertex_b;

    // Minimal-translation witness: eps = +1 and s = tmin. Present whenever
    // the stabilizer is infinite (it always is for a cocompact group).
    std::optional<AffineIsometry> g0;
};

LineStabilizer line_stabilizer(const CrystGroup& g, const Line& l);

/// Action of one element on a line it preserves: t -> eps t + s.
/// Nullopt when the element does not map the line to itself.
std::optional<std::pair<int, Rat>> line_action(const AffineIsometry& g, const Line& l);

/// Pointwise line stabilizer recomputed by iterated Schreier generators
/// (index-two descent to the orientation-preserving part, then the kernel
/// of the translation length). Independent of the structural route above;
/// the two must agree.
std::vector<AffineIsometry> schreier_fiber(const LineStabilizer& ls);

/// Orbit tests.
bool points_equivalent(const CrystGroup& g, const VecQ& q1, const VecQ& q2);
bool lines_equivalent(const CrystGroup& g, const Line& l1, const Line& l2);

/// Common fixed set of a finite element list, or nullopt when empty.
/// dirs empty means a single point; otherwise base + span(dirs).
struct AffineSubspace {
    VecQ base;
    std::vector<VecZ> dirs;
};
std::optional<AffineSubspace> fixed_space(const std::vector<AffineIsometry>& elems, int dim);

/// Representatives mod Z^n of fixed points of all point-type cosets
/// (linear part without eigenvalue one). Deterministic order.
std::vector<VecQ> rotation_point_candidates(const CrystGroup& g);

/// The two-dimensional group induced on the family of lines parallel to h
/// (3D only). Family coordinates xy refer to the points basis * xy in the
/// unimodular complement basis {b1, b2}; the adapted basis absorbs any
/// fractional family translations (in-plane glides), so the induced lattice
/// is exactly Z^2. basis is the identity when no such translations occur.
struct LineFamily {
    VecZ h;
    VecZ b1, b2;
    MatQ basis;
    CrystGroup induced;
};
LineFamily induced_line_family(const CrystGroup& g3, const VecZ& h);

/// The 3D line with family coordinates xy.
Line family_line(const LineFamily& fam, const VecQ& xy);

/// Eigen-structure of a finite set of lattice-preserving linear parts:
/// the common (+1)-eigenspace and the candidate axis directions obtained
/// by letting each matrix act as +1 or -1.
struct FixedSets {
    std::vector<VecZ> e0;        // basis of the common (+1)-eigenspace
    std::vector<VecZ> e1_axes;   // one-dimensional mixed-sign branches, deduped
    bool e1_fills_space = false; // some branch of dim >= 2 carries a -1 sign
};
FixedSets fixed_sets(const std::vector<MatZ>& mats, int dim);

/// Whether the full group acts cocompactly on l (always true once l is
/// validated against the group's dimension), and whether the subgroup
/// generated by s.gens has infinite image in the isometries of l. The
/// subgroup variant returns false when some generator does not preserve l.
bool is_vc_cocompact(const CrystGroup& g, const Line& l);
bool is_vc_cocompact(const CrystGroup& g, const SubgroupSpec& s, const Line& l);

} // namespace whcryst
