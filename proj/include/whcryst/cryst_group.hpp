#pragma once

/**
 * @file cryst_group.hpp
 * @brief Crystallographic groups in lattice coordinates.
 *
 * A group is stored by its finite coset system modulo the translation
 * lattice Z^dim: one affine representative (J, a) per point-group element J,
 * with a reduced into [0,1)^dim. Validity means: every J is an integer
 * matrix preserving the Gram form, the coset system is closed under
 * composition modulo Z^dim, the point group has at most 12 (dim 2) or 48
 * (dim 3) elements, and every element order lies in {1,2,3,4,6}.
 */

#include <string>
#include <vector>

#include "whcryst/linalg.hpp"

namespace whcryst {

/// Affine map x -> J x + a with J an integer matrix and a rational.
struct AffineIsometry {
    MatZ j;
    VecQ a;

    AffineIsometry() = default;
    AffineIsometry(MatZ lin, VecQ tr) : j(std::move(lin)), a(std::move(tr)) {}

    static AffineIsometry identity(int dim);
    static AffineIsometry translation(const VecQ& t);

    VecQ apply(const VecQ& x) const;
    bool operator==(const AffineIsometry& o) const { return j == o.j && a == o.a; }
};

AffineIsometry compose(const AffineIsometry& f, const AffineIsometry& g); // f after g
AffineIsometry inverse(const AffineIsometry& f);
AffineIsometry power(const AffineIsometry& f, long k);

struct CrystGroup {
    std::string name;
    int dim = 0;
    GramForm gram;
    std::vector<AffineIsometry> cosets; // cosets[0] = identity, a in [0,1)^dim

    /// Index of the coset with the given linear part, or -1.
    int coset_index(const MatZ& j) const;
    const AffineIsometry& identity_coset() const { return cosets[0]; }
};

/// Subgroup given by a generating set inside a parent group. Generator
/// translations are NOT reduced modulo the lattice.
struct SubgroupSpec {
    CrystGroup group;
    std::vector<AffineIsometry> gens;
};

/// Parse and validate a group from its JSON text. Throws ParseError for
/// malformed input and ValidationError for well-formed input that is not a
/// crystallographic group with translation lattice exactly Z^dim.
CrystGroup parse_group(const std::string& json_text, const std::string& origin = "<input>");

/// Serialize a group back to its canonical JSON text.
std::string group_to_json(const CrystGroup& g);

/// Build a validated group from parts (same checks as parse_group).
CrystGroup make_group(std::string name, int dim, GramForm gram,
                      const std::vector<AffineIsometry>& generators);

/// The point group as a list of matrices (same order as cosets).
std::vector<MatZ> point_group(const CrystGroup& g);

/// All elements (J, a + z) with ||a + z||_inf <= radius.
std::vector<AffineIsometry> elements_in_ball(const CrystGroup& g, const Rat& radius);

/// The product with an infinite cyclic direct factor: dim must be 2; the
/// result is the dim-3 group with Gram blockdiag(G, 1) and cosets J + 1.
CrystGroup product_with_Z(const CrystGroup& g);

} // namespace whcryst
