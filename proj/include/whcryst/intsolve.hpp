#pragma once

/**
 * @file intsolve.hpp
 * @brief Exact integer feasibility of affine rational systems.
 *
 * The geometric layer reduces every "does a group element exist" question
 * to one of these primitives:
 *   - solve A x = b for x in Z^n (Hermite elimination with unimodular
 *     column tracking),
 *   - the one-parameter family z = c + t h meeting Z^n (progressions of t),
 *   - the k-parameter family z = c + V t meeting Z^n (mixed feasibility),
 *   - enumeration of finite subgroups of (Q/Z)^k given generators.
 */

#include <optional>
#include <vector>

#include "whcryst/linalg.hpp"

namespace whcryst {

/// Solution of an integer linear system: one particular solution plus a
/// basis of the lattice of homogeneous integer solutions.
struct IntSolution {
    VecZ particular;
    std::vector<VecZ> lattice;
};

/// Solve A x = b with A rational (rows), x in Z^n. Returns nullopt when no
/// integer solution exists.
std::optional<IntSolution> solve_integer(const std::vector<VecQ>& rows, const VecQ& b, int ncols);

/// Arithmetic progression { t0 + k * step : k in Z } of rational numbers.
struct Progression {
    Rat t0;
    Rat step;

    /// Smallest-|t| representative; ties resolved toward positive t.
    Rat min_abs() const;
    /// Representative in [0, step).
    Rat mod_step() const;
    bool contains(const Rat& t) const;
};

/// Feasible t for c + t h in Z^n with h a primitive integer direction.
/// The step is always 1 for primitive h. Returns nullopt when infeasible.
std::optional<Progression> line_feasible(const VecQ& c, const VecZ& h);

/// Mixed feasibility: exists t in Q^k with c + V t in Z^n (V given by
/// columns). Returns one witness (z, t) when feasible.
struct MixedWitness {
    VecZ z;
    VecQ t;
};
std::optional<MixedWitness> mixed_feasible(const VecQ& c, const std::vector<VecQ>& v_cols);

/// Integer row u with u . h = 1 for primitive h.
VecZ bezout_row(const VecZ& h);

/// All elements of the subgroup of (Q/Z)^k generated by the given vectors,
/// with componentwise representatives in [0, 1). The subgroup is finite
/// because each generator has finite order modulo Z^k. Deterministic order.
std::vector<VecQ> residue_subgroup(const std::vector<VecQ>& gens, int k);

} // namespace whcryst
