#pragma once

/**
 * @file finite_group.hpp
 * @brief Finite groups as multiplication tables, and their classification.
 *
 * Tables are validated on construction: index 0 is the identity, rows and
 * columns are permutations, and associativity holds (checked exhaustively;
 * orders here never exceed 48). The type catalog collapses abstract
 * coincidences: a Klein table identifies as D2, C3 x C2 as C6, and
 * D3 x C2 as D6 (D3xC2 remains available as an alias tag only).
 */

#include <optional>
#include <string>
#include <vector>

#include "whcryst/errors.hpp"

namespace whcryst {

enum class FiniteType {
    Trivial,
    C2,
    C3,
    C4,
    C6,
    D2,
    D3,
    D4,
    D6,
    C4xC2,
    C6xC2,
    D2xC2,
    D3xC2, // alias tag; identification always reports D6 for this class
    D4xC2,
    D6xC2,
    A4,
    S4,
    A4xC2,
    S4xC2,
};

std::string type_name(FiniteType t);
std::optional<FiniteType> type_from_name(const std::string& name);
int type_order(FiniteType t);
/// Collapse alias tags to the canonical isomorphism-type tag.
FiniteType canonical_type(FiniteType t);
/// All 18 canonical catalog types (alias tags excluded), fixed order.
const std::vector<FiniteType>& catalog_types();

struct FiniteGroupTable {
    int n = 0;
    std::vector<int> mul; // mul[i*n + j] = index of element i * element j
    std::vector<std::string> labels;

    FiniteGroupTable() = default;
    FiniteGroupTable(int order, std::vector<int> table, std::vector<std::string> names = {});

    int at(int i, int j) const { return mul[static_cast<size_t>(i) * n + j]; }
    int inverse_of(int i) const;
    int element_order(int i) const;
    bool is_abelian() const;
    /// Sorted (order, count) pairs over all elements.
    std::vector<std::pair<int, int>> order_histogram() const;
};

/// Build a table from explicit elements with a composition callback.
/// The identity is detected and moved to index 0.
template <typename T, typename MulFn, typename EqFn>
FiniteGroupTable make_table(const std::vector<T>& elems, MulFn&& mulfn, EqFn&& eqfn,
                            std::vector<std::string> labels = {}) {
    const int n = static_cast<int>(elems.size());
    auto index_of = [&](const T& x) {
        for (int i = 0; i < n; ++i)
            if (eqfn(elems[i], x)) return i;
        return -1;
    };
    std::vector<int> mul(static_cast<size_t>(n) * n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = index_of(mulfn(elems[i], elems[j]));
            if (k < 0) throw ValidationError("element set not closed under composition");
            mul[static_cast<size_t>(i) * n + j] = k;
        }
    // Locate the identity and swap it to index 0.
    int id = -1;
    for (int i = 0; i < n && id < 0; ++i) {
        bool ok = true;
        for (int j = 0; j < n; ++j)
            if (mul[static_cast<size_t>(i) * n + j] != j || mul[static_cast<size_t>(j) * n + i] != j)
                ok = false;
        if (ok) id = i;
    }
    if (id < 0) throw ValidationError("element set has no identity");
    if (id != 0) {
        std::vector<int> perm(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::swap(perm[0], perm[id]);
        std::vector<int> remapped(static_cast<size_t>(n) * n);
        std::vector<int> inv = perm; // perm is an involution here
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                remapped[static_cast<size_t>(i) * n + j] =
                    inv[mul[static_cast<size_t>(perm[i]) * n + perm[j]]];
        mul = std::move(remapped);
        if (!labels.empty()) {
            std::swap(labels[0], labels[id]);
        }
    }
    return FiniteGroupTable(n, std::move(mul), std::move(labels));
}

FiniteGroupTable make_trivial();
FiniteGroupTable make_cyclic(int n);
FiniteGroupTable make_dihedral(int n); // order 2n, n >= 1
FiniteGroupTable make_direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);
FiniteGroupTable make_A4();
FiniteGroupTable make_S4();
/// The validated reference table of a catalog type (canonical tags only).
const FiniteGroupTable& reference_table(FiniteType t);

/// Conjugacy classes as sorted index lists, ordered by smallest member.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroupTable& t);

/// Number of equivalence classes of elements under conjugacy combined with
/// inversion (classes of unordered pairs {g, g^-1}).
int inverse_pair_classes(const FiniteGroupTable& t);

/// Number of conjugacy classes of cyclic subgroups (trivial one included).
int cyclic_subgroup_classes(const FiniteGroupTable& t);

/// Subgroup generated by the given element indices, as a sorted index list.
std::vector<int> subgroup_closure(const FiniteGroupTable& t, std::vector<int> gens);

/// A small generating set (greedy search over sizes 1..4).
std::vector<int> find_generating_set(const FiniteGroupTable& t);

/// All automorphisms as permutation arrays (perm[i] = image of element i).
std::vector<std::vector<int>> automorphisms(const FiniteGroupTable& t);

/// One isomorphism a -> b as a permutation-style map, or nullopt.
std::optional<std::vector<int>> isomorphism(const FiniteGroupTable& a, const FiniteGroupTable& b);

/// The outer automorphism group: quotient table of Aut by Inn, plus a
/// representative automorphism per quotient element (index 0 = trivial
/// class). Orders here stay small (inputs of order <= 48).
struct OutGroup {
    FiniteGroupTable table;
    std::vector<std::vector<int>> reps;
};
OutGroup out_group(const FiniteGroupTable& t);

/// Order of the class of the given automorphism in Out (1 when inner).
int outer_class_order(const FiniteGroupTable& t, const std::vector<int>& aut);

/// Identify the isomorphism type within the catalog. Throws
/// NotInCatalogError when the table matches no catalog type.
FiniteType identify_type(const FiniteGroupTable& t);

} // namespace whcryst
