#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over Z and Q in dimensions 2 and 3.
 *
 * Integer matrices represent point-group elements in lattice coordinates;
 * rational matrices represent Gram forms and their derived data. Everything
 * is exact; there is no floating point anywhere in the library.
 */

#include <optional>
#include <vector>

#include "whcryst/rational.hpp"

namespace whcryst {

using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;

VecQ vq_from_z(const VecZ& v);
VecQ vq_add(const VecQ& a, const VecQ& b);
VecQ vq_sub(const VecQ& a, const VecQ& b);
VecQ vq_scale(const Rat& c, const VecQ& v);
VecQ vq_neg(const VecQ& v);
bool vq_is_zero(const VecQ& v);
bool vq_eq(const VecQ& a, const VecQ& b);
bool vq_is_integral(const VecQ& v);
VecZ vq_to_z(const VecQ& v);     // requires integral entries
VecQ vq_frac(const VecQ& v);     // componentwise fractional part in [0,1)
VecQ vq_zero(int n);

bool vz_eq(const VecZ& a, const VecZ& b);
bool vz_is_zero(const VecZ& v);
VecZ vz_neg(const VecZ& v);

/// Square integer matrix, row-major, dimension 2 or 3 (general n tolerated
/// by the helpers; validation of dim happens at the group layer).
struct MatZ {
    int n = 0;
    std::vector<Int> e;

    MatZ() = default;
    explicit MatZ(int dim) : n(dim), e(static_cast<size_t>(dim) * dim, Int(0)) {}

    Int& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    const Int& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }

    static MatZ identity(int dim);
    bool is_identity() const;
    bool operator==(const MatZ& o) const { return n == o.n && e == o.e; }
};

MatZ mz_mul(const MatZ& a, const MatZ& b);
MatZ mz_transpose(const MatZ& a);
Int mz_det(const MatZ& a); // n <= 3
VecQ mz_apply(const MatZ& m, const VecQ& v);
VecZ mz_apply_z(const MatZ& m, const VecZ& v);

/// Square rational matrix, row-major.
struct MatQ {
    int n = 0;
    std::vector<Rat> e;

    MatQ() = default;
    explicit MatQ(int dim) : n(dim), e(static_cast<size_t>(dim) * dim, Rat(0)) {}
    explicit MatQ(const MatZ& m);

    Rat& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    const Rat& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }

    static MatQ identity(int dim);
    bool operator==(const MatQ& o) const { return n == o.n && e == o.e; }
};

MatQ mq_mul(const MatQ& a, const MatQ& b);
VecQ mq_apply(const MatQ& m, const VecQ& v);
Rat mq_det(const MatQ& a);                 // n <= 3
std::optional<MatQ> mq_inverse(const MatQ& a); // n <= 3, nullopt when singular

/// Least k in [1, 12] with M^k = I, or nullopt when no such k exists.
/// For lattice-preserving matrices in dim <= 3 a finite order is always
/// found within the bound (element orders are restricted to {1,2,3,4,6});
/// nullopt therefore certifies infinite order for integral inputs.
std::optional<int> mat_order(const MatZ& m);

/// Positive-definite symmetric rational form; the metric in lattice
/// coordinates. Validated on construction.
struct GramForm {
    MatQ g;

    GramForm() = default;
    explicit GramForm(MatQ m);

    int dim() const { return g.n; }
    /// <u, v> with respect to the form.
    Rat inner(const VecQ& u, const VecQ& v) const;
};

/// Exact check that M^T G M = G.
bool gram_isometry_check(const GramForm& g, const MatZ& m);

/// Scale a nonzero rational vector to its primitive integer representative
/// (cleared denominators, content 1, first nonzero entry positive).
VecZ primitive_vector(const VecQ& v);

/// Basis of { w : <v, w>_G = 0 }, returned as dim-1 primitive integer
/// vectors. Throws ZeroVectorError when v = 0.
std::vector<VecZ> orthogonal_complement(const GramForm& g, const VecQ& v);

/// Basis of the rational kernel of the matrix with the given rows
/// (deterministic free-variable construction, each vector primitive).
std::vector<VecZ> kernel_q(const std::vector<VecQ>& rows, int ncols);

/// One rational solution of A x = b (rows of A as given), or nullopt when
/// the system is inconsistent.
std::optional<VecQ> solve_q(const std::vector<VecQ>& rows, const VecQ& b);

/// Kernel of (J - lambda I) for integer lambda, as primitive vectors.
std::vector<VecZ> eigenspace(const MatZ& j, const Int& lambda);

} // namespace whcryst
