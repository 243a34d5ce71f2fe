#include "whcryst/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "whcryst/errors.hpp"

namespace whcryst {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

VecQ vq_from_z(const VecZ& v) {
    VecQ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

VecQ vq_add(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

VecQ vq_sub(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

VecQ vq_scale(const Rat& c, const VecQ& v) {
    VecQ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

VecQ vq_neg(const VecQ& v) { return vq_scale(Rat(-1), v); }

bool vq_is_zero(const VecQ& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool vq_eq(const VecQ& a, const VecQ& b) { return a == b; }

bool vq_is_integral(const VecQ& v) {
    for (const auto& x : v)
        if (!is_integer(x)) return false;
    return true;
}

VecZ vq_to_z(const VecQ& v) {
    VecZ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!is_integer(v[i])) throw InternalError("vq_to_z on non-integral vector");
        r[i] = num(v[i]);
    }
    return r;
}

VecQ vq_frac(const VecQ& v) {
    VecQ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = frac(v[i]);
    return r;
}

VecQ vq_zero(int n) { return VecQ(static_cast<size_t>(n), Rat(0)); }

bool vz_eq(const VecZ& a, const VecZ& b) { return a == b; }

bool vz_is_zero(const VecZ& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

VecZ vz_neg(const VecZ& v) {
    VecZ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

MatZ MatZ::identity(int dim) {
    MatZ m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

bool MatZ::is_identity() const { return *this == identity(n); }

MatZ mz_mul(const MatZ& a, const MatZ& b) {
    if (a.n != b.n) throw DimensionError("matrix product dimension mismatch");
    MatZ c(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < a.n; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

MatZ mz_transpose(const MatZ& a) {
    MatZ t(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

Int mz_det(const MatZ& a) {
    if (a.n == 1) return a.at(0, 0);
    if (a.n == 2) return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    if (a.n == 3)
        return a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1)) -
               a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0)) +
               a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
    throw DimensionError("determinant only for n <= 3");
}

VecQ mz_apply(const MatZ& m, const VecQ& v) {
    if (static_cast<int>(v.size()) != m.n) throw DimensionError("matrix-vector dimension mismatch");
    VecQ r(v.size(), Rat(0));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r[i] += Rat(m.at(i, j)) * v[j];
    return r;
}

VecZ mz_apply_z(const MatZ& m, const VecZ& v) {
    if (static_cast<int>(v.size()) != m.n) throw DimensionError("matrix-vector dimension mismatch");
    VecZ r(v.size(), Int(0));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

MatQ::MatQ(const MatZ& m) : n(m.n), e(m.e.size()) {
    for (size_t i = 0; i < m.e.size(); ++i) e[i] = Rat(m.e[i]);
}

MatQ MatQ::identity(int dim) {
    MatQ m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

MatQ mq_mul(const MatQ& a, const MatQ& b) {
    if (a.n != b.n) throw DimensionError("matrix product dimension mismatch");
    MatQ c(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < a.n; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

VecQ mq_apply(const MatQ& m, const VecQ& v) {
    if (static_cast<int>(v.size()) != m.n) throw DimensionError("matrix-vector dimension mismatch");
    VecQ r(v.size(), Rat(0));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

Rat mq_det(const MatQ& a) {
    if (a.n == 1) return a.at(0, 0);
    if (a.n == 2) return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    if (a.n == 3)
        return a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1)) -
               a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0)) +
               a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
    throw DimensionError("determinant only for n <= 3");
}

std::optional<MatQ> mq_inverse(const MatQ& a) {
    Rat d = mq_det(a);
    if (d == 0) return std::nullopt;
    MatQ inv(a.n);
    if (a.n == 1) {
        inv.at(0, 0) = 1 / d;
        return inv;
    }
    if (a.n == 2) {
        inv.at(0, 0) = a.at(1, 1) / d;
        inv.at(0, 1) = -a.at(0, 1) / d;
        inv.at(1, 0) = -a.at(1, 0) / d;
        inv.at(1, 1) = a.at(0, 0) / d;
        return inv;
    }
    // Adjugate for n = 3.
    auto cof = [&](int i, int j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        return a.at(r0, c0) * a.at(r1, c1) - a.at(r0, c1) * a.at(r1, c0);
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv.at(j, i) = cof(i, j) / d;
    return inv;
}

static constexpr int kMatOrderBound = 12;

std::optional<int> mat_order(const MatZ& m) {
    MatZ p = m;
    for (int k = 1; k <= kMatOrderBound; ++k) {
        if (p.is_identity()) return k;
        p = mz_mul(p, m);
    }
    return std::nullopt;
}

GramForm::GramForm(MatQ m) : g(std::move(m)) {
    if (g.n != 2 && g.n != 3) throw DimensionError("Gram form must have dimension 2 or 3");
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < i; ++j)
            if (g.at(i, j) != g.at(j, i)) throw ValidationError("Gram form not symmetric");
    // Sylvester criterion: positive leading principal minors.
    if (g.at(0, 0) <= 0) throw ValidationError("Gram form not positive definite");
    Rat m2 = g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
    if (m2 <= 0) throw ValidationError("Gram form not positive definite");
    if (g.n == 3 && mq_det(g) <= 0) throw ValidationError("Gram form not positive definite");
}

Rat GramForm::inner(const VecQ& u, const VecQ& v) const {
    if (static_cast<int>(u.size()) != g.n || static_cast<int>(v.size()) != g.n)
        throw DimensionError("inner product dimension mismatch");
    Rat s = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) s += u[i] * g.at(i, j) * v[j];
    return s;
}

bool gram_isometry_check(const GramForm& g, const MatZ& m) {
    if (m.n != g.dim()) throw DimensionError("isometry check dimension mismatch");
    MatQ mt(mz_transpose(m));
    MatQ mm(m);
    return mq_mul(mq_mul(mt, g.g), mm) == g.g;
}

VecZ primitive_vector(const VecQ& v) {
    if (vq_is_zero(v)) throw ZeroVectorError("primitive_vector of zero vector");
    Int l = 1;
    for (const auto& x : v) l = lcm(l, den(x));
    VecZ w(v.size());
    Int content = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        w[i] = num(v[i]) * (l / den(v[i]));
        content = gcd(content, abs(w[i]));
    }
    for (auto& x : w) x /= content;
    for (const auto& x : w) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : w) y = -y;
        break;
    }
    return w;
}

std::vector<VecZ> orthogonal_complement(const GramForm& g, const VecQ& v) {
    if (vq_is_zero(v)) throw ZeroVectorError("orthogonal complement of zero vector");
    // Row functional w -> <v, w>_G.
    VecQ r(static_cast<size_t>(g.dim()), Rat(0));
    for (int j = 0; j < g.dim(); ++j)
        for (int i = 0; i < g.dim(); ++i) r[j] += v[i] * g.g.at(i, j);
    return kernel_q({r}, g.dim());
}

std::vector<VecZ> kernel_q(const std::vector<VecQ>& rows, int ncols) {
    // Reduced row echelon form with deterministic pivot order.
    std::vector<VecQ> a = rows;
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (int c = 0; c < ncols && rank < a.size(); ++c) {
        size_t sel = rank;
        while (sel < a.size() && a[sel][c] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[rank], a[sel]);
        Rat inv = 1 / a[rank][c];
        for (int j = 0; j < ncols; ++j) a[rank][j] *= inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[rank][j];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<VecZ> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        VecQ w = vq_zero(ncols);
        w[f] = 1;
        for (size_t i = 0; i < rank; ++i) w[pivot_col[i]] = -a[i][f];
        basis.push_back(primitive_vector(w));
    }
    return basis;
}

std::optional<VecQ> solve_q(const std::vector<VecQ>& rows, const VecQ& b) {
    int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    std::vector<VecQ> a = rows;
    VecQ rhs = b;
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (int c = 0; c < ncols && rank < a.size(); ++c) {
        size_t sel = rank;
        while (sel < a.size() && a[sel][c] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[rank], a[sel]);
        std::swap(rhs[rank], rhs[sel]);
        Rat inv = 1 / a[rank][c];
        for (int j = 0; j < ncols; ++j) a[rank][j] *= inv;
        rhs[rank] *= inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[rank][j];
            rhs[i] -= f * rhs[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (size_t i = rank; i < a.size(); ++i)
        if (rhs[i] != 0) return std::nullopt;
    VecQ x = vq_zero(ncols);
    for (size_t i = 0; i < rank; ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

std::vector<VecZ> eigenspace(const MatZ& j, const Int& lambda) {
    std::vector<VecQ> rows;
    for (int i = 0; i < j.n; ++i) {
        VecQ r(static_cast<size_t>(j.n));
        for (int c = 0; c < j.n; ++c) {
            r[c] = Rat(j.at(i, c));
            if (i == c) r[c] -= Rat(lambda);
        }
        rows.push_back(std::move(r));
    }
    return kernel_q(rows, j.n);
}

} // namespace whcryst
