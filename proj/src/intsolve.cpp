#include "whcryst/intsolve.hpp"

#include <algorithm>
#include <map>

#include "whcryst/errors.hpp"

namespace whcryst {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

namespace {

// Clear denominators row by row: returns integer rows and right-hand side.
// Each row is scaled by the lcm of its denominators (including b's).
struct IntRows {
    std::vector<VecZ> a;
    VecZ b;
};

IntRows clear_denominators(const std::vector<VecQ>& rows, const VecQ& b, int ncols) {
    IntRows out;
    for (size_t i = 0; i < rows.size(); ++i) {
        Int l = den(b[i]);
        for (int j = 0; j < ncols; ++j) l = lcm(l, den(rows[i][j]));
        VecZ r(static_cast<size_t>(ncols));
        for (int j = 0; j < ncols; ++j) r[j] = num(rows[i][j]) * (l / den(rows[i][j]));
        out.a.push_back(std::move(r));
        out.b.push_back(num(b[i]) * (l / den(b[i])));
    }
    return out;
}

} // namespace

std::optional<IntSolution> solve_integer(const std::vector<VecQ>& rows, const VecQ& b, int ncols) {
    if (rows.size() != b.size()) throw DimensionError("solve_integer shape mismatch");
    IntRows sys = clear_denominators(rows, b, ncols);
    const int m = static_cast<int>(sys.a.size());
    const int n = ncols;

    // Column-style Hermite elimination A U = H with U unimodular. H ends in
    // column echelon form: pivot columns 0..rank-1 with strictly increasing
    // pivot rows and zeros to the right of each pivot in its row.
    std::vector<VecZ> h = sys.a; // m rows of length n
    std::vector<VecZ> u(static_cast<size_t>(n), VecZ(static_cast<size_t>(n), Int(0)));
    for (int j = 0; j < n; ++j) u[j][j] = 1; // u stored column-major: u[j] is column j

    auto col_addmul = [&](int dst, int src, const Int& f) {
        for (int i = 0; i < m; ++i) h[i][dst] += f * h[i][src];
        for (int i = 0; i < n; ++i) u[dst][i] += f * u[src][i];
    };
    auto col_swap = [&](int a2, int b2) {
        for (int i = 0; i < m; ++i) std::swap(h[i][a2], h[i][b2]);
        std::swap(u[a2], u[b2]);
    };
    auto col_neg = [&](int c) {
        for (int i = 0; i < m; ++i) h[i][c] = -h[i][c];
        for (int i = 0; i < n; ++i) u[c][i] = -u[c][i];
    };

    int rank = 0;
    std::vector<int> pivot_row;
    for (int r = 0; r < m && rank < n; ++r) {
        // Reduce all entries in row r on columns >= rank to a single gcd.
        bool any = false;
        for (int c = rank; c < n; ++c)
            if (h[r][c] != 0) any = true;
        if (!any) continue;
        for (;;) {
            int piv = -1;
            for (int c = rank; c < n; ++c) {
                if (h[r][c] == 0) continue;
                if (piv == -1 || abs(h[r][c]) < abs(h[r][piv])) piv = c;
            }
            if (piv != rank) col_swap(rank, piv);
            bool done = true;
            for (int c = rank + 1; c < n; ++c) {
                if (h[r][c] == 0) continue;
                Int q = h[r][c] / h[r][rank];
                col_addmul(c, rank, -q);
                if (h[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (h[r][rank] < 0) col_neg(rank);
        pivot_row.push_back(r);
        ++rank;
    }

    // Forward substitution on pivot columns; free columns stay 0.
    VecZ y(static_cast<size_t>(n), Int(0));
    for (int k = 0; k < rank; ++k) {
        int r = pivot_row[k];
        Int acc = sys.b[r];
        for (int j = 0; j < k; ++j) acc -= h[r][j] * y[j];
        if (acc % h[r][k] != 0) return std::nullopt;
        y[k] = acc / h[r][k];
    }
    // Verify all rows (consistency of non-pivot rows).
    for (int r = 0; r < m; ++r) {
        Int acc = 0;
        for (int j = 0; j < rank; ++j) acc += h[r][j] * y[j];
        if (acc != sys.b[r]) return std::nullopt;
    }

    IntSolution sol;
    sol.particular.assign(static_cast<size_t>(n), Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sol.particular[i] += u[j][i] * y[j];
    for (int j = rank; j < n; ++j) sol.lattice.push_back(u[j]);
    return sol;
}

Rat Progression::min_abs() const {
    // t0 - round(t0/step)*step, ties toward positive.
    Rat ratio = t0 / step;
    Int fl = floor_rat(ratio);
    Rat cand1 = t0 - Rat(fl) * step;     // in [0, step)
    Rat cand2 = cand1 - step;            // in [-step, 0)
    if (cand1 + cand2 > 0) return cand2; // |cand2| < |cand1|
    return cand1;                        // includes tie cand1 = step/2
}

Rat Progression::mod_step() const {
    Rat ratio = t0 / step;
    return t0 - Rat(floor_rat(ratio)) * step;
}

bool Progression::contains(const Rat& t) const { return is_integer((t - t0) / step); }

std::optional<Progression> line_feasible(const VecQ& c, const VecZ& h) {
    const int n = static_cast<int>(h.size());
    if (static_cast<int>(c.size()) != n) throw DimensionError("line_feasible shape mismatch");
    if (vz_is_zero(h)) throw ZeroVectorError("line_feasible with zero direction");
    int p = 0;
    while (h[p] == 0) ++p;
    // Eliminate t = (z_p - c_p) / h_p from the remaining rows:
    //   h_p z_i - h_i z_p = h_p c_i - h_i c_p   for i != p.
    std::vector<VecQ> rows;
    VecQ rhs;
    for (int i = 0; i < n; ++i) {
        if (i == p) continue;
        VecQ r = vq_zero(n);
        r[i] = Rat(h[p]);
        r[p] = Rat(-h[i]);
        rows.push_back(std::move(r));
        rhs.push_back(Rat(h[p]) * c[i] - Rat(h[i]) * c[p]);
    }
    auto sol = solve_integer(rows, rhs, n);
    if (!sol) return std::nullopt;
    // Solutions differ by integer multiples of h (h primitive), so the
    // parameter set is t0 + Z.
    Rat t0 = (Rat(sol->particular[p]) - c[p]) / Rat(h[p]);
    return Progression{frac(t0), Rat(1)}; // normalized representative in [0,1)
}

std::optional<MixedWitness> mixed_feasible(const VecQ& c, const std::vector<VecQ>& v_cols) {
    const int n = static_cast<int>(c.size());
    const int k = static_cast<int>(v_cols.size());
    if (k == 0) {
        if (!vq_is_integral(c)) return std::nullopt;
        return MixedWitness{vq_to_z(c), {}};
    }
    // Left-kernel of V: rows y with y^T V = 0. Conditions on z: K z = K c.
    std::vector<VecQ> vt_rows; // k rows of length n: row j = column j of V
    for (const auto& col : v_cols) vt_rows.push_back(col);
    std::vector<VecZ> lk = kernel_q(vt_rows, n);
    std::vector<VecQ> krows;
    VecQ krhs;
    for (const auto& y : lk) {
        VecQ row = vq_from_z(y);
        Rat r = 0;
        for (int i = 0; i < n; ++i) r += row[i] * c[i];
        krows.push_back(std::move(row));
        krhs.push_back(r);
    }
    auto sol = solve_integer(krows, krhs, n);
    if (!sol) return std::nullopt;
    // Recover t from V t = z - c (consistent by construction).
    std::vector<VecQ> vrows(static_cast<size_t>(n), vq_zero(k));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) vrows[i][j] = v_cols[j][i];
    VecQ d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) d[i] = Rat(sol->particular[i]) - c[i];
    auto t = solve_q(vrows, d);
    if (!t) throw InternalError("mixed_feasible: inconsistent recovery");
    return MixedWitness{sol->particular, *t};
}

VecZ bezout_row(const VecZ& h) {
    const int n = static_cast<int>(h.size());
    // Extended gcd across components: maintain u with u . h = g.
    VecZ u(static_cast<size_t>(n), Int(0));
    Int g = 0;
    for (int i = 0; i < n; ++i) {
        if (h[i] == 0) continue;
        if (g == 0) {
            g = abs(h[i]);
            u[i] = h[i] > 0 ? 1 : -1;
            continue;
        }
        // g' = gcd(g, h_i) = x g + y h_i  (iterative extended Euclid).
        Int a = g, b = abs(h[i]);
        Int x0 = 1, x1 = 0;
        while (b != 0) {
            Int q = a / b;
            Int r = a - q * b;
            a = b;
            b = r;
            Int x2 = x0 - q * x1;
            x0 = x1;
            x1 = x2;
        }
        // a = gcd, x0 satisfies: x0 * g === a (mod |h_i|); y = (a - x0*g)/|h_i|.
        Int y = (a - x0 * g) / abs(h[i]);
        for (auto& c : u) c *= x0;
        u[i] += (h[i] > 0 ? y : -y);
        g = a;
    }
    if (g != 1) throw ValidationError("bezout_row requires a primitive vector");
    return u;
}

std::vector<VecQ> residue_subgroup(const std::vector<VecQ>& gens, int k) {
    std::map<VecQ, bool> seen;
    std::vector<VecQ> frontier{vq_frac(vq_zero(k))};
    seen[frontier[0]] = true;
    std::vector<VecQ> out{frontier[0]};
    while (!frontier.empty()) {
        std::vector<VecQ> next;
        for (const auto& x : frontier) {
            for (const auto& g : gens) {
                VecQ y = vq_frac(vq_add(x, g));
                if (seen.emplace(y, true).second) {
                    out.push_back(y);
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace whcryst
