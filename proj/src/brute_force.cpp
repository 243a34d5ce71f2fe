#include "whcryst/brute_force.hpp"

#include <algorithm>
#include <utility>

#include "whcryst/errors.hpp"

namespace whcryst {

namespace {

struct FixedLine {
    VecQ p;
    VecZ d;
};

std::vector<VecQ> residue_rows(const MatZ& j) {
    // rows of (I - J)
    std::vector<VecQ> rows;
    for (int r = 0; r < j.n; ++r) {
        VecQ row(j.n);
        for (int c = 0; c < j.n; ++c) row[c] = Rat((r == c ? Int(1) : Int(0)) - j.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

bool lex_less(const VecQ& a, const VecQ& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

/// Cosets whose translation completes to an element fixing p, with that
/// integral translation. Includes the identity coset.
std::vector<std::pair<size_t, VecQ>> stabilizer_cosets(const CrystGroup& g, const VecQ& p) {
    std::vector<std::pair<size_t, VecQ>> out;
    for (size_t i = 0; i < g.cosets.size(); ++i) {
        VecQ t = vq_sub(p, vq_add(mz_apply(g.cosets[i].j, p), g.cosets[i].a));
        if (vq_is_integral(t)) out.emplace_back(i, std::move(t));
    }
    return out;
}

bool orbit_related(const CrystGroup& g, const VecQ& p, const VecQ& q) {
    for (const auto& c : g.cosets)
        if (vq_is_integral(vq_sub(q, vq_add(mz_apply(c.j, p), c.a)))) return true;
    return false;
}

} // namespace

std::vector<VecQ> brute_force_fixed_points(const CrystGroup& g, int radius) {
    if (g.dim != 2) throw DimensionError("brute-force fixed points require a dim-2 group");
    std::vector<VecQ> points;
    std::vector<FixedLine> lines;
    auto add_point = [&](const VecQ& x) {
        VecQ r = vq_frac(x);
        for (const VecQ& have : points)
            if (vq_eq(have, r)) return;
        points.push_back(std::move(r));
    };
    for (const auto& c : g.cosets) {
        if (c.j.is_identity()) continue;
        std::vector<VecQ> rows = residue_rows(c.j);
        for (int tx = -radius; tx <= radius; ++tx) {
            for (int ty = -radius; ty <= radius; ++ty) {
                VecQ b = vq_add(c.a, VecQ{Rat(tx), Rat(ty)});
                auto x0 = solve_q(rows, b);
                if (!x0) continue;
                auto ker = kernel_q(rows, 2);
                if (ker.empty())
                    add_point(*x0);
                else
                    lines.push_back({*x0, ker[0]});
            }
        }
    }
    for (size_t i = 0; i < lines.size(); ++i) {
        for (size_t k = i + 1; k < lines.size(); ++k) {
            // p_i + s d_i = p_k + u d_k
            std::vector<VecQ> rows = {
                VecQ{Rat(lines[i].d[0]), Rat(-lines[k].d[0])},
                VecQ{Rat(lines[i].d[1]), Rat(-lines[k].d[1])},
            };
            if (!kernel_q(rows, 2).empty()) continue; // parallel
            auto su = solve_q(rows, vq_sub(lines[k].p, lines[i].p));
            if (!su) continue;
            add_point(vq_add(lines[i].p, vq_scale((*su)[0], vq_from_z(lines[i].d))));
        }
    }
    std::sort(points.begin(), points.end(), lex_less);
    return points;
}

int brute_force_max_finite_classes(const CrystGroup& g, int radius) {
    std::vector<VecQ> pts = brute_force_fixed_points(g, radius);

    // keep the candidates whose stabilizer is not properly contained in the
    // stabilizer of another candidate anywhere across the window
    std::vector<VecQ> maximal;
    for (const VecQ& p : pts) {
        auto sp = stabilizer_cosets(g, p);
        bool dominated = false;
        for (const VecQ& q : pts) {
            for (int zx = -radius; zx <= radius && !dominated; ++zx) {
                for (int zy = -radius; zy <= radius && !dominated; ++zy) {
                    VecQ q2 = vq_add(q, VecQ{Rat(zx), Rat(zy)});
                    if (stabilizer_cosets(g, q2).size() <= sp.size()) continue;
                    bool contains = true;
                    for (const auto& [ci, t] : sp) {
                        const auto& c = g.cosets[ci];
                        VecQ img = vq_add(vq_add(mz_apply(c.j, q2), c.a), t);
                        if (!vq_eq(img, q2)) {
                            contains = false;
                            break;
                        }
                    }
                    dominated = contains;
                }
            }
            if (dominated) break;
        }
        if (!dominated) maximal.push_back(p);
    }

    std::vector<VecQ> reps;
    for (const VecQ& p : maximal) {
        bool seen = false;
        for (const VecQ& r : reps)
            if (orbit_related(g, p, r)) {
                seen = true;
                break;
            }
        if (!seen) reps.push_back(p);
    }
    return static_cast<int>(reps.size());
}

} // namespace whcryst
