#include "whcryst/geometry.hpp"

#include <algorithm>
#include <set>

#include "whcryst/linalg.hpp"

namespace whcryst {

namespace {

Rat dot_qq(const VecQ& a, const VecQ& b) {
    Rat r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

VecQ z_to_q(const VecZ& v) {
    VecQ r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

// Group element translating by k h.
AffineIsometry lattice_shift(const VecZ& h, int dim) {
    AffineIsometry t = AffineIsometry::identity(dim);
    t.a = z_to_q(h);
    return t;
}

} // namespace

Line make_line(const VecQ& p, const VecZ& h) {
    VecZ hp = primitive_vector(z_to_q(h));
    VecQ hq = z_to_q(hp);
    Rat t = dot_qq(p, hq) / dot_qq(hq, hq);
    return Line{vq_sub(p, vq_scale(t, hq)), hp};
}

bool same_line(const Line& a, const Line& b) { return a.h == b.h && vq_eq(a.p, b.p); }

PointStabilizer point_stabilizer(const CrystGroup& g, const VecQ& q) {
    std::vector<AffineIsometry> elems;
    for (const auto& c : g.cosets) {
        VecQ z = vq_sub(q, vq_add(mz_apply(c.j, q), c.a));
        if (vq_is_integral(z)) elems.push_back(AffineIsometry{c.j, vq_add(c.a, z)});
    }
    auto table = make_table(
        elems, [](const AffineIsometry& x, const AffineIsometry& y) { return compose(x, y); },
        [](const AffineIsometry& x, const AffineIsometry& y) { return x == y; });
    return PointStabilizer{q, std::move(elems), std::move(table)};
}

std::optional<std::pair<int, Rat>> line_action(const AffineIsometry& g, const Line& l) {
    VecZ jh = mz_apply_z(g.j, l.h);
    int eps;
    if (jh == l.h)
        eps = 1;
    else if (jh == vz_neg(l.h))
        eps = -1;
    else
        return std::nullopt;
    VecQ hq = z_to_q(l.h);
    VecQ delta = vq_sub(vq_add(mz_apply(g.j, l.p), g.a), l.p);
    Rat s = dot_qq(delta, hq) / dot_qq(hq, hq);
    if (!vq_eq(delta, vq_scale(s, hq))) return std::nullopt;
    return std::make_pair(eps, s);
}

LineStabilizer line_stabilizer(const CrystGroup& g, const Line& line_in) {
    LineStabilizer ls;
    ls.line = make_line(line_in.p, line_in.h);
    const Line& l = ls.line;
    const VecQ hq = z_to_q(l.h);

    for (const auto& c : g.cosets) {
        VecZ jh = mz_apply_z(c.j, l.h);
        int eps;
        if (jh == l.h)
            eps = 1;
        else if (jh == vz_neg(l.h))
            eps = -1;
        else
            continue;
        VecQ cc = vq_sub(l.p, vq_add(mz_apply(c.j, l.p), c.a));
        auto prog = line_feasible(cc, l.h);
        if (!prog) continue;
        VecQ z = vq_add(cc, vq_scale(prog->t0, hq));
        if (!vq_is_integral(z)) throw InternalError("sliding witness is not a lattice vector");
        ls.entries.push_back({AffineIsometry{c.j, vq_add(c.a, z)}, eps, *prog});
    }
    if (ls.entries.empty() || !ls.entries[0].rep.j.is_identity())
        throw InternalError("identity coset missing from line stabilizer");

    // Translation subgroup of the induced action on the line: generated by
    // the orientation-preserving sliding values, differences of reflection
    // values, and the lattice translation by h itself.
    ls.has_reflection = false;
    Rat t = 1;
    std::optional<Rat> refl0;
    for (const auto& e : ls.entries) {
        if (e.eps == 1) {
            t = rat_gcd(t, e.s.t0);
        } else {
            ls.has_reflection = true;
            if (!refl0)
                refl0 = e.s.t0;
            else
                t = rat_gcd(t, e.s.t0 - *refl0);
        }
    }
    ls.tmin = t;

    // Pointwise stabilizer: eps = +1 and sliding value exactly zero. The
    // progressions are normalized with t0 in [0,1), so containing zero
    // means the stored representative already has s = 0.
    for (const auto& e : ls.entries)
        if (e.eps == 1 && e.s.t0 == 0) {
            auto act = line_action(e.rep, l);
            if (!act || act->first != 1 || act->second != 0)
                throw InternalError("fiber element does not fix the line pointwise");
            ls.fiber.push_back(e.rep);
        }
    ls.fiber_table = make_table(
        ls.fiber, [](const AffineIsometry& x, const AffineIsometry& y) { return compose(x, y); },
        [](const AffineIsometry& x, const AffineIsometry& y) { return x == y; });

    // Minimal-translation witness via a Bezout combination of the available
    // orientation-preserving elements (reflection pairs contribute their
    // composites).
    {
        AffineIsometry acc = lattice_shift(l.h, g.dim);
        Rat sacc = 1;
        std::vector<std::pair<AffineIsometry, Rat>> items;
        const LineStabilizer::CosetEntry* r0 = nullptr;
        for (const auto& e : ls.entries) {
            if (e.eps == 1) {
                if (e.s.t0 != 0) items.emplace_back(e.rep, e.s.t0);
            } else if (!r0) {
                r0 = &e;
            } else {
                items.emplace_back(compose(r0->rep, e.rep), r0->s.t0 - e.s.t0);
            }
        }
        for (const auto& [elem, sv] : items) {
            if (sv == 0) continue;
            // gcd(sacc, sv) = alpha sacc + beta sv over a common denominator.
            Int q = lcm(denominator(sacc), denominator(sv));
            Int p1 = numerator(sacc) * (q / denominator(sacc));
            Int p2 = numerator(sv) * (q / denominator(sv));
            Int x0 = 1, y0 = 0, x1 = 0, y1 = 1, a = p1, b = p2;
            while (b != 0) {
                Int qt = a / b;
                a -= qt * b;
                std::swap(a, b);
                x0 -= qt * x1;
                std::swap(x0, x1);
                y0 -= qt * y1;
                std::swap(y0, y1);
            }
            if (a < 0) {
                a = -a;
                x0 = -x0;
                y0 = -y0;
            }
            acc = compose(power(acc, x0.convert_to<long>()),
                          power(elem, y0.convert_to<long>()));
            sacc = Rat(a, q);
        }
        if (sacc != ls.tmin) throw InternalError("translation gcd mismatch in witness build");
        auto act = line_action(acc, l);
        if (!act || act->first != 1 || act->second != ls.tmin)
            throw InternalError("minimal translation witness misbehaves");
        ls.g0 = acc;
    }

    if (ls.has_reflection) {
        // Reflection fixed points form the single orbit xa + (tmin/2) Z.
        bool first = true;
        for (const auto& e : ls.entries) {
            if (e.eps != -1) continue;
            Rat cand = Progression{e.s.t0 / 2, Rat(1, 2)}.min_abs();
            if (first || abs(cand) < abs(ls.xa) || (abs(cand) == abs(ls.xa) && cand > ls.xa)) {
                ls.xa = cand;
                first = false;
            }
        }
        Rat half = ls.tmin / 2;
        for (const auto& e : ls.entries) {
            if (e.eps != -1) continue;
            Rat diff = e.s.t0 / 2 - ls.xa;
            if (!is_integer(diff / half))
                throw InternalError("reflection points do not form a single half-step orbit");
        }
        ls.xb = ls.xa + half;
        for (Rat x : {ls.xa, ls.xb}) {
            std::vector<AffineIsometry> vg = ls.fiber;
            for (const auto& e : ls.entries) {
                if (e.eps != -1 || !e.s.contains(2 * x)) continue;
                Rat shift = 2 * x - e.s.t0;
                vg.push_back(AffineIsometry{e.rep.j, vq_add(e.rep.a, vq_scale(shift, hq))});
            }
            (x == ls.xa ? ls.vertex_a : ls.vertex_b) = std::move(vg);
        }
    }
    return ls;
}

std::vector<AffineIsometry> schreier_fiber(const LineStabilizer& ls) {
    const Line& l = ls.line;
    const int dim = static_cast<int>(l.p.size());
    std::vector<AffineIsometry> gens = {lattice_shift(l.h, dim)};
    for (size_t i = 1; i < ls.entries.size(); ++i) gens.push_back(ls.entries[i].rep);

    // Descend to the orientation-preserving subgroup.
    std::vector<AffineIsometry> plus;
    std::optional<AffineIsometry> rho;
    for (const auto& e : ls.entries)
        if (e.eps == -1) {
            rho = e.rep;
            break;
        }
    for (const auto& g : gens) {
        auto act = line_action(g, l);
        if (!act) throw InternalError("stabilizer generator lost the line");
        if (!rho) {
            plus.push_back(g);
            continue;
        }
        if (act->first == 1) {
            plus.push_back(g);
            plus.push_back(compose(compose(*rho, g), inverse(*rho)));
        } else {
            plus.push_back(compose(g, inverse(*rho)));
            plus.push_back(compose(*rho, g));
        }
    }

    // Kill the translation length: the kernel is the normal closure of the
    // corrected generators.
    if (!ls.g0) throw InternalError("missing minimal translation witness");
    const AffineIsometry& g0 = *ls.g0;
    std::vector<AffineIsometry> seed;
    for (const auto& s : plus) {
        auto act = line_action(s, l);
        if (!act || act->first != 1)
            throw InternalError("orientation descent produced a reflection");
        Rat m = act->second / ls.tmin;
        if (!is_integer(m)) throw InternalError("translation outside the minimal lattice");
        seed.push_back(compose(s, power(g0, -m.convert_to<long>())));
    }

    std::vector<AffineIsometry> kernel = {AffineIsometry::identity(dim)};
    auto add = [&](const AffineIsometry& x) {
        for (const auto& k : kernel)
            if (k == x) return false;
        auto act = line_action(x, l);
        if (!act || act->first != 1 || act->second != 0)
            throw InternalError("kernel closure left the pointwise stabilizer");
        kernel.push_back(x);
        return true;
    };
    for (const auto& u : seed)
        if (!(u == AffineIsometry::identity(dim))) add(u);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<AffineIsometry> snapshot = kernel;
        for (const auto& x : snapshot) {
            if (add(inverse(x))) grew = true;
            if (add(compose(compose(g0, x), inverse(g0)))) grew = true;
            if (add(compose(compose(inverse(g0), x), g0))) grew = true;
            for (const auto& y : snapshot)
                if (add(compose(x, y))) grew = true;
        }
        if (kernel.size() > 96) throw InternalError("kernel closure exceeded its bound");
    }
    return kernel;
}

bool points_equivalent(const CrystGroup& g, const VecQ& q1, const VecQ& q2) {
    for (const auto& c : g.cosets) {
        VecQ z = vq_sub(q2, vq_add(mz_apply(c.j, q1), c.a));
        if (vq_is_integral(z)) return true;
    }
    return false;
}

bool lines_equivalent(const CrystGroup& g, const Line& l1_in, const Line& l2_in) {
    Line l1 = make_line(l1_in.p, l1_in.h), l2 = make_line(l2_in.p, l2_in.h);
    for (const auto& c : g.cosets) {
        VecZ jh = mz_apply_z(c.j, l1.h);
        if (jh != l2.h && jh != vz_neg(l2.h)) continue;
        VecQ cc = vq_sub(l2.p, vq_add(mz_apply(c.j, l1.p), c.a));
        if (line_feasible(cc, l2.h)) return true;
    }
    return false;
}

std::optional<AffineSubspace> fixed_space(const std::vector<AffineIsometry>& elems, int dim) {
    std::vector<VecQ> rows;
    VecQ rhs;
    for (const auto& e : elems) {
        for (int i = 0; i < dim; ++i) {
            VecQ row(dim);
            for (int j = 0; j < dim; ++j)
                row[j] = Rat((i == j ? 1 : 0) - e.j.at(i, j));
            rows.push_back(std::move(row));
            rhs.push_back(e.a[i]);
        }
    }
    auto base = solve_q(rows, rhs);
    if (!base) return std::nullopt;
    return AffineSubspace{*base, kernel_q(rows, dim)};
}

std::vector<VecQ> rotation_point_candidates(const CrystGroup& g) {
    std::set<VecQ> out;
    for (const auto& c : g.cosets) {
        MatQ m(g.dim);
        for (int i = 0; i < g.dim; ++i)
            for (int j = 0; j < g.dim; ++j)
                m.at(i, j) = Rat((i == j ? 1 : 0) - c.j.at(i, j));
        auto inv = mq_inverse(m);
        if (!inv) continue;
        VecQ q0 = mq_apply(*inv, c.a);
        std::vector<VecQ> cols(g.dim);
        for (int j = 0; j < g.dim; ++j) {
            VecQ col(g.dim);
            for (int i = 0; i < g.dim; ++i) col[i] = inv->at(i, j);
            cols[j] = std::move(col);
        }
        for (const auto& r : residue_subgroup(cols, g.dim)) out.insert(vq_frac(vq_add(q0, r)));
    }
    return {out.begin(), out.end()};
}

LineFamily induced_line_family(const CrystGroup& g3, const VecZ& h) {
    if (g3.dim != 3) throw DimensionError("line families require a three-dimensional group");
    if (primitive_vector(z_to_q(h)) != h && primitive_vector(z_to_q(h)) != vz_neg(h))
        throw ValidationError("family direction must be primitive");

    VecZ u = bezout_row(h);
    VecQ urow(3);
    for (int i = 0; i < 3; ++i) urow[i] = Rat(u[i]);
    auto sol = solve_integer({urow}, {Rat(0)}, 3);
    if (!sol || sol->lattice.size() != 2)
        throw InternalError("kernel of a unimodular functional must have rank two");
    VecZ b1 = sol->lattice[0], b2 = sol->lattice[1];
    MatZ U(3);
    for (int i = 0; i < 3; ++i) {
        U.at(i, 0) = h[i];
        U.at(i, 1) = b1[i];
        U.at(i, 2) = b2[i];
    }
    if (mz_det(U) == -1) {
        for (int i = 0; i < 3; ++i) U.at(i, 2) = -U.at(i, 2);
        b2 = vz_neg(b2);
    }
    if (mz_det(U) != 1) throw InternalError("basis completion is not unimodular");
    auto uinv = mq_inverse(MatQ(U));
    if (!uinv) throw InternalError("unimodular matrix without inverse");

    // Quotient metric: Gram matrix of the projections of b1, b2 along h.
    const GramForm& G = g3.gram;
    VecQ hqv = z_to_q(h), b1q = z_to_q(b1), b2q = z_to_q(b2);
    Rat hh = G.inner(hqv, hqv);
    MatQ gq(2);
    const VecQ bs[2] = {b1q, b2q};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            gq.at(i, j) = G.inner(bs[i], bs[j]) - G.inner(bs[i], hqv) * G.inner(bs[j], hqv) / hh;

    std::vector<AffineIsometry> gens;
    for (const auto& c : g3.cosets) {
        VecZ jh = mz_apply_z(c.j, h);
        if (jh != h && jh != vz_neg(h)) continue;
        MatQ jp = mq_mul(mq_mul(*uinv, MatQ(c.j)), MatQ(U));
        MatZ jbar(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Rat v = jp.at(i + 1, j + 1);
                if (!is_integer(v)) throw InternalError("induced linear part is not integral");
                jbar.at(i, j) = numerator(v);
            }
        VecQ ua = mq_apply(*uinv, c.a);
        gens.push_back(AffineIsometry{jbar, {ua[1], ua[2]}});
    }

    // In-plane glides project to fractional translations of the family, so
    // the family translations may generate a lattice finer than Z^2. Close
    // the projected elements modulo Z^2 and collect the fractional pure
    // translations that appear.
    std::vector<AffineIsometry> closure;
    for (const auto& e : gens) {
        AffineIsometry r{e.j, vq_frac(e.a)};
        if (std::find(closure.begin(), closure.end(), r) == closure.end())
            closure.push_back(r);
    }
    for (size_t i = 0; i < closure.size(); ++i)
        for (size_t k = 0; k < closure.size(); ++k) {
            AffineIsometry p{mz_mul(closure[i].j, closure[k].j),
                             vq_frac(vq_add(mz_apply(closure[i].j, closure[k].a), closure[i].a))};
            if (std::find(closure.begin(), closure.end(), p) == closure.end())
                closure.push_back(p);
        }
    MatZ id2 = MatZ::identity(2);
    std::vector<VecQ> frac_trans;
    for (const auto& e : closure)
        if (e.j == id2 && !vq_is_zero(e.a)) frac_trans.push_back(e.a);

    MatQ basis = MatQ(id2);
    if (!frac_trans.empty()) {
        // Adapted basis: columns generate Z^2 together with the fractional
        // translations, brought to lower-triangular form by gcd folding.
        Int den = 1;
        for (const auto& t : frac_trans)
            for (const auto& v : t) den = lcm(den, denominator(v));
        std::vector<VecZ> vs = {{den, Int(0)}, {Int(0), den}};
        for (const auto& t : frac_trans)
            vs.push_back({numerator(t[0] * Rat(den)), numerator(t[1] * Rat(den))});
        VecZ col1 = vs[0];
        for (const auto& v : vs) {
            if (v[0] == 0) continue;
            Int m = gcd(col1[0], v[0]);
            VecZ pq = bezout_row({col1[0] / m, v[0] / m});
            col1 = {pq[0] * col1[0] + pq[1] * v[0], pq[0] * col1[1] + pq[1] * v[1]};
        }
        Int g2 = 0;
        for (const auto& v : vs) g2 = gcd(g2, v[1] - (v[0] / col1[0]) * col1[1]);
        if (g2 < 0) g2 = -g2;
        if (g2 == 0 || col1[0] == 0) throw InternalError("family lattice basis degenerated");
        col1[1] = ((col1[1] % g2) + g2) % g2;
        basis.at(0, 0) = Rat(col1[0], den);
        basis.at(1, 0) = Rat(col1[1], den);
        basis.at(0, 1) = 0;
        basis.at(1, 1) = Rat(g2, den);
        auto binv = mq_inverse(basis);
        if (!binv) throw InternalError("family lattice basis not invertible");
        for (auto& e : gens) {
            MatQ jq = mq_mul(mq_mul(*binv, MatQ(e.j)), basis);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    if (!is_integer(jq.at(i, j)))
                        throw InternalError("family translations not invariant under the induced point group");
                    e.j.at(i, j) = numerator(jq.at(i, j));
                }
            e.a = mq_apply(*binv, e.a);
        }
        // Quotient metric in the adapted coordinates.
        MatQ gq2(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Rat s = 0;
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) s += basis.at(k, i) * gq.at(k, l) * basis.at(l, j);
                gq2.at(i, j) = s;
            }
        gq = gq2;
    }

    CrystGroup induced =
        make_group(g3.name + "_fam", 2, GramForm(gq), gens);
    return LineFamily{h, b1, b2, basis, std::move(induced)};
}

Line family_line(const LineFamily& fam, const VecQ& xy) {
    VecQ cl = mq_apply(fam.basis, xy);
    VecQ p(3);
    for (int i = 0; i < 3; ++i) p[i] = cl[0] * Rat(fam.b1[i]) + cl[1] * Rat(fam.b2[i]);
    return make_line(p, fam.h);
}

FixedSets fixed_sets(const std::vector<MatZ>& mats, int dim) {
    struct Branch {
        std::vector<VecQ> basis;
        bool minus = false;
    };
    std::vector<Branch> branches(1);
    for (int i = 0; i < dim; ++i) {
        VecQ e = vq_zero(dim);
        e[i] = 1;
        branches[0].basis.push_back(e);
    }
    for (const MatZ& m : mats) {
        if (m.is_identity()) continue;
        std::vector<Branch> next;
        for (const Branch& br : branches) {
            for (int sign : {1, -1}) {
                int k = static_cast<int>(br.basis.size());
                // (m - sign I) restricted to span(basis); unknowns are the
                // coordinates in that basis.
                std::vector<VecQ> rows(dim, vq_zero(k));
                for (int j = 0; j < k; ++j) {
                    VecQ w = mz_apply(m, br.basis[j]);
                    for (int i = 0; i < dim; ++i) rows[i][j] = w[i] - Rat(sign) * br.basis[j][i];
                }
                auto kern = kernel_q(rows, k);
                if (kern.empty()) continue;
                Branch nb;
                nb.minus = br.minus || sign < 0;
                for (const VecZ& t : kern) {
                    VecQ v = vq_zero(dim);
                    for (int j = 0; j < k; ++j)
                        v = vq_add(v, vq_scale(Rat(t[j]), br.basis[j]));
                    nb.basis.push_back(v);
                }
                next.push_back(std::move(nb));
            }
        }
        branches = std::move(next);
    }
    FixedSets out;
    for (const Branch& br : branches) {
        if (!br.minus) {
            for (const VecQ& v : br.basis) out.e0.push_back(primitive_vector(v));
        } else if (br.basis.size() == 1) {
            VecZ h = primitive_vector(br.basis[0]);
            bool seen = false;
            for (const VecZ& a : out.e1_axes) seen = seen || a == h;
            if (!seen) out.e1_axes.push_back(h);
        } else {
            out.e1_fills_space = true;
        }
    }
    return out;
}

bool is_vc_cocompact(const CrystGroup& g, const Line& l) {
    if (static_cast<int>(l.h.size()) != g.dim)
        throw DimensionError("line dimension does not match the group");
    // The direction is a primitive lattice vector, so translation by it is
    // a group element acting cocompactly on the line.
    return true;
}

bool is_vc_cocompact(const CrystGroup& g, const SubgroupSpec& s, const Line& l) {
    if (static_cast<int>(l.h.size()) != g.dim)
        throw DimensionError("line dimension does not match the group");
    bool have_refl = false;
    Rat refl_s;
    for (const auto& gen : s.gens) {
        auto act = line_action(gen, l);
        if (!act) return false; // the subgroup does not even act on l
        if (act->first == 1) {
            if (act->second != 0) return true;
        } else if (!have_refl) {
            have_refl = true;
            refl_s = act->second;
        } else if (act->second != refl_s) {
            return true; // two distinct reflections compose to a translation
        }
    }
    return false;
}

} // namespace whcryst
