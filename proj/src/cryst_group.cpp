#include "whcryst/cryst_group.hpp"

#include <algorithm>
#include <deque>

#include <nlohmann/json.hpp>

#include "whcryst/errors.hpp"

namespace whcryst {

using nlohmann::json;

AffineIsometry AffineIsometry::identity(int dim) {
    return AffineIsometry(MatZ::identity(dim), vq_zero(dim));
}

AffineIsometry AffineIsometry::translation(const VecQ& t) {
    return AffineIsometry(MatZ::identity(static_cast<int>(t.size())), t);
}

VecQ AffineIsometry::apply(const VecQ& x) const { return vq_add(mz_apply(j, x), a); }

AffineIsometry compose(const AffineIsometry& f, const AffineIsometry& g) {
    return AffineIsometry(mz_mul(f.j, g.j), vq_add(mz_apply(f.j, g.a), f.a));
}

AffineIsometry inverse(const AffineIsometry& f) {
    // (J, a)^-1 = (J^-1, -J^-1 a); J^-1 is integral because J has finite order.
    auto ord = mat_order(f.j);
    if (!ord) throw ValidationError("affine inverse of infinite-order linear part");
    MatZ jin = MatZ::identity(f.j.n);
    for (int k = 1; k < *ord; ++k) jin = mz_mul(jin, f.j);
    return AffineIsometry(jin, vq_neg(mz_apply(jin, f.a)));
}

AffineIsometry power(const AffineIsometry& f, long k) {
    AffineIsometry base = k >= 0 ? f : inverse(f);
    long reps = k >= 0 ? k : -k;
    AffineIsometry acc = AffineIsometry::identity(f.j.n);
    for (long i = 0; i < reps; ++i) acc = compose(acc, base);
    return acc;
}

int CrystGroup::coset_index(const MatZ& j) const {
    for (size_t i = 0; i < cosets.size(); ++i)
        if (cosets[i].j == j) return static_cast<int>(i);
    return -1;
}

namespace {

int max_cosets_for_dim(int dim) { return dim == 2 ? 12 : 48; }

bool order_allowed(int k) { return k == 1 || k == 2 || k == 3 || k == 4 || k == 6; }

Rat json_rat(const json& v, const std::string& what) {
    if (v.is_string()) return rat_parse(v.get<std::string>());
    if (v.is_number_integer()) return Rat(Int(v.get<long long>()));
    throw ParseError(what + " must be a rational string like \"p/q\" or an integer");
}

Int json_int(const json& v, const std::string& what) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_string()) {
        Rat r = rat_parse(v.get<std::string>());
        if (!is_integer(r)) throw ParseError(what + " must be an integer");
        return num(r);
    }
    throw ParseError(what + " must be an integer");
}

} // namespace

CrystGroup make_group(std::string name, int dim, GramForm gram,
                      const std::vector<AffineIsometry>& generators) {
    if (dim != 2 && dim != 3) throw DimensionError("group dimension must be 2 or 3");
    if (gram.dim() != dim) throw ValidationError("Gram form dimension mismatch");

    for (const auto& g : generators) {
        if (g.j.n != dim || static_cast<int>(g.a.size()) != dim)
            throw ValidationError("generator dimension mismatch");
        if (!gram_isometry_check(gram, g.j))
            throw ValidationError("generator linear part does not preserve the Gram form");
        auto ord = mat_order(g.j);
        if (!ord || !order_allowed(*ord))
            throw ValidationError("generator order outside {1,2,3,4,6}");
    }

    // Closure of the coset system modulo Z^dim. A repeated linear part with
    // a different residual translation means the translation subgroup is
    // strictly larger than Z^dim.
    CrystGroup g;
    g.name = std::move(name);
    g.dim = dim;
    g.gram = std::move(gram);
    g.cosets.push_back(AffineIsometry::identity(dim));

    std::deque<AffineIsometry> work;
    auto insert = [&](const AffineIsometry& cand) {
        AffineIsometry red(cand.j, vq_frac(cand.a));
        int idx = g.coset_index(red.j);
        if (idx >= 0) {
            if (!vq_eq(g.cosets[idx].a, red.a))
                throw ValidationError("translation lattice strictly larger than Z^dim");
            return;
        }
        if (static_cast<int>(g.cosets.size()) >= max_cosets_for_dim(dim))
            throw ValidationError("point group larger than allowed for this dimension");
        g.cosets.push_back(red);
        work.push_back(red);
    };

    for (const auto& gen : generators) {
        insert(gen);
        insert(inverse(gen));
    }
    while (!work.empty()) {
        AffineIsometry x = work.front();
        work.pop_front();
        size_t count = g.cosets.size();
        for (size_t i = 0; i < count; ++i) {
            insert(compose(x, g.cosets[i]));
            insert(compose(g.cosets[i], x));
        }
    }

    for (const auto& c : g.cosets) {
        auto ord = mat_order(c.j);
        if (!ord || !order_allowed(*ord))
            throw ValidationError("point-group element order outside {1,2,3,4,6}");
        if (!gram_isometry_check(g.gram, c.j))
            throw ValidationError("point-group element does not preserve the Gram form");
    }
    return g;
}

CrystGroup parse_group(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
    for (const char* key : {"name", "dim", "gram", "generators"})
        if (!doc.contains(key)) throw ParseError(origin + ": missing key '" + key + "'");

    if (!doc["name"].is_string()) throw ParseError(origin + ": 'name' must be a string");
    std::string name = doc["name"].get<std::string>();
    if (!doc["dim"].is_number_integer()) throw ParseError(origin + ": 'dim' must be 2 or 3");
    int dim = doc["dim"].get<int>();
    if (dim != 2 && dim != 3) throw ParseError(origin + ": 'dim' must be 2 or 3");

    const json& gj = doc["gram"];
    if (!gj.is_array() || static_cast<int>(gj.size()) != dim)
        throw ParseError(origin + ": 'gram' must be a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " matrix");
    MatQ gm(dim);
    for (int i = 0; i < dim; ++i) {
        if (!gj[i].is_array() || static_cast<int>(gj[i].size()) != dim)
            throw ParseError(origin + ": 'gram' must be a square matrix");
        for (int j = 0; j < dim; ++j) gm.at(i, j) = json_rat(gj[i][j], "gram entry");
    }

    const json& gens = doc["generators"];
    if (!gens.is_array()) throw ParseError(origin + ": 'generators' must be an array");
    std::vector<AffineIsometry> generators;
    for (const json& ge : gens) {
        if (!ge.is_object() || !ge.contains("linear") || !ge.contains("translation"))
            throw ParseError(origin + ": generator needs 'linear' and 'translation'");
        const json& lin = ge["linear"];
        if (!lin.is_array() || static_cast<int>(lin.size()) != dim)
            throw ParseError(origin + ": generator 'linear' must be a square integer matrix");
        MatZ j(dim);
        for (int r = 0; r < dim; ++r) {
            if (!lin[r].is_array() || static_cast<int>(lin[r].size()) != dim)
                throw ParseError(origin + ": generator 'linear' must be a square integer matrix");
            for (int c = 0; c < dim; ++c) j.at(r, c) = json_int(lin[r][c], "linear entry");
        }
        const json& tr = ge["translation"];
        if (!tr.is_array() || static_cast<int>(tr.size()) != dim)
            throw ParseError(origin + ": generator 'translation' must have length " +
                             std::to_string(dim));
        VecQ a(static_cast<size_t>(dim));
        for (int c = 0; c < dim; ++c) a[c] = json_rat(tr[c], "translation entry");
        generators.emplace_back(std::move(j), std::move(a));
    }

    GramForm gram;
    try {
        gram = GramForm(gm);
    } catch (const Error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
    try {
        return make_group(std::move(name), dim, std::move(gram), generators);
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

std::string group_to_json(const CrystGroup& g) {
    json doc;
    doc["name"] = g.name;
    doc["dim"] = g.dim;
    json gram = json::array();
    for (int i = 0; i < g.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < g.dim; ++j) row.push_back(rat_str(g.gram.g.at(i, j)));
        gram.push_back(row);
    }
    doc["gram"] = gram;
    json gens = json::array();
    for (size_t i = 1; i < g.cosets.size(); ++i) {
        json lin = json::array();
        for (int r = 0; r < g.dim; ++r) {
            json row = json::array();
            for (int c = 0; c < g.dim; ++c) row.push_back(static_cast<long long>(g.cosets[i].j.at(r, c)));
            lin.push_back(row);
        }
        json tr = json::array();
        for (int c = 0; c < g.dim; ++c) tr.push_back(rat_str(g.cosets[i].a[c]));
        gens.push_back(json{{"linear", lin}, {"translation", tr}});
    }
    doc["generators"] = gens;
    return doc.dump(2);
}

std::vector<MatZ> point_group(const CrystGroup& g) {
    std::vector<MatZ> out;
    out.reserve(g.cosets.size());
    for (const auto& c : g.cosets) out.push_back(c.j);
    return out;
}

std::vector<AffineIsometry> elements_in_ball(const CrystGroup& g, const Rat& radius) {
    if (radius < 0) throw ValidationError("ball radius must be nonnegative");
    std::vector<AffineIsometry> out;
    for (const auto& c : g.cosets) {
        // a_i + z_i in [-R, R]: z_i in [ceil(-R - a_i), floor(R - a_i)].
        std::vector<std::pair<Int, Int>> ranges;
        for (int i = 0; i < g.dim; ++i) {
            Int lo = -floor_rat(radius + c.a[i]);
            Int hi = floor_rat(radius - c.a[i]);
            ranges.emplace_back(lo, hi);
        }
        std::vector<Int> z(static_cast<size_t>(g.dim));
        auto rec = [&](auto&& self, int i) -> void {
            if (i == g.dim) {
                VecQ a = c.a;
                for (int k = 0; k < g.dim; ++k) a[k] += Rat(z[k]);
                out.emplace_back(c.j, a);
                return;
            }
            for (Int v = ranges[i].first; v <= ranges[i].second; ++v) {
                z[i] = v;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

CrystGroup product_with_Z(const CrystGroup& g) {
    if (g.dim != 2) throw DimensionError("product_with_Z requires a dim-2 group");
    MatQ gm(3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gm.at(i, j) = g.gram.g.at(i, j);
    gm.at(2, 2) = 1;
    std::vector<AffineIsometry> gens;
    for (size_t i = 1; i < g.cosets.size(); ++i) {
        MatZ j(3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) j.at(r, c) = g.cosets[i].j.at(r, c);
        j.at(2, 2) = 1;
        VecQ a = {g.cosets[i].a[0], g.cosets[i].a[1], Rat(0)};
        gens.emplace_back(std::move(j), std::move(a));
    }
    return make_group(g.name + "xZ", 3, GramForm(gm), gens);
}

} // namespace whcryst
