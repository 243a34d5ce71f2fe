#include "whcryst/vc_classify.hpp"

#include <algorithm>
#include <tuple>

#include "whcryst/cryst_group.hpp"
#include "whcryst/errors.hpp"

namespace whcryst {

std::string phi_name(PhiClass p) {
    switch (p) {
        case PhiClass::Trivial: return "Trivial";
        case PhiClass::Inv: return "Inv";
        case PhiClass::Order3: return "Order3";
    }
    throw InternalError("unhandled phi class");
}

static std::optional<PhiClass> phi_from_name(const std::string& s) {
    if (s == "Trivial") return PhiClass::Trivial;
    if (s == "Inv") return PhiClass::Inv;
    if (s == "Order3") return PhiClass::Order3;
    return std::nullopt;
}

// Vertex sort key: ascending group order, then name.
static std::pair<int, std::string> type_key(FiniteType t) {
    return {type_order(t), type_name(t)};
}

bool VCDescriptor::operator==(const VCDescriptor& o) const {
    if (amalgam != o.amalgam) return false;
    if (fiber != o.fiber) return false;
    return amalgam ? (va == o.va && vb == o.vb) : (phi == o.phi);
}

bool VCDescriptor::operator<(const VCDescriptor& o) const {
    auto key = [](const VCDescriptor& d) {
        return std::make_tuple(d.amalgam ? 1 : 0, type_key(d.fiber),
                               d.amalgam ? std::make_pair(0, std::string()) : std::make_pair(static_cast<int>(d.phi), std::string()),
                               d.amalgam ? type_key(d.va) : std::make_pair(0, std::string()),
                               d.amalgam ? type_key(d.vb) : std::make_pair(0, std::string()));
    };
    return key(*this) < key(o);
}

void canonicalize(VCDescriptor& d) {
    d.fiber = canonical_type(d.fiber);
    if (d.amalgam) {
        d.phi = PhiClass::Trivial;
        d.va = canonical_type(d.va);
        d.vb = canonical_type(d.vb);
        if (type_key(d.vb) < type_key(d.va)) std::swap(d.va, d.vb);
    } else {
        d.va = FiniteType::Trivial;
        d.vb = FiniteType::Trivial;
    }
}

std::string descriptor_str(const VCDescriptor& d) {
    if (d.amalgam)
        return "Amalgam(F=" + type_name(d.fiber) + ", A=" + type_name(d.va) +
               ", B=" + type_name(d.vb) + ")";
    return "Semidirect(F=" + type_name(d.fiber) + ", phi=" + phi_name(d.phi) + ")";
}

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

// "F=D2" -> value given key "F". Throws on mismatch.
std::string expect_field(const std::string& part, const std::string& key, const std::string& whole) {
    std::string p = strip(part);
    if (p.size() <= key.size() + 1 || p.compare(0, key.size(), key) != 0 || p[key.size()] != '=')
        throw UnknownDescriptorError("expected '" + key + "=...' in '" + whole + "'");
    return strip(p.substr(key.size() + 1));
}

} // namespace

VCDescriptor parse_descriptor(const std::string& text) {
    std::string s = strip(text);
    bool amalgam;
    std::string head;
    if (s.rfind("Amalgam(", 0) == 0) {
        amalgam = true;
        head = "Amalgam(";
    } else if (s.rfind("Semidirect(", 0) == 0) {
        amalgam = false;
        head = "Semidirect(";
    } else {
        throw UnknownDescriptorError("cannot parse '" + text + "'");
    }
    if (s.empty() || s.back() != ')')
        throw UnknownDescriptorError("missing ')' in '" + text + "'");
    std::string body = s.substr(head.size(), s.size() - head.size() - 1);

    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        size_t comma = body.find(',', pos);
        if (comma == std::string::npos) {
            parts.push_back(body.substr(pos));
            break;
        }
        parts.push_back(body.substr(pos, comma - pos));
        pos = comma + 1;
    }
    auto type_field = [&](const std::string& part, const std::string& key) {
        std::string name = expect_field(part, key, text);
        auto t = type_from_name(name);
        if (!t) throw UnknownDescriptorError("unknown finite type '" + name + "'");
        return *t;
    };

    VCDescriptor d;
    d.amalgam = amalgam;
    if (amalgam) {
        if (parts.size() != 3)
            throw UnknownDescriptorError("amalgam descriptor needs F, A, B: '" + text + "'");
        d.fiber = type_field(parts[0], "F");
        d.va = type_field(parts[1], "A");
        d.vb = type_field(parts[2], "B");
    } else {
        if (parts.size() != 2)
            throw UnknownDescriptorError("semidirect descriptor needs F, phi: '" + text + "'");
        d.fiber = type_field(parts[0], "F");
        std::string pname = expect_field(parts[1], "phi", text);
        auto p = phi_from_name(pname);
        if (!p) throw UnknownDescriptorError("unknown monodromy class '" + pname + "'");
        d.phi = *p;
    }
    canonicalize(d);
    return d;
}

std::vector<int> monodromy_permutation(const LineStabilizer& ls) {
    if (!ls.g0) throw InternalError("line stabilizer lacks a translation witness");
    const AffineIsometry& g = *ls.g0;
    const AffineIsometry gi = inverse(g);
    const int n = static_cast<int>(ls.fiber.size());
    std::vector<int> perm(static_cast<size_t>(n), -1);
    for (int k = 0; k < n; ++k) {
        AffineIsometry img = compose(g, compose(ls.fiber[static_cast<size_t>(k)], gi));
        int idx = -1;
        for (int m = 0; m < n; ++m)
            if (ls.fiber[static_cast<size_t>(m)] == img) { idx = m; break; }
        if (idx < 0) throw InternalError("monodromy image left the fiber");
        perm[static_cast<size_t>(k)] = idx;
    }
    return perm;
}

VCDescriptor classify_line_stabilizer(const LineStabilizer& ls) {
    VCDescriptor d;
    d.fiber = identify_type(ls.fiber_table);
    if (ls.has_reflection) {
        d.amalgam = true;
        auto vertex_type = [](const std::vector<AffineIsometry>& elems) {
            FiniteGroupTable t = make_table(
                elems, [](const AffineIsometry& x, const AffineIsometry& y) { return compose(x, y); },
                [](const AffineIsometry& x, const AffineIsometry& y) { return x == y; });
            return identify_type(t);
        };
        d.va = vertex_type(ls.vertex_a);
        d.vb = vertex_type(ls.vertex_b);
    } else {
        d.amalgam = false;
        int o = outer_class_order(ls.fiber_table, monodromy_permutation(ls));
        switch (o) {
            case 1: d.phi = PhiClass::Trivial; break;
            case 2: d.phi = PhiClass::Inv; break;
            case 3: d.phi = PhiClass::Order3; break;
            default: throw InternalError("monodromy outer class of unexpected order " + std::to_string(o));
        }
    }
    canonicalize(d);
    return d;
}

namespace {

struct AmalgamRow {
    FiniteType f, a, b; // a, b in canonical vertex order
};

// Maximal infinite virtually cyclic subgroups of cocompact crystallographic
// groups realize exactly these amalgam shapes.
const std::vector<AmalgamRow>& cocompact_amalgam_rows() {
    using T = FiniteType;
    static const std::vector<AmalgamRow> rows = {
        {T::Trivial, T::C2, T::C2},
        {T::C2, T::C4, T::C4},
        {T::C2, T::C4, T::D2},
        {T::C2, T::D2, T::D2},
        {T::C3, T::C6, T::C6},
        {T::C3, T::C6, T::D3},
        {T::C3, T::D3, T::D3},
        {T::C4, T::C4xC2, T::C4xC2},
        {T::C4, T::C4xC2, T::D4},
        {T::C4, T::D4, T::D4},
        {T::C6, T::C6xC2, T::C6xC2},
        {T::C6, T::C6xC2, T::D6},
        {T::C6, T::D6, T::D6},
        {T::D2, T::D2xC2, T::D2xC2},
        {T::D2, T::D2xC2, T::D4},
        {T::D2, T::D4, T::D4},
        {T::D3, T::D6, T::D6},
        {T::D4, T::D4xC2, T::D4xC2},
        {T::D6, T::D6xC2, T::D6xC2},
    };
    return rows;
}

// Three more shapes occur for proper non-cocompact actions only.
const std::vector<AmalgamRow>& extra_amalgam_rows() {
    using T = FiniteType;
    static const std::vector<AmalgamRow> rows = {
        {T::D2, T::C4xC2, T::C4xC2},
        {T::D2, T::C4xC2, T::D2xC2},
        {T::D2, T::C4xC2, T::D4},
    };
    return rows;
}

bool semidirect_fiber_possible(FiniteType f) {
    using T = FiniteType;
    switch (f) {
        case T::Trivial:
        case T::C2:
        case T::C3:
        case T::C4:
        case T::C6:
        case T::D2:
        case T::D3:
        case T::D4:
        case T::D6:
            return true;
        default:
            return false;
    }
}

} // namespace

bool amalgam_realizable(FiniteType f, FiniteType a, FiniteType b, bool cocompact) {
    VCDescriptor d;
    d.amalgam = true;
    d.fiber = f;
    d.va = a;
    d.vb = b;
    canonicalize(d);
    auto match = [&](const std::vector<AmalgamRow>& rows) {
        for (const auto& r : rows)
            if (r.f == d.fiber && r.a == d.va && r.b == d.vb) return true;
        return false;
    };
    if (match(cocompact_amalgam_rows())) return true;
    if (!cocompact && match(extra_amalgam_rows())) return true;
    return false;
}

bool semidirect_realizable(FiniteType f, PhiClass phi) {
    f = canonical_type(f);
    if (!semidirect_fiber_possible(f)) return false;
    switch (phi) {
        case PhiClass::Trivial:
            return true;
        case PhiClass::Inv:
            // Nontrivial monodromy requires a nontrivial outer class; C2 and
            // D3 are complete, so only the product shape exists for them.
            return f == FiniteType::C3 || f == FiniteType::C4 || f == FiniteType::C6 ||
                   f == FiniteType::D2 || f == FiniteType::D4 || f == FiniteType::D6;
        case PhiClass::Order3:
            // Only Out(D2) has order-3 classes and that shape never arises
            // from a crystallographic line action.
            return false;
    }
    throw InternalError("unhandled phi class");
}

bool descriptor_realizable(const VCDescriptor& d, bool cocompact) {
    if (d.amalgam) return amalgam_realizable(d.fiber, d.va, d.vb, cocompact);
    return semidirect_realizable(d.fiber, d.phi);
}

std::vector<VCDescriptor> realizable_amalgams(bool cocompact) {
    std::vector<VCDescriptor> out;
    auto push = [&](const AmalgamRow& r) {
        VCDescriptor d;
        d.amalgam = true;
        d.fiber = r.f;
        d.va = r.a;
        d.vb = r.b;
        out.push_back(d);
    };
    for (const auto& r : cocompact_amalgam_rows()) push(r);
    if (!cocompact)
        for (const auto& r : extra_amalgam_rows()) push(r);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VCDescriptor> realizable_semidirects() {
    std::vector<VCDescriptor> out;
    for (FiniteType f : catalog_types()) {
        for (PhiClass p : {PhiClass::Trivial, PhiClass::Inv, PhiClass::Order3}) {
            if (semidirect_realizable(f, p)) {
                VCDescriptor d;
                d.amalgam = false;
                d.fiber = f;
                d.phi = p;
                out.push_back(d);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace whcryst
