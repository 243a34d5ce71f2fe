#include "whcryst/ktheory.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "whcryst/errors.hpp"

namespace whcryst {

using nlohmann::json;

namespace embedded {
const std::string& kfacts_json();
}

namespace {

void add_cite(KValue& v, const std::string& c) {
    if (c.empty()) return;
    if (std::find(v.citations.begin(), v.citations.end(), c) == v.citations.end())
        v.citations.push_back(c);
}

void merge_cites(KValue& v, const std::vector<std::string>& cs) {
    for (const auto& c : cs) add_cite(v, c);
}

KValue zero_value(const std::string& cite) {
    KValue v;
    add_cite(v, cite);
    return v;
}

KValue free_value(int rank, const std::string& cite) {
    KValue v;
    v.free_rank = rank;
    v.status = rank == 0 ? KStatus::Zero : KStatus::Finite;
    add_cite(v, cite);
    return v;
}

KValue symbol_value(const std::string& sym, int mult, KStatus st, const std::string& cite) {
    KValue v;
    v.free_rank = std::nullopt;
    v.summands[sym] = mult;
    v.status = st;
    add_cite(v, cite);
    return v;
}

KValue unknown_value(const std::string& cite) {
    KValue v;
    v.free_rank = std::nullopt;
    v.status = KStatus::Unknown;
    add_cite(v, cite);
    return v;
}

bool has_content(const KValue& v) {
    return (v.free_rank && *v.free_rank > 0) || !v.summands.empty();
}

} // namespace

std::string kstatus_name(KStatus s) {
    switch (s) {
        case KStatus::Zero: return "Zero";
        case KStatus::Finite: return "Finite";
        case KStatus::InfinitelyGenerated: return "InfinitelyGenerated";
        case KStatus::Unknown: return "Unknown";
        case KStatus::UnknownBounded: return "UnknownBounded";
    }
    throw InternalError("unnamed K-value status");
}

std::string nil_fact_name(NilFact f) {
    switch (f) {
        case NilFact::Zero: return "Zero";
        case NilFact::NonzeroInfinitelyGenerated: return "NonzeroInfinitelyGenerated";
        case NilFact::Unknown: return "Unknown";
    }
    throw InternalError("unnamed Nil fact");
}

KValue direct_sum(const KValue& a, const KValue& b) {
    KValue r;
    if (a.free_rank && b.free_rank)
        r.free_rank = *a.free_rank + *b.free_rank;
    else
        r.free_rank = std::nullopt;
    r.summands = a.summands;
    for (const auto& [sym, mult] : b.summands) r.summands[sym] += mult;

    if (a.status == KStatus::InfinitelyGenerated || b.status == KStatus::InfinitelyGenerated) {
        r.status = KStatus::InfinitelyGenerated;
    } else if (a.status == KStatus::Unknown || b.status == KStatus::Unknown) {
        r.status = KStatus::Unknown;
    } else if (a.status == KStatus::UnknownBounded || b.status == KStatus::UnknownBounded) {
        // A bound stays meaningful only when the other part adds nothing.
        const KValue& other = a.status == KStatus::UnknownBounded ? b : a;
        if (other.status != KStatus::UnknownBounded && has_content(other)) {
            r.status = KStatus::Unknown;
        } else {
            // Bounds add up as a multiset: a sum of bounded parts is bounded
            // by the concatenation. Sort when both contribute so the result
            // is independent of the argument order.
            r.status = KStatus::UnknownBounded;
            r.bounds = a.bounds;
            r.bounds.insert(r.bounds.end(), b.bounds.begin(), b.bounds.end());
            if (!a.bounds.empty() && !b.bounds.empty())
                std::sort(r.bounds.begin(), r.bounds.end());
        }
    } else {
        r.status = has_content(r) ? KStatus::Finite : KStatus::Zero;
    }
    r.citations = a.citations;
    merge_cites(r, b.citations);
    return r;
}

std::string kvalue_str(const KValue& v) {
    if (v.status == KStatus::Zero) return "0";
    std::vector<std::string> parts;
    if (v.free_rank && *v.free_rank > 0)
        parts.push_back(*v.free_rank == 1 ? "Z" : "Z^" + std::to_string(*v.free_rank));
    for (const auto& [sym, mult] : v.summands)
        parts.push_back(mult == 1 ? sym : std::to_string(mult) + "*" + sym);
    std::string body;
    for (size_t i = 0; i < parts.size(); ++i) body += (i ? " + " : "") + parts[i];
    switch (v.status) {
        case KStatus::Finite:
            return body;
        case KStatus::InfinitelyGenerated:
            return body + " (infinitely generated)";
        case KStatus::Unknown:
            return body.empty() ? "unknown" : body + " (unknown)";
        case KStatus::UnknownBounded: {
            std::string bd;
            for (size_t i = 0; i < v.bounds.size(); ++i) bd += (i ? " + " : "") + v.bounds[i];
            std::string head = body.empty() ? "unknown" : body + " (unknown)";
            return head + " (bounded by " + bd + ")";
        }
        case KStatus::Zero:
            break;
    }
    throw InternalError("unreachable K-value status");
}

namespace {

std::string json_string(const json& v, const std::string& what, const std::string& origin) {
    if (!v.is_string()) throw ParseError(origin + ": " + what + " must be a string");
    return v.get<std::string>();
}

KValue parse_value_field(const json& rec, const char* field, FiniteType t,
                         const std::string& origin) {
    if (!rec.contains(field) || !rec[field].is_object())
        throw ParseError(origin + ": missing object field '" + field + "'");
    const json& f = rec[field];
    std::string value = json_string(f.value("value", json()), std::string(field) + ".value", origin);
    std::string cite = json_string(f.value("cite", json()), std::string(field) + ".cite", origin);
    if (cite.empty()) throw ParseError(origin + ": empty citation for " + field);
    if (value == "Zero") return zero_value(cite);
    if (value == "Z") return free_value(1, cite);
    if (value == "Unknown") return unknown_value(cite);
    if (value == "NonzeroUnspecified") {
        std::string prefix = std::string(field) == "ktilde0" ? "Ktilde0" : "Kminus1";
        return symbol_value(prefix + "(Z[" + type_name(t) + "])", 1, KStatus::Unknown, cite);
    }
    throw ParseError(origin + ": unrecognized " + std::string(field) + " value '" + value + "'");
}

} // namespace

KFactsDB KFactsDB::parse(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != "whcryst-kfacts")
        throw ParseError(origin + ": not a whcryst-kfacts file");
    KFactsDB db;
    db.version_ = doc.value("version", 0);
    if (db.version_ < 1) throw ParseError(origin + ": missing or invalid version");
    if (!doc.contains("facts") || !doc["facts"].is_array())
        throw ParseError(origin + ": missing facts array");

    for (const json& rec : doc["facts"]) {
        if (!rec.is_object()) throw ParseError(origin + ": fact entries must be objects");
        std::string tn = json_string(rec.value("type", json()), "type", origin);
        auto t = type_from_name(tn);
        if (!t) throw ParseError(origin + ": unknown finite type '" + tn + "'");
        if (canonical_type(*t) != *t)
            throw ParseError(origin + ": alias type '" + tn + "' may not carry its own record");
        for (const auto& existing : db.recs_)
            if (existing.type == *t)
                throw ParseError(origin + ": duplicate record for '" + tn + "'");

        KFactRecord r;
        r.type = *t;
        r.wh = parse_value_field(rec, "wh", *t, origin);
        r.ktilde0 = parse_value_field(rec, "ktilde0", *t, origin);
        r.kminus1 = parse_value_field(rec, "kminus1", *t, origin);

        if (!rec.contains("sk1") || !rec["sk1"].is_object() || !rec["sk1"].value("zero", json()).is_boolean())
            throw ParseError(origin + ": missing sk1 record for '" + tn + "'");
        r.sk1_zero = rec["sk1"]["zero"].get<bool>();
        r.sk1_cite = json_string(rec["sk1"].value("cite", json()), "sk1.cite", origin);
        if (r.sk1_cite.empty()) throw ParseError(origin + ": empty sk1 citation for '" + tn + "'");

        if (!rec.contains("nil1") || !rec["nil1"].is_object())
            throw ParseError(origin + ": missing nil1 record for '" + tn + "'");
        std::string nv = json_string(rec["nil1"].value("value", json()), "nil1.value", origin);
        if (nv == "Zero") r.nil1 = NilFact::Zero;
        else if (nv == "NonzeroInfinitelyGenerated") r.nil1 = NilFact::NonzeroInfinitelyGenerated;
        else if (nv == "Unknown") r.nil1 = NilFact::Unknown;
        else throw ParseError(origin + ": unrecognized nil1 value '" + nv + "'");
        r.nil1_cite = json_string(rec["nil1"].value("cite", json()), "nil1.cite", origin);
        if (r.nil1_cite.empty()) throw ParseError(origin + ": empty nil1 citation for '" + tn + "'");

        db.recs_.push_back(std::move(r));
    }

    for (FiniteType t : catalog_types()) {
        bool found = false;
        for (const auto& r : db.recs_) found = found || r.type == t;
        if (!found) throw ParseError(origin + ": no record for catalog type " + type_name(t));
    }
    return db;
}

const KFactsDB& KFactsDB::builtin() {
    static const KFactsDB db = parse(embedded::kfacts_json(), "<builtin kfacts>");
    return db;
}

const KFactRecord& KFactsDB::record(FiniteType t) const {
    FiniteType c = canonical_type(t);
    for (const auto& r : recs_)
        if (r.type == c) return r;
    throw NotInCatalogError("no K-theory record for type " + type_name(t));
}

int bass_rank(const FiniteGroupTable& g) {
    int r = inverse_pair_classes(g);
    int q = cyclic_subgroup_classes(g);
    if (r < q)
        throw InternalError("inverse-pair classes fewer than cyclic-subgroup classes");
    return r - q;
}

KValue wh_finite(FiniteType t, const FiniteGroupTable& g, const KFactsDB& db) {
    FiniteType c = canonical_type(t);
    FiniteType actual = identify_type(g);
    if (actual != c)
        throw ValidationError("multiplication table is of type " + type_name(actual) +
                              ", not " + type_name(c));
    const KFactRecord& rec = db.record(c);
    KValue v = rec.wh;
    if (rec.sk1_zero) {
        add_cite(v, rec.sk1_cite);
        int y = bass_rank(g);
        if (y != 0)
            throw TableViolationError("recorded Whitehead vanishing for " + type_name(c) +
                                      " contradicted: computed Bass rank is " + std::to_string(y));
        add_cite(v, "path: rank formula with SK1 vanishing; r - q = 0 recomputed from the multiplication table");
    } else {
        add_cite(v, "path: direct table lookup");
    }
    return v;
}

KValue lower_k(FiniteType t, LowerK which, const KFactsDB& db) {
    const KFactRecord& rec = db.record(t);
    return which == LowerK::Ktilde0 ? rec.ktilde0 : rec.kminus1;
}

NilFact nil_fact(FiniteType t, const KFactsDB& db) {
    return db.record(t).nil1;
}

KValue wh_vc(const VCDescriptor& d, const KFactsDB& db) {
    if (!descriptor_realizable(d, false))
        throw UnknownDescriptorError(descriptor_str(d));

    if (d.amalgam) {
        if (d.fiber == FiniteType::Trivial) {
            return zero_value("H. Bass: Wh(Z) = Wh(D_infinity) = 0");
        }
        const KFactRecord& ra = db.record(d.va);
        const KFactRecord& rb = db.record(d.vb);
        const KFactRecord& rf = db.record(d.fiber);
        if (d.fiber == FiniteType::C2) {
            if (!ra.wh.is_zero() || !rb.wh.is_zero() || !rf.ktilde0.is_zero())
                throw TableViolationError(
                    "amalgam over C2 requires vanishing vertex Whitehead groups and "
                    "Ktilde0(Z[C2]) = 0, but the facts table disagrees");
            KValue v = zero_value(
                "Waldhausen exact sequence: Wh(A) + Wh(B) -> Wh(A *_C2 B) -> Ktilde0(Z[C2]), "
                "with both ends vanishing");
            merge_cites(v, ra.wh.citations);
            merge_cites(v, rb.wh.citations);
            merge_cites(v, rf.ktilde0.citations);
            if (d.va == FiniteType::D2 && d.vb == FiniteType::D2)
                add_cite(v, "K. Pearson: Wh(D_infinity x C2) = 0");
            return v;
        }
        KValue v;
        v.free_rank = std::nullopt;
        v.status = KStatus::UnknownBounded;
        v.bounds = {"Wh(" + type_name(d.va) + ")", "Wh(" + type_name(d.vb) + ")",
                    "Ktilde0(Z[" + type_name(d.fiber) + "])"};
        add_cite(v, "Waldhausen exact sequence for amalgamated products; the displayed form "
                    "omits Nil-type correction terms, so only a bound is recorded");
        merge_cites(v, ra.wh.citations);
        merge_cites(v, rb.wh.citations);
        merge_cites(v, rf.ktilde0.citations);
        return v;
    }

    if (d.phi != PhiClass::Trivial) {
        return symbol_value("Wh(" + descriptor_str(d) + ")", 1, KStatus::Unknown,
                            "no untwisted decomposition applies to nontrivial monodromy; "
                            "kept symbolic, no literature value recorded");
    }

    const KFactRecord& rec = db.record(d.fiber);
    KValue v = zero_value(
        "Bass-Heller-Swan: Wh(F x Z) = Wh(F) + Ktilde0(Z[F]) + 2 Nil1(Z[F])");
    v = direct_sum(v, rec.wh);
    v = direct_sum(v, rec.ktilde0);
    KValue nil;
    std::string nil_sym = "Nil1(Z[" + type_name(canonical_type(d.fiber)) + "])";
    switch (rec.nil1) {
        case NilFact::Zero:
            nil = zero_value(rec.nil1_cite);
            break;
        case NilFact::NonzeroInfinitelyGenerated:
            nil = symbol_value(nil_sym, 2, KStatus::InfinitelyGenerated, rec.nil1_cite);
            break;
        case NilFact::Unknown:
            nil = symbol_value(nil_sym, 2, KStatus::Unknown, rec.nil1_cite);
            break;
    }
    v = direct_sum(v, nil);
    if (d.fiber == FiniteType::Trivial) add_cite(v, "H. Bass: Wh(Z) = 0");
    if (d.fiber == FiniteType::C2) add_cite(v, "K. Pearson: Wh(Z x C2) = 0");
    return v;
}

} // namespace whcryst
