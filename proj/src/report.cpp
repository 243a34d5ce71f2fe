#include "whcryst/report.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "whcryst/errors.hpp"
#include "whcryst/vc_enumerate.hpp"

namespace whcryst {

using nlohmann::json;

std::string vec_str(const VecQ& v) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << rat_str(v[i]);
    }
    out << ")";
    return out.str();
}

std::string vec_str(const VecZ& v) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << v[i];
    }
    out << ")";
    return out.str();
}

std::string line_str(const Line& l) {
    return "line through " + vec_str(l.p) + " along " + vec_str(l.h);
}

namespace {

std::string count_phrase(size_t n, const std::string& noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "es");
}

/// The two Nil summands a finite fiber contributes to Wh(F x Z).
KValue two_nil(FiniteType t, const KFactsDB& db) {
    const KFactRecord& rec = db.record(t);
    KValue v;
    switch (rec.nil1) {
        case NilFact::Zero:
            break;
        case NilFact::NonzeroInfinitelyGenerated:
            v.free_rank = std::nullopt;
            v.summands["Nil1(Z[" + type_name(canonical_type(t)) + "])"] = 2;
            v.status = KStatus::InfinitelyGenerated;
            break;
        case NilFact::Unknown:
            v.free_rank = std::nullopt;
            v.summands["Nil1(Z[" + type_name(canonical_type(t)) + "])"] = 2;
            v.status = KStatus::Unknown;
            break;
    }
    v.citations.push_back(rec.nil1_cite);
    return v;
}

void finalize(WhReport& r, std::string note) {
    KValue total;
    bool any_ig = false;
    for (const ReportEntry& e : r.entries) {
        total = direct_sum(total, e.value);
        any_ig = any_ig || e.value.status == KStatus::InfinitelyGenerated;
    }
    // IG is absorbing in the sum algebra, so the two views must agree.
    if (any_ig != (total.status == KStatus::InfinitelyGenerated))
        throw InternalError("report total status disagrees with its summands");
    r.total = std::move(total);
    r.infinitely_generated = any_ig;
    r.finiteness_note = std::move(note);
}

/// Multiset of (descriptor, value) pairs in a canonical order.
std::vector<std::pair<std::string, KValue>> summand_multiset(const WhReport& r) {
    std::vector<std::pair<std::string, KValue>> out;
    out.reserve(r.entries.size());
    for (const ReportEntry& e : r.entries)
        out.emplace_back(descriptor_str(e.descriptor), e.value);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return kvalue_str(a.second) < kvalue_str(b.second);
    });
    return out;
}

json kvalue_json(const KValue& v) {
    json j;
    j["free_rank"] = v.free_rank ? json(*v.free_rank) : json(nullptr);
    json summands = json::array();
    for (const auto& [symbol, mult] : v.summands)
        summands.push_back(json{{"symbol", symbol}, {"mult", mult}});
    j["summands"] = std::move(summands);
    j["status"] = kstatus_name(v.status);
    if (!v.bounds.empty()) j["bounds"] = v.bounds;
    return j;
}

} // namespace

WhReport whitehead_group(const CrystGroup& g, int jobs, const KFactsDB& db) {
    if (g.dim != 3) throw DimensionError("whitehead_group requires a dim-3 group");
    SubgroupClassList classes = maximal_vc_classes(g, jobs);
    WhReport r;
    r.group = g.name;
    r.dim = g.dim;
    for (const VCClass& c : classes.vc_classes) {
        ReportEntry e;
        e.descriptor = c.descriptor;
        e.location = line_str(c.line);
        e.value = wh_vc(c.descriptor, db);
        r.entries.push_back(std::move(e));
    }
    std::string note = "the enumeration lists " +
                       count_phrase(r.entries.size(), "conjugacy class") +
                       " of maximal infinite virtually cyclic subgroups, so the "
                       "direct sum is finite. " +
                       classes.zero_bucket_note;
    finalize(r, std::move(note));
    return r;
}

WhReport corollary2(const CrystGroup& g, int jobs, const KFactsDB& db) {
    if (g.dim != 2) throw DimensionError("corollary2 requires a dim-2 group");
    std::vector<FiniteClass> finite = maximal_finite_classes(g);
    CrystGroup product = product_with_Z(g);

    WhReport r;
    r.group = product.name;
    r.dim = 3;
    size_t listed = 0;
    for (const FiniteClass& c : finite) {
        if (c.type == FiniteType::Trivial) continue;  // torsion-free: empty sum
        ++listed;
        ReportEntry e;
        e.descriptor.amalgam = false;
        e.descriptor.fiber = c.type;
        e.descriptor.phi = PhiClass::Trivial;
        e.location = "product line over the " + type_name(c.type) + " class at " +
                     vec_str(c.point);
        e.value = two_nil(c.type, db);
        r.entries.push_back(std::move(e));
    }
    std::string note = "evaluated as two Nil summands per maximal finite class of " +
                       g.name + " (" + count_phrase(listed, "class") +
                       "); cross-checked summand for summand against the direct "
                       "evaluation of Wh(" + product.name + ")";
    finalize(r, std::move(note));

    WhReport direct = whitehead_group(product, jobs, db);
    if (summand_multiset(r) != summand_multiset(direct) || !(r.total == direct.total))
        throw InternalError("two-Nil evaluation disagrees with the product evaluation");
    return r;
}

std::string report_text(const WhReport& r) {
    std::ostringstream out;
    out << "Wh report for " << r.group << " (dim " << r.dim << ")\n";
    out << "classes listed: " << r.entries.size() << "\n\n";
    for (size_t i = 0; i < r.entries.size(); ++i) {
        const ReportEntry& e = r.entries[i];
        out << "[" << i + 1 << "] " << descriptor_str(e.descriptor) << "\n";
        out << "    at: " << e.location << "\n";
        out << "    value: " << kvalue_str(e.value) << "\n";
        for (const std::string& c : e.value.citations) out << "    cite: " << c << "\n";
        out << "\n";
    }
    out << "total: " << kvalue_str(r.total) << "\n";
    out << "infinitely generated: " << (r.infinitely_generated ? "yes" : "no") << "\n";
    out << "note: " << r.finiteness_note << "\n";
    return out.str();
}

std::string report_json(const WhReport& r) {
    json j;
    j["schema"] = "whcryst-report";
    j["version"] = 1;
    j["group"] = r.group;
    j["dim"] = r.dim;
    json classes = json::array();
    for (const ReportEntry& e : r.entries) {
        json c;
        c["descriptor"] = descriptor_str(e.descriptor);
        c["location"] = e.location;
        c["value"] = kvalue_json(e.value);
        c["citations"] = e.value.citations;
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    j["total"] = kvalue_json(r.total);
    j["infinitely_generated"] = r.infinitely_generated;
    j["finiteness_note"] = r.finiteness_note;
    return j.dump(2) + "\n";
}

} // namespace whcryst
