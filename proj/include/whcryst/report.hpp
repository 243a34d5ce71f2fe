#pragma once

// Whitehead group reports.
//
// A report evaluates Wh of a three-dimensional crystallographic group as the
// direct sum of Wh over the conjugacy classes of maximal infinite virtually
// cyclic subgroups. Every listed class carries its symbolic value and the
// citation trail the value came from; classes whose value is zero stay
// listed, the total collapses them. The classes that never contribute are
// summarized in the finiteness note rather than listed one by one.

#include <string>
#include <vector>

#include "whcryst/cryst_group.hpp"
#include "whcryst/geometry.hpp"
#include "whcryst/ktheory.hpp"
#include "whcryst/vc_classify.hpp"

namespace whcryst {

/// Deterministic text forms shared by the reports and the CLI listings.
std::string vec_str(const VecQ& v);
std::string vec_str(const VecZ& v);
std::string line_str(const Line& l);

struct ReportEntry {
    VCDescriptor descriptor;  // the class of infinite virtually cyclic subgroups
    std::string location;     // representative geometry, rendered deterministically
    KValue value;             // carries the citation trail
};

struct WhReport {
    std::string group;
    int dim = 0;
    std::vector<ReportEntry> entries;
    KValue total;                  // direct sum over entries
    bool infinitely_generated = false;
    std::string finiteness_note;
};

/// Wh of a three-dimensional group as the finite direct sum over its maximal
/// infinite virtually cyclic classes. Throws DimensionError for dim != 3.
WhReport whitehead_group(const CrystGroup& g, int jobs = 1,
                         const KFactsDB& db = KFactsDB::builtin());

/// Wh(G x Z) for a two-dimensional G, evaluated directly from the maximal
/// finite classes of G as two Nil summands per class, then cross-checked
/// summand for summand against whitehead_group(product_with_Z(g)). Throws
/// DimensionError for dim != 2 and InternalError when the cross-check fails.
WhReport corollary2(const CrystGroup& g, int jobs = 1,
                    const KFactsDB& db = KFactsDB::builtin());

/// Human-readable rendering. Byte-identical for identical reports.
std::string report_text(const WhReport& r);

/// Machine-readable rendering with a versioned schema. A value serializes as
/// {free_rank, summands: [{symbol, mult}], status} plus bounds when present.
std::string report_json(const WhReport& r);

} // namespace whcryst
