#pragma once

/**
 * @file ktheory.hpp
 * @brief Symbolic lower K-theory values for the groups of the
 *        classification, backed by a citation-carrying facts table.
 *
 * Nothing here computes K-theory from first principles. Every value is
 * either a recorded literature fact (Whitehead, Carter, Bass, Pearson,
 * Oliver, Reiner, Harmon, van der Kallen, Farrell), an assembly of such
 * facts through the Bass-Heller-Swan decomposition or the Waldhausen
 * exact sequence, or an honest Unknown. Values that the literature only
 * asserts to be nonzero stay symbolic; ranks are never fabricated.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whcryst/finite_group.hpp"
#include "whcryst/vc_classify.hpp"

namespace whcryst {

enum class KStatus { Zero, Finite, InfinitelyGenerated, Unknown, UnknownBounded };

std::string kstatus_name(KStatus s);

/// A symbolic K-group value: a free part of known or unknown rank plus
/// named summands (Nil or reduced-projective-class symbols) with
/// multiplicities, a generation status, and an auditable citation trail.
struct KValue {
    std::optional<int> free_rank = 0;    // nullopt: rank not determined
    std::map<std::string, int> summands; // symbol -> multiplicity >= 1
    KStatus status = KStatus::Zero;
    std::vector<std::string> bounds;    // nonempty iff status UnknownBounded
    std::vector<std::string> citations; // deduplicated, first-use order

    bool is_zero() const { return status == KStatus::Zero; }
    // Bounds compare as a multiset: merge order is presentation, not content.
    bool operator==(const KValue& o) const {
        auto canon = [](std::vector<std::string> b) {
            std::sort(b.begin(), b.end());
            return b;
        };
        return free_rank == o.free_rank && summands == o.summands &&
               status == o.status && canon(bounds) == canon(o.bounds);
    }
};

/// Direct sum. Commutative and associative up to citation order; Zero is
/// the identity and InfinitelyGenerated absorbs.
KValue direct_sum(const KValue& a, const KValue& b);

/// Human-readable value, e.g. "0", "Z", "2*Nil1(Z[D2]) (infinitely
/// generated)", "unknown (bounded by ...)".
std::string kvalue_str(const KValue& v);

enum class NilFact { Zero, NonzeroInfinitelyGenerated, Unknown };

std::string nil_fact_name(NilFact f);

/// One finite-type row of the facts table.
struct KFactRecord {
    FiniteType type = FiniteType::Trivial;
    KValue wh;
    KValue ktilde0;
    KValue kminus1;
    bool sk1_zero = false;  // true only where the literature asserts it
    std::string sk1_cite;
    NilFact nil1 = NilFact::Unknown;
    std::string nil1_cite;
};

/// The facts table, loaded from its versioned data file. Missing entries
/// are impossible by construction: parsing validates that every canonical
/// catalog type has exactly one record with nonempty citations.
class KFactsDB {
  public:
    static const KFactsDB& builtin();
    static KFactsDB parse(const std::string& json_text, const std::string& origin);

    /// Record for a type; alias tags resolve to their canonical class.
    const KFactRecord& record(FiniteType t) const;
    const std::vector<KFactRecord>& records() const { return recs_; }
    int version() const { return version_; }

  private:
    std::vector<KFactRecord> recs_;
    int version_ = 0;
};

/// Rank of the free part of Wh for a finite group: conjugacy classes of
/// unordered pairs {g, g^-1} minus conjugacy classes of cyclic subgroups.
/// Never negative; a negative count would be an internal error.
int bass_rank(const FiniteGroupTable& g);

/// Wh of a catalog finite group. Always Zero; the returned citation trail
/// records whether the value came from a direct literature statement or
/// from the rank formula with SK_1 vanishing, in which case the rank is
/// recomputed from the supplied multiplication table and checked.
KValue wh_finite(FiniteType t, const FiniteGroupTable& g,
                 const KFactsDB& db = KFactsDB::builtin());

enum class LowerK { Ktilde0, Kminus1 };

/// Recorded reduced projective class group or K_{-1} value.
KValue lower_k(FiniteType t, LowerK which, const KFactsDB& db = KFactsDB::builtin());

/// Wh of an infinite virtually cyclic group given by its descriptor.
/// Semidirect with trivial monodromy assembles Wh(F) + Ktilde0(Z[F]) +
/// 2*Nil1(Z[F]); nontrivial monodromy has no recorded decomposition and
/// stays symbolic. Amalgams resolve to Zero exactly when the fiber is
/// trivial or C2; all others are bounded by the Waldhausen sequence terms.
KValue wh_vc(const VCDescriptor& d, const KFactsDB& db = KFactsDB::builtin());

/// Recorded Nil fact for a catalog finite type.
NilFact nil_fact(FiniteType t, const KFactsDB& db = KFactsDB::builtin());

} // namespace whcryst
