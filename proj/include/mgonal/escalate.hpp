#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgonal/form.hpp"

namespace mgonal {

/// Escalation-tree bookkeeping.
///
/// A node holds a nondecreasing coefficient vector. If the corresponding
/// form fails to represent some value up to the universality bound, the node
/// records its least missed value ("truant") and, unless the depth cap is
/// hit, gets one child per legal next coefficient c in [last, truant]. A
/// node whose form represents everything up to the bound is a leaf; the
/// check is empirical, so the label says so.
enum class NodeStatus {
    expanded,             ///< has a truant and a full set of children
    open,                 ///< has a truant but was cut off by the depth cap
    universal_empirical,  ///< no value missed up to the universality bound
};

struct EscalationNode {
    std::vector<std::int64_t> coeffs;
    std::optional<std::int64_t> truant;  ///< absent iff universal_empirical
    NodeStatus status = NodeStatus::open;
    std::vector<std::shared_ptr<EscalationNode>> children;
};

struct EscalateConfig {
    std::int64_t univ_bound = 0;  ///< 0 resolves to 50 * (m - 2)
    int max_depth = 12;           ///< coefficients appended below the root
};

struct EscalationTree {
    std::int64_t m = 0;
    std::int64_t univ_bound = 0;  ///< resolved bound actually used
    std::shared_ptr<EscalationNode> root;
    std::int64_t max_truant = 0;   ///< maximum truant over all nodes
    bool complete = true;          ///< no node was cut off by the depth cap
    std::uint64_t node_count = 0;  ///< distinct nodes created
    std::uint64_t merged = 0;      ///< node reuses via the coefficient memo
};

/// Grows the full escalation tree below `prefix` (empty = the whole tree
/// for m). The prefix must be a valid escalation prefix. Every appended
/// coefficient is checked against the escalation rule by construction.
EscalationTree escalate(std::int64_t m, const std::vector<std::int64_t>& prefix,
                        const EscalateConfig& cfg = {});

enum class GammaStatus {
    exact_under_bound,  ///< tree complete: value is exact, modulo the bound
    lower_bound,        ///< depth cap hit somewhere: value is only a bound
};

struct GammaResult {
    std::int64_t value = 0;
    GammaStatus status = GammaStatus::lower_bound;
    std::int64_t univ_bound = 0;
    std::uint64_t nodes = 0;
};

/// Maximum truant over the full escalation tree of m.
GammaResult gamma_empirical(std::int64_t m, const EscalateConfig& cfg = {});

/// Maximum truant over the subtree below a fixed prefix. Requires the
/// prefix to be a valid escalation prefix with coefficient sum < m - 4.
GammaResult gamma_prefixed(std::int64_t m, const std::vector<std::int64_t>& prefix,
                           const EscalateConfig& cfg = {});

/// The 21 five-coefficient prefixes with a proven representability
/// threshold of m - 4: the candidate list minus (1,1,2,4,8), whose
/// threshold is only known for sufficiently large m.
const std::vector<std::vector<std::int64_t>>& certified_quintuples();

enum class CertifyStatus {
    certified,  ///< universal by the threshold argument plus a finite check
    empirical,  ///< no miss up to the bound, but no certificate applies
    open,       ///< a missed value was found
};

struct CertifyResult {
    CertifyStatus status = CertifyStatus::open;
    std::optional<std::int64_t> first_miss;  ///< present iff status == open
    std::int64_t checked_bound = 0;          ///< largest value actually sieved
};

/// Decides universality of a form.  If its five smallest coefficients are a
/// certified quintuple, coverage of [1, m-4] suffices (and when m - 4 is at
/// most their sum, the five-coefficient subform is universal outright).
/// Otherwise falls back to an empirical sweep up to `bound`
/// (0 resolves to 50 * (m - 2)).
CertifyResult certify_universal(const MGonalForm& form, std::int64_t bound = 0);

/// Serializes a tree to JSON (schema 1): nodes carry coeffs, truant, status,
/// children. A node already emitted on another path appears as a stub with
/// "merged": true.
std::string tree_to_json(const EscalationTree& tree);

}  // namespace mgonal
