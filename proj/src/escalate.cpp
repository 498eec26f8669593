#include "mgonal/escalate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "mgonal/candidates.hpp"
#include "mgonal/checked.hpp"
#include "mgonal/search.hpp"

namespace mgonal {

namespace {

std::int64_t resolve_bound(std::int64_t m, std::int64_t requested) {
    if (requested < 0) {
        throw std::invalid_argument("universality bound must be nonnegative");
    }
    if (requested > 0) return requested;
    return checked_mul(std::int64_t{50}, checked_sub(m, std::int64_t{2}));
}

// Depth-first tree growth with a coefficient-vector memo. Because children
// only ever append, distinct paths cannot produce the same vector, so the
// memo is expected never to hit; `merged` stays observable to prove it.
class TreeBuilder {
  public:
    TreeBuilder(std::int64_t m, int max_depth, EscalationTree& tree)
        : m_(m), max_depth_(max_depth), tree_(tree) {}

    std::shared_ptr<EscalationNode> expand(const std::vector<std::int64_t>& coeffs,
                                           int depth) {
        auto it = memo_.find(coeffs);
        if (it != memo_.end()) {
            ++tree_.merged;
            return it->second;
        }
        auto node = std::make_shared<EscalationNode>();
        node->coeffs = coeffs;
        memo_.emplace(coeffs, node);
        ++tree_.node_count;

        std::optional<std::int64_t> t;
        if (coeffs.empty()) {
            t = 1;  // the empty form represents nothing
        } else {
            t = truant(MGonalForm(m_, coeffs), tree_.univ_bound);
        }
        if (!t) {
            node->status = NodeStatus::universal_empirical;
            return node;
        }
        node->truant = *t;
        tree_.max_truant = std::max(tree_.max_truant, *t);
        if (depth >= max_depth_) {
            node->status = NodeStatus::open;
            tree_.complete = false;
            return node;
        }
        node->status = NodeStatus::expanded;
        std::vector<std::int64_t> child = coeffs;
        for (std::int64_t c = coeffs.empty() ? 1 : coeffs.back(); c <= *t; ++c) {
            child.push_back(c);
            node->children.push_back(expand(child, depth + 1));
            child.pop_back();
        }
        return node;
    }

  private:
    std::int64_t m_;
    int max_depth_;
    EscalationTree& tree_;
    std::map<std::vector<std::int64_t>, std::shared_ptr<EscalationNode>> memo_;
};

}  // namespace

EscalationTree escalate(std::int64_t m, const std::vector<std::int64_t>& prefix,
                        const EscalateConfig& cfg) {
    if (m < 3) throw std::invalid_argument("order must be at least 3");
    if (cfg.max_depth < 0) throw std::invalid_argument("depth cap must be nonnegative");
    if (!is_escalator_prefix(prefix)) {
        throw std::invalid_argument("not an escalation prefix: (" +
                                    coeff_list_str(prefix) + ")");
    }
    EscalationTree tree;
    tree.m = m;
    tree.univ_bound = resolve_bound(m, cfg.univ_bound);
    TreeBuilder builder(m, cfg.max_depth, tree);
    tree.root = builder.expand(prefix, 0);
    return tree;
}

namespace {

GammaResult gamma_of(const EscalationTree& tree) {
    GammaResult res;
    res.value = tree.max_truant;
    res.status = tree.complete ? GammaStatus::exact_under_bound
                               : GammaStatus::lower_bound;
    res.univ_bound = tree.univ_bound;
    res.nodes = tree.node_count;
    return res;
}

}  // namespace

GammaResult gamma_empirical(std::int64_t m, const EscalateConfig& cfg) {
    return gamma_of(escalate(m, {}, cfg));
}

GammaResult gamma_prefixed(std::int64_t m, const std::vector<std::int64_t>& prefix,
                           const EscalateConfig& cfg) {
    if (!is_escalator_prefix(prefix)) {
        throw std::invalid_argument("not an escalation prefix: (" +
                                    coeff_list_str(prefix) + ")");
    }
    std::int64_t sum = 0;
    for (std::int64_t a : prefix) sum = checked_add(sum, a);
    if (checked_sub(m, std::int64_t{4}) <= sum) {
        throw std::invalid_argument(
            "prefixed gamma requires m - 4 > prefix sum; got m = " +
            std::to_string(m) + ", sum = " + std::to_string(sum));
    }
    return gamma_of(escalate(m, prefix, cfg));
}

const std::vector<std::vector<std::int64_t>>& certified_quintuples() {
    static const std::vector<std::vector<std::int64_t>> list = [] {
        const std::vector<std::int64_t> pending = {1, 1, 2, 4, 8};
        std::vector<std::vector<std::int64_t>> out;
        for (const auto& q : quintuple_candidates()) {
            if (q != pending) out.push_back(q);
        }
        return out;
    }();
    return list;
}

CertifyResult certify_universal(const MGonalForm& form, std::int64_t bound) {
    const std::int64_t m = form.order();
    const std::int64_t resolved = resolve_bound(m, bound);
    CertifyResult res;

    if (form.rank() >= 5) {
        const std::vector<std::int64_t> first5(form.coeffs().begin(),
                                               form.coeffs().begin() + 5);
        const auto& table = certified_quintuples();
        if (std::find(table.begin(), table.end(), first5) != table.end()) {
            std::int64_t sum5 = 0;
            for (std::int64_t a : first5) sum5 += a;
            const std::int64_t threshold = checked_sub(m, std::int64_t{4});
            if (threshold > sum5) {
                // Representing [1, m-4] is the full universality criterion
                // for these prefixes.
                RangeBitmap cover = represents_range(form, 1, threshold);
                res.checked_bound = threshold;
                if (cover.all()) {
                    res.status = CertifyStatus::certified;
                } else {
                    res.status = CertifyStatus::open;
                    res.first_miss = cover.first_missing();
                }
                return res;
            }
            // The five-coefficient subform is universal outright, and a
            // superform inherits that. Re-check empirically anyway so a
            // "certified" answer never rests on the threshold alone.
            res.checked_bound = resolved;
            auto t = truant(form, resolved);
            if (!t) {
                res.status = CertifyStatus::certified;
            } else {
                res.status = CertifyStatus::open;
                res.first_miss = *t;
            }
            return res;
        }
    }

    res.checked_bound = resolved;
    auto t = truant(form, resolved);
    if (!t) {
        res.status = CertifyStatus::empirical;
    } else {
        res.status = CertifyStatus::open;
        res.first_miss = *t;
    }
    return res;
}

namespace {

const char* status_str(NodeStatus s) {
    switch (s) {
        case NodeStatus::expanded: return "expanded";
        case NodeStatus::open: return "open";
        case NodeStatus::universal_empirical: return "universal_empirical";
    }
    return "unknown";
}

nlohmann::json node_to_json(const EscalationNode* node,
                            std::set<const EscalationNode*>& visited) {
    nlohmann::json j;
    j["coeffs"] = node->coeffs;
    if (!visited.insert(node).second) {
        j["merged"] = true;
        return j;
    }
    j["truant"] = node->truant ? nlohmann::json(*node->truant)
                               : nlohmann::json(nullptr);
    j["status"] = status_str(node->status);
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& child : node->children) {
        kids.push_back(node_to_json(child.get(), visited));
    }
    j["children"] = std::move(kids);
    return j;
}

}  // namespace

std::string tree_to_json(const EscalationTree& tree) {
    nlohmann::json j;
    j["schema"] = 1;
    j["m"] = tree.m;
    j["univ_bound"] = tree.univ_bound;
    j["complete"] = tree.complete;
    j["max_truant"] = tree.max_truant;
    j["node_count"] = tree.node_count;
    j["merged"] = tree.merged;
    std::set<const EscalationNode*> visited;
    j["root"] = node_to_json(tree.root.get(), visited);
    return j.dump(2);
}

}  // namespace mgonal
