#pragma once

// Constructive realization of the sparse stage-tree and its meager witness.
//
// The tree S is a union of finite stages S_0 ⊆ S_1 ⊆ ... with stage bounds
// m_0 < m_1 < ...; a node is a specific word at a specific level, and the
// stages alternate:
//   even stage n:  every maximal node of S_n receives exactly two
//                  incomparable extensions at one fresh level (zero-padded,
//                  final bit 0/1);
//   odd stage n:   no maximal node branches; every nonempty subset F of the
//                  maximal nodes receives its own level carrying exactly the
//                  zero-padded continuations of F's members, so the level
//                  width realizes every value 1..d_n.
//
// Nodes are never materialized globally. A chain is an origin word plus the
// set of levels it occupies; the node at level k is the origin zero-padded
// to length k. Stage 6 trees span hundreds of levels, stage 7 thousands;
// descriptors keep construction linear in the number of nodes.
//
// The meager witness picks the block [m_{2n+1}, m_{2n+1} + 2^(d-1)) for each
// odd stage 2n+1 and chooses x on that block to differ from the restriction
// of every maximal branch of S_{2n+2}; any real agreeing with x on every
// such block therefore avoids every branch of S.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "guesslab/bitword.hpp"
#include "guesslab/pibound.hpp"
#include "guesslab/scalar.hpp"

namespace guesslab {

struct TreeChain {
    std::uint32_t id = 0;
    BitWord origin;                           // branching word created at an even stage
    std::uint32_t created_stage = 0;          // first stage containing the origin node
    std::vector<std::uint64_t> levels;        // occupied levels, ascending
    std::vector<std::uint32_t> level_stages;  // stage at which each level was added
};

struct TreeStage {
    std::uint32_t index = 0;
    std::uint64_t m = 0;
    std::vector<std::uint32_t> maximal_chain_ids;
};

class SparseTree {
  public:
    enum class PiMode { Induced, Given };

    std::vector<TreeStage> stages;
    std::vector<TreeChain> chains;
    std::map<std::uint64_t, std::vector<std::uint32_t>> level_occupants;
    PiMode mode = PiMode::Induced;
    std::optional<PiBound> given_pi;

    std::uint32_t built_stages() const { return static_cast<std::uint32_t>(stages.size()) - 1; }

    // Node of `chain` at `level`: the origin word zero-padded.
    BitWord node_word(std::uint32_t chain, std::uint64_t level) const {
        return chains.at(chain).origin.padded(level);
    }

    std::uint64_t width(std::uint64_t level) const {
        auto it = level_occupants.find(level);
        return it == level_occupants.end() ? 0 : it->second.size();
    }

    // The budget the construction ran against: the given pi, or the induced
    // width function.
    BigInt pi_at(std::uint64_t level) const {
        if (mode == PiMode::Given) return given_pi->value_or_zero(level);
        return BigInt(width(level));
    }

    std::uint64_t maximal_count(std::uint32_t stage) const {
        return stages.at(stage).maximal_chain_ids.size();
    }

    std::vector<BitWord> maximal_words(std::uint32_t stage) const {
        const TreeStage& st = stages.at(stage);
        std::vector<BitWord> out;
        out.reserve(st.maximal_chain_ids.size());
        for (std::uint32_t c : st.maximal_chain_ids)
            out.push_back(node_word(c, top_level_at_stage(c, stage)));
        return out;
    }

    // Deepest occupied level of `chain` within S_stage.
    std::uint64_t top_level_at_stage(std::uint32_t chain, std::uint32_t stage) const {
        const TreeChain& c = chains.at(chain);
        std::uint64_t best = 0;
        bool found = false;
        for (std::size_t i = 0; i < c.levels.size(); ++i) {
            if (c.level_stages[i] <= stage) {
                best = c.levels[i];
                found = true;
            }
        }
        if (!found) throw std::logic_error("top_level_at_stage: chain not present in stage");
        return best;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["built_stages"] = built_stages();
        j["pi_mode"] = mode == PiMode::Induced ? "induced" : "given";
        auto stage_arr = nlohmann::json::array();
        for (const auto& st : stages)
            stage_arr.push_back(
                {{"n", st.index}, {"m", st.m}, {"maximal_chains", st.maximal_chain_ids}});
        j["stages"] = std::move(stage_arr);
        auto chain_arr = nlohmann::json::array();
        for (const auto& c : chains)
            chain_arr.push_back({{"id", c.id},
                                 {"origin", c.origin.str()},
                                 {"created_stage", c.created_stage},
                                 {"levels", c.levels}});
        j["chains"] = std::move(chain_arr);
        nlohmann::json widths;
        for (const auto& [level, occ] : level_occupants)
            widths[std::to_string(level)] = occ.size();
        j["induced_pi"] = std::move(widths);
        return j;
    }
};

namespace detail {

// Nonempty subsets of {0..d-1} ordered by size, then by mask value.
inline std::vector<std::uint32_t> subset_masks(std::uint32_t d) {
    std::vector<std::uint32_t> masks;
    masks.reserve((std::uint32_t{1} << d) - 1);
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << d); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    return masks;
}

}  // namespace detail

inline SparseTree build_tree(std::uint32_t stage_count,
                             SparseTree::PiMode mode = SparseTree::PiMode::Induced,
                             const PiBound* pi = nullptr,
                             std::uint64_t search_horizon = 1'000'000) {
    if (stage_count > 7) throw std::invalid_argument("build_tree: stages capped at 7");
    if (mode == SparseTree::PiMode::Given && pi == nullptr)
        throw std::invalid_argument("build_tree: given-pi mode requires a budget");

    SparseTree tree;
    tree.mode = mode;
    if (pi != nullptr) tree.given_pi = *pi;

    TreeChain root;
    root.id = 0;
    root.origin = BitWord();
    root.created_stage = 0;
    root.levels = {0};
    root.level_stages = {0};
    tree.chains.push_back(std::move(root));
    tree.level_occupants[0] = {0};
    tree.stages.push_back(TreeStage{0, 0, {0}});

    // Least level >= from whose budget admits the required width; exact
    // matches are needed at odd stages so the level carries nothing else.
    const auto find_level = [&](std::uint64_t from, std::uint64_t need, bool exact) {
        if (mode == SparseTree::PiMode::Induced) return from;
        for (std::uint64_t k = from; k < from + search_horizon; ++k) {
            const BigInt budget = tree.given_pi->value_or_zero(k);
            if (exact ? budget == need : budget >= need) return k;
        }
        throw std::domain_error("build_tree: no admissible level within search horizon");
    };

    for (std::uint32_t n = 0; n < stage_count; ++n) {
        const TreeStage& current = tree.stages.back();
        const std::vector<std::uint32_t> maximal = current.maximal_chain_ids;
        const std::uint32_t d = static_cast<std::uint32_t>(maximal.size());
        std::uint64_t last_used = current.m;

        TreeStage next;
        next.index = n + 1;

        if (n % 2 == 0) {
            // Branch: two extensions per maximal node at one fresh level.
            const std::uint64_t level = find_level(current.m + 1, 2 * std::uint64_t{d}, false);
            for (std::uint32_t c : maximal) {
                for (int b = 0; b < 2; ++b) {
                    TreeChain child;
                    child.id = static_cast<std::uint32_t>(tree.chains.size());
                    child.origin = tree.chains[c].origin.padded(level - 1);
                    child.origin.append(b == 1);
                    child.created_stage = n + 1;
                    child.levels = {level};
                    child.level_stages = {n + 1};
                    tree.level_occupants[level].push_back(child.id);
                    next.maximal_chain_ids.push_back(child.id);
                    tree.chains.push_back(std::move(child));
                }
            }
            last_used = level;
        } else {
            // Chains: one level per nonempty subset of the maximal nodes.
            std::uint64_t cursor = current.m;
            for (std::uint32_t mask : detail::subset_masks(d)) {
                const std::uint32_t size = static_cast<std::uint32_t>(std::popcount(mask));
                const std::uint64_t level = find_level(cursor + 1, size, true);
                for (std::uint32_t i = 0; i < d; ++i) {
                    if ((mask >> i) & 1u) {
                        TreeChain& chain = tree.chains[maximal[i]];
                        chain.levels.push_back(level);
                        chain.level_stages.push_back(n + 1);
                        tree.level_occupants[level].push_back(maximal[i]);
                    }
                }
                cursor = level;
            }
            last_used = cursor;
            next.maximal_chain_ids = maximal;
        }

        next.m = last_used + 1;
        tree.stages.push_back(std::move(next));
    }
    return tree;
}

// ---------------------------------------------------------------------------
// Verification. All checks re-derive what they assert from the node
// descriptors; in particular maximal nodes are recomputed from scratch.
// ---------------------------------------------------------------------------

struct TreeCheck {
    std::string item;
    bool pass = true;
    std::string detail;
};

struct TreeReport {
    std::vector<TreeCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const TreeCheck& check(const std::string& item) const {
        for (const auto& c : checks)
            if (c.item == item) return c;
        throw std::out_of_range("TreeReport: no such check: " + item);
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks)
            arr.push_back({{"item", c.item}, {"pass", c.pass}, {"detail", c.detail}});
        return {{"checks", arr}, {"all_pass", all_pass()}};
    }
};

namespace detail {

struct NodeRef {
    std::uint32_t chain;
    std::uint64_t level;
    std::uint32_t stage_added;
};

inline std::vector<NodeRef> all_nodes(const SparseTree& t) {
    std::vector<NodeRef> nodes;
    for (const auto& c : t.chains)
        for (std::size_t i = 0; i < c.levels.size(); ++i)
            nodes.push_back({c.id, c.levels[i], c.level_stages[i]});
    return nodes;
}

// Maximal nodes of S_stage, derived by pairwise comparison of node words.
inline std::vector<NodeRef> derive_maximal(const SparseTree& t, std::uint32_t stage) {
    std::vector<NodeRef> nodes;
    for (const auto& nd : all_nodes(t))
        if (nd.stage_added <= stage) nodes.push_back(nd);
    std::vector<BitWord> words;
    words.reserve(nodes.size());
    for (const auto& nd : nodes) words.push_back(t.node_word(nd.chain, nd.level));
    std::vector<NodeRef> maximal;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        bool is_max = true;
        for (std::size_t j = 0; j < nodes.size() && is_max; ++j) {
            if (nodes[j].level > nodes[i].level && words[j].extends(words[i])) is_max = false;
        }
        if (is_max) maximal.push_back(nodes[i]);
    }
    return maximal;
}

}  // namespace detail

inline TreeReport verify_tree(const SparseTree& t) {
    TreeReport report;
    const std::uint32_t built = t.built_stages();
    const auto nodes = detail::all_nodes(t);

    auto add = [&report](std::string item, bool pass, std::string detail = "") {
        report.checks.push_back({std::move(item), pass, std::move(detail)});
    };

    // (i) every node of stage s sits at a level <= m_s; (ii) strictly above
    // m_{s-1}, which together with monotone growth gives the restriction
    // property S_n = S_m ∩ 2^{<= m_n}.
    {
        bool ok_i = true, ok_ii = true;
        std::string detail_i, detail_ii;
        for (const auto& nd : nodes) {
            const std::uint64_t m_here = t.stages.at(nd.stage_added).m;
            if (nd.level > m_here && ok_i) {
                ok_i = false;
                detail_i = "chain " + std::to_string(nd.chain) + " level " +
                           std::to_string(nd.level) + " above m_" +
                           std::to_string(nd.stage_added);
            }
            if (nd.stage_added > 0) {
                const std::uint64_t m_prev = t.stages.at(nd.stage_added - 1).m;
                if (nd.level <= m_prev && ok_ii) {
                    ok_ii = false;
                    detail_ii = "chain " + std::to_string(nd.chain) + " level " +
                                std::to_string(nd.level) + " not above m_" +
                                std::to_string(nd.stage_added - 1);
                }
            }
        }
        for (std::uint32_t s = 1; s <= built && ok_ii; ++s)
            if (t.stages[s].m < t.stages[s - 1].m) {
                ok_ii = false;
                detail_ii = "m not nondecreasing at stage " + std::to_string(s);
            }
        add("(i) nodes within stage bound", ok_i, detail_i);
        add("(ii) stage restriction", ok_ii, detail_ii);
    }

    // (iii) level widths bounded by the budget.
    {
        bool ok = true;
        std::string detail;
        for (const auto& [level, occ] : t.level_occupants) {
            if (BigInt(occ.size()) > t.pi_at(level)) {
                ok = false;
                detail = "width " + std::to_string(occ.size()) + " above budget at level " +
                         std::to_string(level);
                break;
            }
        }
        add("(iii) level width within budget", ok, detail);
    }

    // Per-transition checks need the maximal nodes of every stage.
    std::vector<std::vector<detail::NodeRef>> maximal(built + 1);
    std::vector<std::vector<BitWord>> maximal_words(built + 1);
    for (std::uint32_t s = 0; s <= built; ++s) {
        maximal[s] = detail::derive_maximal(t, s);
        for (const auto& nd : maximal[s])
            maximal_words[s].push_back(t.node_word(nd.chain, nd.level));
    }

    // (I) d_n = 2^ceil(n/2).
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 0; s <= built; ++s) {
            const std::uint64_t expected = std::uint64_t{1} << ((s + 1) / 2);
            if (maximal[s].size() != expected) {
                ok = false;
                detail = "stage " + std::to_string(s) + ": " +
                         std::to_string(maximal[s].size()) + " maximal nodes, expected " +
                         std::to_string(expected);
                break;
            }
        }
        add("(I) maximal node count", ok, detail);
    }

    // Maximal nodes pairwise incomparable at every stage.
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 0; s <= built && ok; ++s)
            for (std::size_t i = 0; i < maximal_words[s].size() && ok; ++i)
                for (std::size_t j = 0; j < maximal_words[s].size(); ++j) {
                    if (i == j) continue;
                    if (maximal_words[s][j].extends(maximal_words[s][i])) {
                        ok = false;
                        detail = "comparable maximal nodes at stage " + std::to_string(s);
                        break;
                    }
                }
        add("maximal nodes incomparable", ok, detail);
    }

    // (iv) every added node extends a maximal node of the previous stage.
    {
        bool ok = true;
        std::string detail;
        for (const auto& nd : nodes) {
            if (nd.stage_added == 0) continue;
            const BitWord word = t.node_word(nd.chain, nd.level);
            bool above = false;
            for (const auto& mw : maximal_words[nd.stage_added - 1])
                if (word.extends(mw)) {
                    above = true;
                    break;
                }
            if (!above) {
                ok = false;
                detail = "chain " + std::to_string(nd.chain) + " level " +
                         std::to_string(nd.level) + " not above stage " +
                         std::to_string(nd.stage_added - 1) + " maximal nodes";
                break;
            }
        }
        add("(iv) additions above maximal nodes", ok, detail);
    }

    // (v) even transitions: exactly two incomparable extensions per maximal
    // node, and nothing else.
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 0; s + 1 <= built && ok; s += 2) {
            std::vector<detail::NodeRef> added;
            for (const auto& nd : nodes)
                if (nd.stage_added == s + 1) added.push_back(nd);
            std::vector<std::size_t> ext_count(maximal_words[s].size(), 0);
            for (const auto& nd : added) {
                const BitWord word = t.node_word(nd.chain, nd.level);
                for (std::size_t i = 0; i < maximal_words[s].size(); ++i)
                    if (word.extends(maximal_words[s][i])) ++ext_count[i];
            }
            for (std::size_t i = 0; i < ext_count.size(); ++i)
                if (ext_count[i] != 2) {
                    ok = false;
                    detail = "stage " + std::to_string(s) + ": maximal node " +
                             std::to_string(i) + " has " + std::to_string(ext_count[i]) +
                             " extensions";
                    break;
                }
        }
        add("(v) even stages branch twice", ok, detail);
    }

    // (vi)a odd transitions: the additions above each maximal node form a
    // chain under the prefix order.
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 1; s + 1 <= built && ok; s += 2) {
            for (std::size_t i = 0; i < maximal_words[s].size() && ok; ++i) {
                std::vector<BitWord> above;
                for (const auto& nd : nodes) {
                    if (nd.stage_added != s + 1) continue;
                    const BitWord word = t.node_word(nd.chain, nd.level);
                    if (word.extends(maximal_words[s][i])) above.push_back(word);
                }
                std::sort(above.begin(), above.end());
                for (std::size_t j = 0; j + 1 < above.size(); ++j)
                    if (!above[j + 1].extends(above[j])) {
                        ok = false;
                        detail = "stage " + std::to_string(s) + ": node " + std::to_string(i) +
                                 " branches";
                        break;
                    }
            }
        }
        add("(vi)a odd stages do not branch", ok, detail);
    }

    // (vi)b odd transitions: every nonempty subset F of maximal nodes owns a
    // level within [m_n, m_{n+1}) populated by exactly the continuations of
    // F's members.
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 1; s + 1 <= built && ok; s += 2) {
            const std::uint64_t lo = t.stages[s].m;
            const std::uint64_t hi = t.stages[s + 1].m;
            // Which maximal node each level's occupants continue.
            std::map<std::uint64_t, std::set<std::size_t>> level_sets;
            for (const auto& [level, occ] : t.level_occupants) {
                if (level < lo || level >= hi) continue;
                for (std::uint32_t c : occ) {
                    const BitWord word = t.node_word(c, level);
                    bool matched = false;
                    for (std::size_t i = 0; i < maximal_words[s].size(); ++i)
                        if (word.extends(maximal_words[s][i])) {
                            auto [it, fresh] = level_sets[level].emplace(i);
                            if (!fresh) {
                                ok = false;
                                detail = "level " + std::to_string(level) +
                                         " holds two continuations of one node";
                            }
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        ok = false;
                        detail = "level " + std::to_string(level) +
                                 " holds a node above no stage-" + std::to_string(s) +
                                 " maximal node";
                    }
                }
            }
            if (!ok) break;
            const std::size_t d = maximal_words[s].size();
            for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << d); ++mask) {
                std::set<std::size_t> want;
                for (std::size_t i = 0; i < d; ++i)
                    if ((mask >> i) & 1u) want.insert(i);
                bool found = false;
                for (const auto& [level, got] : level_sets) {
                    if (got == want && t.width(level) == want.size()) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    ok = false;
                    detail = "stage " + std::to_string(s) + ": no level realizes subset mask " +
                             std::to_string(mask);
                    break;
                }
            }
        }
        add("(vi)b subset levels realized", ok, detail);
    }

    // Stage gap at odd transitions: counting nonempty subsets forces
    // m_{n+1} - m_n >= 2^{d_n} - 1.
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 1; s + 1 <= built; s += 2) {
            const std::uint64_t gap = t.stages[s + 1].m - t.stages[s].m;
            const std::uint64_t need = (std::uint64_t{1} << maximal[s].size()) - 1;
            if (gap < need) {
                ok = false;
                detail = "stage " + std::to_string(s) + ": gap " + std::to_string(gap) +
                         " below " + std::to_string(need);
                break;
            }
        }
        add("(II) odd stage gaps", ok, detail);
    }

    // Each odd-stage maximal node continues to exactly 2^(d-1) levels (it
    // belongs to that many nonempty subsets).
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 1; s + 1 <= built && ok; s += 2) {
            const std::uint64_t expected = std::uint64_t{1} << (maximal[s].size() - 1);
            for (std::size_t i = 0; i < maximal_words[s].size(); ++i) {
                std::uint64_t count = 0;
                for (const auto& nd : nodes) {
                    if (nd.stage_added != s + 1) continue;
                    if (t.node_word(nd.chain, nd.level).extends(maximal_words[s][i])) ++count;
                }
                if (count != expected) {
                    ok = false;
                    detail = "stage " + std::to_string(s) + ": node " + std::to_string(i) +
                             " continues to " + std::to_string(count) + " levels, expected " +
                             std::to_string(expected);
                    break;
                }
            }
        }
        add("odd chains span 2^(d-1) levels", ok, detail);
    }

    // Recorded maximal chains agree with the derived maximal nodes.
    {
        bool ok = true;
        std::string detail;
        for (std::uint32_t s = 0; s <= built && ok; ++s) {
            std::set<std::uint32_t> derived;
            for (const auto& nd : maximal[s]) derived.insert(nd.chain);
            std::set<std::uint32_t> recorded(t.stages[s].maximal_chain_ids.begin(),
                                             t.stages[s].maximal_chain_ids.end());
            if (derived != recorded) {
                ok = false;
                detail = "stage " + std::to_string(s) + ": recorded maximal set differs";
            }
        }
        add("recorded maximal chains", ok, detail);
    }

    return report;
}

// The maximal nodes of S_stage: the prefixes every branch must pass through.
inline std::vector<BitWord> enumerate_branch_prefixes(const SparseTree& t, std::uint32_t stage) {
    if (stage > t.built_stages())
        throw std::out_of_range("enumerate_branch_prefixes: stage beyond built tree");
    return t.maximal_words(stage);
}

// ---------------------------------------------------------------------------
// Meager witness.
// ---------------------------------------------------------------------------

struct WitnessBlock {
    std::uint32_t stage = 0;  // the odd stage 2n+1
    std::uint64_t start = 0;  // m_{2n+1}
    std::uint64_t length = 0; // 2^(d_{2n+1} - 1)
    std::vector<BitWord> forbidden;  // branch restrictions to the block
    BitWord chosen;                  // x restricted to the block
};

struct MeagerWitness {
    BitWord x;  // materialized through the last block
    std::vector<std::uint64_t> pi_levels;  // k_n = m_{2n+1}
    std::vector<WitnessBlock> blocks;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["pi_levels"] = pi_levels;
        j["x"] = x.str();
        auto arr = nlohmann::json::array();
        for (const auto& b : blocks) {
            auto forb = nlohmann::json::array();
            for (const auto& f : b.forbidden) forb.push_back(f.str());
            arr.push_back({{"stage", b.stage},
                           {"start", b.start},
                           {"length", b.length},
                           {"chosen", b.chosen.str()},
                           {"forbidden", std::move(forb)}});
        }
        j["blocks"] = std::move(arr);
        return j;
    }
};

namespace detail {

inline BitWord slice(const BitWord& w, std::uint64_t start, std::uint64_t length) {
    BitWord out = BitWord::zeros(length);
    for (std::uint64_t i = 0; i < length; ++i) out.set_bit(i, w.bit(start + i));
    return out;
}

}  // namespace detail

inline MeagerWitness build_meager_witness(const SparseTree& t) {
    MeagerWitness witness;
    const std::uint32_t built = t.built_stages();
    for (std::uint32_t odd = 1; odd + 1 <= built; odd += 2) {
        const std::uint64_t start = t.stages[odd].m;
        const std::uint64_t d = t.maximal_count(odd);
        const std::uint64_t length = std::uint64_t{1} << (d - 1);

        WitnessBlock block;
        block.stage = odd;
        block.start = start;
        block.length = length;

        for (std::uint32_t c : t.stages[odd].maximal_chain_ids) {
            const std::uint64_t top = t.top_level_at_stage(c, odd + 1);
            if (top < start + length)
                throw std::domain_error("build_meager_witness: chain ends before block end");
            block.forbidden.push_back(detail::slice(t.node_word(c, top), start, length));
        }

        if (d > 2) {
            // Diagonal rule: flip the i-th forbidden restriction at offset i.
            block.chosen = BitWord::zeros(length);
            for (std::uint64_t i = 0; i < d; ++i)
                block.chosen.set_bit(i, !block.forbidden[i].bit(i));
        } else {
            // Block length 2^(d-1) is not strictly above d here; search the
            // candidate blocks directly.
            bool found = false;
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << length) && !found; ++r) {
                BitWord candidate = lex_unrank_u64(r, length);
                bool clashes = false;
                for (const auto& f : block.forbidden)
                    if (candidate == f) {
                        clashes = true;
                        break;
                    }
                if (!clashes) {
                    block.chosen = std::move(candidate);
                    found = true;
                }
            }
            if (!found)
                throw std::domain_error("build_meager_witness: no admissible block value");
        }

        witness.pi_levels.push_back(start);
        witness.blocks.push_back(std::move(block));
    }

    std::uint64_t x_len = 0;
    for (const auto& b : witness.blocks) x_len = std::max(x_len, b.start + b.length);
    witness.x = BitWord::zeros(x_len);
    for (const auto& b : witness.blocks)
        for (std::uint64_t i = 0; i < b.length; ++i)
            witness.x.set_bit(b.start + i, b.chosen.bit(i));
    return witness;
}

// Certifies, at finite depth, that no branch through S agrees with x on any
// witnessed block: every maximal branch of every S_{2n+2} must differ from x
// somewhere inside the block of stage 2n+1. Maximal branches are re-derived
// from the node descriptors.
inline bool verify_witness(const SparseTree& t, const MeagerWitness& witness) {
    for (const auto& block : witness.blocks) {
        if (block.stage + 1 > t.built_stages()) return false;
        if (witness.x.length() < block.start + block.length) return false;
        const BitWord x_block = detail::slice(witness.x, block.start, block.length);
        for (const auto& nd : detail::derive_maximal(t, block.stage + 1)) {
            if (nd.level < block.start + block.length) return false;
            const BitWord branch = t.node_word(nd.chain, nd.level);
            if (detail::slice(branch, block.start, block.length) == x_block) return false;
        }
    }
    return true;
}

}  // namespace guesslab
