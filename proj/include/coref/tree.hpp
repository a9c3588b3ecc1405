// Constituency trees recovered from CoNLL parse-bit columns.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coref/util.hpp"

namespace coref {

struct TreeNode {
    std::string label;
    int start = 0;  // token span, inclusive
    int end = 0;
    std::vector<TreeNode> children;

    // token positions directly under this node, i.e. not covered by a child
    std::vector<int> direct_tokens() const {
        std::vector<int> out;
        size_t ci = 0;
        for (int t = start; t <= end; ++t) {
            while (ci < children.size() && children[ci].end < t) ++ci;
            if (ci < children.size() && children[ci].start <= t && t <= children[ci].end)
                continue;
            out.push_back(t);
        }
        return out;
    }
};

namespace detail {

inline void collect_nodes(const TreeNode& n, std::vector<const TreeNode*>& out) {
    out.push_back(&n);
    for (const auto& c : n.children) collect_nodes(c, out);
}

}  // namespace detail

inline std::vector<const TreeNode*> all_nodes(const TreeNode& root) {
    std::vector<const TreeNode*> out;
    detail::collect_nodes(root, out);
    return out;
}

// Builds a tree from per-token parse bits like "(TOP(S(NP*" / "*" / "*)))".
// Returns nullopt when every bit is "*" or "-" (no parse in the input).
// Throws data_error on unbalanced brackets; `where` names the sentence.
inline std::optional<TreeNode> build_parse_tree(const std::vector<std::string>& bits,
                                                const std::string& where = {}) {
    bool any = false;
    for (const auto& b : bits)
        if (b != "*" && b != "-" && !b.empty()) any = true;
    if (!any) return std::nullopt;

    auto fail = [&](const std::string& msg) -> void {
        throw data_error("parse bits " + msg + (where.empty() ? "" : " in " + where));
    };

    std::vector<TreeNode> stack;
    std::vector<TreeNode> roots;
    for (size_t t = 0; t < bits.size(); ++t) {
        const std::string& bit = bits[t];
        size_t i = 0;
        bool saw_anchor = false;
        while (i < bit.size()) {
            char c = bit[i];
            if (c == '(') {
                size_t j = i + 1;
                while (j < bit.size() && bit[j] != '(' && bit[j] != ')' && bit[j] != '*') ++j;
                TreeNode n;
                n.label = bit.substr(i + 1, j - i - 1);
                n.start = static_cast<int>(t);
                stack.push_back(std::move(n));
                i = j;
            } else if (c == '*') {
                saw_anchor = true;
                ++i;
            } else if (c == ')') {
                if (stack.empty()) fail("close a constituent that was never opened");
                TreeNode n = std::move(stack.back());
                stack.pop_back();
                n.end = static_cast<int>(t);
                if (stack.empty())
                    roots.push_back(std::move(n));
                else
                    stack.back().children.push_back(std::move(n));
                ++i;
            } else if (c == '-') {
                ++i;
            } else {
                fail("contain unexpected character '" + std::string(1, c) + "'");
            }
        }
        (void)saw_anchor;
    }
    if (!stack.empty())
        fail("leave constituent (" + stack.back().label + " unclosed");
    if (roots.empty()) return std::nullopt;
    if (roots.size() == 1) return std::move(roots.front());

    TreeNode top;
    top.label = "";
    top.start = roots.front().start;
    top.end = roots.back().end;
    top.children = std::move(roots);
    return top;
}

}  // namespace coref
