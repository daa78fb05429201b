#include "pig/radix.hpp"

#include <algorithm>

#include "pig/errors.hpp"

namespace pig {

namespace {

// Lexicographic sort of variable-length integer lists in O(total + universe),
// the classic queue-and-bucket procedure. Returns the permutation of list
// indices. Shorter lists precede longer ones sharing their prefix.
std::vector<int> lex_sort_indices(const std::vector<std::vector<int>>& lists, int universe,
                                  std::uint64_t* ops) {
    const int nl = static_cast<int>(lists.size());
    std::size_t lmax = 0, total = 0;
    for (const auto& l : lists) {
        lmax = std::max(lmax, l.size());
        total += l.size();
    }
    if (ops) *ops += total + universe + nl;

    // values used at each position, sorted, so only touched buckets get cleared
    std::vector<std::vector<int>> used(lmax);
    {
        std::vector<std::pair<int, int>> pairs;  // (value, position)
        pairs.reserve(total);
        for (const auto& l : lists)
            for (std::size_t pos = 0; pos < l.size(); pos++) pairs.push_back({l[pos], static_cast<int>(pos)});
        counting_sort_by(pairs, static_cast<int>(lmax), [](const auto& p) { return p.second; }, ops);
        counting_sort_by(pairs, universe, [](const auto& p) { return p.first; }, ops);
        int prev_val = -1, prev_pos = -1;
        for (const auto& [v, pos] : pairs) {
            if (v != prev_val || pos != prev_pos) used[pos].push_back(v);
            prev_val = v, prev_pos = pos;
        }
    }

    std::vector<std::vector<int>> by_len(lmax + 1);
    for (int i = 0; i < nl; i++) by_len[lists[i].size()].push_back(i);

    std::vector<std::vector<int>> bucket(universe);
    std::vector<int> queue;
    queue.reserve(nl);
    for (std::size_t l = lmax; l-- > 0;) {
        std::vector<int> next;
        next.reserve(queue.size() + by_len[l + 1].size());
        for (int i : by_len[l + 1]) next.push_back(i);
        for (int i : queue) next.push_back(i);
        for (int i : next) bucket[lists[i][l]].push_back(i);
        queue.clear();
        for (int v : used[l]) {
            for (int i : bucket[v]) queue.push_back(i);
            if (ops) *ops += bucket[v].size();
            bucket[v].clear();
        }
    }
    std::vector<int> result;
    result.reserve(nl);
    for (int i : by_len[0]) result.push_back(i);
    for (int i : queue) result.push_back(i);
    return result;
}

}  // namespace

std::vector<RadixResult> group_radix_sort(const std::vector<std::vector<std::vector<int>>>& groups,
                                          int universe, RadixOrder order, bool dedupe,
                                          bool chain_check, std::uint64_t* ops) {
    if (universe < 0) throw InvalidInput("group_radix_sort: negative universe");
    for (const auto& g : groups)
        for (const auto& l : g)
            for (int v : l)
                if (v < 0 || v >= universe) throw InvalidInput("group_radix_sort: element out of universe");

    std::vector<RadixResult> results;
    results.reserve(groups.size());
    std::vector<int> stamp(universe, -1);
    int stamp_gen = 0;

    for (const auto& group : groups) {
        RadixResult res;
        std::vector<std::vector<int>> lists = group;
        std::vector<int> source(lists.size());
        for (std::size_t i = 0; i < source.size(); i++) source[i] = static_cast<int>(i);

        const bool need_lex = order == RadixOrder::Lex || dedupe || chain_check;
        if (need_lex) {
            // sort each list internally with one shared pass
            std::vector<std::pair<int, int>> pairs;  // (value, list index)
            for (std::size_t i = 0; i < lists.size(); i++)
                for (int v : lists[i]) pairs.push_back({v, static_cast<int>(i)});
            counting_sort_by(pairs, universe, [](const auto& p) { return p.first; }, ops);
            for (auto& l : lists) l.clear();
            for (const auto& [v, i] : pairs) lists[i].push_back(v);

            std::vector<int> perm = lex_sort_indices(lists, universe, ops);
            std::vector<std::vector<int>> sorted;
            std::vector<int> src;
            sorted.reserve(lists.size());
            src.reserve(lists.size());
            for (int i : perm) {
                if (dedupe && !sorted.empty() && sorted.back() == lists[i]) {
                    res.deduped_any = true;
                    continue;
                }
                sorted.push_back(lists[i]);
                src.push_back(source[i]);
            }
            lists = std::move(sorted);
            source = std::move(src);
        }

        if (order == RadixOrder::BySize) {
            std::vector<int> idx(lists.size());
            for (std::size_t i = 0; i < idx.size(); i++) idx[i] = static_cast<int>(i);
            int lmax = 0;
            for (const auto& l : lists) lmax = std::max(lmax, static_cast<int>(l.size()));
            counting_sort_by(idx, lmax + 1, [&](int i) { return static_cast<int>(lists[i].size()); }, ops);
            std::vector<std::vector<int>> sorted;
            std::vector<int> src;
            sorted.reserve(lists.size());
            src.reserve(lists.size());
            for (int i : idx) {
                sorted.push_back(std::move(lists[i]));
                src.push_back(source[i]);
            }
            lists = std::move(sorted);
            source = std::move(src);
        }

        if (chain_check) {
            // ascending by size here only if BySize was requested; otherwise
            // verify on a size-ordered view
            std::vector<const std::vector<int>*> view;
            view.reserve(lists.size());
            for (const auto& l : lists) view.push_back(&l);
            if (order != RadixOrder::BySize) {
                std::vector<int> idx(lists.size());
                for (std::size_t i = 0; i < idx.size(); i++) idx[i] = static_cast<int>(i);
                int lmax = 0;
                for (const auto& l : lists) lmax = std::max(lmax, static_cast<int>(l.size()));
                counting_sort_by(idx, lmax + 1, [&](int i) { return static_cast<int>(lists[i].size()); }, ops);
                for (std::size_t i = 0; i < idx.size(); i++) view[i] = &lists[idx[i]];
            }
            for (std::size_t i = 0; i + 1 < view.size() && res.is_chain; i++) {
                stamp_gen++;
                for (int v : *view[i + 1]) stamp[v] = stamp_gen;
                for (int v : *view[i])
                    if (stamp[v] != stamp_gen) {
                        res.is_chain = false;
                        break;
                    }
                if (ops) *ops += view[i]->size() + view[i + 1]->size();
            }
        }

        res.lists = std::move(lists);
        res.source = std::move(source);
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace pig
