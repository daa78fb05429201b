#pragma once

#include <cstdint>
#include <vector>

namespace pig {

// Stable counting sort of items by key(item) in [0, universe).
// O(items + universe). `ops`, when given, accumulates touched elements so
// tests can assert linear behavior.
template <class T, class KeyFn>
void counting_sort_by(std::vector<T>& items, int universe, KeyFn key, std::uint64_t* ops = nullptr) {
    std::vector<int> cnt(universe + 1, 0);
    for (const T& it : items) cnt[key(it) + 1]++;
    for (int k = 1; k <= universe; k++) cnt[k] += cnt[k - 1];
    std::vector<T> out(items.size());
    for (T& it : items) out[cnt[key(it)]++] = std::move(it);
    items = std::move(out);
    if (ops) *ops += items.size() + universe;
}

enum class RadixOrder {
    Lex,       // each list sorted internally, then lists lexicographically
    BySize,    // by length ascending, internal element order preserved
};

struct RadixResult {
    // Lists of one group, sorted as requested; parallel to `source` which
    // holds each list's index in the input group.
    std::vector<std::vector<int>> lists;
    std::vector<int> source;
    bool deduped_any = false;  // with dedupe: whether duplicates were removed
    bool is_chain = true;      // with chain check: sorted-by-size lists nest
};

// Radix machinery over groups of integer lists with elements in [0, universe).
// Each group is handled independently; total cost is O(total elements +
// universe + number of lists). Options:
//   dedupe      remove exact duplicate lists (keeping the first source)
//   chain_check verify the (deduped) lists form a containment chain when
//               ordered by size
std::vector<RadixResult> group_radix_sort(const std::vector<std::vector<std::vector<int>>>& groups,
                                          int universe,
                                          RadixOrder order,
                                          bool dedupe = false,
                                          bool chain_check = false,
                                          std::uint64_t* ops = nullptr);

}  // namespace pig
