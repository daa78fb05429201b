#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pig/recognition.hpp"

namespace pig {

// The three reasons a connected graph's normal model is not unique: the
// partial-matrix ordering admits a second solution (A), a two-column model
// has a housing column with two or more simplicial non-probes (B), a housed
// non-clique column sits under a P node and can change sides (C).
enum class UniquenessTest : std::uint8_t { A, B, C };
const char* to_string(UniquenessTest t);

struct UniquenessVerdict {
    bool unique = true;
    // Which test failed; empty for unique graphs and for disconnected ones,
    // where non-uniqueness comes from component placement instead.
    std::optional<UniquenessTest> failing_test;
    std::string witness;  // short human hint, empty when unique
};

// Decides whether the accepted graph has exactly one normal model up to
// reversal. Requires the recognition trace; throws InvalidInput when it is
// missing the needed artifacts.
UniquenessVerdict is_unique_normal_model(const PartitionedGraph& g, const RecognitionResult& res);

}  // namespace pig
