#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pig/graph.hpp"
#include "pig/pq_tree.hpp"
#include "pig/recognition.hpp"
#include "pig/uniqueness.hpp"

namespace pig {

// Graph files: UTF-8 lines, `#` comments, `p <name>` probe, `n <name>`
// non-probe, `e <u> <v>` edge by name; declarations precede use.
// Throws MalformedInput / NonIndependentNonProbes.
PartitionedGraph parse_graph(std::istream& in);
std::string format_graph(const PartitionedGraph& g, const std::string& header_comment = "");

// Matrix text: "rows R cols C", one "name: c1 c2 ..." line per row (ids
// assigned 0..R-1 in file order), optional trailing "order: ..." line.
BinaryMatrix parse_matrix(std::istream& in);
std::string format_matrix(const BinaryMatrix& m,
                          const std::vector<std::string>* row_names = nullptr);

// Nested P(...)/Q(...) structure text; two-child nodes print as P.
std::string format_pq_tree(const PQTree& t);

// Model JSON: verdict, ordered column records {index, class, vertices},
// row intervals {vertex, first, last}; optional `unique` verdict block;
// rejects carry {stage, detail}.
std::string model_to_json(const PartitionedGraph& g, const RecognitionResult& result,
                          const UniquenessVerdict* unique = nullptr);
std::string reject_to_json(const Reject& reject);

// Plain-text rendering of the same content for human eyes.
std::string model_to_text(const PartitionedGraph& g, const RecognitionResult& result,
                          const UniquenessVerdict* unique = nullptr);

// Reads a claimed model back (accepted verdicts only); vertex names resolve
// against g. Intervals are authoritative; the column records must agree with
// them. Throws MalformedInput on any inconsistency.
ProbeIntervalModel parse_model_json(std::istream& in, const PartitionedGraph& g);

}  // namespace pig
