#pragma once

#include <string>
#include <vector>

#include "clusterforge/extraction.hpp"
#include "clusterforge/gaussian.hpp"
#include "clusterforge/graph.hpp"
#include "clusterforge/synthesis.hpp"

namespace clusterforge {

// External formats. Node and mode indices are 1-based on disk; numbers are
// written in the shortest form that parses back to the identical double, so
// every round-trip is bit-exact. Parsers ignore unknown keys, which lets the
// CLI append verification blocks to its outputs.

/// {"n": int, "edges": [{"i", "j", "w"}...]} with 1 <= i < j <= n, each pair
/// at most once, each weight finite and nonzero. Throws FormatError.
ClusterGraph parse_graph(const std::string& text);
std::string serialize_graph(const ClusterGraph& g);

/// Same schema with "entries" and i <= j (diagonal allowed).
TmsGraph parse_tms(const std::string& text);
std::string serialize_tms(const TmsGraph& g);

/// {"B": [[...]], "C": [[...]]}, row-major nested arrays.
SynthesisFreedom parse_freedom(const std::string& text);
std::string serialize_freedom(const SynthesisFreedom& f);

/// {"n", "L", "plus_set", "minus_set", "perm", "A0"}.
BipartitePartition parse_partition(const std::string& text);
std::string serialize_partition(const BipartitePartition& p);

/// {"perm", "L", "A0", "B", "C"}.
ExtractionResult parse_extraction(const std::string& text);
std::string serialize_extraction(const ExtractionResult& r);

/// {"alpha", "variances", "max_variance", "covariance"}.
NullifierReport parse_report(const std::string& text);
std::string serialize_report(const NullifierReport& r);

/// CSV with header alpha,mode,variance and one row per (alpha, mode).
/// Modes are numbered by `labels` when given (1-based), else 1..n.
std::string sweep_to_csv(const std::vector<NullifierReport>& reports,
                         const std::vector<int>& labels = {});

}  // namespace clusterforge
