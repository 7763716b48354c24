#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sensornet/function_table.hpp"
#include "sensornet/graph.hpp"

namespace sensornet::compute {

/// Directed network of noiseless links; data flows along edges toward the
/// collector. Node v observes a symbol from {0..alphabet[v]-1}; alphabet 1
/// means the node has no measurement.
struct Network {
  int n = 0;
  std::vector<Edge> edges;
  NodeId collector = 0;
  std::vector<int> alphabet;

  /// Throws InvalidArgument on bad indices, loops, duplicate edges or cycles.
  void validate() const;
  /// Every non-collector node has exactly one out-edge, the collector none,
  /// and all paths end at the collector.
  bool is_in_tree() const;
  std::vector<int> out_edges(NodeId v) const;
  std::vector<int> in_edges(NodeId v) const;
  /// Nodes in an order where every edge goes from an earlier to a later node.
  std::vector<NodeId> topological_order() const;
};

/// f must take one argument per node with the node alphabets.
void check_function(const Network& network, const FunctionTable& f);

/// Joint assignments of a node subset, indexed in mixed radix over the
/// subset's nodes in ascending order (first node most significant).
class SubsetIndexer {
 public:
  SubsetIndexer(std::vector<NodeId> nodes, const std::vector<int>& alphabet);
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return size_; }
  /// Index of the restriction of a full input vector.
  std::size_t index(const std::vector<int>& full) const;
  /// Writes assignment `idx` into the subset's positions of `full`.
  void fill(std::size_t idx, std::vector<int>& full) const;

 private:
  std::vector<NodeId> nodes_;
  std::vector<int> radix_;
  std::size_t size_ = 1;
};

/// Assignments of `subset` are equivalent when they give the same f value
/// under every assignment of the remaining nodes.
struct SubsetClasses {
  std::vector<NodeId> nodes;
  std::vector<int> class_of;       ///< per subset assignment; numbered by first occurrence
  int count = 0;
  std::vector<int> representative; ///< smallest assignment of each class
};

SubsetClasses subset_classes(const FunctionTable& f, const std::vector<int>& alphabet,
                             std::vector<NodeId> subset);

enum class CodingMode { WorstCase, AverageCase };

/// Binary minimum-redundancy prefix code; ties broken by symbol index. A
/// single symbol gets the empty codeword.
std::vector<std::string> huffman_code(const std::vector<double>& probabilities);

struct EdgeCode {
  Edge edge{};
  std::vector<NodeId> subtree;      ///< nodes whose data crosses the edge
  std::vector<int> class_of;        ///< per subtree assignment
  int class_count = 0;
  std::vector<int> representative;  ///< nominal assignment per class
  std::vector<std::string> codewords;
  std::vector<double> class_probability;  ///< average case only
  double rate = 0.0;        ///< log2(classes), or the expected codeword length
  int codeword_length = 0;  ///< longest codeword (single-shot worst case)
};

struct TreeCode {
  CodingMode mode = CodingMode::WorstCase;
  std::vector<EdgeCode> edges;  ///< aligned with network.edges
  std::vector<double> rates;
};

/// Per edge: the classes of the subtree's joint inputs, then fixed-length
/// codewords (worst case) or a Huffman code over class probabilities
/// (average case, p indexed like f and strictly positive).
TreeCode tree_zero_error_codes(const Network& network, const FunctionTable& f, CodingMode mode,
                               const std::optional<std::vector<double>>& p = std::nullopt);

/// Replaces an edge's classes by blocks of classes (block_of_class[c]);
/// each block keeps the representative of its smallest class and gets a
/// fixed-length codeword.
EdgeCode coarsen(const EdgeCode& code, const std::vector<int>& block_of_class);

struct VerifyResult {
  bool ok = true;
  std::size_t checked = 0;
  std::size_t first_failure = 0;  ///< input index of the first wrong output
};

/// Runs the protocol on every joint input: each node encodes the class of its
/// subtree assignment, with children's parts replaced by the nominal
/// representatives decoded from their codewords; the collector evaluates f on
/// its reconstruction.
VerifyResult verify_tree_protocol(const Network& network, const FunctionTable& f, const TreeCode& code);

}  // namespace sensornet::compute
