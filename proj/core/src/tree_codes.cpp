#include "sensornet/tree_codes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "sensornet/errors.hpp"

namespace sensornet::compute {

using detail::require;

void Network::validate() const {
  require(n >= 1, "network: n must be >= 1");
  require(static_cast<int>(alphabet.size()) == n, "network: one alphabet size per node");
  for (int q : alphabet) require(q >= 1, "network: alphabet sizes must be >= 1");
  require(collector >= 0 && collector < n, "network: collector out of range");
  std::set<Edge> seen;
  for (const auto& [u, v] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n, "network: edge endpoint out of range");
    require(u != v, "network: self-loop");
    require(seen.insert({u, v}).second, "network: duplicate edge");
  }
  topological_order();
}

std::vector<int> Network::out_edges(NodeId v) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].first == v) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<int> Network::in_edges(NodeId v) const {
  std::vector<int> in;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].second == v) in.push_back(static_cast<int>(e));
  return in;
}

std::vector<NodeId> Network::topological_order() const {
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges) ++indeg[e.second];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<NodeId> order;
  while (!ready.empty()) {
    const NodeId u = ready.top();
    ready.pop();
    order.push_back(u);
    for (const auto& e : edges)
      if (e.first == u && --indeg[e.second] == 0) ready.push(e.second);
  }
  require(static_cast<int>(order.size()) == n, "network: graph has a cycle");
  return order;
}

bool Network::is_in_tree() const {
  validate();
  for (int v = 0; v < n; ++v) {
    const auto out = out_edges(v);
    if (v == collector ? !out.empty() : out.size() != 1) return false;
  }
  return true;
}

void check_function(const Network& network, const FunctionTable& f) {
  network.validate();
  require(f.arity() == network.n, "function arity must equal the node count");
  require(f.alphabet_sizes() == network.alphabet, "function alphabets must match the node alphabets");
}

SubsetIndexer::SubsetIndexer(std::vector<NodeId> nodes, const std::vector<int>& alphabet)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  for (NodeId v : nodes_) {
    require(v >= 0 && v < static_cast<int>(alphabet.size()), "subset node out of range");
    radix_.push_back(alphabet[v]);
    size_ *= static_cast<std::size_t>(alphabet[v]);
  }
}

std::size_t SubsetIndexer::index(const std::vector<int>& full) const {
  std::size_t idx = 0;
  for (std::size_t p = 0; p < nodes_.size(); ++p)
    idx = idx * static_cast<std::size_t>(radix_[p]) + static_cast<std::size_t>(full[nodes_[p]]);
  return idx;
}

void SubsetIndexer::fill(std::size_t idx, std::vector<int>& full) const {
  for (std::size_t p = nodes_.size(); p-- > 0;) {
    full[nodes_[p]] = static_cast<int>(idx % static_cast<std::size_t>(radix_[p]));
    idx /= static_cast<std::size_t>(radix_[p]);
  }
}

SubsetClasses subset_classes(const FunctionTable& f, const std::vector<int>& alphabet,
                             std::vector<NodeId> subset) {
  const int n = static_cast<int>(alphabet.size());
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<NodeId> rest;
  for (int v = 0; v < n; ++v)
    if (!std::binary_search(subset.begin(), subset.end(), v)) rest.push_back(v);
  const SubsetIndexer in(subset, alphabet), out(rest, alphabet);
  std::vector<int> signature(in.size() * out.size());
  std::vector<int> x(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    f.decode(idx, x);
    signature[in.index(x) * out.size() + out.index(x)] = f.at(idx);
  }
  SubsetClasses result;
  result.nodes = in.nodes();
  result.class_of.resize(in.size());
  std::map<std::vector<int>, int> ids;
  for (std::size_t u = 0; u < in.size(); ++u) {
    std::vector<int> sig(signature.begin() + static_cast<std::ptrdiff_t>(u * out.size()),
                         signature.begin() + static_cast<std::ptrdiff_t>((u + 1) * out.size()));
    const auto [it, inserted] = ids.emplace(std::move(sig), result.count);
    if (inserted) {
      ++result.count;
      result.representative.push_back(static_cast<int>(u));
    }
    result.class_of[u] = it->second;
  }
  return result;
}

std::vector<std::string> huffman_code(const std::vector<double>& probabilities) {
  const std::size_t k = probabilities.size();
  require(k >= 1, "huffman_code: no symbols");
  for (double p : probabilities) require(p >= 0.0 && std::isfinite(p), "huffman_code: bad probability");
  std::vector<std::string> code(k);
  if (k == 1) return code;
  // Node ids < k are leaves; internal nodes follow. Key: (weight, smallest leaf).
  using Item = std::tuple<double, std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<std::pair<std::size_t, std::size_t>> children;
  for (std::size_t s = 0; s < k; ++s) heap.emplace(probabilities[s], s, s);
  while (heap.size() > 1) {
    const auto [w0, m0, a] = heap.top();
    heap.pop();
    const auto [w1, m1, b] = heap.top();
    heap.pop();
    children.emplace_back(a, b);
    heap.emplace(w0 + w1, std::min(m0, m1), k + children.size() - 1);
  }
  std::vector<std::pair<std::size_t, std::string>> stack{{std::get<2>(heap.top()), ""}};
  while (!stack.empty()) {
    auto [node, prefix] = stack.back();
    stack.pop_back();
    if (node < k) {
      code[node] = prefix;
      continue;
    }
    const auto [a, b] = children[node - k];
    stack.emplace_back(a, prefix + "0");
    stack.emplace_back(b, prefix + "1");
  }
  return code;
}

namespace {

std::vector<std::string> fixed_length_code(int count) {
  int len = 0;
  while ((1LL << len) < count) ++len;
  std::vector<std::string> code(static_cast<std::size_t>(count));
  for (int c = 0; c < count; ++c)
    for (int b = len - 1; b >= 0; --b) code[c].push_back(((c >> b) & 1) ? '1' : '0');
  return code;
}

void check_distribution(const FunctionTable& f, const std::vector<double>& p) {
  require(p.size() == f.size(), "distribution size must match the function table");
  double sum = 0.0;
  for (double v : p) {
    require(std::isfinite(v) && v >= 0.0, "probabilities must be finite and >= 0");
    require(v > 0.0,
            "average-case coding needs a strictly positive distribution (with zeros the optimal "
            "encoder is NP-hard to find)");
    sum += v;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "probabilities must sum to 1");
}

// Nodes whose data reaches the collector through `node` (node included).
std::vector<NodeId> upstream(const Network& net, NodeId node) {
  std::vector<NodeId> nodes{node};
  std::vector<char> seen(static_cast<std::size_t>(net.n), 0);
  seen[node] = 1;
  for (std::size_t head = 0; head < nodes.size(); ++head)
    for (const auto& [u, v] : net.edges)
      if (v == nodes[head] && !seen[u]) {
        seen[u] = 1;
        nodes.push_back(u);
      }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace

TreeCode tree_zero_error_codes(const Network& network, const FunctionTable& f, CodingMode mode,
                               const std::optional<std::vector<double>>& p) {
  check_function(network, f);
  require(network.is_in_tree(), "tree coding needs a tree directed toward the collector");
  if (mode == CodingMode::AverageCase) {
    require(p.has_value(), "average-case coding needs a distribution");
    check_distribution(f, *p);
  }
  TreeCode code;
  code.mode = mode;
  std::vector<int> x(static_cast<std::size_t>(network.n));
  for (const auto& e : network.edges) {
    EdgeCode ec;
    ec.edge = e;
    auto classes = subset_classes(f, network.alphabet, upstream(network, e.first));
    ec.subtree = classes.nodes;
    ec.class_of = std::move(classes.class_of);
    ec.class_count = classes.count;
    ec.representative = std::move(classes.representative);
    if (mode == CodingMode::WorstCase) {
      ec.codewords = fixed_length_code(ec.class_count);
      ec.rate = std::log2(static_cast<double>(ec.class_count));
    } else {
      const SubsetIndexer idx(ec.subtree, network.alphabet);
      ec.class_probability.assign(static_cast<std::size_t>(ec.class_count), 0.0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f.decode(i, x);
        ec.class_probability[ec.class_of[idx.index(x)]] += (*p)[i];
      }
      ec.codewords = huffman_code(ec.class_probability);
      ec.rate = 0.0;
      for (int c = 0; c < ec.class_count; ++c)
        ec.rate += ec.class_probability[c] * static_cast<double>(ec.codewords[c].size());
    }
    for (const auto& w : ec.codewords)
      ec.codeword_length = std::max(ec.codeword_length, static_cast<int>(w.size()));
    code.rates.push_back(ec.rate);
    code.edges.push_back(std::move(ec));
  }
  return code;
}

EdgeCode coarsen(const EdgeCode& code, const std::vector<int>& block_of_class) {
  require(static_cast<int>(block_of_class.size()) == code.class_count, "coarsen: one block per class");
  int blocks = 0;
  for (int b : block_of_class) {
    require(b >= 0, "coarsen: negative block");
    blocks = std::max(blocks, b + 1);
  }
  EdgeCode out = code;
  out.class_count = blocks;
  out.representative.assign(static_cast<std::size_t>(blocks), -1);
  for (int c = 0; c < code.class_count; ++c)
    if (out.representative[block_of_class[c]] < 0) out.representative[block_of_class[c]] = code.representative[c];
  for (int r : out.representative) require(r >= 0, "coarsen: block numbers must be contiguous");
  for (auto& c : out.class_of) c = block_of_class[c];
  out.codewords = fixed_length_code(blocks);
  out.class_probability.clear();
  out.rate = std::log2(static_cast<double>(blocks));
  out.codeword_length = out.codewords.empty() ? 0 : static_cast<int>(out.codewords[0].size());
  return out;
}

VerifyResult verify_tree_protocol(const Network& network, const FunctionTable& f, const TreeCode& code) {
  check_function(network, f);
  require(network.is_in_tree(), "verify_tree_protocol: network is not a tree");
  require(code.edges.size() == network.edges.size(), "verify_tree_protocol: code does not match the network");
  const auto order = network.topological_order();
  std::vector<int> out_edge(static_cast<std::size_t>(network.n), -1);
  for (std::size_t e = 0; e < network.edges.size(); ++e) out_edge[network.edges[e].first] = static_cast<int>(e);
  std::vector<SubsetIndexer> indexers;
  std::vector<std::map<std::string, int>> decoders(code.edges.size());
  for (std::size_t e = 0; e < code.edges.size(); ++e) {
    indexers.emplace_back(code.edges[e].subtree, network.alphabet);
    for (int c = 0; c < code.edges[e].class_count; ++c) decoders[e].emplace(code.edges[e].codewords[c], c);
  }
  std::vector<std::vector<int>> in_edges(static_cast<std::size_t>(network.n));
  for (int v = 0; v < network.n; ++v) in_edges[v] = network.in_edges(v);

  VerifyResult result;
  std::vector<int> x(static_cast<std::size_t>(network.n)), recon(x.size());
  std::vector<std::string> sent(code.edges.size());
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    f.decode(idx, x);
    bool decoded = true;
    for (NodeId u : order) {
      recon[u] = x[u];
      for (int e : in_edges[u]) {
        const auto it = decoders[e].find(sent[e]);
        if (it == decoders[e].end()) {
          decoded = false;
          break;
        }
        indexers[e].fill(static_cast<std::size_t>(code.edges[e].representative[it->second]), recon);
      }
      if (!decoded) break;
      const int e = out_edge[u];
      if (e >= 0) sent[e] = code.edges[e].codewords[code.edges[e].class_of[indexers[e].index(recon)]];
    }
    ++result.checked;
    if (!decoded || f(recon) != f.at(idx)) {
      result.ok = false;
      result.first_failure = idx;
      break;
    }
  }
  return result;
}

}  // namespace sensornet::compute
