#pragma once

// Index coding instances as directed hypergraphs: receivers (wants, knows),
// the closure operator, the decoding constants c(S,T) and d(S,T), the
// lexicographic product, and graph-derived instances.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icb/groundset.hpp"

namespace icb {

enum class ClosureMode { SingleStep, Iterated };

std::string to_string(ClosureMode mode);
/// "single" or "iterated".
ClosureMode parse_closure_mode(std::string_view text);

struct Receiver {
  std::size_t wants = 0;
  SubsetMask knows;

  friend bool operator==(const Receiver&, const Receiver&) = default;
};

/// Simple undirected graph on vertices 0..n-1, stored as neighbour bitmasks.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t vertex_count);
  /// Throws InputError on self-loops or out-of-range endpoints.
  SimpleGraph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  const SubsetMask& neighbours(std::size_t v) const { return adjacency_.at(v); }
  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_.at(u).test(v); }
  void add_edge(std::size_t u, std::size_t v);
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<SubsetMask> adjacency_;
};

/// Lexicographic graph product: (u,v) ~ (u',v') iff u ~ u', or u = u' and v ~ v'.
SimpleGraph lex_product(const SimpleGraph& g, const SimpleGraph& f);

class IndexCodingInstance {
 public:
  IndexCodingInstance() = default;
  /// Receivers are deduplicated, keeping first occurrences in order.
  IndexCodingInstance(GroundSet messages, std::vector<Receiver> receivers,
                      std::optional<SimpleGraph> graph = std::nullopt);

  const GroundSet& messages() const noexcept { return messages_; }
  std::size_t size() const noexcept { return messages_.size(); }
  const std::vector<Receiver>& receivers() const noexcept { return receivers_; }
  /// Present when the instance was built from (or is a product of) graphs.
  const std::optional<SimpleGraph>& graph() const noexcept { return graph_; }

  SubsetMask all() const { return SubsetMask::full(size()); }
  SubsetMask empty_set() const { return SubsetMask(size()); }

  SubsetMask closure(const SubsetMask& s, ClosureMode mode = ClosureMode::SingleStep) const;
  /// Closure on dense subset ranks; requires size() <= 64.
  std::uint64_t closure_bits(std::uint64_t s, ClosureMode mode = ClosureMode::SingleStep) const;

 private:
  GroundSet messages_;
  std::vector<Receiver> receivers_;
  std::optional<SimpleGraph> graph_;
  // (wants, knows) as raw bits for instances with at most 64 messages.
  std::vector<std::pair<std::size_t, std::uint64_t>> small_;
};

/// c(S,T) = |T \ cl(S)|. Requires S ⊊ T.
std::size_t cst(const IndexCodingInstance& g, const SubsetMask& s, const SubsetMask& t,
                ClosureMode mode = ClosureMode::SingleStep);
/// d(S,T) = |T ∩ (cl(S) \ S)|. Requires S ⊊ T.
std::size_t dst(const IndexCodingInstance& g, const SubsetMask& s, const SubsetMask& t,
                ClosureMode mode = ClosureMode::SingleStep);

/// Product label for message (g, f).
std::string product_label(const std::string& g, const std::string& f);

/// Messages V(G)×V(F) in g-major order; one receiver per pair of receivers.
IndexCodingInstance lex_product(const IndexCodingInstance& g, const IndexCodingInstance& f);

/// Index of message (g, f) in the product ground set.
inline std::size_t product_index(std::size_t g, std::size_t f, std::size_t f_size) {
  return g * f_size + f;
}

/// One receiver per vertex wanting its own message and knowing its neighbours.
IndexCodingInstance from_graph(const GroundSet& vertices, const SimpleGraph& graph);
IndexCodingInstance from_graph(const GroundSet& vertices,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges);

inline constexpr std::size_t kDefaultAlphaCap = 40;

/// Exact independence number of the instance's source graph by branch and bound.
/// Throws Unsupported for instances without a graph, CapExceeded above `cap` vertices.
std::size_t independence_number(const IndexCodingInstance& g, std::size_t cap = kDefaultAlphaCap);
std::size_t independence_number(const SimpleGraph& graph, std::size_t cap = kDefaultAlphaCap);

struct NondegeneracyReport {
  bool nondegenerate = true;
  /// Receivers whose wanted message is already known.
  std::vector<std::size_t> knows_wanted;
  /// Receivers with empty side information.
  std::vector<std::size_t> knows_nothing;
};

NondegeneracyReport is_nondegenerate(const IndexCodingInstance& g);

/// Keeps, per wanted message, only receivers with inclusion-minimal side
/// information. Closure (both modes) is unchanged.
IndexCodingInstance minimal_receivers(const IndexCodingInstance& g);

}  // namespace icb
