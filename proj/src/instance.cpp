#include "icb/instance.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "icb/error.hpp"

namespace icb {

std::string to_string(ClosureMode mode) {
  return mode == ClosureMode::SingleStep ? "single" : "iterated";
}

ClosureMode parse_closure_mode(std::string_view text) {
  if (text == "single") return ClosureMode::SingleStep;
  if (text == "iterated") return ClosureMode::Iterated;
  throw InputError("unknown closure mode '" + std::string(text) + "' (expected single|iterated)");
}

// -------------------------------------------------------------- SimpleGraph

SimpleGraph::SimpleGraph(std::size_t vertex_count) : adjacency_(vertex_count, SubsetMask(vertex_count)) {}

SimpleGraph::SimpleGraph(std::size_t vertex_count,
                         const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : SimpleGraph(vertex_count) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void SimpleGraph::add_edge(std::size_t u, std::size_t v) {
  const std::size_t n = vertex_count();
  if (u >= n || v >= n) throw InputError("graph edge endpoint out of range");
  if (u == v) throw InputError("self-loops are not allowed in a simple graph");
  adjacency_[u].set(v);
  adjacency_[v].set(u);
}

std::vector<std::pair<std::size_t, std::size_t>> SimpleGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < vertex_count(); ++u)
    for (std::size_t v : adjacency_[u].indices())
      if (u < v) out.emplace_back(u, v);
  return out;
}

SimpleGraph lex_product(const SimpleGraph& g, const SimpleGraph& f) {
  const std::size_t nf = f.vertex_count();
  SimpleGraph out(g.vertex_count() * nf);
  for (std::size_t u = 0; u < g.vertex_count(); ++u)
    for (std::size_t v = 0; v < nf; ++v)
      for (std::size_t u2 = 0; u2 < g.vertex_count(); ++u2)
        for (std::size_t v2 = 0; v2 < nf; ++v2) {
          const bool adj = g.adjacent(u, u2) || (u == u2 && f.adjacent(v, v2));
          const std::size_t a = product_index(u, v, nf);
          const std::size_t b = product_index(u2, v2, nf);
          if (adj && a < b) out.add_edge(a, b);
        }
  return out;
}

// ------------------------------------------------------ IndexCodingInstance

IndexCodingInstance::IndexCodingInstance(GroundSet messages, std::vector<Receiver> receivers,
                                         std::optional<SimpleGraph> graph)
    : messages_(std::move(messages)), graph_(std::move(graph)) {
  const std::size_t n = messages_.size();
  if (graph_ && graph_->vertex_count() != n)
    throw InputError("instance graph has " + std::to_string(graph_->vertex_count()) +
                     " vertices but there are " + std::to_string(n) + " messages");
  receivers_.reserve(receivers.size());
  for (auto& r : receivers) {
    if (r.wants >= n) throw InputError("receiver wants an unknown message index");
    if (r.knows.width() != n) throw InputError("receiver side information has the wrong width");
    if (std::find(receivers_.begin(), receivers_.end(), r) == receivers_.end())
      receivers_.push_back(std::move(r));
  }
  if (n <= 64) {
    small_.reserve(receivers_.size());
    for (const auto& r : receivers_) small_.emplace_back(r.wants, r.knows.to_u64());
  }
}

SubsetMask IndexCodingInstance::closure(const SubsetMask& s, ClosureMode mode) const {
  if (s.width() != size())
    throw InputError("closure: subset width does not match the instance");
  if (size() <= 64) return SubsetMask::from_bits(size(), closure_bits(s.to_u64(), mode));
  SubsetMask current = s;
  while (true) {
    SubsetMask next = current;
    for (const auto& r : receivers_)
      if (r.knows.is_subset_of(current)) next.set(r.wants);
    if (mode == ClosureMode::SingleStep || next == current) return next;
    current = std::move(next);
  }
}

std::uint64_t IndexCodingInstance::closure_bits(std::uint64_t s, ClosureMode mode) const {
  if (size() > 64) throw InputError("closure_bits requires at most 64 messages");
  std::uint64_t current = s;
  while (true) {
    std::uint64_t next = current;
    for (const auto& [wants, knows] : small_)
      if ((knows & ~current) == 0) next |= std::uint64_t{1} << wants;
    if (mode == ClosureMode::SingleStep || next == current) return next;
    current = next;
  }
}

namespace {

void check_pair(const IndexCodingInstance& g, const SubsetMask& s, const SubsetMask& t) {
  if (s.width() != g.size() || t.width() != g.size())
    throw InputError("subset width does not match the instance");
  if (!s.is_proper_subset_of(t))
    throw InputError("expected S ⊊ T, got S=" + format_subset(g.messages(), s) +
                     " T=" + format_subset(g.messages(), t));
}

}  // namespace

std::size_t cst(const IndexCodingInstance& g, const SubsetMask& s, const SubsetMask& t,
                ClosureMode mode) {
  check_pair(g, s, t);
  return (t - g.closure(s, mode)).count();
}

std::size_t dst(const IndexCodingInstance& g, const SubsetMask& s, const SubsetMask& t,
                ClosureMode mode) {
  check_pair(g, s, t);
  return (t & (g.closure(s, mode) - s)).count();
}

std::string product_label(const std::string& g, const std::string& f) { return g + ":" + f; }

IndexCodingInstance lex_product(const IndexCodingInstance& g, const IndexCodingInstance& f) {
  const std::size_t ng = g.size();
  const std::size_t nf = f.size();
  const std::size_t n = ng * nf;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& a : g.messages().labels())
    for (const auto& b : f.messages().labels()) labels.push_back(product_label(a, b));

  std::vector<Receiver> receivers;
  receivers.reserve(g.receivers().size() * f.receivers().size());
  for (const auto& rg : g.receivers()) {
    // S_G × V(F)
    SubsetMask block(n);
    for (std::size_t u : rg.knows.indices())
      for (std::size_t v = 0; v < nf; ++v) block.set(product_index(u, v, nf));
    for (const auto& rf : f.receivers()) {
      SubsetMask knows = block;
      for (std::size_t v : rf.knows.indices()) knows.set(product_index(rg.wants, v, nf));
      receivers.push_back({product_index(rg.wants, rf.wants, nf), std::move(knows)});
    }
  }
  std::optional<SimpleGraph> graph;
  if (g.graph() && f.graph()) graph = lex_product(*g.graph(), *f.graph());
  return IndexCodingInstance(GroundSet(std::move(labels)), std::move(receivers), std::move(graph));
}

IndexCodingInstance from_graph(const GroundSet& vertices, const SimpleGraph& graph) {
  if (graph.vertex_count() != vertices.size())
    throw InputError("graph vertex count does not match the label list");
  std::vector<Receiver> receivers;
  receivers.reserve(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) receivers.push_back({v, graph.neighbours(v)});
  return IndexCodingInstance(vertices, std::move(receivers), graph);
}

IndexCodingInstance from_graph(const GroundSet& vertices,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  return from_graph(vertices, SimpleGraph(vertices.size(), edges));
}

// ------------------------------------------------------ independence number

namespace {

class MaxIndependentSet {
 public:
  explicit MaxIndependentSet(const SimpleGraph& g) : adj_(g.vertex_count()) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) adj_[v] = g.neighbours(v).to_u64();
  }

  std::size_t solve() {
    const std::size_t n = adj_.size();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    best_ = 0;
    branch(all, 0);
    return best_;
  }

 private:
  // Vertices of `cand` are pairwise unconstrained by the current set.
  void branch(std::uint64_t cand, std::size_t size) {
    if (cand == 0) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + static_cast<std::size_t>(std::popcount(cand)) <= best_) return;
    // Isolated candidates can always be taken.
    std::uint64_t rest = cand;
    int pivot = -1;
    int pivot_degree = -1;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      const int d = std::popcount(adj_[v] & cand);
      if (d == 0) {
        cand &= ~(std::uint64_t{1} << v);
        ++size;
      } else if (d > pivot_degree) {
        pivot = v;
        pivot_degree = d;
      }
    }
    if (pivot < 0) {
      best_ = std::max(best_, size);
      return;
    }
    const std::uint64_t bit = std::uint64_t{1} << pivot;
    branch(cand & ~bit & ~adj_[pivot], size + 1);
    branch(cand & ~bit, size);
  }

  std::vector<std::uint64_t> adj_;
  std::size_t best_ = 0;
};

}  // namespace

std::size_t independence_number(const SimpleGraph& graph, std::size_t cap) {
  const std::size_t n = graph.vertex_count();
  if (n > cap || n > 64)
    throw CapExceeded("independence number: " + std::to_string(n) +
                      " vertices exceeds the cap of " + std::to_string(std::min<std::size_t>(cap, 64)));
  return MaxIndependentSet(graph).solve();
}

std::size_t independence_number(const IndexCodingInstance& g, std::size_t cap) {
  if (!g.graph()) throw Unsupported("independence number is only defined for graph instances");
  return independence_number(*g.graph(), cap);
}

NondegeneracyReport is_nondegenerate(const IndexCodingInstance& g) {
  NondegeneracyReport report;
  for (std::size_t k = 0; k < g.receivers().size(); ++k) {
    const auto& r = g.receivers()[k];
    if (r.knows.test(r.wants)) report.knows_wanted.push_back(k);
    if (r.knows.none()) report.knows_nothing.push_back(k);
  }
  report.nondegenerate = report.knows_wanted.empty() && report.knows_nothing.empty();
  return report;
}

IndexCodingInstance minimal_receivers(const IndexCodingInstance& g) {
  std::vector<Receiver> kept;
  const auto& all = g.receivers();
  for (std::size_t a = 0; a < all.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < all.size() && !dominated; ++b) {
      if (a == b || all[a].wants != all[b].wants) continue;
      // b strictly smaller, or equal and earlier (duplicates are already gone)
      dominated = all[b].knows.is_proper_subset_of(all[a].knows);
    }
    if (!dominated) kept.push_back(all[a]);
  }
  return IndexCodingInstance(g.messages(), std::move(kept), g.graph());
}

}  // namespace icb
