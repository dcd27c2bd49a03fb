// Bounded-length simple path enumeration and counting.

#include <algorithm>
#include <fmt/format.h>

#include "anonsat/errors.hpp"
#include "anonsat/graph.hpp"

namespace anonsat {

namespace {

void check_endpoints(const GatewayGraph& g, NodeId src, NodeId dst, unsigned max_len) {
  g.index_of(src);
  g.index_of(dst);
  if (src == dst) throw DomainError(fmt::format("paths from gateway {} to itself are undefined", src));
  if (max_len < 1) throw DomainError("max_len must be at least 1");
}

struct PairCounter {
  const GatewayGraph& g;
  std::size_t dst;
  std::vector<char> on_path;
  std::uint64_t count = 0;

  void walk(std::size_t u, unsigned remaining) {
    for (const auto& nb : g.neighbors(u)) {
      const std::size_t v = nb.index;
      if (v == dst) {
        ++count;
        continue;
      }
      if (remaining == 1 || on_path[v]) continue;
      on_path[v] = 1;
      walk(v, remaining - 1);
      on_path[v] = 0;
    }
  }
};

struct SourceCounter {
  const GatewayGraph& g;
  std::vector<char> on_path;
  std::vector<std::uint64_t> counts;

  void walk(std::size_t u, unsigned remaining) {
    for (const auto& nb : g.neighbors(u)) {
      const std::size_t v = nb.index;
      if (on_path[v]) continue;
      ++counts[v];
      if (remaining == 1) continue;
      on_path[v] = 1;
      walk(v, remaining - 1);
      on_path[v] = 0;
    }
  }
};

struct PathCollector {
  const GatewayGraph& g;
  std::size_t dst;
  std::uint64_t cap;
  std::vector<char> on_path;
  std::vector<std::size_t> stack;
  std::vector<Path> paths;

  void walk(std::size_t u, unsigned remaining) {
    for (const auto& nb : g.neighbors(u)) {
      const std::size_t v = nb.index;
      if (v == dst) {
        if (paths.size() >= cap) {
          throw ResourceError(fmt::format("more than {} simple paths; lower max_hops", cap));
        }
        Path p;
        p.reserve(stack.size() + 1);
        for (auto idx : stack) p.push_back(g.id(idx));
        p.push_back(g.id(dst));
        paths.push_back(std::move(p));
        continue;
      }
      if (remaining == 1 || on_path[v]) continue;
      on_path[v] = 1;
      stack.push_back(v);
      walk(v, remaining - 1);
      stack.pop_back();
      on_path[v] = 0;
    }
  }
};

// Generates paths of one exact length in lexicographic order and claims the
// interior of the first admissible one. `blocked` holds claimed interiors and
// the current DFS stack.
struct DisjointSearch {
  const GatewayGraph& g;
  std::size_t dst;
  std::vector<char> blocked;

  // True once a path was accepted; its interior stays blocked on unwind.
  bool walk(std::size_t u, unsigned remaining) {
    for (const auto& nb : g.neighbors(u)) {
      const std::size_t v = nb.index;
      if (v == dst) {
        if (remaining == 1) return true;
        continue;
      }
      if (remaining == 1 || blocked[v]) continue;
      blocked[v] = 1;
      if (walk(v, remaining - 1)) return true;
      blocked[v] = 0;
    }
    return false;
  }
};

}  // namespace

namespace kernels {

std::vector<std::uint64_t> path_counts_from(const GatewayGraph& g, std::size_t src, unsigned max_len) {
  SourceCounter c{g, std::vector<char>(g.size(), 0), std::vector<std::uint64_t>(g.size(), 0)};
  if (max_len == 0) return c.counts;
  c.on_path[src] = 1;
  c.walk(src, max_len);
  c.counts[src] = 0;
  return c.counts;
}

std::size_t disjoint_path_count(const GatewayGraph& g, std::size_t src, std::size_t dst, unsigned max_len) {
  if (max_len == 0) return 0;
  std::size_t accepted = g.slot_of(src, dst) != GatewayGraph::npos ? 1 : 0;
  DisjointSearch search{g, dst, std::vector<char>(g.size(), 0)};
  search.blocked[src] = 1;
  for (unsigned len = 2; len <= max_len; ++len) {
    for (const auto& nb : g.neighbors(src)) {
      const std::size_t first = nb.index;
      if (first == dst || search.blocked[first]) continue;
      search.blocked[first] = 1;
      if (search.walk(first, len - 1)) {
        ++accepted;  // `first` now belongs to a claimed interior
      } else {
        search.blocked[first] = 0;
      }
    }
  }
  return accepted;
}

}  // namespace kernels

std::uint64_t count_simple_paths(const GatewayGraph& g, NodeId src, NodeId dst, unsigned max_len) {
  check_endpoints(g, src, dst, max_len);
  const std::size_t s = g.index_of(src);
  PairCounter c{g, g.index_of(dst), std::vector<char>(g.size(), 0)};
  c.on_path[s] = 1;
  c.walk(s, max_len);
  return c.count;
}

std::vector<Path> enumerate_simple_paths(const GatewayGraph& g, NodeId src, NodeId dst, unsigned max_len,
                                         std::uint64_t cap) {
  check_endpoints(g, src, dst, max_len);
  const std::size_t s = g.index_of(src);
  PathCollector c{g, g.index_of(dst), cap, std::vector<char>(g.size(), 0), {s}, {}};
  c.on_path[s] = 1;
  c.walk(s, max_len);
  std::stable_sort(c.paths.begin(), c.paths.end(), [](const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return std::move(c.paths);
}

std::vector<Path> select_disjoint_paths(const GatewayGraph& g, NodeId src, NodeId dst, unsigned max_len,
                                        std::uint64_t cap) {
  std::vector<Path> accepted;
  std::vector<NodeId> claimed;
  for (auto& p : enumerate_simple_paths(g, src, dst, max_len, cap)) {
    const bool clash = std::any_of(p.begin() + 1, p.end() - 1, [&](NodeId v) {
      return std::find(claimed.begin(), claimed.end(), v) != claimed.end();
    });
    if (clash) continue;
    claimed.insert(claimed.end(), p.begin() + 1, p.end() - 1);
    accepted.push_back(std::move(p));
  }
  return accepted;
}

std::size_t disjoint_paths(const GatewayGraph& g, NodeId src, NodeId dst, unsigned max_len, std::uint64_t cap) {
  return select_disjoint_paths(g, src, dst, max_len, cap).size();
}

}  // namespace anonsat
