#include "qalat/graph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace qalat {

WeightedGraph make_graph(std::vector<Int> weights, std::vector<std::pair<int, int>> edges) {
  int k = static_cast<int>(weights.size());
  for (auto& [a, b] : edges) {
    if (a == b) throw std::runtime_error("graph has a loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= k)
      throw std::runtime_error("edge (" + std::to_string(a) + "," + std::to_string(b) +
                               ") references an unknown vertex");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::runtime_error("graph has a duplicate edge");
  return WeightedGraph{std::move(weights), std::move(edges)};
}

WeightedGraph parse_graph(std::istream& in) {
  std::vector<std::pair<int, Int>> verts;  // (id, weight) as declared
  std::vector<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    lineno++;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      long id;
      std::string w;
      if (!(ls >> id >> w)) fail("expected `v <id> <weight>`");
      Int weight;
      try {
        weight = Int(w);
      } catch (const std::invalid_argument&) {
        fail("bad weight `" + w + "`");
      }
      verts.emplace_back(static_cast<int>(id), weight);
    } else if (tag == "e") {
      long a, b;
      if (!(ls >> a >> b)) fail("expected `e <id> <id>`");
      edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    } else {
      fail("unknown directive `" + tag + "`");
    }
    std::string rest;
    if (ls >> rest) fail("trailing junk `" + rest + "`");
  }
  int k = static_cast<int>(verts.size());
  std::vector<Int> weights(k);
  std::vector<bool> seen(k, false);
  for (auto& [id, w] : verts) {
    if (id < 0 || id >= k || seen[id])
      throw std::runtime_error("vertex ids must cover 0.." + std::to_string(k - 1) +
                               " exactly once (saw " + std::to_string(id) + ")");
    seen[id] = true;
    weights[id] = w;
  }
  try {
    return make_graph(std::move(weights), std::move(edges));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string(e.what()));
  }
}

WeightedGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string graph_to_text(const WeightedGraph& g) {
  std::ostringstream os;
  for (int i = 0; i < g.size(); i++) os << "v " << i << " " << g.weights[i].get_str() << "\n";
  for (auto& [a, b] : g.edges) os << "e " << a << " " << b << "\n";
  return os.str();
}

IntMat gram_matrix(const WeightedGraph& g) {
  int k = g.size();
  IntMat q(k, k);
  for (int i = 0; i < k; i++) q(i, i) = g.weights[i];
  for (auto& [a, b] : g.edges) {
    q(a, b) = 1;
    q(b, a) = 1;
  }
  return q;
}

int degree(const WeightedGraph& g, int v) {
  int d = 0;
  for (auto& [a, b] : g.edges) d += (a == v) + (b == v);
  return d;
}

bool is_connected(const WeightedGraph& g) {
  int k = g.size();
  if (k == 0) return true;
  std::vector<std::vector<int>> adj(k);
  for (auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> vis(k, false);
  std::vector<int> stack{0};
  vis[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = true;
        count++;
        stack.push_back(w);
      }
  }
  return count == k;
}

}  // namespace qalat
