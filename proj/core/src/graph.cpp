#include "stabnet/graph.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace stabnet {

size_t NetworkGraph::vertex_id(const std::string& name) const {
  for (size_t i = 0; i < vertex_names.size(); ++i)
    if (vertex_names[i] == name) return i;
  throw std::invalid_argument("unknown vertex: " + name);
}

std::vector<size_t> NetworkGraph::boundary_ids() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < vertex_names.size(); ++i)
    if (is_boundary[i]) out.push_back(i);
  return out;
}

std::vector<size_t> NetworkGraph::bulk_ids() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < vertex_names.size(); ++i)
    if (!is_boundary[i]) out.push_back(i);
  return out;
}

size_t NetworkGraph::degree(size_t v) const {
  size_t d = 0;
  for (auto& [a, b] : edges) d += (a == v) + (b == v);
  return d;
}

int64_t NetworkGraph::bulk_qudit_count() const {
  int64_t total = 0;
  for (size_t v : bulk_ids()) total += int64_t(degree(v));
  return total * bond_exponent;
}

std::vector<size_t> NetworkGraph::region(const std::string& name) const {
  auto it = regions.find(name);
  if (it == regions.end())
    throw std::invalid_argument("unknown region: " + name);
  return it->second;
}

void NetworkGraph::validate() const {
  if (bond_exponent < 1)
    throw std::invalid_argument("graph: N must be >= 1");
  if (vertex_names.empty()) throw std::invalid_argument("graph: no vertices");
  if (is_boundary.size() != vertex_names.size())
    throw std::invalid_argument("graph: boundary flag size mismatch");
  std::set<std::string> names(vertex_names.begin(), vertex_names.end());
  if (names.size() != vertex_names.size())
    throw std::invalid_argument("graph: duplicate vertex labels");
  if (boundary_ids().empty())
    throw std::invalid_argument("graph: boundary must be nonempty");
  for (auto& [a, b] : edges) {
    if (a >= vertex_names.size() || b >= vertex_names.size())
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (a == b) throw std::invalid_argument("graph: self-loops rejected");
  }
  // Connectivity.
  std::vector<bool> seen(vertex_names.size(), false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    for (auto& [a, b] : edges) {
      size_t other = vertex_names.size();
      if (a == v) other = b;
      if (b == v) other = a;
      if (other < vertex_names.size() && !seen[other]) {
        seen[other] = true;
        stack.push_back(other);
      }
    }
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("graph: not connected");
  for (auto& [name, verts] : regions) {
    for (size_t v : verts) {
      if (v >= vertex_names.size() || !is_boundary[v])
        throw std::invalid_argument("graph: region " + name +
                                    " contains a non-boundary vertex");
    }
  }
}

NetworkGraph NetworkGraph::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  NetworkGraph g;
  g.field = PrimeField(j.at("p").get<uint32_t>());
  g.bond_exponent = j.at("N").get<uint32_t>();
  for (const auto& v : j.at("vertices"))
    g.vertex_names.push_back(v.get<std::string>());
  g.is_boundary.assign(g.vertex_names.size(), false);
  for (const auto& v : j.at("boundary"))
    g.is_boundary[g.vertex_id(v.get<std::string>())] = true;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph: edges must be [u, v] pairs");
    g.edges.emplace_back(g.vertex_id(e[0].get<std::string>()),
                         g.vertex_id(e[1].get<std::string>()));
  }
  if (j.contains("regions")) {
    for (auto& [name, verts] : j.at("regions").items()) {
      std::vector<size_t> ids;
      for (const auto& v : verts) ids.push_back(g.vertex_id(v.get<std::string>()));
      g.regions[name] = ids;
    }
  }
  g.validate();
  return g;
}

NetworkGraph NetworkGraph::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

}  // namespace stabnet
