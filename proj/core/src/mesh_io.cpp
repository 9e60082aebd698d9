#include "aniso/mesh_io.hpp"

#include <bit>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "aniso/error.hpp"

namespace aniso {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_mesh(const RefinementForest& forest, std::ostream& out) {
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  std::map<Key, std::size_t> index;
  std::vector<Point> vertices;
  std::vector<std::array<std::size_t, 3>> tris;
  tris.reserve(forest.size());
  for (const auto& n : forest.nodes()) {
    std::array<std::size_t, 3> ids{};
    for (int i = 0; i < 3; ++i) {
      const Point z = n.triangle[i];
      const Key key{std::bit_cast<std::uint64_t>(z.x), std::bit_cast<std::uint64_t>(z.y)};
      auto [it, inserted] = index.try_emplace(key, vertices.size());
      if (inserted) vertices.push_back(z);
      ids[static_cast<std::size_t>(i)] = it->second;
    }
    tris.push_back(ids);
  }
  out << kMeshHeader << '\n';
  for (const auto& z : vertices) out << "v " << format_double(z.x) << ' ' << format_double(z.y) << '\n';
  for (std::size_t k = 0; k < tris.size(); ++k) {
    out << "t " << tris[k][0] << ' ' << tris[k][1] << ' ' << tris[k][2] << ' '
        << forest.nodes()[k].parent << '\n';
  }
  for (std::size_t k = 0; k < forest.size(); ++k) {
    if (forest.nodes()[k].is_leaf()) out << "leaf " << k << '\n';
  }
}

std::string mesh_to_string(const RefinementForest& forest) {
  std::ostringstream os;
  write_mesh(forest, os);
  return os.str();
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line) {
  T v{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError(line, "bad number '" + std::string(tok) + "'");
  return v;
}

struct RawNode {
  std::array<std::size_t, 3> v;
  long long parent;
  std::size_t line;
};

}  // namespace

RefinementForest read_mesh(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<Point> vertices;
  std::vector<RawNode> raw;
  std::vector<std::pair<std::size_t, std::size_t>> leaf_marks;  // (node, line)

  while (std::getline(in, text)) {
    ++line_no;
    const auto tok = split_ws(text);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "aniso-mesh" || tok[1] != "v1")
        throw ParseError(line_no, std::string("expected header '") + kMeshHeader + "'");
      header = true;
      continue;
    }
    if (tok[0] == "v") {
      if (tok.size() != 3) throw ParseError(line_no, "vertex line needs 2 coordinates");
      if (!raw.empty()) throw ParseError(line_no, "vertex after triangle lines");
      vertices.push_back({parse_number<double>(tok[1], line_no), parse_number<double>(tok[2], line_no)});
    } else if (tok[0] == "t") {
      if (tok.size() != 5) throw ParseError(line_no, "triangle line needs 3 vertices and a parent");
      RawNode r{};
      for (std::size_t i = 0; i < 3; ++i) {
        r.v[i] = parse_number<std::size_t>(tok[i + 1], line_no);
        if (r.v[i] >= vertices.size()) throw ParseError(line_no, "vertex index out of range");
      }
      r.parent = parse_number<long long>(tok[4], line_no);
      r.line = line_no;
      if (r.parent < -1 || r.parent >= static_cast<long long>(raw.size()))
        throw ParseError(line_no, "parent must precede its child");
      raw.push_back(r);
    } else if (tok[0] == "leaf") {
      if (tok.size() != 2) throw ParseError(line_no, "leaf line needs a node index");
      leaf_marks.emplace_back(parse_number<std::size_t>(tok[1], line_no), line_no);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!header) throw ParseError(line_no + 1, "empty mesh file");

  RefinementForest forest;
  std::vector<std::vector<std::size_t>> kids(raw.size());
  auto make = [&](const RawNode& r) {
    try {
      return Triangle(vertices[r.v[0]], vertices[r.v[1]], vertices[r.v[2]]);
    } catch (const GeometryError& e) {
      throw ParseError(r.line, e.what());
    }
  };
  bool roots_done = false;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].parent == -1) {
      if (roots_done) throw ParseError(raw[k].line, "roots must precede refined nodes");
      forest.add_root(make(raw[k]));
    } else {
      roots_done = true;
      auto& sib = kids[static_cast<std::size_t>(raw[k].parent)];
      sib.push_back(k);
      if (sib.size() > 2) throw ParseError(raw[k].line, "node has more than two children");
    }
  }
  // Children are appended pairwise in id order.
  std::size_t expected = forest.size();
  for (std::size_t k = forest.size(); k < raw.size(); k += 2) {
    const auto parent = static_cast<std::size_t>(raw[k].parent);
    const auto& sib = kids[parent];
    if (sib.size() != 2 || sib[0] != k || sib[1] != k + 1)
      throw ParseError(raw[k].line, "children must come in consecutive pairs");
    if (k != expected) throw ParseError(raw[k].line, "node ids out of order");
    forest.attach_children(static_cast<NodeId>(parent), make(raw[k]), make(raw[k + 1]));
    expected += 2;
  }
  std::vector<bool> marked(raw.size(), false);
  for (const auto& [n, line] : leaf_marks) {
    if (n >= raw.size()) throw ParseError(line, "leaf index out of range");
    if (!forest.is_leaf(static_cast<NodeId>(n))) throw ParseError(line, "leaf marker on a refined node");
    marked[n] = true;
  }
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (forest.is_leaf(static_cast<NodeId>(k)) && !marked[k])
      throw ParseError(raw[k].line, "leaf node " + std::to_string(k) + " is not marked");
  }
  return forest;
}

RefinementForest mesh_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_mesh(is);
}

}  // namespace aniso
