#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include "netres/error.hpp"
#include "netres/io.hpp"

namespace netres {
namespace {

namespace pt = boost::property_tree;

std::optional<NodeId> as_integer(const std::string& s) {
  NodeId value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

GraphmlLoad load_graphml(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::input, "cannot open GraphML file " + path.string());

  pt::ptree doc;
  try {
    pt::read_xml(in, doc, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    fail(ErrorKind::input, path.string() + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  const auto graph = doc.get_child_optional("graphml.graph");
  if (!graph) fail(ErrorKind::input, path.string() + ": no <graphml><graph> element");

  GraphmlLoad out;
  std::vector<std::string> raw_ids;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  for (const auto& [tag, child] : *graph) {
    if (tag == "node") {
      auto id = child.get_optional<std::string>("<xmlattr>.id");
      if (!id) fail(ErrorKind::input, path.string() + ": <node> without id");
      raw_ids.push_back(*id);
    } else if (tag == "edge") {
      auto s = child.get_optional<std::string>("<xmlattr>.source");
      auto t = child.get_optional<std::string>("<xmlattr>.target");
      if (!s || !t) fail(ErrorKind::input, path.string() + ": <edge> without source/target");
      raw_edges.emplace_back(*s, *t);
    }
  }

  // Keep integer ids when all of them are integers; otherwise number nodes.
  bool integral = true;
  for (const auto& id : raw_ids) integral = integral && as_integer(id).has_value();
  std::map<std::string, NodeId> id_of;
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < raw_ids.size(); ++i) {
    const NodeId id = integral ? *as_integer(raw_ids[i]) : static_cast<NodeId>(i);
    if (!id_of.emplace(raw_ids[i], id).second)
      fail(ErrorKind::input, path.string() + ": duplicate node id '" + raw_ids[i] + "'");
    nodes.push_back(id);
  }

  std::set<Edge> edges;
  for (const auto& [s, t] : raw_edges) {
    auto a = id_of.find(s);
    auto b = id_of.find(t);
    if (a == id_of.end() || b == id_of.end())
      fail(ErrorKind::input, path.string() + ": edge " + s + "-" + t + " references an undeclared node");
    if (a->second == b->second) {
      ++out.self_loops_dropped;
      out.warnings.push_back("dropped self-loop on node " + s);
      continue;
    }
    if (!edges.emplace(a->second, b->second).second) {
      ++out.parallel_edges_collapsed;
      out.warnings.push_back("collapsed parallel edge " + s + "-" + t);
    }
  }
  out.topology = Topology(std::move(nodes), std::vector<Edge>(edges.begin(), edges.end()));
  return out;
}

}  // namespace netres
