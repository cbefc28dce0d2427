#include "phylonet/newick.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace phylonet {

namespace {

bool taxon_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
         c == '-';
}

struct PNode {
  std::string label, tag;
  std::vector<int> kids;
  size_t pos = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  void skip() {
    while (p_ < s_.size()) {
      char c = s_[p_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++p_;
      } else if (c == '[') {
        size_t start = p_;
        while (p_ < s_.size() && s_[p_] != ']') ++p_;
        if (p_ == s_.size()) throw ParseError("unterminated comment", start);
        ++p_;
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip();
    return p_ >= s_.size();
  }
  char peek() {
    skip();
    return p_ < s_.size() ? s_[p_] : '\0';
  }
  size_t pos() const { return p_; }

  std::string word() {
    skip();
    size_t b = p_;
    while (p_ < s_.size() && taxon_char(s_[p_])) ++p_;
    return s_.substr(b, p_ - b);
  }

  // optional `name =` prefix
  std::string record_name() {
    skip();
    size_t save = p_;
    std::string w = word();
    if (!w.empty() && peek() == '=') {
      ++p_;
      return w;
    }
    p_ = save;
    return {};
  }

  int node(std::vector<PNode>& out) {
    skip();
    PNode n;
    n.pos = p_;
    if (peek() == '(') {
      ++p_;
      n.kids.push_back(node(out));
      while (peek() == ',') {
        ++p_;
        n.kids.push_back(node(out));
      }
      if (peek() != ')') throw ParseError(p_ < s_.size() ? "expected ',' or ')'" : "unexpected end of input", p_);
      ++p_;
    }
    skip();
    n.label = word();
    if (peek() == '#') {
      size_t b = p_++;
      while (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_]))) ++p_;
      n.tag = s_.substr(b, p_ - b);
      if (n.tag.size() < 2) throw ParseError("bad hybrid tag", b);
    }
    if (peek() == ':') throw ParseError("branch lengths are not supported", p_);
    if (n.kids.empty() && n.label.empty() && n.tag.empty()) {
      if (p_ >= s_.size()) throw ParseError("unexpected end of input", p_);
      throw ParseError(std::string("unexpected character '") + s_[p_] + "'", p_);
    }
    out.push_back(n);
    return int(out.size()) - 1;
  }

  void expect_semicolon() {
    if (peek() != ';') throw ParseError(p_ < s_.size() ? "expected ';'" : "missing ';'", p_);
    ++p_;
  }

 private:
  const std::string& s_;
  size_t p_ = 0;
};

void check_duplicates(const std::vector<PNode>& nodes) {
  std::map<std::string, size_t> seen;
  for (auto& n : nodes) {
    if (!n.tag.empty() || n.label.empty()) continue;
    if (!n.kids.empty()) continue;
    if (!seen.emplace(n.label, n.pos).second) throw ParseError("duplicate taxon '" + n.label + "'", n.pos);
  }
}

Network build_tree(const std::vector<PNode>& nodes, int root, Mode mode) {
  for (auto& n : nodes) {
    if (!n.tag.empty()) throw ParseError("hybrid tag in a tree", n.pos);
    if (!n.kids.empty() && !n.label.empty()) throw ParseError("internal node labels are not supported", n.pos);
  }
  check_duplicates(nodes);
  Network t;
  t.rooted = mode == Mode::Rooted;
  const PNode& r = nodes[root];
  if (r.kids.empty()) {
    t.add_node(r.label);
    return t;
  }
  if (mode == Mode::Rooted) {
    if (r.kids.size() != 2) throw ParseError("rooted tree needs a bifurcating root", r.pos);
  } else {
    bool pair = r.kids.size() == 2 && nodes[r.kids[0]].kids.empty() && nodes[r.kids[1]].kids.empty();
    if (r.kids.size() != 3 && !pair) throw ParseError("unrooted tree needs a trifurcating top level", r.pos);
    if (pair) {
      int a = t.add_node(nodes[r.kids[0]].label), b = t.add_node(nodes[r.kids[1]].label);
      t.add_edge(a, b);
      return t;
    }
  }
  std::function<int(int, bool)> build = [&](int i, bool top) {
    const PNode& n = nodes[i];
    int v = t.add_node(n.kids.empty() ? n.label : "");
    if (!top && !n.kids.empty() && n.kids.size() != 2) throw ParseError("node is not binary", n.pos);
    for (int k : n.kids) t.add_edge(v, build(k, false));
    return v;
  };
  build(root, true);
  return t;
}

Network build_rooted_network(const std::vector<PNode>& nodes, int root) {
  Network n;
  n.rooted = true;
  std::map<std::string, int> hyb;
  std::map<std::string, bool> defined;
  std::function<int(int)> build = [&](int i) -> int {
    const PNode& p = nodes[i];
    int v;
    if (!p.tag.empty()) {
      auto it = hyb.find(p.tag);
      v = it == hyb.end() ? (hyb[p.tag] = n.add_node()) : it->second;
      bool has_body = !p.kids.empty() || !p.label.empty();
      if (has_body) {
        if (defined[p.tag]) throw ParseError("hybrid " + p.tag + " defined twice", p.pos);
        defined[p.tag] = true;
        if (p.kids.empty()) n.add_edge(v, n.add_node(p.label));
        else if (!p.label.empty()) throw ParseError("internal node labels are not supported", p.pos);
      }
    } else {
      if (!p.kids.empty() && !p.label.empty()) throw ParseError("internal node labels are not supported", p.pos);
      v = n.add_node(p.kids.empty() ? p.label : "");
    }
    for (int k : p.kids) n.add_edge(v, build(k));
    return v;
  };
  build(root);
  for (auto& [tag, v] : hyb)
    if (!defined[tag]) throw Error("hybrid " + tag + " has no definition");
  validate_rooted(n);
  return n;
}

template <class F>
std::vector<Record> parse_records(const std::string& text, F build) {
  Parser p(text);
  std::vector<Record> out;
  while (!p.at_end()) {
    Record r;
    r.name = p.record_name();
    std::vector<PNode> nodes;
    int root = p.node(nodes);
    p.expect_semicolon();
    r.net = build(nodes, root);
    out.push_back(std::move(r));
  }
  if (out.empty()) throw ParseError("no records", 0);
  return out;
}

// smallest taxon below each node of a DAG (empty if none)
std::vector<std::string> min_below(const Network& n) {
  std::vector<std::string> m(n.num_nodes());
  auto order = topo_order(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (!n.labels[v].empty()) m[v] = n.labels[v];
  }
  auto inc = n.incidence();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (int e : inc[v])
      if (n.edges[e].u == v) {
        auto& c = m[n.edges[e].v];
        if (!c.empty() && (m[v].empty() || c < m[v])) m[v] = c;
      }
  }
  return m;
}

std::string write_rooted(const Network& t) {
  int r = t.root();
  if (r < 0) throw Error("network has no unique root");
  if (t.num_nodes() == 1) return t.labels[0] + ";";
  auto inc = t.incidence();
  auto in = t.indegrees();
  auto mb = min_below(t);
  std::map<int, int> tag;
  std::function<std::string(int)> rec = [&](int v) -> std::string {
    if (in[v] >= 2) {
      auto it = tag.find(v);
      if (it != tag.end()) return "#H" + std::to_string(it->second);
      int k = int(tag.size()) + 1;
      tag[v] = k;
    }
    std::string s;
    if (!t.labels[v].empty()) {
      s = t.labels[v];
    } else {
      std::vector<int> kids;
      for (int e : inc[v])
        if (t.edges[e].u == v) kids.push_back(t.edges[e].v);
      std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) { return mb[a] < mb[b]; });
      s = "(";
      for (size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + rec(kids[i]);
      s += ")";
    }
    if (in[v] >= 2) {
      if (!t.labels[v].empty()) s = "(" + s + ")";
      s += "#H" + std::to_string(tag[v]);
    }
    return s;
  };
  return rec(r) + ";";
}

std::string write_unrooted_tree(const Network& t) {
  if (t.num_nodes() == 1) return t.labels[0] + ";";
  if (t.num_nodes() == 2) {
    auto a = t.labels[0], b = t.labels[1];
    if (b < a) std::swap(a, b);
    return "(" + a + "," + b + ");";
  }
  auto inc = t.incidence();
  std::function<std::pair<std::string, std::string>(int, int)> rec = [&](int v, int pe) {
    if (!t.labels[v].empty()) return std::make_pair(t.labels[v], t.labels[v]);
    std::vector<std::pair<std::string, std::string>> parts;
    for (int e : inc[v])
      if (e != pe) parts.push_back(rec(t.other(e, v), e));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i].second;
    return std::make_pair(parts.front().first, s + ")");
  };
  int best = -1;
  for (int v = 0; v < t.num_nodes(); ++v)
    if (!t.labels[v].empty() && (best < 0 || t.labels[v] < t.labels[best])) best = v;
  int top = t.other(inc[best][0], best);
  return rec(top, -1).second + ";";
}

}  // namespace

std::vector<Record> parse_trees(const std::string& text, Mode mode) {
  return parse_records(text, [&](const std::vector<PNode>& nodes, int root) {
    Network t = build_tree(nodes, root, mode);
    if (mode == Mode::Rooted) validate_rooted(t, true);
    else validate_unrooted(t, true);
    return t;
  });
}

Network parse_tree(const std::string& text, Mode mode) {
  auto recs = parse_trees(text, mode);
  if (recs.size() != 1) throw Error("expected a single tree, found " + std::to_string(recs.size()));
  return recs[0].net;
}

std::string write_tree(const Network& t) {
  if (reticulation_number(t) != 0) throw Error("write_tree needs a tree");
  return t.rooted ? write_rooted(t) : write_unrooted_tree(t);
}

std::vector<Record> parse_networks(const std::string& text, Mode mode) {
  if (mode == Mode::Rooted) return parse_records(text, build_rooted_network);
  std::vector<Record> out;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0, offset = 0;
  std::map<std::string, int> ids;
  Record* cur = nullptr;
  auto node = [&](const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    return ids[name] = cur->net.add_node();
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t here = offset;
    offset += line.size() + 1;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok[0] == "unrooted-network") {
      out.push_back({});
      cur = &out.back();
      if (tok.size() > 1) cur->name = tok[1];
      ids.clear();
      continue;
    }
    if (!cur) throw ParseError("missing 'unrooted-network' header (line " + std::to_string(lineno) + ")", here);
    if (tok[0] == "leaf") {
      if (tok.size() != 3) throw ParseError("expected 'leaf node taxon' (line " + std::to_string(lineno) + ")", here);
      for (char c : tok[2])
        if (!taxon_char(c)) throw ParseError("bad taxon name '" + tok[2] + "'", here);
      int v = node(tok[1]);
      if (!cur->net.labels[v].empty()) throw ParseError("node '" + tok[1] + "' labelled twice", here);
      cur->net.labels[v] = tok[2];
    } else if (tok.size() == 2) {
      cur->net.add_edge(node(tok[0]), node(tok[1]));
    } else {
      throw ParseError("cannot parse line " + std::to_string(lineno), here);
    }
  }
  if (out.empty()) throw ParseError("no 'unrooted-network' record", 0);
  for (auto& r : out) validate_unrooted(r.net);
  return out;
}

Network parse_network(const std::string& text, Mode mode) {
  auto recs = parse_networks(text, mode);
  if (recs.size() != 1) throw Error("expected a single network, found " + std::to_string(recs.size()));
  return recs[0].net;
}

std::string write_network(const Network& n) {
  if (n.rooted) return write_rooted(n);
  // deterministic names: breadth-first from the smallest taxon
  std::vector<int> order, name(n.num_nodes(), -1);
  int start = 0;
  for (int v = 0; v < n.num_nodes(); ++v)
    if (!n.labels[v].empty() && (n.labels[start].empty() || n.labels[v] < n.labels[start])) start = v;
  auto inc = n.incidence();
  for (int s = 0; s < n.num_nodes(); ++s) {
    int src = s == 0 ? start : s;
    if (name[src] >= 0) continue;
    std::deque<int> q{src};
    name[src] = int(order.size());
    order.push_back(src);
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int e : inc[x]) {
        int y = n.other(e, x);
        if (name[y] < 0) name[y] = int(order.size()), order.push_back(y), q.push_back(y);
      }
    }
  }
  std::vector<std::pair<int, int>> es;
  for (auto& e : n.edges) es.push_back(std::minmax(name[e.u], name[e.v]));
  std::sort(es.begin(), es.end());
  std::ostringstream o;
  o << "unrooted-network\n";
  for (auto& [a, b] : es) o << "v" << a << " v" << b << "\n";
  std::vector<std::pair<std::string, int>> leaves;
  for (int v = 0; v < n.num_nodes(); ++v)
    if (!n.labels[v].empty()) leaves.push_back({n.labels[v], name[v]});
  std::sort(leaves.begin(), leaves.end());
  for (auto& [l, v] : leaves) o << "leaf v" << v << " " << l << "\n";
  return o.str();
}

std::string export_dot(const Network& n, const std::optional<Image>& highlight) {
  std::set<int> hi;
  if (highlight) hi.insert(highlight->edges.begin(), highlight->edges.end());
  std::ostringstream o;
  o << (n.rooted ? "digraph" : "graph") << " N {\n";
  for (int v = 0; v < n.num_nodes(); ++v) {
    if (n.labels[v].empty()) o << "  v" << v << " [label=\"\", shape=point];\n";
    else o << "  v" << v << " [label=\"" << n.labels[v] << "\", shape=plaintext];\n";
  }
  const char* arrow = n.rooted ? " -> " : " -- ";
  for (int e = 0; e < n.num_edges(); ++e) {
    o << "  v" << n.edges[e].u << arrow << "v" << n.edges[e].v;
    if (hi.count(e)) o << " [color=red, penwidth=2.5]";
    o << ";\n";
  }
  o << "}\n";
  return o.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace phylonet
