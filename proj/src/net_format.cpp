#include "tactnet/net_format.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <vector>

namespace tactnet {

namespace {

// Arc and inhibitor lines, kept in document order so conflicts are
// reported at the later declaration.
struct PendingEdge {
  enum class Kind { Arc, Inhibitor };
  Kind kind;
  std::size_t line;
  std::string source;  // place name for inhibitors
  std::string target;  // transition name for inhibitors
  TokenCount weight = 1;
};

struct PendingRelation {
  std::size_t line;
  std::string high;
  std::string low;
};

TokenCount parse_count(const std::string& word, std::size_t line, const char* what) {
  TokenCount value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + word + "'");
  return value;
}

// Longest-path ranks over the priority relation: an edge high > low forces
// rank(high) > rank(low). Cycles are rejected.
std::map<std::string, TokenCount> rank_relation(const std::vector<PendingRelation>& relation) {
  std::map<std::string, std::vector<std::string>> below;  // high -> lows
  for (const PendingRelation& r : relation) below[r.high].push_back(r.low);

  std::map<std::string, TokenCount> rank;
  std::map<std::string, int> state;  // 0 new, 1 visiting, 2 done
  auto visit = [&](auto&& self, const std::string& name, std::size_t line) -> TokenCount {
    auto it = rank.find(name);
    if (state[name] == 2) return it->second;
    if (state[name] == 1) throw ParseError(line, "cyclic priority relation through '" + name + "'");
    state[name] = 1;
    TokenCount r = 0;
    for (const std::string& low : below[name]) r = std::max(r, self(self, low, line) + 1);
    state[name] = 2;
    rank[name] = r;
    return r;
  };
  for (const PendingRelation& r : relation) visit(visit, r.high, r.line);
  return rank;
}

}  // namespace

NetDocument parse_net(std::string_view text) {
  NetBuilder builder;
  std::map<std::string, PlaceId> places;
  std::map<std::string, TransitionId> transitions;
  std::map<std::string, TokenCount> initial_tokens;
  std::vector<PendingEdge> edges;
  std::vector<PendingRelation> relation;
  bool numeric_priorities = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string raw(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (std::size_t hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);

    std::istringstream in(raw);
    std::vector<std::string> words;
    std::string word;
    while (in >> word) words.push_back(word);
    if (words.empty()) {
      if (pos > text.size()) break;
      continue;
    }

    const std::string& directive = words[0];
    if (directive == "place") {
      if (words.size() != 2 && !(words.size() == 4 && words[2] == "init"))
        throw ParseError(line_no, "expected 'place <name> [init <tokens>]'");
      if (places.count(words[1]) || transitions.count(words[1]))
        throw ParseError(line_no, "duplicate declaration of '" + words[1] + "'");
      TokenCount tokens = 0;
      if (words.size() == 4) {
        tokens = parse_count(words[3], line_no, "token count");
        if (tokens < 0) throw ParseError(line_no, "initial tokens must be non-negative");
      }
      places.emplace(words[1], builder.add_place(words[1]));
      initial_tokens[words[1]] = tokens;
    } else if (directive == "trans") {
      if (words.size() != 2 && !(words.size() == 4 && words[2] == "pri"))
        throw ParseError(line_no, "expected 'trans <name> [pri <value>]'");
      if (places.count(words[1]) || transitions.count(words[1]))
        throw ParseError(line_no, "duplicate declaration of '" + words[1] + "'");
      TokenCount priority = 0;
      if (words.size() == 4) {
        priority = parse_count(words[3], line_no, "priority value");
        if (priority < 0) throw ParseError(line_no, "priority must be non-negative");
        numeric_priorities = true;
      }
      transitions.emplace(words[1], builder.add_transition(words[1], priority));
    } else if (directive == "arc") {
      // arc <src> -> <dst> [* <w>]
      if (!(words.size() == 4 || (words.size() == 6 && words[4] == "*")) || words[2] != "->")
        throw ParseError(line_no, "expected 'arc <src> -> <dst> [* <weight>]'");
      TokenCount weight = 1;
      if (words.size() == 6) {
        weight = parse_count(words[5], line_no, "arc weight");
        if (weight < 1) throw ParseError(line_no, "arc weight must be >= 1");
      }
      edges.push_back({PendingEdge::Kind::Arc, line_no, words[1], words[3], weight});
    } else if (directive == "inhib") {
      if (words.size() != 4 || words[2] != "-o")
        throw ParseError(line_no, "expected 'inhib <place> -o <trans>'");
      edges.push_back({PendingEdge::Kind::Inhibitor, line_no, words[1], words[3], 1});
    } else if (directive == "pri") {
      if (words.size() != 4 || words[2] != ">")
        throw ParseError(line_no, "expected 'pri <trans> > <trans>'");
      relation.push_back({line_no, words[1], words[3]});
    } else {
      throw ParseError(line_no, "unknown directive '" + directive + "'");
    }
    if (pos > text.size()) break;
  }

  for (const PendingEdge& edge : edges) {
    if (edge.kind == PendingEdge::Kind::Inhibitor) {
      auto p = places.find(edge.source);
      if (p == places.end()) throw ParseError(edge.line, "unknown place '" + edge.source + "'");
      auto t = transitions.find(edge.target);
      if (t == transitions.end())
        throw ParseError(edge.line, "unknown transition '" + edge.target + "'");
      try {
        builder.inhibitor_arc(p->second, t->second);
      } catch (const NetError& e) {
        throw ParseError(edge.line, e.what());
      }
      continue;
    }
    auto p = places.find(edge.source);
    auto t = transitions.find(edge.target);
    if (p != places.end() && t != transitions.end()) {
      try {
        builder.input_arc(p->second, t->second, edge.weight);
      } catch (const NetError& e) {
        throw ParseError(edge.line, e.what());
      }
      continue;
    }
    auto t2 = transitions.find(edge.source);
    auto p2 = places.find(edge.target);
    if (t2 != transitions.end() && p2 != places.end()) {
      try {
        builder.output_arc(t2->second, p2->second, edge.weight);
      } catch (const NetError& e) {
        throw ParseError(edge.line, e.what());
      }
      continue;
    }
    throw ParseError(edge.line, "arc endpoints must name one declared place and one declared "
                                "transition: '" +
                                    edge.source + "' -> '" + edge.target + "'");
  }

  if (!relation.empty()) {
    if (numeric_priorities)
      throw ParseError(relation.front().line,
                       "relational 'pri' lines cannot be mixed with numeric 'pri' attributes");
    for (const PendingRelation& r : relation) {
      if (!transitions.count(r.high)) throw ParseError(r.line, "unknown transition '" + r.high + "'");
      if (!transitions.count(r.low)) throw ParseError(r.line, "unknown transition '" + r.low + "'");
    }
    for (const auto& [name, value] : rank_relation(relation))
      builder.set_priority(transitions.at(name), value);
  }

  NetDocument doc;
  doc.net = builder.build();
  std::vector<TokenCount> tokens(doc.net.place_count(), 0);
  for (const auto& [name, value] : initial_tokens) tokens[*doc.net.find_place(name)] = value;
  doc.initial = Marking(std::move(tokens));
  return doc;
}

std::string print_net(const NetStructure& net, const Marking& initial) {
  if (initial.size() != net.place_count())
    throw NetError("marking domain does not match the net's place set");
  std::ostringstream out;
  for (PlaceId p = 0; p < net.place_count(); ++p) {
    out << "place " << net.place_name(p);
    if (initial[p] != 0) out << " init " << initial[p];
    out << "\n";
  }
  for (TransitionId t = 0; t < net.transition_count(); ++t) {
    out << "trans " << net.transition_name(t);
    if (net.priority(t) != 0) out << " pri " << net.priority(t);
    out << "\n";
  }
  for (TransitionId t = 0; t < net.transition_count(); ++t) {
    for (const Arc& arc : net.inputs(t)) {
      out << "arc " << net.place_name(arc.place) << " -> " << net.transition_name(t);
      if (arc.weight != 1) out << " * " << arc.weight;
      out << "\n";
    }
    for (const Arc& arc : net.outputs(t)) {
      out << "arc " << net.transition_name(t) << " -> " << net.place_name(arc.place);
      if (arc.weight != 1) out << " * " << arc.weight;
      out << "\n";
    }
  }
  for (TransitionId t = 0; t < net.transition_count(); ++t)
    for (PlaceId p : net.inhibitors(t))
      out << "inhib " << net.place_name(p) << " -o " << net.transition_name(t) << "\n";
  return out.str();
}

}  // namespace tactnet
