#include "tactnet/net.hpp"

#include <algorithm>
#include <sstream>

namespace tactnet {

TokenCount checked_add(TokenCount a, TokenCount b) {
  TokenCount out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("token addition overflow");
  return out;
}

TokenCount checked_sub(TokenCount a, TokenCount b) {
  TokenCount out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("token subtraction overflow");
  return out;
}

TokenCount checked_mul(TokenCount a, TokenCount b) {
  TokenCount out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("token multiplication overflow");
  return out;
}

Multiplicity Multiplicity::finite(TokenCount value) {
  if (value < 0) throw Error("multiplicity cannot be negative");
  return Multiplicity(false, value);
}

TokenCount Multiplicity::value() const {
  if (unbounded_) throw Error("unbounded multiplicity has no finite value");
  return value_;
}

Multiplicity Multiplicity::min(Multiplicity a, Multiplicity b) {
  if (a.is_unbounded()) return b;
  if (b.is_unbounded()) return a;
  return finite(std::min(a.value_, b.value_));
}

const std::string& NetStructure::place_name(PlaceId p) const {
  check_place(p);
  return place_names_[p];
}

const std::string& NetStructure::transition_name(TransitionId t) const {
  check_transition(t);
  return transition_names_[t];
}

std::optional<PlaceId> NetStructure::find_place(std::string_view name) const {
  auto it = place_index_.find(std::string(name));
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TransitionId> NetStructure::find_transition(std::string_view name) const {
  auto it = transition_index_.find(std::string(name));
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

TokenCount NetStructure::pre_weight(PlaceId p, TransitionId t) const {
  check_place(p);
  check_transition(t);
  for (const Arc& arc : inputs_[t])
    if (arc.place == p) return arc.weight;
  return 0;
}

TokenCount NetStructure::post_weight(TransitionId t, PlaceId p) const {
  check_place(p);
  check_transition(t);
  for (const Arc& arc : outputs_[t])
    if (arc.place == p) return arc.weight;
  return 0;
}

bool NetStructure::has_inhibitor(PlaceId p, TransitionId t) const {
  check_place(p);
  check_transition(t);
  const auto& inh = inhibitors_[t];
  return std::find(inh.begin(), inh.end(), p) != inh.end();
}

std::span<const Arc> NetStructure::inputs(TransitionId t) const {
  check_transition(t);
  return inputs_[t];
}

std::span<const Arc> NetStructure::outputs(TransitionId t) const {
  check_transition(t);
  return outputs_[t];
}

std::span<const PlaceId> NetStructure::inhibitors(TransitionId t) const {
  check_transition(t);
  return inhibitors_[t];
}

TokenCount NetStructure::priority(TransitionId t) const {
  check_transition(t);
  return priorities_[t];
}

bool NetStructure::has_inhibitor_arcs() const {
  for (const auto& inh : inhibitors_)
    if (!inh.empty()) return true;
  return false;
}

bool NetStructure::has_priorities() const {
  for (TokenCount p : priorities_)
    if (p != 0) return true;
  return false;
}

void NetStructure::check_place(PlaceId p) const {
  if (p >= place_names_.size())
    throw NetError("unknown place index " + std::to_string(p));
}

void NetStructure::check_transition(TransitionId t) const {
  if (t >= transition_names_.size())
    throw NetError("unknown transition index " + std::to_string(t));
}

PlaceId NetBuilder::add_place(std::string name) {
  if (name.empty()) throw NetError("place name cannot be empty");
  if (net_.place_index_.count(name) || net_.transition_index_.count(name))
    throw NetError("duplicate identifier '" + name + "'");
  PlaceId id = static_cast<PlaceId>(net_.place_names_.size());
  net_.place_index_.emplace(name, id);
  net_.place_names_.push_back(std::move(name));
  return id;
}

TransitionId NetBuilder::add_transition(std::string name, TokenCount priority) {
  if (name.empty()) throw NetError("transition name cannot be empty");
  if (priority < 0) throw NetError("priority cannot be negative");
  if (net_.place_index_.count(name) || net_.transition_index_.count(name))
    throw NetError("duplicate identifier '" + name + "'");
  TransitionId id = static_cast<TransitionId>(net_.transition_names_.size());
  net_.transition_index_.emplace(name, id);
  net_.transition_names_.push_back(std::move(name));
  net_.inputs_.emplace_back();
  net_.outputs_.emplace_back();
  net_.inhibitors_.emplace_back();
  net_.priorities_.push_back(priority);
  return id;
}

NetBuilder& NetBuilder::input_arc(PlaceId p, TransitionId t, TokenCount weight) {
  net_.check_place(p);
  net_.check_transition(t);
  if (weight < 1) throw NetError("arc weight must be >= 1");
  if (has_input_arc(p, t))
    throw NetError("duplicate arc " + net_.place_names_[p] + " -> " + net_.transition_names_[t]);
  if (has_inhibitor_arc(p, t))
    throw NetError("place " + net_.place_names_[p] + " is already an inhibitor of " +
                   net_.transition_names_[t]);
  net_.inputs_[t].push_back({p, weight});
  return *this;
}

NetBuilder& NetBuilder::output_arc(TransitionId t, PlaceId p, TokenCount weight) {
  net_.check_place(p);
  net_.check_transition(t);
  if (weight < 1) throw NetError("arc weight must be >= 1");
  for (const Arc& arc : net_.outputs_[t])
    if (arc.place == p)
      throw NetError("duplicate arc " + net_.transition_names_[t] + " -> " + net_.place_names_[p]);
  net_.outputs_[t].push_back({p, weight});
  return *this;
}

NetBuilder& NetBuilder::inhibitor_arc(PlaceId p, TransitionId t) {
  net_.check_place(p);
  net_.check_transition(t);
  if (has_inhibitor_arc(p, t))
    throw NetError("duplicate inhibitor arc " + net_.place_names_[p] + " -o " +
                   net_.transition_names_[t]);
  if (has_input_arc(p, t))
    throw NetError("place " + net_.place_names_[p] + " is already a regular input of " +
                   net_.transition_names_[t]);
  net_.inhibitors_[t].push_back(p);
  return *this;
}

NetBuilder& NetBuilder::set_priority(TransitionId t, TokenCount priority) {
  net_.check_transition(t);
  if (priority < 0) throw NetError("priority cannot be negative");
  net_.priorities_[t] = priority;
  return *this;
}

bool NetBuilder::has_input_arc(PlaceId p, TransitionId t) const {
  for (const Arc& arc : net_.inputs_[t])
    if (arc.place == p) return true;
  return false;
}

bool NetBuilder::has_inhibitor_arc(PlaceId p, TransitionId t) const {
  const auto& inh = net_.inhibitors_[t];
  return std::find(inh.begin(), inh.end(), p) != inh.end();
}

NetStructure NetBuilder::build() {
  for (auto& arcs : net_.inputs_)
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.place < b.place; });
  for (auto& arcs : net_.outputs_)
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.place < b.place; });
  for (auto& inh : net_.inhibitors_) std::sort(inh.begin(), inh.end());
  return std::move(net_);
}

Marking::Marking(std::vector<TokenCount> tokens) : tokens_(std::move(tokens)) {
  for (TokenCount v : tokens_)
    if (v < 0) throw NetError("marking cannot hold negative tokens");
}

Marking Marking::zeros(std::size_t place_count) {
  return Marking(std::vector<TokenCount>(place_count, 0));
}

TokenCount Marking::total() const {
  TokenCount sum = 0;
  for (TokenCount v : tokens_) sum = checked_add(sum, v);
  return sum;
}

std::size_t Marking::hash() const {
  // FNV-1a over the token vector.
  std::uint64_t h = 1469598103934665603ULL;
  for (TokenCount v : tokens_) {
    std::uint64_t x = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

Step Step::single(TransitionId t, TokenCount count) {
  Step s;
  s.add(t, count);
  return s;
}

void Step::add(TransitionId t, TokenCount count) {
  if (count < 1) throw Error("step counts must be >= 1");
  auto pos = std::lower_bound(items_.begin(), items_.end(), t,
                              [](const auto& item, TransitionId id) { return item.first < id; });
  if (pos != items_.end() && pos->first == t) throw Error("transition already in step");
  items_.insert(pos, {t, count});
}

TokenCount Step::count_of(TransitionId t) const {
  for (const auto& [id, count] : items_)
    if (id == t) return count;
  return 0;
}

TokenCount Step::total() const {
  TokenCount sum = 0;
  for (const auto& [id, count] : items_) sum = checked_add(sum, count);
  return sum;
}

Multiplicity arc_multiplicity(const Marking& marking, PlaceId place, TransitionId transition,
                              const NetStructure& net) {
  if (marking.size() != net.place_count())
    throw NetError("marking domain does not match the net's place set");
  if (net.has_inhibitor(place, transition))
    return marking[place] == 0 ? Multiplicity::unbounded() : Multiplicity::finite(0);
  TokenCount weight = net.pre_weight(place, transition);
  if (weight == 0)
    throw NetError("pair (" + net.place_name(place) + ", " + net.transition_name(transition) +
                   ") is neither a pre-arc nor an inhibitor arc");
  return Multiplicity::finite(marking[place] / weight);
}

Multiplicity transition_multiplicity(const Marking& marking, TransitionId transition,
                                     const NetStructure& net) {
  if (marking.size() != net.place_count())
    throw NetError("marking domain does not match the net's place set");
  net.check_transition(transition);
  Multiplicity result = Multiplicity::unbounded();
  for (const Arc& arc : net.inputs(transition)) {
    result = Multiplicity::min(result, Multiplicity::finite(marking[arc.place] / arc.weight));
    if (!result.is_unbounded() && result.value() == 0) return result;
  }
  for (PlaceId p : net.inhibitors(transition)) {
    if (marking[p] != 0) return Multiplicity::finite(0);
  }
  return result;
}

bool is_firable(const Marking& marking, TransitionId transition, const NetStructure& net) {
  return transition_multiplicity(marking, transition, net).positive();
}

Marking apply_step(const Marking& marking, const Step& step, const NetStructure& net) {
  if (marking.size() != net.place_count())
    throw NetError("marking domain does not match the net's place set");
  if (step.empty()) throw InvalidStepError("empty step");
  std::vector<TokenCount> next(marking.tokens().begin(), marking.tokens().end());
  for (const auto& [t, count] : step.items()) {
    net.check_transition(t);
    for (PlaceId p : net.inhibitors(t)) {
      if (marking[p] != 0)
        throw InvalidStepError("inhibitor arc of " + net.transition_name(t) +
                               " violated: place " + net.place_name(p) + " is marked");
    }
    for (const Arc& arc : net.inputs(t))
      next[arc.place] = checked_sub(next[arc.place], checked_mul(count, arc.weight));
  }
  for (TokenCount v : next) {
    if (v < 0) throw InvalidStepError("step consumes more tokens than available");
  }
  for (const auto& [t, count] : step.items()) {
    for (const Arc& arc : net.outputs(t))
      next[arc.place] = checked_add(next[arc.place], checked_mul(count, arc.weight));
  }
  return Marking(std::move(next));
}

namespace {

void append_multiset_item(std::ostream& out, TokenCount count, const std::string& name,
                          bool& first) {
  if (!first) out << ", ";
  first = false;
  if (count != 1) out << count << "·";
  out << name;
}

}  // namespace

std::string format_marking(const NetStructure& net, const Marking& marking) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (PlaceId p = 0; p < marking.size(); ++p) {
    if (marking[p] == 0) continue;
    append_multiset_item(out, marking[p], net.place_name(p), first);
  }
  out << '}';
  return out.str();
}

std::string format_step(const NetStructure& net, const Step& step) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, count] : step.items())
    append_multiset_item(out, count, net.transition_name(t), first);
  return out.str();
}

}  // namespace tactnet
