#include "ocmc/ocp.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "ocmc/ctl.hpp"
#include "ocmc/errors.hpp"

namespace ocmc {

OneCounterProcess::OneCounterProcess(
    std::vector<std::string> locations,
    std::map<std::string, std::vector<std::string>> propositions,
    std::vector<TransitionRule> zero_rules,
    std::vector<TransitionRule> positive_rules)
    : locations_(std::move(locations)),
      zero_rules_(std::move(zero_rules)),
      positive_rules_(std::move(positive_rules)) {
  for (int i = 0; i < static_cast<int>(locations_.size()); ++i) {
    if (locations_[i].empty()) throw InputError("empty location id");
    if (!index_.emplace(locations_[i], i).second)
      throw InputError("duplicate location id '" + locations_[i] + "'");
  }
  auto check_loc_index = [&](int idx, const char* what) {
    if (idx < 0 || idx >= static_cast<int>(locations_.size()))
      throw InputError(std::string(what) + ": location index out of range");
  };
  auto dedup = [](std::vector<TransitionRule>& rules) {
    std::vector<TransitionRule> out;
    for (const TransitionRule& r : rules)
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    rules = std::move(out);
  };
  dedup(zero_rules_);
  dedup(positive_rules_);
  for (const TransitionRule& r : zero_rules_) {
    check_loc_index(r.source, "zero rule");
    check_loc_index(r.target, "zero rule");
    if (r.effect < 0)
      throw InputError("zero rule " + locations_[r.source] + " -> " +
                       locations_[r.target] + " has negative effect " +
                       std::to_string(r.effect));
  }
  for (const TransitionRule& r : positive_rules_) {
    check_loc_index(r.source, "positive rule");
    check_loc_index(r.target, "positive rule");
  }
  for (auto& [name, locs] : propositions) {
    if (name == kReservedProp)
      throw InputError("proposition '" + std::string(kReservedProp) +
                       "' is reserved and may not be labeled");
    std::vector<int> idxs;
    for (const std::string& l : locs) {
      auto it = index_.find(l);
      if (it == index_.end())
        throw InputError("proposition '" + name + "' labels unknown location '" + l + "'");
      idxs.push_back(it->second);
    }
    std::sort(idxs.begin(), idxs.end());
    idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());
    props_.emplace(name, std::move(idxs));
  }
}

int OneCounterProcess::location_index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    throw InputError("unknown location '" + std::string(name) + "'");
  return it->second;
}

bool OneCounterProcess::labels(const std::string& prop_name, int location) const {
  auto it = props_.find(prop_name);
  if (it == props_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), location);
}

OcpBuilder& OcpBuilder::location(std::string id) {
  if (index_.count(id)) throw InputError("duplicate location id '" + id + "'");
  index_.emplace(id, static_cast<int>(locations_.size()));
  locations_.push_back(std::move(id));
  return *this;
}

bool OcpBuilder::has_location(const std::string& id) const { return index_.count(id) != 0; }

int OcpBuilder::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InputError("unknown location '" + id + "'");
  return it->second;
}

OcpBuilder& OcpBuilder::label(const std::string& prop_name, const std::string& location_id) {
  index_of(location_id);
  props_[prop_name].push_back(location_id);
  return *this;
}

OcpBuilder& OcpBuilder::zero_rule(const std::string& src, long long effect, const std::string& dst) {
  zero_.push_back({index_of(src), effect, index_of(dst)});
  return *this;
}

OcpBuilder& OcpBuilder::positive_rule(const std::string& src, long long effect, const std::string& dst) {
  positive_.push_back({index_of(src), effect, index_of(dst)});
  return *this;
}

OneCounterProcess OcpBuilder::build() const {
  return OneCounterProcess(locations_, props_, zero_, positive_);
}

std::vector<State> successors(const OneCounterProcess& ocp, const State& s) {
  if (s.location < 0 || s.location >= ocp.location_count())
    throw InputError("successors: location index out of range");
  std::vector<State> out;
  const auto& rules = s.counter == 0 ? ocp.zero_rules() : ocp.positive_rules();
  for (const TransitionRule& r : rules) {
    if (r.source != s.location) continue;
    BigInt next = s.counter + r.effect;
    if (next < 0) continue;  // disabled step, not an error
    out.push_back(State{r.target, std::move(next)});
  }
  std::sort(out.begin(), out.end(), [](const State& a, const State& b) {
    if (a.location != b.location) return a.location < b.location;
    return a.counter < b.counter;
  });
  return out;
}

bool is_ocn(const OneCounterProcess& ocp) {
  const auto& pos = ocp.positive_rules();
  for (const TransitionRule& z : ocp.zero_rules())
    if (std::find(pos.begin(), pos.end(), z) == pos.end()) return false;
  return true;
}

bool is_unit_step(const OneCounterProcess& ocp) {
  auto unit = [](const TransitionRule& r) { return r.effect >= -1 && r.effect <= 1; };
  return std::all_of(ocp.zero_rules().begin(), ocp.zero_rules().end(), unit) &&
         std::all_of(ocp.positive_rules().begin(), ocp.positive_rules().end(), unit);
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

long long parse_effect(const std::string& tok, std::size_t line_no) {
  long long value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;  // from_chars accepts '-' only
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError("bad effect '" + tok + "'", line_no);
  return value;
}

}  // namespace

OneCounterProcess parse_ocp(std::string_view text) {
  std::vector<std::string> locations;
  std::set<std::string> seen;
  std::map<std::string, std::vector<std::string>> props;
  struct RawRule { std::string src; long long effect; std::string dst; bool zero; std::size_t line; };
  std::vector<RawRule> rules;

  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (head == "loc") {
      if (toks.size() < 2) throw ParseError("'loc' needs at least one id", line_no);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!seen.insert(toks[i]).second)
          throw ParseError("duplicate location id '" + toks[i] + "'", line_no);
        locations.push_back(toks[i]);
      }
    } else if (head == "prop") {
      if (toks.size() < 3) throw ParseError("'prop' needs a name and at least one location", line_no);
      for (std::size_t i = 2; i < toks.size(); ++i) props[toks[1]].push_back(toks[i]);
    } else if (head == "t0" || head == "tp") {
      if (toks.size() != 4) throw ParseError("'" + head + "' needs <src> <delta> <dst>", line_no);
      rules.push_back({toks[1], parse_effect(toks[2], line_no), toks[3], head == "t0", line_no});
    } else {
      throw ParseError("unknown directive '" + head + "'", line_no);
    }
  }

  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(locations.size()); ++i) index.emplace(locations[i], i);
  std::vector<TransitionRule> zero, positive;
  for (const RawRule& r : rules) {
    auto s = index.find(r.src);
    auto d = index.find(r.dst);
    if (s == index.end())
      throw ParseError("rule references unknown location '" + r.src + "'", r.line);
    if (d == index.end())
      throw ParseError("rule references unknown location '" + r.dst + "'", r.line);
    if (r.zero && r.effect < 0)
      throw ParseError("zero rule " + r.src + " -> " + r.dst + " has negative effect", r.line);
    (r.zero ? zero : positive).push_back({s->second, r.effect, d->second});
  }
  try {
    return OneCounterProcess(std::move(locations), std::move(props), std::move(zero),
                             std::move(positive));
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

std::string format_ocp(const OneCounterProcess& ocp) {
  std::ostringstream os;
  if (!ocp.locations().empty()) {
    os << "loc";
    for (const std::string& l : ocp.locations()) os << ' ' << l;
    os << '\n';
  }
  for (const auto& [name, locs] : ocp.propositions()) {
    if (locs.empty()) continue;
    os << "prop " << name;
    for (int i : locs) os << ' ' << ocp.location_name(i);
    os << '\n';
  }
  for (const TransitionRule& r : ocp.zero_rules())
    os << "t0 " << ocp.location_name(r.source) << ' ' << r.effect << ' '
       << ocp.location_name(r.target) << '\n';
  for (const TransitionRule& r : ocp.positive_rules())
    os << "tp " << ocp.location_name(r.source) << ' ' << r.effect << ' '
       << ocp.location_name(r.target) << '\n';
  return os.str();
}

}  // namespace ocmc
