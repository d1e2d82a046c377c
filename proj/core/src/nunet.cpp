#include "nucheck/nunet.hpp"

#include <algorithm>
#include <sstream>

namespace nucheck {

namespace {

// UTF-8 encoding of the lowercase Greek nu glyph.
const std::string kNuGlyph = "\xce\xbd";

}  // namespace

Variable::Variable(std::string label) : label_(std::move(label)) {
  if (label_.empty()) throw Error("variable label must be nonempty");
  if (label_ == kNuGlyph) label_ = "nu";
}

void NuNet::set_arc(std::size_t place, std::size_t trans, bool place_to_trans,
                    ArcLabel label) {
  if (place >= places.size() || trans >= transitions.size())
    throw Error("arc endpoint out of range");
  auto& table = place_to_trans ? in_arcs_ : out_arcs_;
  auto key = std::make_pair(place, trans);
  auto it = table.find(key);
  if (it == table.end()) {
    if (!label.empty()) table.emplace(key, std::move(label));
  } else {
    it->second = it->second.plus(label);
  }
}

const ArcLabel& NuNet::input_arc(std::size_t place, std::size_t trans) const {
  static const ArcLabel empty;
  auto it = in_arcs_.find({place, trans});
  return it == in_arcs_.end() ? empty : it->second;
}

const ArcLabel& NuNet::output_arc(std::size_t trans, std::size_t place) const {
  static const ArcLabel empty;
  auto it = out_arcs_.find({place, trans});
  return it == out_arcs_.end() ? empty : it->second;
}

std::optional<std::size_t> NuNet::place_index(const std::string& id) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> NuNet::transition_index(
    const std::string& id) const {
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i] == id) return i;
  return std::nullopt;
}

std::set<Variable> NuNet::pre_vars(std::size_t trans) const {
  std::set<Variable> r;
  for (std::size_t p = 0; p < places.size(); ++p)
    for (const auto& [v, _] : input_arc(p, trans)) r.insert(v);
  return r;
}

std::set<Variable> NuNet::post_vars(std::size_t trans) const {
  std::set<Variable> r;
  for (std::size_t p = 0; p < places.size(); ++p)
    for (const auto& [v, _] : output_arc(trans, p)) r.insert(v);
  return r;
}

std::set<Variable> NuNet::vars(std::size_t trans) const {
  auto r = pre_vars(trans);
  auto post = post_vars(trans);
  r.insert(post.begin(), post.end());
  return r;
}

bool NuNet::identifier_preserving(std::size_t trans) const {
  auto pre = pre_vars(trans);
  for (const auto& v : post_vars(trans)) {
    if (v.is_nu()) continue;
    if (!pre.count(v)) return false;
  }
  return true;
}

std::vector<std::size_t> NuNet::client_places() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].role == PlaceRole::Client) r.push_back(i);
  return r;
}

std::vector<std::size_t> NuNet::server_places() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].role == PlaceRole::Server) r.push_back(i);
  return r;
}

std::vector<std::size_t> NuNet::terminal_places() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].terminal && places[i].role == PlaceRole::Client)
      r.push_back(i);
  return r;
}

std::set<Id> Marking::support() const {
  std::set<Id> s;
  for (const auto& ts : tokens)
    for (const auto& [id, _] : ts) s.insert(id);
  return s;
}

Marking initial_marking(const NuNet& net) {
  Marking m;
  m.tokens.reserve(net.places.size());
  for (const auto& p : net.places) m.tokens.push_back(p.initial);
  return m;
}

std::vector<Diagnostic> validate_net(const NuNet& net) {
  std::vector<Diagnostic> ds;
  auto err = [&](std::string code, std::string loc, std::string msg) {
    ds.push_back({Severity::Error, std::move(code), std::move(loc),
                  std::move(msg)});
  };
  auto warn = [&](std::string code, std::string loc, std::string msg) {
    ds.push_back({Severity::Warning, std::move(code), std::move(loc),
                  std::move(msg)});
  };

  std::set<std::string> seen;
  for (const auto& p : net.places)
    if (!seen.insert(p.id).second)
      err("duplicate-place-id", p.id, "place id declared twice");
  seen.clear();
  for (const auto& t : net.transitions)
    if (!seen.insert(t).second)
      err("duplicate-transition-id", t, "transition id declared twice");

  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    for (std::size_t p = 0; p < net.places.size(); ++p) {
      for (const auto& [v, _] : net.input_arc(p, t)) {
        if (v.is_nu())
          err("nu-in-precondition",
              net.places[p].id + "->" + net.transitions[t],
              "nu may appear only on transition->place arcs");
      }
    }
    if (!net.identifier_preserving(t))
      warn("not-identifier-preserving", net.transitions[t],
           "an output variable does not occur among the input variables");
  }

  // Each non-nu variable of a transition must touch places of one role only;
  // nu must feed client places.
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    std::map<Variable, std::set<PlaceRole>> roles;
    for (std::size_t p = 0; p < net.places.size(); ++p) {
      for (const auto& [v, _] : net.input_arc(p, t))
        roles[v].insert(net.places[p].role);
      for (const auto& [v, _] : net.output_arc(t, p))
        roles[v].insert(net.places[p].role);
    }
    for (const auto& [v, rs] : roles) {
      if (v.is_nu()) {
        if (rs.count(PlaceRole::Server))
          warn("nu-into-server-place", net.transitions[t],
               "nu-labelled arc targets a server place");
      } else if (rs.size() > 1) {
        warn("role-mixing", net.transitions[t],
             "variable '" + v.label() + "' moves tokens across place roles");
      }
    }
  }

  for (const auto& p : net.places) {
    if (p.role == PlaceRole::Client && p.initial.contains(0))
      warn("id0-in-client-place", p.id,
           "identifier 0 is reserved for the server token");
  }

  return ds;
}

namespace {

std::vector<Mode> modes_over(const NuNet& net, const Marking& m,
                             std::size_t trans, Id kappa) {
  auto var_set = net.vars(trans);
  std::vector<Variable> vs(var_set.begin(), var_set.end());
  std::vector<Mode> out;
  Mode cur;
  std::set<Id> sm = m.support();

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vs.size()) {
      out.push_back(cur);
      return;
    }
    for (Id id = 0; id < kappa; ++id) {
      if (vs[i].is_nu() && sm.count(id)) continue;
      cur[vs[i]] = id;
      rec(i + 1);
    }
    cur.erase(vs[i]);
  };
  rec(0);
  return out;
}

TokenSet apply_mode(const ArcLabel& label, const Mode& sigma) {
  TokenSet ts;
  for (const auto& [v, mult] : label) {
    auto it = sigma.find(v);
    if (it == sigma.end()) throw Error("mode does not bind '" + v.label() + "'");
    ts.add(it->second, mult);
  }
  return ts;
}

}  // namespace

bool mode_enabled(const NuNet& net, const Marking& m, std::size_t trans,
                  const Mode& sigma) {
  for (const auto& v : net.vars(trans)) {
    if (v.is_nu()) {
      auto it = sigma.find(v);
      if (it == sigma.end() || m.support().count(it->second)) return false;
    }
  }
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    const auto& label = net.input_arc(p, trans);
    if (label.empty()) continue;
    if (!apply_mode(label, sigma).submultiset_of(m.tokens[p])) return false;
  }
  return true;
}

std::vector<Mode> enabled_modes(const NuNet& net, const Marking& m,
                                std::size_t trans, Id kappa) {
  if (trans >= net.transitions.size()) throw Error("unknown transition index");
  std::vector<Mode> out;
  for (auto& sigma : modes_over(net, m, trans, kappa))
    if (mode_enabled(net, m, trans, sigma)) out.push_back(std::move(sigma));
  return out;
}

std::vector<Mode> enabled_modes(const NuNet& net, const Marking& m,
                                const std::string& transition, Id kappa) {
  auto t = net.transition_index(transition);
  if (!t) throw Error("unknown transition '" + transition + "'");
  return enabled_modes(net, m, *t, kappa);
}

Marking fire(const NuNet& net, const Marking& m, std::size_t trans,
             const Mode& sigma) {
  if (trans >= net.transitions.size())
    throw FiringError("unknown transition index");
  if (!mode_enabled(net, m, trans, sigma))
    throw FiringError("transition '" + net.transitions[trans] +
                      "' is not enabled under the given mode");
  Marking out = m;
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    const auto& in = net.input_arc(p, trans);
    if (!in.empty()) out.tokens[p] = out.tokens[p].minus(apply_mode(in, sigma));
    const auto& post = net.output_arc(trans, p);
    if (!post.empty())
      out.tokens[p] = out.tokens[p].plus(apply_mode(post, sigma));
  }
  return out;
}

Marking fire(const NuNet& net, const Marking& m, const std::string& transition,
             const Mode& sigma) {
  auto t = net.transition_index(transition);
  if (!t) throw FiringError("unknown transition '" + transition + "'");
  return fire(net, m, *t, sigma);
}

std::vector<Firing> firable(const NuNet& net, const Marking& m, Id kappa,
                            const std::set<Id>& used, FreshPolicy policy) {
  std::vector<Firing> out;
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    bool has_nu = net.vars(t).count(Variable::nu()) > 0;
    std::optional<Id> fresh_min;
    if (has_nu) {
      for (Id id = 0; id < kappa; ++id)
        if (!used.count(id)) {
          fresh_min = id;
          break;
        }
    }
    for (auto& sigma : enabled_modes(net, m, t, kappa)) {
      if (has_nu) {
        Id nu_id = sigma.at(Variable::nu());
        if (used.count(nu_id)) continue;  // identifiers are never reused
        if (policy == FreshPolicy::FreshMin && nu_id != *fresh_min) continue;
      }
      out.push_back({t, std::move(sigma)});
    }
  }
  return out;
}

bool deadlocked(const NuNet& net, const Marking& m, Id kappa,
                const std::set<Id>& used) {
  return firable(net, m, kappa, used, FreshPolicy::All).empty();
}

std::set<Id> used_ids(const Trace& trace) {
  std::set<Id> s;
  for (const auto& m : trace.markings) {
    auto sup = m.support();
    s.insert(sup.begin(), sup.end());
  }
  return s;
}

RunIterator::RunIterator(const NuNet& net, std::size_t lambda, Id kappa,
                         FreshPolicy policy, RunLimits limits)
    : net_(net), lambda_(lambda), kappa_(kappa), policy_(policy),
      limits_(limits) {
  if (kappa_ < 1) throw Error("kappa must be at least 1");
  Marking m0 = initial_marking(net);
  for (Id id : m0.support())
    if (id >= kappa_)
      throw ConfigError("initial marking uses identifier " +
                        std::to_string(id) + ", which needs kappa >= " +
                        std::to_string(id + 1));
  markings_.push_back(m0);
  push_frame(m0, m0.support());
}

void RunIterator::push_frame(const Marking& m, const std::set<Id>& used) {
  if (++nodes_ > limits_.max_nodes)
    throw EnumerationCapExceeded("run enumeration exceeded " +
                                 std::to_string(limits_.max_nodes) +
                                 " nodes");
  Frame f;
  f.marking = m;
  f.used = used;
  if (stack_.size() < lambda_) {  // leaves are never expanded
    for (auto& firing : firable(net_, m, kappa_, used, policy_))
      f.branches.push_back({std::move(firing)});
    if (f.branches.empty()) f.branches.push_back({std::nullopt});  // stutter
  }
  stack_.push_back(std::move(f));
}

std::optional<Trace> RunIterator::next() {
  if (done_) return std::nullopt;
  // Invariant: stack_, markings_ have equal depth; path_ is one shorter.
  auto backtrack = [&] {
    stack_.pop_back();
    if (stack_.empty()) {
      done_ = true;
    } else {
      markings_.pop_back();
      path_.pop_back();
    }
  };
  while (true) {
    if (stack_.size() == lambda_ + 1) {
      Trace t;
      t.markings = markings_;
      t.steps = path_;
      backtrack();
      return t;
    }
    if (done_) return std::nullopt;
    Frame& f = stack_.back();
    if (f.next_branch == f.branches.size()) {
      backtrack();
      continue;
    }
    const Branch& b = f.branches[f.next_branch++];
    Marking next_m =
        b.firing ? fire(net_, f.marking, b.firing->transition, b.firing->mode)
                 : f.marking;
    std::set<Id> next_used = f.used;
    for (Id id : next_m.support()) next_used.insert(id);
    path_.push_back(b.firing);
    markings_.push_back(next_m);
    push_frame(next_m, next_used);
  }
}

std::vector<Trace> enumerate_runs(const NuNet& net, std::size_t lambda,
                                  Id kappa, FreshPolicy policy,
                                  RunLimits limits) {
  std::vector<Trace> out;
  RunIterator it(net, lambda, kappa, policy, limits);
  while (auto t = it.next()) out.push_back(std::move(*t));
  return out;
}

std::vector<Diagnostic> validate_trace(const NuNet& net, const Trace& trace,
                                       Id kappa) {
  std::vector<Diagnostic> ds;
  if (trace.markings.size() != trace.steps.size() + 1) {
    ds.push_back({Severity::Error, "malformed-trace", "",
                  "trace needs exactly lambda+1 markings"});
    return ds;
  }
  std::set<Id> used = trace.markings.empty() ? std::set<Id>{}
                                             : trace.markings[0].support();
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const auto& step = trace.steps[s];
    if (!step) {
      if (trace.markings[s + 1] != trace.markings[s])
        ds.push_back({Severity::Error, "bad-stutter",
                      "step " + std::to_string(s),
                      "stutter step changes the marking"});
      if (!deadlocked(net, trace.markings[s], kappa, used))
        ds.push_back({Severity::Error, "bad-stutter",
                      "step " + std::to_string(s),
                      "stutter at a marking that enables a transition"});
      continue;
    }
    try {
      Marking m = fire(net, trace.markings[s], step->transition, step->mode);
      if (m != trace.markings[s + 1])
        ds.push_back({Severity::Error, "firing-mismatch",
                      "step " + std::to_string(s),
                      "recorded successor differs from the firing rule"});
    } catch (const FiringError& e) {
      ds.push_back({Severity::Error, "not-enabled",
                    "step " + std::to_string(s), e.what()});
    }
    for (Id id : trace.markings[s + 1].support()) used.insert(id);
  }
  if (trace.loop_start) {
    if (*trace.loop_start > trace.lambda())
      ds.push_back({Severity::Error, "bad-loop", "",
                    "loop start past the bound"});
    else if (*trace.loop_start < trace.lambda() &&
             trace.markings[*trace.loop_start] != trace.markings.back())
      ds.push_back({Severity::Error, "bad-loop", "",
                    "marking at the loop start differs from the final one"});
  }
  return ds;
}

std::string marking_to_string(const NuNet& net, const Marking& m) {
  std::ostringstream os;
  os << "<";
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    if (p) os << ", ";
    os << net.places[p].id << ":{";
    bool first = true;
    for (const auto& [id, mult] : m.tokens[p]) {
      for (std::uint32_t k = 0; k < mult; ++k) {
        if (!first) os << ",";
        os << id;
        first = false;
      }
    }
    os << "}";
  }
  os << ">";
  return os.str();
}

}  // namespace nucheck
