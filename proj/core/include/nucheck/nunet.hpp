#ifndef NUCHECK_NUNET_HPP
#define NUCHECK_NUNET_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nucheck/diagnostics.hpp"

namespace nucheck {

using Id = unsigned;

// Arc label. "nu" (also accepted as the glyph "ν") is the fresh-name
// variable and may only appear on transition->place arcs.
class Variable {
 public:
  Variable() = default;
  explicit Variable(std::string label);
  static Variable nu() { return Variable("nu"); }

  const std::string& label() const { return label_; }
  bool is_nu() const { return label_ == "nu"; }

  bool operator==(const Variable& o) const { return label_ == o.label_; }
  bool operator<(const Variable& o) const { return label_ < o.label_; }

 private:
  std::string label_;
};

// Finite multiset with deterministic (ordered) iteration.
template <typename T>
class Multiset {
 public:
  Multiset() = default;
  Multiset(std::initializer_list<T> xs) {
    for (const auto& x : xs) add(x);
  }

  void add(const T& x, std::uint32_t n = 1) {
    if (n) elems_[x] += n;
  }
  void remove(const T& x, std::uint32_t n = 1) {
    auto it = elems_.find(x);
    if (it == elems_.end() || it->second < n)
      throw Error("multiset underflow");
    it->second -= n;
    if (it->second == 0) elems_.erase(it);
  }

  std::uint32_t count(const T& x) const {
    auto it = elems_.find(x);
    return it == elems_.end() ? 0 : it->second;
  }
  bool contains(const T& x) const { return count(x) > 0; }
  bool empty() const { return elems_.empty(); }

  std::size_t size() const {  // total multiplicity
    std::size_t n = 0;
    for (const auto& [_, c] : elems_) n += c;
    return n;
  }

  std::set<T> support() const {
    std::set<T> s;
    for (const auto& [x, _] : elems_) s.insert(x);
    return s;
  }

  bool submultiset_of(const Multiset& other) const {
    for (const auto& [x, c] : elems_)
      if (other.count(x) < c) return false;
    return true;
  }

  Multiset plus(const Multiset& other) const {
    Multiset r = *this;
    for (const auto& [x, c] : other.elems_) r.elems_[x] += c;
    return r;
  }
  Multiset minus(const Multiset& other) const {
    Multiset r = *this;
    for (const auto& [x, c] : other.elems_) r.remove(x, c);
    return r;
  }

  bool operator==(const Multiset& o) const { return elems_ == o.elems_; }
  bool operator!=(const Multiset& o) const { return !(*this == o); }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

 private:
  std::map<T, std::uint32_t> elems_;
};

using ArcLabel = Multiset<Variable>;
using TokenSet = Multiset<Id>;

enum class PlaceRole { Client, Server };

struct Place {
  std::string id;
  PlaceRole role = PlaceRole::Client;
  TokenSet initial;
  bool terminal = false;  // feeds a sink transition; clients exit here
};

// Single-component ν-net: places, transitions and variable-labelled arcs.
class NuNet {
 public:
  std::vector<Place> places;
  std::vector<std::string> transitions;

  void set_arc(std::size_t place, std::size_t trans, bool place_to_trans,
               ArcLabel label);
  void add_input_arc(std::size_t place, std::size_t trans, ArcLabel label) {
    set_arc(place, trans, true, std::move(label));
  }
  void add_output_arc(std::size_t trans, std::size_t place, ArcLabel label) {
    set_arc(place, trans, false, std::move(label));
  }

  const ArcLabel& input_arc(std::size_t place, std::size_t trans) const;
  const ArcLabel& output_arc(std::size_t trans, std::size_t place) const;

  std::optional<std::size_t> place_index(const std::string& id) const;
  std::optional<std::size_t> transition_index(const std::string& id) const;

  std::set<Variable> pre_vars(std::size_t trans) const;
  std::set<Variable> post_vars(std::size_t trans) const;
  std::set<Variable> vars(std::size_t trans) const;

  // post(t) \ {nu} subset of pre(t): the transition forges no identifier.
  bool identifier_preserving(std::size_t trans) const;

  std::vector<std::size_t> client_places() const;
  std::vector<std::size_t> server_places() const;
  std::vector<std::size_t> terminal_places() const;

  TokenSet initial_marking_of(std::size_t place) const {
    return places[place].initial;
  }

 private:
  // keyed by (place, transition); empty labels are not stored
  std::map<std::pair<std::size_t, std::size_t>, ArcLabel> in_arcs_;
  std::map<std::pair<std::size_t, std::size_t>, ArcLabel> out_arcs_;

  friend std::vector<Diagnostic> validate_net(const NuNet&);
};

// Marking: identifier multiset per place, indexed like net.places.
struct Marking {
  std::vector<TokenSet> tokens;

  std::set<Id> support() const;
  bool operator==(const Marking& o) const { return tokens == o.tokens; }
  bool operator!=(const Marking& o) const { return !(*this == o); }
};

Marking initial_marking(const NuNet& net);

// Mode: total binding of a transition's variables to identifiers.
using Mode = std::map<Variable, Id>;

struct Firing {
  std::size_t transition;
  Mode mode;
};

// A bounded run: lambda steps, lambda+1 markings. Steps without a firing
// are stutter padding at a deadlocked marking.
struct Trace {
  std::vector<Marking> markings;
  std::vector<std::optional<Firing>> steps;
  std::optional<std::size_t> loop_start;

  std::size_t lambda() const { return steps.size(); }
};

std::vector<Diagnostic> validate_net(const NuNet& net);

// Modes over identifiers {0..kappa-1} enabling t at m, in lexicographic
// order (variables sorted by label, then identifier values).
std::vector<Mode> enabled_modes(const NuNet& net, const Marking& m,
                                const std::string& transition, Id kappa);
std::vector<Mode> enabled_modes(const NuNet& net, const Marking& m,
                                std::size_t trans, Id kappa);

bool mode_enabled(const NuNet& net, const Marking& m, std::size_t trans,
                  const Mode& sigma);

struct FiringError : Error {
  using Error::Error;
};

// M'(p) = M(p) - sigma(F(p,t)) + sigma(F(t,p)). Throws FiringError when
// (t, sigma) is not enabled at m.
Marking fire(const NuNet& net, const Marking& m, std::size_t trans,
             const Mode& sigma);
Marking fire(const NuNet& net, const Marking& m, const std::string& transition,
             const Mode& sigma);

enum class FreshPolicy {
  All,      // nu binds any identifier never used so far in the trace
  FreshMin  // nu binds the smallest such identifier
};

struct EnumerationCapExceeded : Error {
  using Error::Error;
};

struct RunLimits {
  std::size_t max_nodes = 2'000'000;
};

// Depth-first enumerator over all runs of exactly `lambda` steps from the
// initial marking, using identifiers {0..kappa-1}. Deadlocked prefixes are
// stutter-padded. Identifiers are never reused within a trace: nu candidates
// exclude every identifier that already appeared in any earlier marking.
// Single-consumer.
class RunIterator {
 public:
  RunIterator(const NuNet& net, std::size_t lambda, Id kappa,
              FreshPolicy policy, RunLimits limits = {});

  std::optional<Trace> next();

 private:
  struct Branch {
    std::optional<Firing> firing;  // nullopt = stutter
  };
  struct Frame {
    Marking marking;
    std::set<Id> used;
    std::vector<Branch> branches;
    std::size_t next_branch = 0;
  };

  void push_frame(const Marking& m, const std::set<Id>& used);

  const NuNet& net_;
  std::size_t lambda_;
  Id kappa_;
  FreshPolicy policy_;
  RunLimits limits_;
  std::size_t nodes_ = 0;
  bool done_ = false;
  std::vector<Frame> stack_;
  std::vector<std::optional<Firing>> path_;
  std::vector<Marking> markings_;
};

std::vector<Trace> enumerate_runs(const NuNet& net, std::size_t lambda,
                                  Id kappa, FreshPolicy policy,
                                  RunLimits limits = {});

// (t, sigma) pairs firable at m under the never-reuse policy, deterministic
// order: transitions in declaration order, modes lexicographic.
std::vector<Firing> firable(const NuNet& net, const Marking& m, Id kappa,
                            const std::set<Id>& used_ids, FreshPolicy policy);

bool deadlocked(const NuNet& net, const Marking& m, Id kappa,
                const std::set<Id>& used_ids);

std::set<Id> used_ids(const Trace& trace);

// Re-checks every step of the trace against the firing rule.
std::vector<Diagnostic> validate_trace(const NuNet& net, const Trace& trace,
                                       Id kappa);

std::string marking_to_string(const NuNet& net, const Marking& m);

}  // namespace nucheck

#endif
