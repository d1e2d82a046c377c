#ifndef NUCHECK_TESTS_SUPPORT_NETS_HPP
#define NUCHECK_TESTS_SUPPORT_NETS_HPP

#include <string>

#include "nucheck/nunet.hpp"

namespace nucheck::testing {

// Autonomous parking system net, built programmatically. The PNML file under
// case-studies/aps must lower to exactly this net.
inline NuNet make_aps() {
  NuNet n;
  n.places = {
      {"p_PR", PlaceRole::Client, TokenSet{1, 2}, false},
      {"p_SR", PlaceRole::Server, TokenSet{0}, false},
      {"p_OP", PlaceRole::Client, {}, false},
      {"p_PU", PlaceRole::Client, {}, false},
      {"p_ES", PlaceRole::Client, {}, true},
      {"p_EU", PlaceRole::Client, {}, true},
  };
  n.transitions = {"t_src",    "t_acc",      "t_rej",     "t_s_exit",
                   "t_u_exit", "t_acc_sink", "t_rej_sink"};
  Variable s("s"), c("c");
  auto P = [&](const char* id) { return *n.place_index(id); };
  auto T = [&](const char* id) { return *n.transition_index(id); };
  n.add_output_arc(T("t_src"), P("p_PR"), ArcLabel{Variable::nu()});
  n.add_input_arc(P("p_SR"), T("t_acc"), ArcLabel{s});
  n.add_output_arc(T("t_acc"), P("p_SR"), ArcLabel{s});
  n.add_input_arc(P("p_PR"), T("t_acc"), ArcLabel{c});
  n.add_output_arc(T("t_acc"), P("p_OP"), ArcLabel{c});
  n.add_input_arc(P("p_SR"), T("t_rej"), ArcLabel{s});
  n.add_output_arc(T("t_rej"), P("p_SR"), ArcLabel{s});
  n.add_input_arc(P("p_PR"), T("t_rej"), ArcLabel{c});
  n.add_output_arc(T("t_rej"), P("p_PU"), ArcLabel{c});
  n.add_input_arc(P("p_OP"), T("t_s_exit"), ArcLabel{c});
  n.add_output_arc(T("t_s_exit"), P("p_ES"), ArcLabel{c});
  n.add_input_arc(P("p_PU"), T("t_u_exit"), ArcLabel{c});
  n.add_output_arc(T("t_u_exit"), P("p_EU"), ArcLabel{c});
  n.add_input_arc(P("p_ES"), T("t_acc_sink"), ArcLabel{c});
  n.add_input_arc(P("p_EU"), T("t_rej_sink"), ArcLabel{c});
  return n;
}

// Travel agency net with flight/bus/train booking workflows.
inline NuNet make_travel_agency() {
  NuNet n;
  n.places = {
      {"p_il", PlaceRole::Client, TokenSet{1}, false},
      {"p_sr", PlaceRole::Server, TokenSet{0}, false},
      {"p_ss", PlaceRole::Client, {}, false},
      {"p_bf", PlaceRole::Client, {}, false},
      {"p_bb", PlaceRole::Client, {}, false},
      {"p_bt", PlaceRole::Client, {}, false},
      {"p_sa", PlaceRole::Server, {}, false},
      {"p_cp", PlaceRole::Client, {}, false},
      {"p_rp", PlaceRole::Server, {}, false},
      {"p_es", PlaceRole::Client, {}, true},
  };
  n.transitions = {"t_src", "t_st", "t_lf", "t_vf", "t_lb",  "t_vb",
                   "t_lt",  "t_vt", "t_vp", "t_exit", "t_udb"};
  Variable s("s"), c("c"), d("d");
  auto P = [&](const char* id) { return *n.place_index(id); };
  auto T = [&](const char* id) { return *n.transition_index(id); };
  n.add_output_arc(T("t_src"), P("p_il"), ArcLabel{Variable::nu()});
  n.add_input_arc(P("p_il"), T("t_st"), ArcLabel{c});
  n.add_output_arc(T("t_st"), P("p_ss"), ArcLabel{c});
  for (auto [look, book, val] :
       {std::tuple{"t_lf", "p_bf", "t_vf"}, std::tuple{"t_lb", "p_bb", "t_vb"},
        std::tuple{"t_lt", "p_bt", "t_vt"}}) {
    n.add_input_arc(P("p_ss"), T(look), ArcLabel{c});
    n.add_output_arc(T(look), P(book), ArcLabel{c});
    n.add_input_arc(P(book), T(val), ArcLabel{c});
    n.add_input_arc(P("p_il"), T(val), ArcLabel{c});
    n.add_input_arc(P("p_sr"), T(val), ArcLabel{s});
    n.add_output_arc(T(val), P("p_sa"), ArcLabel{s});
    n.add_output_arc(T(val), P("p_cp"), ArcLabel{c});
  }
  n.add_input_arc(P("p_sa"), T("t_vp"), ArcLabel{s});
  n.add_input_arc(P("p_cp"), T("t_vp"), ArcLabel{c});
  n.add_output_arc(T("t_vp"), P("p_rp"), ArcLabel{s});
  n.add_output_arc(T("t_vp"), P("p_es"), ArcLabel{c});
  n.add_input_arc(P("p_es"), T("t_exit"), ArcLabel{d});
  n.add_input_arc(P("p_rp"), T("t_udb"), ArcLabel{s});
  n.add_output_arc(T("t_udb"), P("p_sr"), ArcLabel{s});
  return n;
}

inline Marking marking_of(const NuNet& net,
                          std::initializer_list<TokenSet> per_place) {
  Marking m;
  m.tokens.assign(per_place.begin(), per_place.end());
  if (m.tokens.size() != net.places.size())
    throw Error("marking_of: wrong arity");
  return m;
}

}  // namespace nucheck::testing

#endif
