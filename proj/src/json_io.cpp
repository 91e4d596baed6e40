#include "cnetkat/json_io.hpp"

#include "cnetkat/printer.hpp"

namespace cnetkat {

ordered_json packet_json(const Universe& u, const Packet& pk) {
  ordered_json j = ordered_json::object();
  for (int f = 0; f < u.field_count(); ++f) {
    j[u.field_name(f)] = u.field_values(f)[pk.values[f]];
  }
  return j;
}

ordered_json packet_set_json(const Universe& u, const PacketSet& a) {
  ordered_json j = ordered_json::array();
  for (const auto& pk : a.packets()) j.push_back(packet_json(u, pk));
  return j;
}

ordered_json label_json(const Universe& u, const Label& l) {
  ordered_json j = ordered_json::object();
  switch (l.kind()) {
    case LabelKind::State: {
      j["kind"] = "state";
      ordered_json vals = ordered_json::object();
      const State& s = l.state();
      for (int v = 0; v < u.var_count(); ++v) {
        if (s.defined(v)) vals[u.var_name(v)] = u.var_values(v)[s.values[v]];
      }
      j["values"] = vals;
      break;
    }
    case LabelKind::Action: {
      const StateAction& e = l.action();
      j["kind"] = "action";
      j["var"] = u.var_name(e.var);
      if (e.is_copy) {
        j["from"] = u.var_name(e.src_var);
      } else {
        j["value"] = u.var_values(e.var)[e.value];
      }
      break;
    }
    case LabelKind::Packets:
      j["kind"] = "packets";
      j["packets"] = packet_set_json(u, l.packets());
      break;
  }
  return j;
}

ordered_json pomset_json(const Universe& u, const Pomset& p) {
  ordered_json j = ordered_json::object();
  j["nodes"] = p.size();
  ordered_json labels = ordered_json::array();
  for (int i = 0; i < p.size(); ++i) labels.push_back(label_json(u, p.label(i)));
  j["labels"] = labels;
  ordered_json order = ordered_json::array();
  for (int i = 0; i < p.size(); ++i) {
    for (int k = 0; k < p.size(); ++k) {
      if (p.less(i, k)) order.push_back(ordered_json::array({i, k}));
    }
  }
  j["order"] = order;
  return j;
}

ordered_json trace_json(const Universe& u, const Trace& t) {
  ordered_json j = ordered_json::object();
  j["pomset"] = pomset_json(u, t.pom);
  j["output"] = packet_set_json(u, t.out);
  return j;
}

ordered_json trace_set_json(const Universe& u, const TraceSet& ts) {
  ordered_json j = ordered_json::object();
  ordered_json traces = ordered_json::array();
  for (const auto& t : ts.traces()) traces.push_back(trace_json(u, t));
  j["traces"] = traces;
  j["bounds_hit"] = ts.bounds_hit;
  j["output_saturated"] = ts.output_saturated;
  return j;
}

ordered_json normal_form_json(const Universe& u, const NormalForm& nf) {
  ordered_json j = ordered_json::object();
  j["input"] = packet_set_json(u, nf.input_set);
  ordered_json summands = ordered_json::array();
  for (const auto& s : nf.summands) {
    ordered_json sj = ordered_json::object();
    sj["state_program"] = print_program(s.state_program, u);
    sj["output"] = packet_set_json(u, s.output);
    summands.push_back(sj);
  }
  j["summands"] = summands;
  return j;
}

ordered_json guarded_report_json(const Universe& u, const TraceSet& ts,
                                 const OrderSpec* spec) {
  ordered_json j = ordered_json::object();
  ordered_json traces = ordered_json::array();
  size_t guarded_count = 0;
  for (const auto& t : ts.traces()) {
    ordered_json tj = trace_json(u, t);
    Pomset proj = project_state(t.pom);
    bool guarded = is_guarded(u, proj).has_value();
    if (guarded) ++guarded_count;
    tj["guarded"] = guarded;
    tj["a5_violations"] = a5_violations(proj);
    tj["a7_violations"] = a7_violations(proj);
    if (spec) {
      auto assignment = has_property_P(t.pom, *spec);
      if (assignment) {
        ordered_json aj = ordered_json::object();
        aj["u1"] = assignment->u1;
        aj["u2"] = assignment->u2;
        aj["u3"] = assignment->u3;
        aj["u4"] = assignment->u4;
        aj["u5"] = assignment->u5;
        tj["property_p"] = aj;
      } else {
        tj["property_p"] = nullptr;
      }
    }
    traces.push_back(tj);
  }
  j["traces"] = traces;
  j["trace_count"] = ts.traces().size();
  j["guarded_count"] = guarded_count;
  j["bounds_hit"] = ts.bounds_hit;
  return j;
}

}  // namespace cnetkat
