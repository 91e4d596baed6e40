#ifndef CNETKAT_JSON_IO_HPP
#define CNETKAT_JSON_IO_HPP

#include "json.hpp"

#include "cnetkat/guard.hpp"
#include "cnetkat/pomset.hpp"
#include "cnetkat/rewrite.hpp"
#include "cnetkat/semantics.hpp"
#include "cnetkat/universe.hpp"

namespace cnetkat {

using ordered_json = nlohmann::ordered_json;

ordered_json packet_json(const Universe& u, const Packet& pk);
ordered_json packet_set_json(const Universe& u, const PacketSet& a);
ordered_json label_json(const Universe& u, const Label& l);
ordered_json pomset_json(const Universe& u, const Pomset& p);
ordered_json trace_json(const Universe& u, const Trace& t);
ordered_json trace_set_json(const Universe& u, const TraceSet& ts);
ordered_json normal_form_json(const Universe& u, const NormalForm& nf);

// Per-trace guardedness verdicts with diagnostic node sets; when `spec` is
// given, property-P assignments are reported as well.
ordered_json guarded_report_json(const Universe& u, const TraceSet& ts,
                                 const OrderSpec* spec = nullptr);

}  // namespace cnetkat

#endif
