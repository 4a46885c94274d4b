#include "corder.h"

#include <cstring>
#include <string>

#include "corder/abelian.hpp"
#include "corder/error.hpp"
#include "corder/freeprod.hpp"
#include "corder/json_io.hpp"
#include "corder/obstruction.hpp"
#include "corder/realization.hpp"

using namespace corder;

struct co_group {
  GroupPtr g;
};
struct co_order {
  OrderPtr c;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_string(msg);
}

// Runs the body, translating exceptions to status codes.
template <typename F>
int guarded(char** err, F&& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    set_err(err, e.what());
    return e.kind() == ErrorKind::Internal ? 70 : 2;
  } catch (const nlohmann::json::exception& e) {
    set_err(err, e.what());
    return 2;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return 70;
  }
}

Json parse_json(const char* text, const char* what) {
  if (!text) fail(ErrorKind::BadInput, std::string(what) + ": null input");
  return Json::parse(text);
}

}  // namespace

extern "C" {

int co_group_parse(const char* json_text, co_group** out, char** err) {
  return guarded(err, [&] {
    GroupPtr g = group_from_json(parse_json(json_text, "group"));
    *out = new co_group{std::move(g)};
  });
}

void co_group_free(co_group* g) { delete g; }

int co_order_parse(const char* json_text, co_order** out, char** err) {
  return guarded(err, [&] {
    OrderPtr c = order_from_json(parse_json(json_text, "order"));
    *out = new co_order{std::move(c)};
  });
}

void co_order_free(co_order* c) { delete c; }

void co_string_free(char* s) { std::free(s); }

int co_eval(const co_order* c, const char* a_json, const char* b_json,
            const char* c_json, int* value, char** err) {
  return guarded(err, [&] {
    Element a = element_from_json(parse_json(a_json, "a"));
    Element b = element_from_json(parse_json(b_json, "b"));
    Element cc = element_from_json(parse_json(c_json, "c"));
    const Group& g = *c->c->group();
    g.check(a);
    g.check(b);
    g.check(cc);
    *value = c->c->eval(a, b, cc);
  });
}

int co_validate(const co_order* c, int radius, int max_violations,
                char** report_json, int* ok, char** err) {
  return guarded(err, [&] {
    std::vector<Element> sample = c->c->group()->ball(radius);
    ValidationReport report = validate(
        *c->c, sample,
        max_violations > 0 ? static_cast<size_t>(max_violations) : 16);
    *report_json = dup_string(report_to_json(report).dump(2));
    *ok = report.ok() ? 1 : 0;
  });
}

int co_search(const co_group* g, int max_radius, const char* mode, int* no,
              char** cert_json, char** err) {
  return guarded(err, [&] {
    std::string m = mode ? mode : "";
    if (m != "co" && m != "lo")
      fail(ErrorKind::BadInput, "mode must be \"co\" or \"lo\"");
    SearchOutcome out =
        search(g->g, max_radius, m == "co" ? SolveMode::CO : SolveMode::LO);
    *no = out.no ? 1 : 0;
    if (out.no) *cert_json = dup_string(certificate_to_json(out.cert).dump(2));
  });
}

int co_verify_certificate(const char* cert_json, int* ok, char** err) {
  return guarded(err, [&] {
    Certificate cert =
        certificate_from_json(parse_json(cert_json, "certificate"));
    *ok = verify_certificate(cert) ? 1 : 0;
  });
}

namespace {

std::string orders_payload(const std::vector<OrderPtr>& orders) {
  Json out;
  out["count"] = orders.size();
  Json arr = Json::array();
  for (const auto& c : orders) arr.push_back(order_to_json(*c));
  out["orders"] = arr;
  return out.dump(2);
}

}  // namespace

int co_enumerate_orders(const co_group* g, char** out_json, char** err) {
  return guarded(err,
                 [&] { *out_json = dup_string(orders_payload(enumerate_orders(g->g))); });
}

int co_enumerate_cyclic(long m, char** out_json, char** err) {
  return guarded(err, [&] {
    *out_json = dup_string(orders_payload(enumerate_cyclic_orders(m)));
  });
}

int co_realize(const co_order* c, int count, const char* format, char** out,
               char** err) {
  return guarded(err, [&] {
    if (count < 0) fail(ErrorKind::BadInput, "count must be nonnegative");
    std::vector<Element> sample;
    for (int r = 1; r <= 12 && static_cast<int>(sample.size()) < count; ++r)
      sample = c->c->group()->ball(r);
    if (static_cast<int>(sample.size()) > count)
      sample.resize(static_cast<size_t>(count));
    RealizationMap m = realize(*c->c, sample);
    std::string f = format ? format : "";
    if (f == "csv")
      *out = dup_string(export_csv(m));
    else if (f == "svg")
      *out = dup_string(export_svg(m));
    else if (f == "json")
      *out = dup_string(realization_to_json(m).dump(2));
    else
      fail(ErrorKind::BadInput, "format must be csv, svg or json");
  });
}

int co_density_search(const co_order* c, int sample_radius, int budget,
                      int* found, char** params_json, char** err) {
  return guarded(err, [&] {
    std::vector<Element> sample = c->c->group()->ball(sample_radius);
    auto params = density_search(*c->c, sample, budget);
    *found = params ? 1 : 0;
    if (params)
      *params_json = dup_string(rotation_params_to_json(*params).dump(2));
  });
}

int co_archimedean(const co_order* c, const char* g_json, const char* h_json,
                   long N, long* witness, char** err) {
  return guarded(err, [&] {
    Element g = element_from_json(parse_json(g_json, "g"));
    Element h = element_from_json(parse_json(h_json, "h"));
    c->c->group()->check(g);
    c->c->group()->check(h);
    auto n = archimedean_witness(*c->c, g, h, N);
    *witness = n ? *n : -1;
  });
}

int co_reduce_triple(const co_group* g, const char* triple_json,
                     char** trace_json, char** err) {
  return guarded(err, [&] {
    Json j = parse_json(triple_json, "triple");
    if (!j.is_array() || j.size() != 3)
      fail(ErrorKind::BadInput, "at $: array of three elements expected");
    std::array<Element, 3> t = {element_from_json(j[0]),
                                element_from_json(j[1]),
                                element_from_json(j[2])};
    TripleReductionTrace trace = reduce_triple(*g->g, t);
    *trace_json = dup_string(trace_to_json(trace).dump(2));
  });
}

}  // extern "C"
