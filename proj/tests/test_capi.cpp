#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "corder.h"

using nlohmann::json;

namespace {

const char* kKlein4 =
    R"({"type":"finite_table","table":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]})";
const char* kZ4Rot = R"({"type":"finite_rotation","m":4,"k":1})";

struct GroupHandle {
  co_group* g = nullptr;
  ~GroupHandle() { co_group_free(g); }
};

struct OrderHandle {
  co_order* c = nullptr;
  ~OrderHandle() { co_order_free(c); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  co_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("group parse accepts and rejects") {
  GroupHandle h;
  char* err = nullptr;
  CHECK(co_group_parse(kKlein4, &h.g, &err) == 0);
  CHECK(h.g != nullptr);
  CHECK(err == nullptr);

  co_group* bad = nullptr;
  CHECK(co_group_parse("{\"type\":\"nope\"}", &bad, &err) == 2);
  CHECK(bad == nullptr);
  std::string msg = take(err);
  CHECK(msg.find("$.type") != std::string::npos);

  err = nullptr;
  CHECK(co_group_parse("not json", &bad, &err) == 2);
  CHECK(!take(err).empty());
}

TEST_CASE("order parse and eval") {
  OrderHandle h;
  char* err = nullptr;
  REQUIRE(co_order_parse(kZ4Rot, &h.c, &err) == 0);
  int value = 0;
  CHECK(co_eval(h.c, R"({"vec":[],"t":0})", R"({"vec":[],"t":1})",
                R"({"vec":[],"t":2})", &value, &err) == 0);
  CHECK(value == 1);
  CHECK(co_eval(h.c, R"({"vec":[],"t":0})", R"({"vec":[],"t":2})",
                R"({"vec":[],"t":1})", &value, &err) == 0);
  CHECK(value == -1);
  // Element from the wrong group: precondition failure, not a crash.
  CHECK(co_eval(h.c, R"({"idx":0})", R"({"vec":[],"t":1})",
                R"({"vec":[],"t":2})", &value, &err) == 2);
  CHECK(!take(err).empty());
}

TEST_CASE("validate reports cleanly") {
  OrderHandle h;
  char* err = nullptr;
  REQUIRE(co_order_parse(kZ4Rot, &h.c, &err) == 0);
  char* report = nullptr;
  int ok = 0;
  REQUIRE(co_validate(h.c, 4, 16, &report, &ok, &err) == 0);
  CHECK(ok == 1);
  json r = json::parse(take(report));
  CHECK(r["ok"] == true);
  CHECK(r["violations"].empty());
  CHECK(r["checked_triples"].get<long long>() > 0);
}

TEST_CASE("search and certificate verification") {
  GroupHandle h;
  char* err = nullptr;
  REQUIRE(co_group_parse(kKlein4, &h.g, &err) == 0);
  int no = 0;
  char* cert = nullptr;
  REQUIRE(co_search(h.g, 2, "co", &no, &cert, &err) == 0);
  REQUIRE(no == 1);
  std::string cert_text = take(cert);
  json c = json::parse(cert_text);
  CHECK(c["mode"] == "co");
  CHECK(c["minimized"] == true);

  int ok = 0;
  CHECK(co_verify_certificate(cert_text.c_str(), &ok, &err) == 0);
  CHECK(ok == 1);

  // Tampered: two flipped signs make the single clause satisfiable.
  json broken = c;
  broken["clauses"][0]["lits"][0][1] =
      -broken["clauses"][0]["lits"][0][1].get<int>();
  broken["clauses"][0]["lits"][1][1] =
      -broken["clauses"][0]["lits"][1][1].get<int>();
  CHECK(co_verify_certificate(broken.dump().c_str(), &ok, &err) == 0);
  CHECK(ok == 0);

  CHECK(co_verify_certificate("{}", &ok, &err) == 2);
  CHECK(take(err).find("$") != std::string::npos);

  // Bad mode string.
  CHECK(co_search(h.g, 2, "xx", &no, &cert, &err) == 2);
  take(err);
}

TEST_CASE("enumeration") {
  GroupHandle h;
  char* err = nullptr;
  REQUIRE(co_group_parse(kKlein4, &h.g, &err) == 0);
  char* out = nullptr;
  REQUIRE(co_enumerate_orders(h.g, &out, &err) == 0);
  json j = json::parse(take(out));
  CHECK(j["count"] == 0);
  CHECK(j["orders"].empty());

  REQUIRE(co_enumerate_cyclic(4, &out, &err) == 0);
  j = json::parse(take(out));
  CHECK(j["count"] == 2);
  CHECK(j["orders"].size() == 2);
  for (const auto& o : j["orders"]) CHECK(o.contains("type"));

  CHECK(co_enumerate_cyclic(0, &out, &err) == 2);
  take(err);
}

TEST_CASE("realization formats") {
  OrderHandle h;
  char* err = nullptr;
  REQUIRE(co_order_parse(kZ4Rot, &h.c, &err) == 0);
  char* out = nullptr;
  REQUIRE(co_realize(h.c, 4, "csv", &out, &err) == 0);
  std::string csv = take(out);
  CHECK(csv.rfind("element,", 0) == 0);
  REQUIRE(co_realize(h.c, 4, "svg", &out, &err) == 0);
  CHECK(take(out).find("<svg") != std::string::npos);
  REQUIRE(co_realize(h.c, 4, "json", &out, &err) == 0);
  json j = json::parse(take(out));
  CHECK(j["entries"].size() == 4);
  CHECK(co_realize(h.c, 4, "pdf", &out, &err) == 2);
  take(err);
}

TEST_CASE("density search through the C API") {
  OrderHandle h;
  char* err = nullptr;
  const char* rot =
      R"({"type":"rotation","group":{"type":"fg_abelian","rank":2,"torsion":0},
          "params":{"rank":2,"m":0,"k":0,
                    "theta":[{"terms":[[2,"1"],[1,"-1"]]},
                             {"terms":[[3,"1"],[1,"-1"]]}]}})";
  REQUIRE(co_order_parse(rot, &h.c, &err) == 0);
  int found = 0;
  char* params = nullptr;
  REQUIRE(co_density_search(h.c, 2, 64, &found, &params, &err) == 0);
  REQUIRE(found == 1);
  json p = json::parse(take(params));
  CHECK(p.contains("theta"));
}

TEST_CASE("archimedean witness through the C API") {
  OrderHandle h;
  char* err = nullptr;
  const char* rot =
      R"({"type":"rotation","group":{"type":"fg_abelian","rank":2,"torsion":0},
          "params":{"rank":2,"m":0,"k":0,
                    "theta":[{"terms":[[2,"1"],[1,"-1"]]},
                             {"terms":[[3,"1"],[1,"-1"]]}]}})";
  REQUIRE(co_order_parse(rot, &h.c, &err) == 0);
  long witness = 0;
  REQUIRE(co_archimedean(h.c, R"({"vec":[1,0],"t":0})", R"({"vec":[0,1],"t":0})",
                         100, &witness, &err) == 0);
  CHECK(witness == 2);
  // g = h violates the precondition.
  CHECK(co_archimedean(h.c, R"({"vec":[1,0],"t":0})", R"({"vec":[1,0],"t":0})",
                       100, &witness, &err) == 2);
  take(err);
}

TEST_CASE("triple reduction through the C API") {
  GroupHandle h;
  char* err = nullptr;
  const char* zz =
      R"({"type":"free_product",
          "left":{"type":"fg_abelian","rank":1,"torsion":0},
          "right":{"type":"fg_abelian","rank":1,"torsion":0}})";
  REQUIRE(co_group_parse(zz, &h.g, &err) == 0);
  const char* triple =
      R"([{"word":[["L",{"vec":[1],"t":0}]]},
          {"word":[["R",{"vec":[1],"t":0}]]},
          {"word":[["L",{"vec":[1],"t":0}],["R",{"vec":[1],"t":0}]]}])";
  char* trace = nullptr;
  REQUIRE(co_reduce_triple(h.g, triple, &trace, &err) == 0);
  json t = json::parse(take(trace));
  CHECK(t["steps"].size() == 2);
  CHECK(t["minimal"].size() == 3);

  CHECK(co_reduce_triple(h.g, "[1,2]", &trace, &err) == 2);
  take(err);
}
