// Command-line front end; talks to the library exclusively through the C
// interface in corder.h.
//
// Exit codes: 0 success / inconclusive, 1 decided-negative results that are
// not schema errors (validation violations, failed certificate replay),
// 2 schema or input violations, 10 non-orderability proved with a
// certificate, 70 internal invariant breach.
#include <CLI11.hpp>
#include <json.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "corder.h"

namespace {

constexpr unsigned long kDefaultSeed = 0x5eed0c1au;

int fail_status(int status, char* err) {
  std::cerr << "error: " << (err ? err : "unknown") << "\n";
  co_string_free(err);
  return status;
}

std::string read_file(const std::string& path, bool* ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *ok = false;
    return {};
  }
  std::ostringstream os;
  os << in.rdbuf();
  *ok = true;
  return os.str();
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct Loaded {
  co_group* group = nullptr;
  co_order* order = nullptr;
  ~Loaded() {
    co_group_free(group);
    co_order_free(order);
  }
};

int load_group(const std::string& path, Loaded* l) {
  bool ok = false;
  std::string text = read_file(path, &ok);
  if (!ok) {
    std::cerr << "error: cannot read " << path << "\n";
    return 2;
  }
  char* err = nullptr;
  int st = co_group_parse(text.c_str(), &l->group, &err);
  return st ? fail_status(st, err) : 0;
}

int load_order(const std::string& path, Loaded* l) {
  bool ok = false;
  std::string text = read_file(path, &ok);
  if (!ok) {
    std::cerr << "error: cannot read " << path << "\n";
    return 2;
  }
  char* err = nullptr;
  int st = co_order_parse(text.c_str(), &l->order, &err);
  return st ? fail_status(st, err) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circular and linear order toolkit"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  unsigned long seed = kDefaultSeed;
  int threads = 1;
  app.add_option("--seed", seed, "seed for randomized property runs");
  app.add_option("--threads", threads,
                 "worker threads (results are sequential-deterministic)");

  std::string order_path, group_path, cert_path, out_path;
  std::string a_json, b_json, c_json, triple_json, mode = "co";
  std::string format = "csv";
  int radius = 2, max_radius = 2, max_violations = 16, count = 8, budget = 64;
  long cyclic_m = 0, max_n = 100;
  bool want_svg = false, want_trace = false;

  auto* validate = app.add_subcommand("validate", "check order axioms on a ball");
  validate->add_option("--order", order_path)->required();
  validate->add_option("--radius", radius);
  validate->add_option("--max-violations", max_violations);
  validate->add_option("--out", out_path);

  auto* search = app.add_subcommand("search", "obstruction certificate search");
  search->add_option("--group", group_path)->required();
  search->add_option("--mode", mode)->check(CLI::IsMember({"co", "lo"}));
  search->add_option("--max-radius", max_radius);
  search->add_option("--out", out_path);

  auto* enumerate = app.add_subcommand("enumerate", "all orders of a finite group");
  enumerate->add_option("--cyclic", cyclic_m, "cyclic group order m");
  enumerate->add_option("--group", group_path, "finite-table group file");
  enumerate->add_option("--out", out_path);

  auto* eval = app.add_subcommand("eval", "order value on a triple");
  eval->add_option("--order", order_path)->required();
  eval->add_option("--a", a_json)->required();
  eval->add_option("--b", b_json)->required();
  eval->add_option("--c", c_json)->required();

  auto* realize = app.add_subcommand("realize", "pin elements to circle positions");
  realize->add_option("--order", order_path)->required();
  realize->add_option("--count", count);
  realize->add_option("--format", format)
      ->check(CLI::IsMember({"csv", "svg", "json"}));
  realize->add_flag("--svg", want_svg, "shorthand for --format svg");
  realize->add_option("--out", out_path);

  auto* density = app.add_subcommand("density", "agreeing rotation parameters");
  density->add_option("--order", order_path)->required();
  density->add_option("--sample-radius", radius);
  density->add_option("--budget", budget);
  density->add_option("--out", out_path);

  auto* arch = app.add_subcommand("archimedean", "orientation-flip witness");
  arch->add_option("--order", order_path)->required();
  arch->add_option("--g", a_json)->required();
  arch->add_option("--h", b_json)->required();
  arch->add_option("--max-n", max_n);

  auto* verify = app.add_subcommand("verify-cert", "replay a certificate");
  verify->add_option("--cert", cert_path)->required();

  auto* reduce = app.add_subcommand("reduce", "free-product triple reduction");
  reduce->add_option("--group", group_path)->required();
  reduce->add_option("--triple", triple_json)->required();
  reduce->add_flag("--trace", want_trace, "emit the full reduction trace");
  reduce->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);
  (void)seed;
  (void)threads;

  char* err = nullptr;
  char* out = nullptr;

  if (validate->parsed()) {
    Loaded l;
    if (int st = load_order(order_path, &l)) return st;
    int ok = 0;
    int st = co_validate(l.order, radius, max_violations, &out, &ok, &err);
    if (st) return fail_status(st, err);
    write_output(out_path, out);
    co_string_free(out);
    return ok ? 0 : 1;
  }

  if (search->parsed()) {
    Loaded l;
    if (int st = load_group(group_path, &l)) return st;
    int no = 0;
    int st = co_search(l.group, max_radius, mode.c_str(), &no, &out, &err);
    if (st) return fail_status(st, err);
    if (!no) {
      write_output(out_path,
                   "{\n  \"no\": false,\n  \"note\": \"inconclusive up to "
                   "radius " + std::to_string(max_radius) + "\"\n}");
      return 0;
    }
    write_output(out_path, out);
    co_string_free(out);
    return 10;
  }

  if (enumerate->parsed()) {
    int st;
    if (cyclic_m > 0) {
      st = co_enumerate_cyclic(cyclic_m, &out, &err);
    } else if (!group_path.empty()) {
      Loaded l;
      if (int gst = load_group(group_path, &l)) return gst;
      st = co_enumerate_orders(l.group, &out, &err);
    } else {
      std::cerr << "error: enumerate needs --cyclic or --group\n";
      return 2;
    }
    if (st) return fail_status(st, err);
    write_output(out_path, out);
    co_string_free(out);
    return 0;
  }

  if (eval->parsed()) {
    Loaded l;
    if (int st = load_order(order_path, &l)) return st;
    int value = 0;
    int st = co_eval(l.order, a_json.c_str(), b_json.c_str(), c_json.c_str(),
                     &value, &err);
    if (st) return fail_status(st, err);
    std::cout << (value > 0 ? "+1" : value < 0 ? "-1" : "0") << "\n";
    return 0;
  }

  if (realize->parsed()) {
    Loaded l;
    if (int st = load_order(order_path, &l)) return st;
    if (want_svg) format = "svg";
    int st = co_realize(l.order, count, format.c_str(), &out, &err);
    if (st) return fail_status(st, err);
    write_output(out_path, out);
    co_string_free(out);
    return 0;
  }

  if (density->parsed()) {
    Loaded l;
    if (int st = load_order(order_path, &l)) return st;
    int found = 0;
    int st = co_density_search(l.order, radius, budget, &found, &out, &err);
    if (st) return fail_status(st, err);
    if (!found) {
      write_output(out_path, "{\n  \"found\": false\n}");
      return 0;
    }
    write_output(out_path, out);
    co_string_free(out);
    return 0;
  }

  if (arch->parsed()) {
    Loaded l;
    if (int st = load_order(order_path, &l)) return st;
    long witness = -1;
    int st = co_archimedean(l.order, a_json.c_str(), b_json.c_str(), max_n,
                            &witness, &err);
    if (st) return fail_status(st, err);
    if (witness < 0)
      std::cout << "{ \"witness\": null, \"none_up_to\": " << max_n << " }\n";
    else
      std::cout << "{ \"witness\": " << witness << " }\n";
    return 0;
  }

  if (verify->parsed()) {
    bool ok_read = false;
    std::string text = read_file(cert_path, &ok_read);
    if (!ok_read) {
      std::cerr << "error: cannot read " << cert_path << "\n";
      return 2;
    }
    int ok = 0;
    int st = co_verify_certificate(text.c_str(), &ok, &err);
    if (st) return fail_status(st, err);
    std::cout << (ok ? "certificate replays UNSAT\n"
                     : "certificate FAILED to replay\n");
    return ok ? 0 : 1;
  }

  if (reduce->parsed()) {
    Loaded l;
    if (int st = load_group(group_path, &l)) return st;
    int st = co_reduce_triple(l.group, triple_json.c_str(), &out, &err);
    if (st) return fail_status(st, err);
    if (want_trace) {
      write_output(out_path, out);
    } else {
      nlohmann::json full = nlohmann::json::parse(out);
      nlohmann::json brief{{"minimal", full["minimal"]},
                           {"steps", full["steps"].size()}};
      write_output(out_path, brief.dump(2));
    }
    co_string_free(out);
    return 0;
  }

  return 2;
}
