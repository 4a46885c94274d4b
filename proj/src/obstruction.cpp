#include "corder/obstruction.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include "corder/error.hpp"

namespace corder {

// ---------------------------------------------------------------------------
// SHA-256

namespace {

constexpr uint32_t kSha256K[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

std::string sha256_hex(const std::string& data) {
  uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::string msg = data;
  uint64_t bits = static_cast<uint64_t>(msg.size()) * 8;
  msg.push_back(static_cast<char>(0x80));
  while (msg.size() % 64 != 56) msg.push_back('\0');
  for (int i = 7; i >= 0; --i)
    msg.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  for (size_t off = 0; off < msg.size(); off += 64) {
    uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (static_cast<uint8_t>(msg[off + 4 * i]) << 24) |
             (static_cast<uint8_t>(msg[off + 4 * i + 1]) << 16) |
             (static_cast<uint8_t>(msg[off + 4 * i + 2]) << 8) |
             static_cast<uint8_t>(msg[off + 4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
             g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      uint32_t ch = (e & f) ^ (~e & g);
      uint32_t t1 = hh + s1 + ch + kSha256K[i] + w[i];
      uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }
  std::ostringstream os;
  os << std::hex;
  for (uint32_t x : h)
    for (int i = 7; i >= 0; --i) os << ((x >> (4 * i)) & 0xf);
  return os.str();
}

// ---------------------------------------------------------------------------
// Instance construction

namespace {

struct SignedDsu {
  std::vector<int> parent;
  std::vector<int> rel;  // sign relative to parent

  explicit SignedDsu(size_t n) : parent(n), rel(n, 1) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 1};
    auto [root, sign] = find(parent[x]);
    parent[x] = root;
    rel[x] *= sign;
    return {root, rel[x]};
  }
  // v_a = sign * v_b; returns false on contradiction.
  bool unite(int a, int b, int sign) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) return sa == sign * sb;
    parent[ra] = rb;
    rel[ra] = sa * sign * sb;
    return true;
  }
};

struct BuildData {
  ConstraintInstance inst;
  std::vector<Element> pa, pb;                // per pair id (LO: pb unused)
  std::vector<std::pair<int, int>> pair_lit;  // pair id -> (var, sign)
};

std::vector<Lit> normalize_lits(std::vector<Lit> lits, bool allow_flip) {
  std::sort(lits.begin(), lits.end(), [](const Lit& a, const Lit& b) {
    return a.var != b.var ? a.var < b.var : a.sign < b.sign;
  });
  if (allow_flip) {
    std::vector<Lit> flipped = lits;
    for (auto& l : flipped) l.sign = -l.sign;
    std::sort(flipped.begin(), flipped.end(), [](const Lit& a, const Lit& b) {
      return a.var != b.var ? a.var < b.var : a.sign < b.sign;
    });
    auto less = [](const std::vector<Lit>& x, const std::vector<Lit>& y) {
      for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].var != y[i].var) return x[i].var < y[i].var;
        if (x[i].sign != y[i].sign) return x[i].sign < y[i].sign;
      }
      return false;
    };
    if (less(flipped, lits)) return flipped;
  }
  return lits;
}

std::string lits_key(const std::vector<Lit>& lits) {
  std::ostringstream os;
  for (const auto& l : lits) os << l.var << (l.sign > 0 ? '+' : '-');
  return os.str();
}

BuildData build_data(GroupPtr g, int radius, SolveMode mode) {
  if (radius < 1) fail(ErrorKind::BadInput, "radius must be at least 1");
  BuildData bd;
  bd.inst.group = g;
  bd.inst.radius = radius;
  bd.inst.mode = mode;

  std::vector<Element> ball = g->ball(radius);
  std::map<std::string, size_t> in_ball;
  for (size_t i = 0; i < ball.size(); ++i)
    in_ball.emplace(element_key(ball[i]), i);
  std::vector<Element> nonid;
  for (const auto& e : ball)
    if (!g->is_identity(e)) nonid.push_back(e);

  std::map<std::string, int> pid_of;
  auto pid_key = [&](const Element& a, const Element& b) {
    return element_key(a) + "|" + element_key(b);
  };
  auto pid_lookup = [&](const Element& a, const Element& b) -> int {
    auto it = pid_of.find(pid_key(a, b));
    return it == pid_of.end() ? -1 : it->second;
  };

  if (mode == SolveMode::CO) {
    if (nonid.size() < 3) {
      bd.inst.trivial = true;
      bd.inst.note = "fewer than three nonidentity elements; all triples degenerate";
    }
    for (const auto& a : nonid)
      for (const auto& b : nonid) {
        if (element_eq(a, b)) continue;
        pid_of.emplace(pid_key(a, b), static_cast<int>(bd.pa.size()));
        bd.pa.push_back(a);
        bd.pb.push_back(b);
      }
    SignedDsu dsu(bd.pa.size());
    std::vector<int> conflict_pids;
    for (size_t p = 0; p < bd.pa.size(); ++p) {
      const Element& a = bd.pa[p];
      const Element& b = bd.pb[p];
      if (!dsu.unite(static_cast<int>(p), pid_lookup(b, a), -1))
        conflict_pids.push_back(static_cast<int>(p));
      Element ia = g->inverse(a);
      Element t = g->multiply(ia, b);
      int q = in_ball.count(element_key(t)) ? pid_lookup(t, ia) : -1;
      if (q < 0) {
        ++bd.inst.skipped_identifications;
      } else if (!dsu.unite(static_cast<int>(p), q, 1)) {
        conflict_pids.push_back(static_cast<int>(p));
      }
    }
    // Variables: first pair reaching each class, in enumeration order.
    std::map<int, int> var_of_root;
    std::map<int, int> rep_sign;
    bd.pair_lit.resize(bd.pa.size());
    for (size_t p = 0; p < bd.pa.size(); ++p) {
      auto [root, sign] = dsu.find(static_cast<int>(p));
      auto it = var_of_root.find(root);
      if (it == var_of_root.end()) {
        int v = static_cast<int>(bd.inst.var_a.size());
        var_of_root.emplace(root, v);
        rep_sign.emplace(root, sign);
        bd.inst.var_a.push_back(bd.pa[p]);
        bd.inst.var_b.push_back(bd.pb[p]);
        bd.pair_lit[p] = {v, 1};
      } else {
        bd.pair_lit[p] = {it->second, sign * rep_sign[root]};
      }
    }
    auto lit = [&](const Element& a, const Element& b, int s) {
      auto [v, sg] = bd.pair_lit[pid_lookup(a, b)];
      return Lit{v, sg * s};
    };
    std::set<std::string> seen;
    for (int cp : conflict_pids) {
      auto [v, sg] = bd.pair_lit[cp];
      Clause cl;
      cl.kind = Clause::Conflict;
      cl.lits = {Lit{v, sg}, Lit{v, -sg}};
      cl.origin = {bd.pa[cp], bd.pb[cp]};
      if (seen.insert("!" + lits_key(normalize_lits(cl.lits, false))).second)
        bd.inst.clauses.push_back(std::move(cl));
    }
    for (const auto& a : nonid) {
      Element ia = g->inverse(a);
      for (const auto& b : nonid) {
        if (element_eq(a, b)) continue;
        Element tb = g->multiply(ia, b);
        if (!in_ball.count(element_key(tb))) continue;
        for (const auto& c : nonid) {
          if (element_eq(a, c) || element_eq(b, c)) continue;
          Element tc = g->multiply(ia, c);
          if (!in_ball.count(element_key(tc))) continue;
          Clause cl;
          cl.kind = Clause::Cocycle;
          cl.lits = {lit(tb, tc, 1), lit(b, c, -1), lit(a, c, 1),
                     lit(a, b, -1)};
          cl.origin = {g->identity(), a, b, c};
          std::string key = lits_key(normalize_lits(cl.lits, true));
          if (seen.insert(key).second) bd.inst.clauses.push_back(std::move(cl));
        }
      }
    }
  } else {
    for (const auto& a : nonid) {
      pid_of.emplace(pid_key(a, a), static_cast<int>(bd.pa.size()));
      bd.pa.push_back(a);
      bd.pb.push_back(a);
    }
    SignedDsu dsu(bd.pa.size());
    std::vector<int> conflict_pids;
    for (size_t p = 0; p < bd.pa.size(); ++p) {
      Element ia = g->inverse(bd.pa[p]);
      if (!dsu.unite(static_cast<int>(p), pid_lookup(ia, ia), -1))
        conflict_pids.push_back(static_cast<int>(p));
    }
    std::map<int, int> var_of_root, rep_sign;
    bd.pair_lit.resize(bd.pa.size());
    for (size_t p = 0; p < bd.pa.size(); ++p) {
      auto [root, sign] = dsu.find(static_cast<int>(p));
      auto it = var_of_root.find(root);
      if (it == var_of_root.end()) {
        int v = static_cast<int>(bd.inst.var_a.size());
        var_of_root.emplace(root, v);
        rep_sign.emplace(root, sign);
        bd.inst.var_a.push_back(bd.pa[p]);
        bd.inst.var_b.push_back(bd.pb[p]);
        bd.pair_lit[p] = {v, 1};
      } else {
        bd.pair_lit[p] = {it->second, sign * rep_sign[root]};
      }
    }
    std::set<std::string> seen;
    for (int cp : conflict_pids) {
      auto [v, sg] = bd.pair_lit[cp];
      Clause cl;
      cl.kind = Clause::Conflict;
      cl.lits = {Lit{v, sg}, Lit{v, -sg}};
      cl.origin = {bd.pa[cp]};
      if (seen.insert("!" + lits_key(normalize_lits(cl.lits, false))).second)
        bd.inst.clauses.push_back(std::move(cl));
    }
    auto lit = [&](const Element& a) {
      auto [v, sg] = bd.pair_lit[pid_lookup(a, a)];
      return Lit{v, sg};
    };
    for (const auto& a : nonid)
      for (const auto& b : nonid) {
        Element ab = g->multiply(a, b);
        if (g->is_identity(ab)) continue;
        if (!in_ball.count(element_key(ab))) continue;
        Clause cl;
        cl.kind = Clause::Cone;
        cl.lits = {lit(a), lit(b), lit(ab)};
        cl.origin = {a, b, ab};
        std::string key = lits_key({cl.lits[0], cl.lits[1]}) + ">" +
                          lits_key({cl.lits[2]});
        // Product order of a, b is irrelevant to the constraint.
        std::string alt = lits_key({cl.lits[1], cl.lits[0]}) + ">" +
                          lits_key({cl.lits[2]});
        if (!seen.count(key) && !seen.count(alt)) {
          seen.insert(key);
          bd.inst.clauses.push_back(std::move(cl));
        }
      }
  }
  return bd;
}

// ---------------------------------------------------------------------------
// Solver

struct Solver {
  const std::vector<Clause>& clauses;
  const std::vector<size_t>& active;  // indices into clauses
  int nvars;
  std::vector<int> asg;
  std::vector<int> trail;
  std::set<size_t> touched;
  std::vector<bool> relevant;  // variable occurs in an active clause

  Solver(const std::vector<Clause>& cls, const std::vector<size_t>& act,
         int nv)
      : clauses(cls), active(act), nvars(nv), asg(nv, 0), relevant(nv, false) {
    for (size_t ci : active)
      for (const auto& l : clauses[ci].lits) relevant[l.var] = true;
  }

  void set_lit(const Lit& l, int value) {
    asg[l.var] = value * l.sign;
    trail.push_back(l.var);
  }

  // false on conflict.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ci : active) {
        const Clause& cl = clauses[ci];
        if (cl.kind == Clause::Conflict) {
          touched.insert(ci);
          return false;
        }
        if (cl.kind == Clause::Cocycle) {
          int pos = 0, unk = 0;
          for (const auto& l : cl.lits) {
            int v = asg[l.var] * l.sign;
            if (v == 0)
              ++unk;
            else if (v == 1)
              ++pos;
          }
          if (pos > 2 || pos + unk < 2) {
            touched.insert(ci);
            return false;
          }
          if (unk > 0 && (pos == 2 || pos + unk == 2)) {
            int forced = pos == 2 ? -1 : 1;
            for (const auto& l : cl.lits)
              if (asg[l.var] == 0) set_lit(l, forced);
            touched.insert(ci);
            changed = true;
          }
        } else {  // Cone
          int va = asg[cl.lits[0].var] * cl.lits[0].sign;
          int vb = asg[cl.lits[1].var] * cl.lits[1].sign;
          int vc = asg[cl.lits[2].var] * cl.lits[2].sign;
          if (va == 1 && vb == 1) {
            if (vc == -1) {
              touched.insert(ci);
              return false;
            }
            if (vc == 0) {
              set_lit(cl.lits[2], 1);
              touched.insert(ci);
              changed = true;
            }
          } else if (vc == -1) {
            if (va == 1 && vb == 0) {
              set_lit(cl.lits[1], -1);
              touched.insert(ci);
              changed = true;
            } else if (vb == 1 && va == 0) {
              set_lit(cl.lits[0], -1);
              touched.insert(ci);
              changed = true;
            }
          }
        }
      }
    }
    return true;
  }

  int pick() const {
    for (int v = 0; v < nvars; ++v)
      if (relevant[v] && asg[v] == 0) return v;
    return -1;
  }

  void undo_to(size_t mark) {
    while (trail.size() > mark) {
      asg[trail.back()] = 0;
      trail.pop_back();
    }
  }

  bool dfs() {
    size_t mark = trail.size();
    if (!propagate()) {
      undo_to(mark);
      return false;
    }
    int v = pick();
    if (v < 0) return true;
    for (int val : {1, -1}) {
      size_t inner = trail.size();
      asg[v] = val;
      trail.push_back(v);
      if (dfs()) return true;
      undo_to(inner);
    }
    undo_to(mark);
    return false;
  }

  // Enumerate every total assignment of the relevant variables satisfying
  // the active clauses, in deterministic order.
  void all_solutions(std::vector<std::vector<int>>* out) {
    size_t mark = trail.size();
    if (!propagate()) {
      undo_to(mark);
      return;
    }
    int v = pick();
    if (v < 0) {
      std::vector<int> sol = asg;
      for (int i = 0; i < nvars; ++i)
        if (sol[i] == 0) sol[i] = 1;  // variables outside active clauses
      out->push_back(std::move(sol));
      undo_to(mark);
      return;
    }
    for (int val : {1, -1}) {
      size_t inner = trail.size();
      asg[v] = val;
      trail.push_back(v);
      all_solutions(out);
      undo_to(inner);
    }
    undo_to(mark);
  }
};

std::vector<size_t> all_indices(size_t n) {
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

bool subset_sat(const ConstraintInstance& inst,
                const std::vector<size_t>& subset) {
  Solver s(inst.clauses, subset, static_cast<int>(inst.var_a.size()));
  return s.dfs();
}

}  // namespace

ConstraintInstance build_instance(GroupPtr g, int radius, SolveMode mode) {
  return build_data(std::move(g), radius, mode).inst;
}

SolveResult solve(const ConstraintInstance& inst) {
  std::vector<size_t> act = all_indices(inst.clauses.size());
  Solver s(inst.clauses, act, static_cast<int>(inst.var_a.size()));
  SolveResult res;
  res.sat = s.dfs();
  if (res.sat) {
    res.assignment = s.asg;
    for (auto& v : res.assignment)
      if (v == 0) v = 1;  // unconstrained variables
  } else {
    res.touched.assign(s.touched.begin(), s.touched.end());
  }
  return res;
}

Certificate minimize_certificate(const ConstraintInstance& inst,
                                 std::vector<size_t> core) {
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  for (size_t ci : core)
    if (ci >= inst.clauses.size())
      fail(ErrorKind::BadInput, "core references a missing clause");
  if (subset_sat(inst, core))
    fail(ErrorKind::BadInput, "proposed core is satisfiable");
  for (size_t i = 0; i < core.size();) {
    std::vector<size_t> cand = core;
    cand.erase(cand.begin() + static_cast<long>(i));
    if (!subset_sat(inst, cand))
      core = std::move(cand);
    else
      ++i;
  }
  Certificate cert;
  cert.mode = inst.mode;
  cert.group_sha = sha256_hex(inst.group->key());
  cert.radius = inst.radius;
  cert.minimized = true;
  std::map<int, int> var_map;
  for (size_t ci : core)
    for (const auto& l : inst.clauses[ci].lits)
      if (!var_map.count(l.var)) {
        int nv = static_cast<int>(cert.var_a.size());
        var_map.emplace(l.var, nv);
        cert.var_a.push_back(inst.var_a[l.var]);
        cert.var_b.push_back(inst.var_b[l.var]);
      }
  for (size_t ci : core) {
    Clause cl = inst.clauses[ci];
    for (auto& l : cl.lits) l.var = var_map[l.var];
    cert.clauses.push_back(std::move(cl));
  }
  return cert;
}

SearchOutcome search(GroupPtr g, int max_radius, SolveMode mode) {
  if (max_radius < 1) fail(ErrorKind::BadInput, "max radius must be at least 1");
  for (int r = 1; r <= max_radius; ++r) {
    ConstraintInstance inst = build_instance(g, r, mode);
    SolveResult res = solve(inst);
    if (!res.sat) {
      SearchOutcome out;
      out.no = true;
      out.radius = r;
      out.cert = minimize_certificate(inst, res.touched);
      return out;
    }
  }
  SearchOutcome out;
  out.radius = max_radius;
  return out;
}

std::vector<OrderPtr> enumerate_orders(GroupPtr g) {
  const auto* ft = g->get_if<FiniteTable>();
  if (!ft) fail(ErrorKind::BadInput, "enumeration requires a finite table");
  BuildData bd = build_data(g, 1, SolveMode::CO);
  std::vector<size_t> act = all_indices(bd.inst.clauses.size());
  Solver s(bd.inst.clauses, act, static_cast<int>(bd.inst.var_a.size()));
  // Decide every variable, not only the constrained ones, so each solution
  // is a complete order table.
  std::fill(s.relevant.begin(), s.relevant.end(), true);
  std::vector<std::vector<int>> sols;
  s.all_solutions(&sols);
  std::vector<OrderPtr> out;
  for (const auto& sol : sols) {
    CircularOrderSpec::ExplicitTableO table;
    for (size_t p = 0; p < bd.pa.size(); ++p) {
      auto [v, sg] = bd.pair_lit[p];
      table.pair_values[element_key(bd.pa[p]) + "|" + element_key(bd.pb[p])] =
          sg * sol[v];
    }
    out.push_back(CircularOrderSpec::explicit_table(g, std::move(table)));
  }
  return out;
}

bool verify_certificate(const Certificate& cert) {
  int nvars = static_cast<int>(cert.var_a.size());
  for (const auto& cl : cert.clauses)
    for (const auto& l : cl.lits)
      if (l.var < 0 || l.var >= nvars)
        fail(ErrorKind::BadInput, "certificate literal out of range");
  if (nvars > 20)
    fail(ErrorKind::Unsupported, "certificate too large for exhaustive replay");
  for (uint64_t bits = 0; bits < (uint64_t{1} << nvars); ++bits) {
    auto value = [&](const Lit& l) {
      int v = (bits >> l.var) & 1 ? -1 : 1;
      return v * l.sign;
    };
    bool ok = true;
    for (const auto& cl : cert.clauses) {
      if (cl.kind == Clause::Conflict) {
        ok = false;
        break;
      }
      if (cl.kind == Clause::Cocycle) {
        int pos = 0;
        for (const auto& l : cl.lits)
          if (value(l) == 1) ++pos;
        if (pos != 2) {
          ok = false;
          break;
        }
      } else {
        if (value(cl.lits[0]) == 1 && value(cl.lits[1]) == 1 &&
            value(cl.lits[2]) == -1) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return false;  // satisfying assignment found; not a proof
  }
  return true;
}

}  // namespace corder
