#include "corder/json_io.hpp"

#include "corder/abelian.hpp"
#include "corder/error.hpp"

namespace corder {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::InvalidDescriptor, "at " + path + ": " + what);
}

const Json& field(const Json& j, const std::string& path,
                  const std::string& name) {
  if (!j.is_object()) bad(path, "object expected");
  auto it = j.find(name);
  if (it == j.end()) bad(path, "missing field '" + name + "'");
  return *it;
}

long long as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "integer expected");
  return j.get<long long>();
}

std::string type_of(const Json& j, const std::string& path) {
  const Json& t = field(j, path, "type");
  if (!t.is_string()) bad(path + ".type", "string expected");
  return t.get<std::string>();
}

mpq_class rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) bad(path, "rational \"p/q\" expected");
  try {
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    bad(path, "unparsable rational '" + j.get<std::string>() + "'");
  }
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

Json intmat_to_json(const IntMat& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(r);
  return rows;
}

IntMat intmat_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "matrix (array of arrays) expected");
  IntMat m;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& row = j[i];
    std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array()) bad(rp, "array expected");
    IntVec r;
    for (size_t k = 0; k < row.size(); ++k)
      r.push_back(as_int(row[k], rp + "[" + std::to_string(k) + "]"));
    m.push_back(std::move(r));
  }
  return m;
}

GroupPtr group_from(const Json& j, const std::string& path);

Element element_from(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "element object expected");
  if (j.contains("idx"))
    return table_elem(static_cast<int>(as_int(j["idx"], path + ".idx")));
  if (j.contains("vec")) {
    const Json& v = j["vec"];
    if (!v.is_array()) bad(path + ".vec", "array expected");
    std::vector<long long> vec;
    for (size_t i = 0; i < v.size(); ++i)
      vec.push_back(as_int(v[i], path + ".vec[" + std::to_string(i) + "]"));
    long long t = j.contains("t") ? as_int(j["t"], path + ".t") : 0;
    return abelian_elem(std::move(vec), t);
  }
  if (j.contains("letters")) {
    const Json& ls = j["letters"];
    if (!ls.is_array()) bad(path + ".letters", "array expected");
    std::vector<std::pair<int, long long>> letters;
    for (size_t i = 0; i < ls.size(); ++i) {
      std::string lp = path + ".letters[" + std::to_string(i) + "]";
      if (!ls[i].is_array() || ls[i].size() != 2)
        bad(lp, "[generator, exponent] expected");
      letters.emplace_back(static_cast<int>(as_int(ls[i][0], lp + "[0]")),
                           as_int(ls[i][1], lp + "[1]"));
    }
    return free_word(std::move(letters));
  }
  if (j.contains("word")) {
    const Json& w = j["word"];
    if (!w.is_array()) bad(path + ".word", "array expected");
    std::vector<ProdLetter> letters;
    for (size_t i = 0; i < w.size(); ++i) {
      std::string lp = path + ".word[" + std::to_string(i) + "]";
      if (!w[i].is_array() || w[i].size() != 2 || !w[i][0].is_string())
        bad(lp, "[\"L\"|\"R\", element] expected");
      std::string side = w[i][0].get<std::string>();
      if (side != "L" && side != "R") bad(lp + "[0]", "\"L\" or \"R\" expected");
      letters.push_back(ProdLetter{side == "L" ? Side::Left : Side::Right,
                                   element_from(w[i][1], lp + "[1]")});
    }
    return prod_word(std::move(letters));
  }
  bad(path, "element must have one of: idx, vec, letters, word");
}

GroupPtr group_from(const Json& j, const std::string& path) {
  std::string t = type_of(j, path);
  if (t == "finite_table") {
    IntMat raw = intmat_from_json(field(j, path, "table"), path + ".table");
    std::vector<std::vector<int>> table;
    for (const auto& r : raw) {
      std::vector<int> row;
      for (long long x : r) row.push_back(static_cast<int>(x));
      table.push_back(std::move(row));
    }
    return finite_table(std::move(table));
  }
  if (t == "fg_abelian") {
    long long rank = as_int(field(j, path, "rank"), path + ".rank");
    long long torsion = as_int(field(j, path, "torsion"), path + ".torsion");
    return fg_abelian(static_cast<int>(rank), static_cast<long>(torsion));
  }
  if (t == "free") {
    long long rank = as_int(field(j, path, "rank"), path + ".rank");
    return free_group(static_cast<int>(rank));
  }
  if (t == "free_product")
    return free_product(group_from(field(j, path, "left"), path + ".left"),
                        group_from(field(j, path, "right"), path + ".right"));
  bad(path + ".type", "unknown group type '" + t + "'");
}

AlgebraicReal algebraic_from(const Json& j, const std::string& path) {
  const Json& terms = field(j, path, "terms");
  if (!terms.is_array()) bad(path + ".terms", "array expected");
  AlgebraicReal x;
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string tp = path + ".terms[" + std::to_string(i) + "]";
    if (!terms[i].is_array() || terms[i].size() != 2)
      bad(tp, "[d, \"p/q\"] expected");
    long long d = as_int(terms[i][0], tp + "[0]");
    if (d <= 0) bad(tp + "[0]", "positive radicand expected");
    x += AlgebraicReal::sqrt_term(static_cast<unsigned long>(d),
                                  rational_from_json(terms[i][1], tp + "[1]"));
  }
  return x;
}

LinearOrderSpec linear_from(const Json& j, const std::string& path) {
  std::string t = type_of(j, path);
  if (t == "translation") {
    const Json& xs = field(j, path, "x");
    if (!xs.is_array()) bad(path + ".x", "array expected");
    std::vector<AlgebraicReal> x;
    for (size_t i = 0; i < xs.size(); ++i)
      x.push_back(algebraic_from(xs[i], path + ".x[" + std::to_string(i) + "]"));
    return LinearOrderSpec::make_translation(std::move(x));
  }
  if (t == "lexicographic") {
    long long rank = as_int(field(j, path, "rank"), path + ".rank");
    const Json& ss = field(j, path, "signs");
    if (!ss.is_array()) bad(path + ".signs", "array expected");
    std::vector<int> signs;
    for (size_t i = 0; i < ss.size(); ++i)
      signs.push_back(static_cast<int>(
          as_int(ss[i], path + ".signs[" + std::to_string(i) + "]")));
    return LinearOrderSpec::make_lexicographic(static_cast<int>(rank),
                                               std::move(signs));
  }
  if (t == "induced_cone") {
    GroupPtr g = group_from(field(j, path, "group"), path + ".group");
    const Json& ps = field(j, path, "positives");
    if (!ps.is_array()) bad(path + ".positives", "array expected");
    std::vector<Element> pos;
    for (size_t i = 0; i < ps.size(); ++i)
      pos.push_back(
          element_from(ps[i], path + ".positives[" + std::to_string(i) + "]"));
    return LinearOrderSpec::make_induced_cone(std::move(g), std::move(pos));
  }
  bad(path + ".type", "unknown linear order type '" + t + "'");
}

RealizationMap realization_from(const Json& j, const std::string& path) {
  const Json& es = field(j, path, "entries");
  if (!es.is_array()) bad(path + ".entries", "array expected");
  RealizationMap m;
  for (size_t i = 0; i < es.size(); ++i) {
    std::string ep = path + ".entries[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 2)
      bad(ep, "[element, \"p/q\"] expected");
    m.entries.emplace_back(element_from(es[i][0], ep + "[0]"),
                           rational_from_json(es[i][1], ep + "[1]"));
  }
  return m;
}

AutDescriptor aut_from(const Json& j, const std::string& path) {
  GroupPtr g = group_from(field(j, path, "group"), path + ".group");
  std::string t = type_of(j, path);
  if (t == "abelian") {
    IntMat u = intmat_from_json(field(j, path, "u"), path + ".u");
    long long unit = j.contains("unit") ? as_int(j["unit"], path + ".unit") : 1;
    IntVec hom;
    if (j.contains("hom")) {
      const Json& h = j["hom"];
      if (!h.is_array()) bad(path + ".hom", "array expected");
      for (size_t i = 0; i < h.size(); ++i)
        hom.push_back(as_int(h[i], path + ".hom[" + std::to_string(i) + "]"));
    }
    return make_abelian_aut(std::move(g), std::move(u), unit, std::move(hom));
  }
  if (t == "table") {
    const Json& ps = field(j, path, "perm");
    if (!ps.is_array()) bad(path + ".perm", "array expected");
    std::vector<int> perm;
    for (size_t i = 0; i < ps.size(); ++i)
      perm.push_back(static_cast<int>(
          as_int(ps[i], path + ".perm[" + std::to_string(i) + "]")));
    return make_table_aut(std::move(g), std::move(perm));
  }
  bad(path + ".type", "unknown automorphism type '" + t + "'");
}

OrderPtr order_from(const Json& j, const std::string& path) {
  std::string t = type_of(j, path);
  if (t == "finite_rotation") {
    long long m = as_int(field(j, path, "m"), path + ".m");
    long long k = as_int(field(j, path, "k"), path + ".k");
    if (j.contains("group"))
      return CircularOrderSpec::finite_rotation_on(
          group_from(j["group"], path + ".group"), static_cast<long>(m),
          static_cast<long>(k));
    return CircularOrderSpec::finite_rotation(static_cast<long>(m),
                                              static_cast<long>(k));
  }
  if (t == "rotation") {
    GroupPtr g = group_from(field(j, path, "group"), path + ".group");
    const Json& p = field(j, path, "params");
    std::string pp = path + ".params";
    long long rank = as_int(field(p, pp, "rank"), pp + ".rank");
    long long m = as_int(field(p, pp, "m"), pp + ".m");
    long long k = as_int(field(p, pp, "k"), pp + ".k");
    const Json& ths = field(p, pp, "theta");
    if (!ths.is_array()) bad(pp + ".theta", "array expected");
    std::vector<AlgebraicReal> theta;
    for (size_t i = 0; i < ths.size(); ++i)
      theta.push_back(
          algebraic_from(ths[i], pp + ".theta[" + std::to_string(i) + "]"));
    return CircularOrderSpec::rotation(
        std::move(g),
        make_rotation_params(static_cast<int>(rank), static_cast<long>(m),
                             std::move(theta), static_cast<long>(k)));
  }
  if (t == "linear_wrap") {
    GroupPtr g = group_from(field(j, path, "group"), path + ".group");
    return CircularOrderSpec::linear_wrap(
        std::move(g), linear_from(field(j, path, "lin"), path + ".lin"));
  }
  if (t == "intertwined") {
    GroupPtr ambient = group_from(field(j, path, "ambient"), path + ".ambient");
    IntMat k_basis =
        intmat_from_json(field(j, path, "k_basis"), path + ".k_basis");
    LinearOrderSpec lin = linear_from(field(j, path, "lin"), path + ".lin");
    OrderPtr q =
        order_from(field(j, path, "quotient_order"), path + ".quotient_order");
    return intertwined_order(std::move(ambient), std::move(k_basis),
                             std::move(lin), std::move(q));
  }
  if (t == "lex_free_product") {
    GroupPtr g = group_from(field(j, path, "group"), path + ".group");
    OrderPtr cg = order_from(field(j, path, "left_order"), path + ".left_order");
    OrderPtr ch =
        order_from(field(j, path, "right_order"), path + ".right_order");
    return CircularOrderSpec::lex_free_product(std::move(g), std::move(cg),
                                               std::move(ch));
  }
  if (t == "explicit_table") {
    GroupPtr g = group_from(field(j, path, "group"), path + ".group");
    CircularOrderSpec::ExplicitTableO table;
    const Json& pv = field(j, path, "pairs");
    if (!pv.is_object()) bad(path + ".pairs", "object expected");
    for (auto it = pv.begin(); it != pv.end(); ++it)
      table.pair_values[it.key()] = static_cast<int>(
          as_int(it.value(), path + ".pairs[\"" + it.key() + "\"]"));
    if (j.contains("triples")) {
      const Json& tv = j["triples"];
      if (!tv.is_object()) bad(path + ".triples", "object expected");
      for (auto it = tv.begin(); it != tv.end(); ++it)
        table.triple_values[it.key()] = static_cast<int>(
            as_int(it.value(), path + ".triples[\"" + it.key() + "\"]"));
    }
    return CircularOrderSpec::explicit_table(std::move(g), std::move(table));
  }
  if (t == "point_recovered") {
    GroupPtr g = group_from(field(j, path, "group"), path + ".group");
    return CircularOrderSpec::point_recovered(std::move(g),
                                              realization_from(j, path));
  }
  if (t == "aut_image") {
    AutDescriptor rho_inv = aut_from(field(j, path, "rho_inv"), path + ".rho_inv");
    OrderPtr inner = order_from(field(j, path, "inner"), path + ".inner");
    return CircularOrderSpec::aut_image(std::move(rho_inv), std::move(inner));
  }
  bad(path + ".type", "unknown order type '" + t + "'");
}

Json clause_to_json(const Clause& cl) {
  Json lits = Json::array();
  for (const auto& l : cl.lits) lits.push_back(Json::array({l.var, l.sign}));
  Json origin = Json::array();
  for (const auto& e : cl.origin) origin.push_back(element_to_json(e));
  const char* kind = cl.kind == Clause::Cocycle ? "cocycle"
                     : cl.kind == Clause::Cone  ? "cone"
                                                : "conflict";
  return Json{{"kind", kind}, {"lits", lits}, {"origin", origin}};
}

Clause clause_from_json(const Json& j, const std::string& path) {
  Clause cl;
  std::string kind = field(j, path, "kind").is_string()
                         ? j["kind"].get<std::string>()
                         : "";
  if (kind == "cocycle")
    cl.kind = Clause::Cocycle;
  else if (kind == "cone")
    cl.kind = Clause::Cone;
  else if (kind == "conflict")
    cl.kind = Clause::Conflict;
  else
    bad(path + ".kind", "cocycle, cone or conflict expected");
  const Json& lits = field(j, path, "lits");
  if (!lits.is_array()) bad(path + ".lits", "array expected");
  for (size_t i = 0; i < lits.size(); ++i) {
    std::string lp = path + ".lits[" + std::to_string(i) + "]";
    if (!lits[i].is_array() || lits[i].size() != 2)
      bad(lp, "[var, sign] expected");
    Lit l;
    l.var = static_cast<int>(as_int(lits[i][0], lp + "[0]"));
    l.sign = static_cast<int>(as_int(lits[i][1], lp + "[1]"));
    if (l.sign != 1 && l.sign != -1) bad(lp + "[1]", "sign must be +-1");
    cl.lits.push_back(l);
  }
  if (j.contains("origin")) {
    const Json& orig = j["origin"];
    if (!orig.is_array()) bad(path + ".origin", "array expected");
    for (size_t i = 0; i < orig.size(); ++i)
      cl.origin.push_back(
          element_from(orig[i], path + ".origin[" + std::to_string(i) + "]"));
  }
  return cl;
}

}  // namespace

GroupPtr group_from_json(const Json& j) { return group_from(j, "$"); }
Element element_from_json(const Json& j) { return element_from(j, "$"); }
AlgebraicReal algebraic_from_json(const Json& j) {
  return algebraic_from(j, "$");
}
LinearOrderSpec linear_from_json(const Json& j) { return linear_from(j, "$"); }
OrderPtr order_from_json(const Json& j) { return order_from(j, "$"); }
AutDescriptor aut_from_json(const Json& j) { return aut_from(j, "$"); }
RealizationMap realization_from_json(const Json& j) {
  return realization_from(j, "$");
}

Json group_to_json(const Group& g) {
  if (const auto* ft = g.get_if<FiniteTable>()) {
    Json rows = Json::array();
    for (const auto& r : ft->table) rows.push_back(r);
    return Json{{"type", "finite_table"}, {"table", rows}};
  }
  if (const auto* ab = g.get_if<FgAbelian>())
    return Json{
        {"type", "fg_abelian"}, {"rank", ab->rank}, {"torsion", ab->torsion}};
  if (const auto* fr = g.get_if<FreeGroup>())
    return Json{{"type", "free"}, {"rank", fr->rank}};
  const auto& fp = *g.get_if<FreeProduct>();
  return Json{{"type", "free_product"},
              {"left", group_to_json(*fp.left)},
              {"right", group_to_json(*fp.right)}};
}

Json element_to_json(const Element& e) {
  if (const auto* ti = e.get_if<TableIndex>()) return Json{{"idx", ti->idx}};
  if (const auto* av = e.get_if<AbelianVec>())
    return Json{{"vec", av->v}, {"t", av->t}};
  if (const auto* fw = e.get_if<FreeWord>()) {
    Json letters = Json::array();
    for (const auto& [g, x] : fw->letters)
      letters.push_back(Json::array({g, x}));
    return Json{{"letters", letters}};
  }
  const auto& pw = *e.get_if<ProdWord>();
  Json word = Json::array();
  for (const auto& l : pw.letters)
    word.push_back(Json::array(
        {l.side == Side::Left ? "L" : "R", element_to_json(l.elem)}));
  return Json{{"word", word}};
}

Json algebraic_to_json(const AlgebraicReal& x) {
  Json terms = Json::array();
  for (const auto& [d, q] : x.terms())
    terms.push_back(Json::array({d, rational_to_string(q)}));
  return Json{{"terms", terms}};
}

Json linear_to_json(const LinearOrderSpec& l) {
  if (const auto* tr = l.get_if<Translation>()) {
    Json xs = Json::array();
    for (const auto& x : tr->x) xs.push_back(algebraic_to_json(x));
    return Json{{"type", "translation"}, {"x", xs}};
  }
  if (const auto* lex = l.get_if<Lexicographic>())
    return Json{
        {"type", "lexicographic"}, {"rank", lex->rank}, {"signs", lex->signs}};
  const auto& ic = *l.get_if<InducedCone>();
  Json pos = Json::array();
  for (const auto& e : ic.positives) pos.push_back(element_to_json(e));
  return Json{{"type", "induced_cone"},
              {"group", group_to_json(*ic.group)},
              {"positives", pos}};
}

Json realization_to_json(const RealizationMap& m) {
  Json entries = Json::array();
  for (const auto& [e, p] : m.entries)
    entries.push_back(Json::array({element_to_json(e), rational_to_string(p)}));
  return Json{{"entries", entries}};
}

Json rotation_params_to_json(const RotationParams& p) {
  Json theta = Json::array();
  for (const auto& th : p.theta) theta.push_back(algebraic_to_json(th));
  return Json{{"rank", p.rank}, {"m", p.m}, {"theta", theta}, {"k", p.k}};
}

Json aut_to_json(const AutDescriptor& a) {
  Json j{{"group", group_to_json(*a.group)}};
  if (const auto* ab = std::get_if<AbelianAut>(&a.data)) {
    j["type"] = "abelian";
    j["u"] = intmat_to_json(ab->u);
    j["unit"] = ab->unit;
    j["hom"] = ab->hom;
  } else {
    j["type"] = "table";
    j["perm"] = std::get<TableAut>(a.data).perm;
  }
  return j;
}

Json order_to_json(const CircularOrderSpec& c) {
  if (const auto* fr = c.get_if<CircularOrderSpec::FiniteRotationO>())
    return Json{{"type", "finite_rotation"},
                {"group", group_to_json(*c.group())},
                {"m", fr->m},
                {"k", fr->k}};
  if (const auto* ro = c.get_if<CircularOrderSpec::RotationO>())
    return Json{{"type", "rotation"},
                {"group", group_to_json(*c.group())},
                {"params", rotation_params_to_json(ro->params)}};
  if (const auto* lw = c.get_if<CircularOrderSpec::LinearWrapO>())
    return Json{{"type", "linear_wrap"},
                {"group", group_to_json(*c.group())},
                {"lin", linear_to_json(lw->lin)}};
  if (const auto* iw = c.get_if<CircularOrderSpec::IntertwinedO>()) {
    const BlowdownData& d = *iw->data;
    return Json{{"type", "intertwined"},
                {"ambient", group_to_json(*d.ambient)},
                {"k_basis", intmat_to_json(d.k_basis)},
                {"lin", linear_to_json(d.lin)},
                {"quotient_order", order_to_json(*d.quotient_order)},
                {"smith_u", intmat_to_json(d.u)},
                {"smith_s", d.s},
                {"smith_v", intmat_to_json(d.v)}};
  }
  if (const auto* lx = c.get_if<CircularOrderSpec::LexFreeProductO>())
    return Json{{"type", "lex_free_product"},
                {"group", group_to_json(*c.group())},
                {"left_order", order_to_json(*lx->cg)},
                {"right_order", order_to_json(*lx->ch)}};
  if (const auto* et = c.get_if<CircularOrderSpec::ExplicitTableO>()) {
    Json j{{"type", "explicit_table"}, {"group", group_to_json(*c.group())}};
    j["pairs"] = Json::object();
    for (const auto& [k, v] : et->pair_values) j["pairs"][k] = v;
    if (!et->triple_values.empty()) {
      j["triples"] = Json::object();
      for (const auto& [k, v] : et->triple_values) j["triples"][k] = v;
    }
    return j;
  }
  if (const auto* pr = c.get_if<CircularOrderSpec::PointRecoveredO>()) {
    Json j = realization_to_json(pr->map);
    j["type"] = "point_recovered";
    j["group"] = group_to_json(*c.group());
    return j;
  }
  if (const auto* ai = c.get_if<CircularOrderSpec::AutImageO>())
    return Json{{"type", "aut_image"},
                {"rho_inv", aut_to_json(*ai->rho_inv)},
                {"inner", order_to_json(*ai->inner)}};
  fail(ErrorKind::Unsupported,
       "order holds runtime callbacks and cannot be serialized");
}

Json report_to_json(const ValidationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    const char* kind = v.kind == AxiomKind::DV   ? "DV"
                       : v.kind == AxiomKind::C  ? "C"
                       : v.kind == AxiomKind::H  ? "H"
                       : v.kind == AxiomKind::IC ? "IC"
                                                 : "AT";
    Json witness = Json::array();
    for (const auto& e : v.witness) witness.push_back(element_to_json(e));
    violations.push_back(Json{{"kind", kind}, {"witness", witness}});
  }
  return Json{{"checked_triples", r.checked_triples},
              {"checked_quadruples", r.checked_quadruples},
              {"skipped_homogeneity", r.skipped_homogeneity},
              {"ok", r.ok()},
              {"violations", violations}};
}

Json certificate_to_json(const Certificate& c) {
  Json triples = Json::array();
  for (size_t i = 0; i < c.var_a.size(); ++i)
    triples.push_back(
        Json::array({element_to_json(c.var_a[i]), element_to_json(c.var_b[i])}));
  Json clauses = Json::array();
  for (const auto& cl : c.clauses) clauses.push_back(clause_to_json(cl));
  return Json{{"mode", c.mode == SolveMode::CO ? "co" : "lo"},
              {"group_sha", c.group_sha},
              {"radius", c.radius},
              {"triples", triples},
              {"clauses", clauses},
              {"minimized", c.minimized}};
}

Certificate certificate_from_json(const Json& j) {
  const std::string path = "$";
  Certificate c;
  const Json& mode = field(j, path, "mode");
  if (!mode.is_string() ||
      (mode.get<std::string>() != "co" && mode.get<std::string>() != "lo"))
    bad(path + ".mode", "\"co\" or \"lo\" expected");
  c.mode = mode.get<std::string>() == "co" ? SolveMode::CO : SolveMode::LO;
  const Json& sha = field(j, path, "group_sha");
  if (!sha.is_string()) bad(path + ".group_sha", "string expected");
  c.group_sha = sha.get<std::string>();
  c.radius = static_cast<int>(as_int(field(j, path, "radius"), path + ".radius"));
  const Json& triples = field(j, path, "triples");
  if (!triples.is_array()) bad(path + ".triples", "array expected");
  for (size_t i = 0; i < triples.size(); ++i) {
    std::string tp = path + ".triples[" + std::to_string(i) + "]";
    if (!triples[i].is_array() || triples[i].size() != 2)
      bad(tp, "[element, element] expected");
    c.var_a.push_back(element_from(triples[i][0], tp + "[0]"));
    c.var_b.push_back(element_from(triples[i][1], tp + "[1]"));
  }
  const Json& clauses = field(j, path, "clauses");
  if (!clauses.is_array()) bad(path + ".clauses", "array expected");
  for (size_t i = 0; i < clauses.size(); ++i)
    c.clauses.push_back(clause_from_json(
        clauses[i], path + ".clauses[" + std::to_string(i) + "]"));
  if (j.contains("minimized")) {
    if (!j["minimized"].is_boolean()) bad(path + ".minimized", "bool expected");
    c.minimized = j["minimized"].get<bool>();
  }
  return c;
}

Json trace_to_json(const TripleReductionTrace& t) {
  auto letter_json = [](const ProdLetter& l) {
    return Json::array(
        {l.side == Side::Left ? "L" : "R", element_to_json(l.elem)});
  };
  auto triple_json = [](const std::array<Element, 3>& tr) {
    return Json::array({element_to_json(tr[0]), element_to_json(tr[1]),
                        element_to_json(tr[2])});
  };
  Json steps = Json::array();
  for (const auto& s : t.steps)
    steps.push_back(Json{{"rule", s.rule},
                         {"letter", letter_json(s.letter)},
                         {"before", triple_json(s.before)},
                         {"after", triple_json(s.after)}});
  return Json{{"steps", steps}, {"minimal", triple_json(t.minimal)}};
}

}  // namespace corder
