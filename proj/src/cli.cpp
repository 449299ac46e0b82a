// Copyright 2026 The ellfq Authors
// SPDX-License-Identifier: Apache-2.0

#include "ellfq/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "ellfq/family.hpp"

namespace ellfq {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Reading

struct Reader {
  std::vector<Diagnostic>& diags;

  void fail(const std::string& path, const std::string& msg) { diags.push_back({path.empty() ? "/" : path, msg}); }

  std::optional<i64> integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return j.get<i64>();
  }

  std::optional<u32> field(const Json& j, const std::string& path) {
    auto v = integer(j, path);
    if (!v) return std::nullopt;
    if (*v < 5 || *v > 0x7fffffff || !is_prime(u64(*v))) {
      fail(path, "q must be prime >= 5");
      return std::nullopt;
    }
    return u32(*v);
  }

  std::optional<std::vector<i64>> int_array(const Json& j, const std::string& path) {
    if (!j.is_array()) {
      fail(path, "expected an array of integers");
      return std::nullopt;
    }
    std::vector<i64> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = integer(j[i], path + "/" + std::to_string(i));
      if (v)
        out.push_back(*v);
      else
        ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<Poly> poly(const Json& j, u32 q, const std::string& path) {
    auto c = int_array(j, path);
    if (!c) return std::nullopt;
    return Poly::from_ints(q, *c);
  }

  // Either an ascending coefficient array or {"num": [...], "den": [...]}.
  std::optional<RationalFunction> rational(const Json& j, u32 q, const std::string& path) {
    if (j.is_array()) {
      auto p = poly(j, q, path);
      if (!p) return std::nullopt;
      return RationalFunction(*p);
    }
    if (!j.is_object()) {
      fail(path, "expected a coefficient array or an object with num and den");
      return std::nullopt;
    }
    if (j.contains("q")) {
      auto fq = field(j["q"], path + "/q");
      if (fq && *fq != q) fail(path + "/q", "field differs from q = " + std::to_string(q));
    }
    if (!j.contains("num")) {
      fail(path + "/num", "missing numerator");
      return std::nullopt;
    }
    auto num = poly(j["num"], q, path + "/num");
    std::optional<Poly> den = Poly::constant(q, 1);
    if (j.contains("den")) den = poly(j["den"], q, path + "/den");
    if (!num || !den) return std::nullopt;
    if (den->is_zero()) {
      fail(path + "/den", "zero denominator");
      return std::nullopt;
    }
    return RationalFunction(*num, *den);
  }

  std::optional<Point> point(const Json& j, u32 q, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "infinity") return Point::at_infinity();
    if (!j.is_object() || !j.contains("x") || !j.contains("y")) {
      fail(path, "expected \"infinity\" or an object with x and y");
      return std::nullopt;
    }
    auto x = rational(j["x"], q, path + "/x");
    auto y = rational(j["y"], q, path + "/y");
    if (!x || !y) return std::nullopt;
    return Point::affine(*x, *y);
  }

  std::optional<TorsionWitness> witness(const Json& j, u32 q, const std::string& path) {
    if (!j.is_object()) {
      fail(path, "expected an object with order and generators");
      return std::nullopt;
    }
    if (!j.contains("order")) fail(path + "/order", "missing order");
    if (!j.contains("generators") || !j["generators"].is_array()) {
      fail(path + "/generators", "expected an array of points");
      return std::nullopt;
    }
    if (!j.contains("order")) return std::nullopt;
    auto n = integer(j["order"], path + "/order");
    TorsionWitness W;
    bool ok = n.has_value();
    if (n) {
      if (*n < 1 || *n > 1000) {
        fail(path + "/order", "order must be between 1 and 1000");
        ok = false;
      }
      W.order = int(*n);
    }
    const Json& g = j["generators"];
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto p = point(g[i], q, path + "/generators/" + std::to_string(i));
      if (p)
        W.generators.push_back(*p);
      else
        ok = false;
    }
    if (!ok) return std::nullopt;
    return W;
  }
};

std::optional<Json> parse_json(const std::string& text, std::vector<Diagnostic>& diags) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    diags.push_back({"/", std::string("malformed JSON: ") + e.what()});
    return std::nullopt;
  }
}

// Witness closure checks, with the failure reported at the witness path.
void check_witness(const CurveOverFqT& E, const TorsionWitness& W, const std::string& path,
                   std::vector<Diagnostic>& diags) {
  for (std::size_t i = 0; i < W.generators.size(); ++i)
    if (!on_curve(E, W.generators[i])) {
      diags.push_back({path + "/generators/" + std::to_string(i), "point is not on the curve"});
      return;
    }
  try {
    verify_torsion_witness(E, W);
  } catch (const std::exception& e) {
    diags.push_back({path, e.what()});
  }
}

// ---------------------------------------------------------------------------
// Writing

Json poly_json(const Poly& p) {
  Json a = Json::array();
  for (u32 c : p.coeffs()) a.push_back(c);
  return a;
}

Json rational_json(const RationalFunction& r) {
  return Json{{"num", poly_json(r.num())}, {"den", poly_json(r.den())}, {"text", r.to_string()}};
}

Json place_json(const Place& w) { return Json{{"place", w.to_string()}, {"degree", w.degree()}}; }

Json lpoly_json(const LPolynomial& L) {
  Json j{{"q", L.q}, {"degree", L.degree()}, {"coeffs", L.coeffs}};
  if (L.epsilon != 0) j["epsilon"] = L.epsilon;
  j["modulus"] = L.modulus;
  return j;
}

Json mod_json(const ModResult& m, u32 q) {
  Json j = lpoly_json(m.as_lpolynomial(q));
  j["text"] = to_string(m.as_lpolynomial(q));
  return j;
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("text")) return v["text"].get<std::string>();
  if (v.is_object() && v.contains("place")) {
    std::string s = v["place"].get<std::string>();
    for (const auto& [k, x] : v.items())
      if (k != "place" && k != "degree") s += ":" + cell(x);
    return s;
  }
  if (v.is_array()) {
    constexpr std::size_t kShown = 12;
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v.size() > kShown && i == kShown - 2) {
        s += " ...";
        i = v.size() - 2;
      }
      s += (s.empty() ? "" : " ") + cell(v[i]);
    }
    return "[" + s + "]";
  }
  return v.dump();
}

void render_rows(const Json& rows, std::ostream& out, bool markdown) {
  if (rows.empty()) return;
  std::vector<std::string> keys;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) width[c] = keys[c].size();
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < keys.size(); ++c) {
      line.push_back(r.contains(keys[c]) ? cell(r[keys[c]]) : "");
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(line);
  }
  auto emit = [&](const std::vector<std::string>& line) {
    if (markdown) out << "| ";
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << std::left << std::setw(int(width[c])) << line[c];
      if (c + 1 < line.size()) out << (markdown ? " | " : "  ");
    }
    out << (markdown ? " |" : "") << "\n";
  };
  emit(keys);
  std::vector<std::string> rule;
  for (std::size_t c = 0; c < keys.size(); ++c) rule.push_back(std::string(width[c], '-'));
  emit(rule);
  for (const auto& line : cells) emit(line);
}

// Flat fields as aligned key/value lines, arrays of objects as tables.
void render_table(const Json& j, std::ostream& out, bool markdown) {
  std::size_t w = 0;
  for (const auto& [k, v] : j.items())
    if (!(v.is_array() && !v.empty() && v.front().is_object())) w = std::max(w, k.size());
  for (const auto& [k, v] : j.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) continue;
    out << std::left << std::setw(int(w)) << k << "  " << cell(v) << "\n";
  }
  for (const auto& [k, v] : j.items()) {
    if (!(v.is_array() && !v.empty() && v.front().is_object())) continue;
    out << "\n" << (markdown ? "### " : "") << k << "\n";
    if (markdown) out << "\n";
    render_rows(v, out, markdown);
  }
}

// ---------------------------------------------------------------------------
// Commands

class InputError : public PreconditionError {
 public:
  InputError(const std::string& file, std::vector<Diagnostic> d)
      : PreconditionError("invalid input " + file), file_(file), diags_(std::move(d)) {}
  const std::string& file() const { return file_; }
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::string file_;
  std::vector<Diagnostic> diags_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T take(Validated<T> v, const std::string& file) {
  if (!v.ok()) throw InputError(file, v.diagnostics);
  return std::move(*v.value);
}

struct Options {
  bool table = false;
  bool markdown = false;
  u64 seed = kDefaultSeed;
};

Json classify_json(const CurveOverFqT& E) {
  Json places = Json::array();
  std::vector<Place> sp = special_places(E);
  for (const auto& w : sp) {
    ReductionType rt = reduction_type_at(E, w);
    Json p = place_json(w);
    p["reduction"] = to_string(rt.kind);
    p["kodaira"] = rt.kodaira.to_string();
    if (rt.is_additive()) p["potential"] = to_string(rt.potential);
    p["trace"] = rt.is_good() ? trace_at(E, w) : trace_of_type(rt, TraceConvention::Standard);
    p["local_root_number"] = local_root_number(E, w);
    places.push_back(p);
  }
  Json j{{"q", E.q()},
         {"discriminant", rational_json(E.invariants().delta)},
         {"j", rational_json(E.invariants().j)},
         {"conductor_degree", conductor_degree(E)},
         {"l_degree", l_degree(E)},
         {"root_number", global_root_number(E)},
         {"places", places}};
  return j;
}

LResult exact_by(const CurveOverFqT& E, const std::string& method, const EulerOptions& eo) {
  if (method == "naive") return naive_L(E, -1, eo);
  return baig_hall_L(E, -1, eo);
}

Json lresult_json(const LResult& r, const std::string& method) {
  Json j = lpoly_json(r.L);
  j["text"] = to_string(r.L);
  j["method"] = method;
  j["place_degree"] = r.place_degree;
  j["completed"] = r.completed;
  j["epsilon_source"] = r.epsilon_source;
  j["residue_fields"] = r.residue_fields;
  j["rank"] = analytic_rank(r.L);
  return j;
}

TorsionWitness pick_witness(const CurveInput& in, const std::string& witness_file) {
  if (!witness_file.empty()) return take(validate_witness(read_file(witness_file), in.curve), witness_file);
  if (in.witness) return *in.witness;
  throw PreconditionError("--mod needs a torsion witness (--witness or a \"witness\" field in the curve)");
}

Json family_row_json(const FamilyRow& r) {
  Json j{{"f", poly_json(r.f)},
         {"text", r.f.to_string()},
         {"f0_square", r.f0_square},
         {"f1_square", r.f1_square},
         {"degree", r.degree},
         {"epsilon", r.epsilon},
         {"jac3_trivial", r.jac3_trivial},
         {"mod3", r.mod3},
         {"mod2", r.mod2}};
  Json split = Json::array();
  for (const auto& [w, s] : r.bad_place_splitting) split.push_back(Json{{"place", w.to_string()}, {"splitting", to_string(s)}});
  j["bad_place_splitting"] = split;
  j["a_infinity"] = r.a_infinity;
  Json tr = Json::array();
  for (const auto& [w, a] : r.traces_at_f) tr.push_back(Json{{"place", w.to_string()}, {"trace", a}});
  j["traces_at_f"] = tr;
  j["v3"] = r.v3;
  j["v2"] = r.v2;
  if (r.factor_count_bound >= 0) j["factor_count_bound"] = r.factor_count_bound;
  j["rank_bound"] = r.rank_bound;
  if (r.rank) j["rank"] = *r.rank;
  if (r.exact) {
    j["exact"] = lpoly_json(*r.exact);
    j["exact"]["text"] = to_string(*r.exact);
  }
  return j;
}

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ", ") + std::to_string(x);
  return s;
}

std::string residues_text(const std::vector<i64>& c) {
  std::string s;
  for (i64 x : c) s += (s.empty() ? "" : " ") + std::to_string(x);
  return "[" + s + "]";
}

void family_markdown(const FamilyScan& scan, std::ostream& out) {
  out << "## Twists of y^2 + 3xy + (1 - t^3)y = x^3 over F_" << scan.q << ", deg f <= " << scan.max_degree << "\n\n";
  out << "| f(0) in k^2? | f(1) in k^2? | count | epsilon | rank (trivial 3-part) | largest bound |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& s : scan.summary)
    out << "| " << yes_no(s.f0_square) << " | " << yes_no(s.f1_square) << " | " << s.count << " | "
        << join_ints(s.epsilons) << " | " << join_ints(s.ranks) << " | " << s.max_rank_bound << " |\n";
  out << "\n| f | f(0) in k^2? | f(1) in k^2? | deg L | epsilon | L mod 3 | L mod 2 | rank bound | rank |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : scan.rows)
    out << "| " << r.f.to_string() << " | " << yes_no(r.f0_square) << " | " << yes_no(r.f1_square) << " | "
        << r.degree << " | " << r.epsilon << " | " << residues_text(r.mod3) << " | " << residues_text(r.mod2)
        << " | " << r.rank_bound << " | " << (r.rank ? std::to_string(*r.rank) : "") << " |\n";
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  if (o.table)
    render_table(j, out, o.markdown);
  else
    out << j.dump(2) << "\n";
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

Validated<CurveInput> validate_curve(const std::string& text) {
  Validated<CurveInput> res;
  auto doc = parse_json(text, res.diagnostics);
  if (!doc) return res;
  Reader rd{res.diagnostics};
  const Json& j = *doc;
  if (!j.is_object()) {
    rd.fail("/", "expected a curve object");
    return res;
  }
  if (!j.contains("q")) {
    rd.fail("/q", "missing q");
    return res;
  }
  auto q = rd.field(j["q"], "/q");
  if (!q) return res;
  const bool short_form = j.contains("A") || j.contains("B");
  std::vector<RationalFunction> a;
  const std::vector<std::string> names = short_form ? std::vector<std::string>{"A", "B"}
                                                    : std::vector<std::string>{"a1", "a2", "a3", "a4", "a6"};
  for (const auto& n : names) {
    if (!j.contains(n)) {
      a.emplace_back(*q);
      continue;
    }
    auto r = rd.rational(j[n], *q, "/" + n);
    a.push_back(r ? *r : RationalFunction(*q));
  }
  for (const auto& [k, v] : j.items())
    if (k != "q" && k != "witness" && k != "name" && std::find(names.begin(), names.end(), k) == names.end())
      rd.fail("/" + k, short_form ? "unknown field (short form takes A and B)" : "unknown field");
  if (!res.diagnostics.empty()) return res;
  try {
    CurveOverFqT E = short_form ? CurveOverFqT::short_form(a[0], a[1]) : CurveOverFqT(a[0], a[1], a[2], a[3], a[4]);
    std::optional<TorsionWitness> W;
    if (j.contains("witness")) {
      W = rd.witness(j["witness"], *q, "/witness");
      if (W) check_witness(E, *W, "/witness", res.diagnostics);
    }
    if (res.diagnostics.empty()) res.value = CurveInput{E, W};
  } catch (const std::exception& e) {
    rd.fail("/", e.what());
  }
  return res;
}

Validated<RationalFunction> validate_rational_function(const std::string& text, u32 q) {
  Validated<RationalFunction> res;
  auto doc = parse_json(text, res.diagnostics);
  if (!doc) return res;
  Reader rd{res.diagnostics};
  u32 field = q;
  if (doc->is_object() && doc->contains("q")) {
    auto fq = rd.field((*doc)["q"], "/q");
    if (!fq) return res;
    if (q != 0 && *fq != q) {
      rd.fail("/q", "field differs from the curve's q = " + std::to_string(q));
      return res;
    }
    field = *fq;
  }
  if (field == 0) {
    rd.fail("/q", "missing q");
    return res;
  }
  auto r = rd.rational(*doc, field, "");
  if (r && r->is_zero()) rd.fail("/num", "twisting function must be nonzero");
  if (r && res.diagnostics.empty()) res.value = *r;
  return res;
}

Validated<TorsionWitness> validate_witness(const std::string& text, const CurveOverFqT& E) {
  Validated<TorsionWitness> res;
  auto doc = parse_json(text, res.diagnostics);
  if (!doc) return res;
  Reader rd{res.diagnostics};
  auto W = rd.witness(*doc, E.q(), "");
  if (!W) return res;
  check_witness(E, *W, "", res.diagnostics);
  if (res.diagnostics.empty()) res.value = *W;
  return res;
}

Validated<std::vector<ResidueBundle>> validate_residues(const std::string& text) {
  Validated<std::vector<ResidueBundle>> res;
  auto doc = parse_json(text, res.diagnostics);
  if (!doc) return res;
  Reader rd{res.diagnostics};
  Json items = Json::array();
  std::string base;
  if (doc->is_array()) {
    items = *doc;
  } else if (doc->is_object() && doc->contains("residues")) {
    items = (*doc)["residues"];
    base = "/residues";
    if (!items.is_array()) {
      rd.fail(base, "expected an array of residue polynomials");
      return res;
    }
  } else if (doc->is_object()) {
    items.push_back(*doc);
  } else {
    rd.fail("/", "expected a residue polynomial or an array of them");
    return res;
  }
  std::vector<ResidueBundle> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string path = doc->is_object() && base.empty() ? "" : base + "/" + std::to_string(i);
    const Json& it = items[i];
    if (!it.is_object() || !it.contains("modulus") || !it.contains("coeffs")) {
      rd.fail(path, "expected an object with modulus and coeffs");
      continue;
    }
    auto N = rd.integer(it["modulus"], path + "/modulus");
    auto c = rd.int_array(it["coeffs"], path + "/coeffs");
    if (N && *N < 2) rd.fail(path + "/modulus", "modulus must be at least 2");
    if (N && c && *N >= 2) out.push_back({*N, *c});
  }
  if (out.empty() && res.diagnostics.empty()) rd.fail(base.empty() ? "/" : base, "no residues given");
  if (res.diagnostics.empty()) res.value = out;
  return res;
}

Validated<LPolynomial> validate_lpolynomial(const std::string& text) {
  Validated<LPolynomial> res;
  auto doc = parse_json(text, res.diagnostics);
  if (!doc) return res;
  Reader rd{res.diagnostics};
  // A reconstruction report carries its polynomial under "L".
  const bool nested = doc->is_object() && doc->contains("L") && (*doc)["L"].is_object();
  const Json& j = nested ? (*doc)["L"] : *doc;
  const std::string at = nested ? "/L" : "";
  if (!j.is_object()) {
    rd.fail(at.empty() ? "/" : at, "expected an L-polynomial object");
    return res;
  }
  LPolynomial L;
  if (!j.contains("q")) rd.fail(at + "/q", "missing q");
  if (!j.contains("coeffs")) rd.fail(at + "/coeffs", "missing coeffs");
  if (!res.diagnostics.empty()) return res;
  auto q = rd.field(j["q"], at + "/q");
  auto c = rd.int_array(j["coeffs"], at + "/coeffs");
  if (!q || !c) return res;
  L.q = *q;
  L.coeffs = *c;
  if (j.contains("modulus")) {
    auto m = rd.integer(j["modulus"], at + "/modulus");
    if (m) L.modulus = *m;
  }
  if (j.contains("epsilon")) {
    auto e = rd.integer(j["epsilon"], at + "/epsilon");
    if (e && *e != 1 && *e != -1) rd.fail(at + "/epsilon", "epsilon must be 1 or -1");
    if (e) L.epsilon = int(*e);
  }
  if (j.contains("degree")) {
    auto d = rd.integer(j["degree"], at + "/degree");
    if (d && *d != L.degree()) rd.fail(at + "/degree", "degree does not match the coefficient list");
  }
  if (L.coeffs.empty() || L.coeffs[0] != 1) rd.fail(at + "/coeffs", "constant coefficient must be 1");
  if (L.epsilon == 0 && L.modulus == 0 && !L.coeffs.empty()) L.epsilon = L.coeffs.back() < 0 ? -1 : 1;
  if (L.modulus == 0 && res.diagnostics.empty()) {
    for (const auto& v : lpolynomial_violations(L)) rd.fail(at + "/coeffs", v);
  }
  if (res.diagnostics.empty()) res.value = L;
  return res;
}

// ---------------------------------------------------------------------------
// Driver

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"L-functions of elliptic curves over F_q(t)", "ellfq"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--table", o.table, "render aligned text instead of JSON");
  app.add_option("--seed", o.seed, "seed for the polynomial factorization RNG");

  std::string curve_file, witness_file, f_file, against_file, residues_file, lpoly_file, exact_method;
  i64 modulus = 0;
  int guard = 4, max_place_degree = 0, precision = 10, degree = -1, epsilon = 0, max_deg = 0;
  u32 scan_q = 0;
  bool ratio = false, odd_rank = false, scan_exact = false;

  auto* classify = app.add_subcommand("classify", "per-place reduction report");
  classify->add_option("curve", curve_file, "curve JSON")->required();

  auto* lfun = app.add_subcommand("lfun", "L-function, exact or modulo N");
  lfun->add_option("curve", curve_file, "curve JSON")->required();
  auto* lmod = lfun->add_option("--mod", modulus, "modulus N from a torsion subgroup");
  lfun->add_option("--witness", witness_file, "torsion witness JSON");
  auto* lexact = lfun->add_option("--exact", exact_method, "naive or baig-hall")
                     ->check(CLI::IsMember({"naive", "baig-hall"}));
  lmod->excludes(lexact);
  lfun->add_option("--guard", guard, "vanishing guard coefficients")->check(CLI::Range(0, 64));
  lfun->add_option("--max-place-degree", max_place_degree, "largest place degree to enumerate")
      ->check(CLI::Range(0, 40));

  auto* twist = app.add_subcommand("twist", "quadratic twist by f");
  twist->add_option("curve", curve_file, "curve JSON")->required();
  twist->add_option("--f", f_file, "rational function JSON")->required();
  auto* tmod = twist->add_option("--mod", modulus, "modulus N from a torsion subgroup of E");
  twist->add_option("--witness", witness_file, "torsion witness JSON");
  auto* tratio = twist->add_flag("--ratio-mod2", ratio, "L(E_f)/L(E_g) mod 2");
  auto* tagainst = twist->add_option("--against", against_file, "rational function g for --ratio-mod2");
  twist->add_option("--precision", precision, "series precision for --ratio-mod2")->check(CLI::Range(0, 4096));
  twist->add_option("--guard", guard, "vanishing guard coefficients")->check(CLI::Range(0, 64));
  tmod->excludes(tratio);
  tratio->needs(tagainst);
  tagainst->needs(tratio);

  auto* recon = app.add_subcommand("reconstruct", "CRT reconstruction from residues");
  recon->add_option("--residues", residues_file, "residue JSON")->required();
  recon->add_option("--degree", degree, "degree of L")->required()->check(CLI::Range(0, 256));
  recon->add_option("--q", scan_q, "field size when the residues do not carry it");
  recon->add_option("--epsilon", epsilon, "root number")->check(CLI::IsMember({-1, 1}));
  recon->add_flag("--odd-rank", odd_rank, "L vanishes at T = 1/q");

  auto* scan = app.add_subcommand("family-scan", "twists of the universal curve with a point of order 3");
  scan->add_option("--q", scan_q, "q = 5 or 11 mod 12")->required();
  scan->add_option("--max-deg", max_deg, "largest degree of f")->required()->check(CLI::Range(1, 6));
  scan->add_flag("--exact", scan_exact, "also compute exact L-functions and ranks");
  scan->add_flag("--markdown", o.markdown, "render tables in markdown");

  auto* rank = app.add_subcommand("rank", "analytic rank of an exact L-polynomial");
  rank->add_option("lpoly", lpoly_file, "L-polynomial JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    if (*classify) {
      CurveInput in = take(validate_curve(read_file(curve_file)), curve_file);
      emit(classify_json(in.curve), o, out);
    } else if (*lfun) {
      CurveInput in = take(validate_curve(read_file(curve_file)), curve_file);
      if (*lmod) {
        TorsionWitness W = pick_witness(in, witness_file);
        require(modulus == W.order, "--mod must equal the witness order " + std::to_string(W.order));
        emit(mod_json(hall_L_mod(in.curve, W, guard), in.curve.q()), o, out);
      } else {
        std::string method = exact_method.empty() ? "naive" : exact_method;
        EulerOptions eo;
        eo.guard = guard;
        eo.max_place_degree = max_place_degree;
        emit(lresult_json(exact_by(in.curve, method, eo), method), o, out);
      }
    } else if (*twist) {
      CurveInput in = take(validate_curve(read_file(curve_file)), curve_file);
      const u32 q = in.curve.q();
      RationalFunction f = take(validate_rational_function(read_file(f_file), q), f_file);
      SquareClass sc = square_class_rep(f, o.seed);
      Json j{{"q", q}, {"f", rational_json(f)}, {"square_class", rational_json(sc.value())}};
      if (ratio) {
        RationalFunction g = take(validate_rational_function(read_file(against_file), q), against_file);
        RatioResult r = ratio_mod2(in.curve, f, g, precision);
        j["against"] = rational_json(g);
        j["precision"] = precision;
        j["ratio"] = r.series.coeffs();
        j["closed_form"] = r.closed_form;
        j["residue_fields"] = r.residue_fields;
        Json pl = Json::array();
        for (const auto& w : r.places) pl.push_back(place_json(w));
        j["places"] = pl;
      } else {
        require(!sc.is_perfect_square, "f is a square; the twist is E itself");
        TwistPartition part = classify_twist_sets(in.curve, f);
        TwistDegreeData td = twist_degree_data(part);
        j["degree"] = td.degree;
        j["printed_degree"] = td.printed_degree;
        j["constant_field_degree"] = td.constant_field_degree;
        if (*tmod) {
          TorsionWitness W = pick_witness(in, witness_file);
          require(modulus == W.order, "--mod must equal the witness order " + std::to_string(W.order));
          ModResult m = twist_L_mod(in.curve, f, W, guard);
          Json r = mod_json(m, q);
          for (const auto& [k, v] : r.items()) j[k] = v;
        } else {
          EulerOptions eo;
          eo.guard = guard;
          LResult r = naive_L(quadratic_twist(in.curve, sc.value()), td.degree, eo);
          Json lj = lresult_json(r, "naive");
          for (const auto& [k, v] : lj.items()) j[k] = v;
        }
        Json sets = Json::array();
        for (const auto& p : part.places) {
          Json s = place_json(p.place);
          s["splitting"] = to_string(p.split);
          s["reduction"] = to_string(p.e.kind);
          s["twisted_reduction"] = to_string(p.ef.kind);
          s["twisted_kodaira"] = p.ef.kodaira.to_string();
          Json names = Json::array();
          for (auto t : p.sets()) names.push_back(to_string(t));
          s["sets"] = names;
          sets.push_back(s);
        }
        j["places"] = sets;
      }
      emit(j, o, out);
    } else if (*recon) {
      std::string text = read_file(residues_file);
      auto bundles = take(validate_residues(text), residues_file);
      // q and epsilon may ride along in the residue documents.
      Json doc = Json::parse(text);
      Json items = doc.is_array() ? doc : (doc.contains("residues") ? doc["residues"] : Json::array({doc}));
      u32 q = scan_q;
      if (q == 0 && doc.is_object() && doc.contains("q") && doc["q"].is_number_integer()) q = doc["q"].get<u32>();
      for (const auto& it : items) {
        if (q == 0 && it.contains("q") && it["q"].is_number_integer()) q = it["q"].get<u32>();
        if (epsilon == 0 && it.contains("epsilon") && it["epsilon"].is_number_integer()) epsilon = it["epsilon"].get<int>();
      }
      require(q != 0, "q is missing: pass --q or include it in the residues");
      check_modulus(q);
      Reconstruction r = crt_reconstruct(bundles, degree, q, epsilon, odd_rank);
      Json j{{"q", q}, {"degree", degree}, {"modulus", r.modulus}, {"determined", r.determined}};
      if (r.determined) {
        j["L"] = lpoly_json(r.L);
        j["text"] = to_string(r.L);
        j["rank"] = analytic_rank(r.L);
      } else {
        Json cands = Json::array();
        for (std::size_t n = 0; n < r.candidates.size(); ++n)
          cands.push_back(Json{{"n", n}, {"count", r.candidate_counts[n]}, {"candidates", r.candidates[n]}});
        j["truncated"] = r.truncated;
        j["coefficients"] = cands;
      }
      emit(j, o, out);
    } else if (*scan) {
      FamilyOptions fo;
      fo.exact = scan_exact;
      FamilyScan s = family_scan(scan_q, max_deg, fo);
      if (o.markdown) {
        family_markdown(s, out);
      } else {
        Json rows = Json::array();
        for (const auto& r : s.rows) rows.push_back(family_row_json(r));
        Json summary = Json::array();
        for (const auto& x : s.summary)
          summary.push_back(Json{{"f0_square", x.f0_square},
                                 {"f1_square", x.f1_square},
                                 {"count", x.count},
                                 {"jac3_count", x.jac3_count},
                                 {"epsilons", x.epsilons},
                                 {"ranks", x.ranks},
                                 {"max_rank_bound", x.max_rank_bound}});
        emit(Json{{"q", s.q}, {"max_degree", s.max_degree}, {"rows", rows}, {"summary", summary}}, o, out);
      }
    } else if (*rank) {
      LPolynomial L = take(validate_lpolynomial(read_file(lpoly_file)), lpoly_file);
      require(L.modulus == 0, "rank needs an exact L-polynomial (modulus 0)");
      const int k = analytic_rank(L);
      Json j{{"q", L.q}, {"degree", L.degree()}, {"rank", k}};
      j["epsilon"] = L.epsilon;
      ensure((k % 2 == 1) == (L.epsilon == -1), "rank parity disagrees with the root number");
      emit(j, o, out);
    }
  } catch (const InputError& e) {
    for (const auto& d : e.diagnostics()) err << "error: " << e.file() << ": " << d.path << ": " << d.message << "\n";
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitOk;
}

}  // namespace ellfq
