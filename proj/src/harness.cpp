#include "skewps/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <json.hpp>
#include <toml.hpp>

#include "skewps/errors.hpp"
#include "skewps/fd_crossed.hpp"

namespace skewps {

using nlohmann::json;

// ---- Laurent expressions

namespace {

class LaurentParser {
 public:
  LaurentParser(const FieldPtr& F, const std::string& s) : F_(F), s_(s) {}

  LaurentElem parse() {
    LaurentElem v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("in \"" + s_ + "\" at column " + std::to_string(i_ + 1) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected an integer");
    long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_++] - '0');
      if (v > (1L << 40)) fail("integer too large");
    }
    return neg ? -v : v;
  }

  LaurentElem expr() {
    skip();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
    LaurentElem acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  LaurentElem term() {
    LaurentElem acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  LaurentElem factor() {
    LaurentElem base = primary();
    if (!eat('^')) return base;
    long e = integer();
    if (e < 0 && base.coeffs().size() != 1) fail("negative power of a non-monomial");
    return base.pow(e, kInf);
  }

  LaurentElem primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      LaurentElem v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return LaurentElem::constant(F_, F_->from_int(integer()));
    if (s_.compare(i_, 2, "pi") == 0) {
      i_ += 2;
      return LaurentElem::monomial(F_, 1, 1);
    }
    if (c == 'w') {
      ++i_;
      if (F_->k() == 1) fail("w needs a field of degree > 1");
      return LaurentElem::constant(F_, F_->gen());
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const FieldPtr& F_;
  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

LaurentElem parse_laurent(const FieldPtr& F, const std::string& text) { return LaurentParser(F, text).parse(); }

// ---- config

namespace {

std::string where(const toml::node& n, const std::string& key) {
  const auto& src = n.source();
  return "line " + std::to_string(src.begin.line) + ", key " + key;
}

[[noreturn]] void bad_key(const toml::node& n, const std::string& key, const std::string& msg) {
  throw ConfigError(where(n, key) + ": " + msg);
}

const toml::table* section(const toml::table& root, const char* name) {
  const toml::node* n = root.get(name);
  if (!n) return nullptr;
  if (!n->is_table()) bad_key(*n, name, "expected a table");
  return n->as_table();
}

void check_keys(const toml::table& t, const std::string& sect, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : t) {
    std::string key(k.str());
    if (!allowed.count(key)) bad_key(v, sect + "." + key, "unknown key");
  }
}

std::optional<std::int64_t> get_int(const toml::table* t, const std::string& sect, const char* key) {
  if (!t) return std::nullopt;
  const toml::node* n = t->get(key);
  if (!n) return std::nullopt;
  if (!n->is_integer()) bad_key(*n, sect + "." + key, "expected an integer");
  return n->as_integer()->get();
}

std::optional<std::string> get_string(const toml::table* t, const std::string& sect, const char* key) {
  if (!t) return std::nullopt;
  const toml::node* n = t->get(key);
  if (!n) return std::nullopt;
  if (n->is_integer()) return std::to_string(n->as_integer()->get());
  if (!n->is_string()) bad_key(*n, sect + "." + key, "expected a string");
  return n->as_string()->get();
}

std::string entry_string(const toml::node& n, const std::string& key) {
  if (n.is_integer()) return std::to_string(n.as_integer()->get());
  if (n.is_string()) return n.as_string()->get();
  bad_key(n, key, "matrix entries must be strings or integers");
}

// A scalar expression or an array of rows.
std::optional<StringMatrix> get_matrix(const toml::table* t, const std::string& sect, const char* key) {
  if (!t) return std::nullopt;
  const toml::node* n = t->get(key);
  if (!n) return std::nullopt;
  const std::string full = sect + "." + key;
  if (!n->is_array()) return StringMatrix{{entry_string(*n, full)}};
  StringMatrix m;
  for (const auto& row : *n->as_array()) {
    if (!row.is_array()) bad_key(row, full, "expected an array of rows");
    std::vector<std::string> r;
    for (const auto& e : *row.as_array()) r.push_back(entry_string(e, full));
    m.push_back(std::move(r));
  }
  if (m.empty()) bad_key(*n, full, "empty matrix");
  for (const auto& r : m)
    if (r.size() != m.size()) bad_key(*n, full, "matrix is not square");
  return m;
}

}  // namespace

InstanceConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ConfigError("line " + std::to_string(e.source().begin.line) + ": " + std::string(e.description()));
  }
  for (const auto& [k, v] : root) {
    static const std::set<std::string> known{"instance", "sigma", "t", "extension", "suites", "report"};
    if (!known.count(std::string(k.str()))) bad_key(v, std::string(k.str()), "unknown section");
  }
  InstanceConfig c;
  const toml::table* inst = section(root, "instance");
  if (!inst) throw ConfigError("missing [instance] section");
  check_keys(*inst, "instance", {"id", "p", "k", "s", "N", "M", "seed"});
  if (auto v = get_string(inst, "instance", "id")) c.id = *v;
  auto need = [&](const char* key) {
    auto v = get_int(inst, "instance", key);
    if (!v) throw ConfigError("key instance." + std::string(key) + ": missing");
    return *v;
  };
  auto p = need("p");
  if (p < 2 || p > 65521 || !FiniteField::is_prime(static_cast<std::uint64_t>(p)))
    bad_key(*inst->get("p"), "instance.p", "p not prime");
  c.p = static_cast<unsigned>(p);
  auto k = get_int(inst, "instance", "k").value_or(1);
  if (k < 1 || k > 16) bad_key(*inst->get("k"), "instance.k", "k must lie in [1, 16]");
  c.k = static_cast<unsigned>(k);
  {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < c.k; ++i) q *= c.p;
    if (q > (1u << 16)) bad_key(*inst->get("k"), "instance.k", "field order exceeds 2^16");
  }
  auto s = get_int(inst, "instance", "s").value_or(1);
  if (s < 1 || s > 8) bad_key(*inst->get("s"), "instance.s", "s must lie in [1, 8]");
  c.s = static_cast<int>(s);
  auto N = get_int(inst, "instance", "N").value_or(16);
  if (N < 1 || N > 512) bad_key(*inst->get("N"), "instance.N", "N must lie in [1, 512]");
  c.N = N;
  auto M = get_int(inst, "instance", "M").value_or(32);
  if (M < 1 || M > 512) bad_key(*inst->get("M"), "instance.M", "M must lie in [1, 512]");
  c.M = M;
  c.seed = static_cast<std::uint64_t>(get_int(inst, "instance", "seed").value_or(1));

  if (const toml::table* sg = section(root, "sigma")) {
    check_keys(*sg, "sigma", {"frobenius", "conjugator"});
    c.frobenius = get_int(sg, "sigma", "frobenius").value_or(0);
    c.conjugator = get_matrix(sg, "sigma", "conjugator");
  }
  if (const toml::table* tt = section(root, "t")) {
    check_keys(*tt, "t", {"value"});
    if (auto m = get_matrix(tt, "t", "value")) c.t = *m;
  }
  if (const toml::table* ex = section(root, "extension")) {
    check_keys(*ex, "extension", {"central_element"});
    c.central_element = get_string(ex, "extension", "central_element");
  }
  if (const toml::table* su = section(root, "suites")) {
    check_keys(*su, "suites", {"run"});
    if (const toml::node* n = su->get("run")) {
      if (!n->is_array()) bad_key(*n, "suites.run", "expected an array of suite ids");
      for (const auto& e : *n->as_array()) {
        if (!e.is_string()) bad_key(e, "suites.run", "expected a string");
        std::string id = e.as_string()->get();
        if (!find_suite(id)) bad_key(e, "suites.run", "unknown suite '" + id + "'");
        c.suites.push_back(id);
      }
    }
  }
  if (const toml::table* rp = section(root, "report")) {
    check_keys(*rp, "report", {"path"});
    c.report_path = get_string(rp, "report", "path").value_or("");
  }
  auto check_dim = [&](const StringMatrix& m, const char* key) {
    if (m.size() != 1 && static_cast<int>(m.size()) != c.s)
      throw ConfigError("key " + std::string(key) + ": matrix size does not match s");
  };
  if (c.conjugator) check_dim(*c.conjugator, "sigma.conjugator");
  check_dim(c.t, "t.value");
  return c;
}

InstanceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

// ---- instance

Instance build_instance(const InstanceConfig& cfg) {
  Instance I;
  I.cfg = cfg;
  FieldPtr F = FiniteField::make(cfg.p, cfg.k);
  I.R = QRing{F, cfg.s, cfg.N};
  auto matrix = [&](const StringMatrix& m) {
    if (m.size() == 1) return QElem::scalar(parse_laurent(F, m[0][0]), cfg.s);
    std::vector<std::vector<LaurentElem>> rows;
    for (const auto& r : m) {
      std::vector<LaurentElem> row;
      for (const auto& e : r) row.push_back(parse_laurent(F, e));
      rows.push_back(std::move(row));
    }
    return QElem::from_rows(rows);
  };
  Auto sigma = cfg.frobenius ? Auto::frobenius(cfg.frobenius) : Auto::identity();
  if (cfg.conjugator) {
    QElem U = matrix(*cfg.conjugator);
    QElem Uinv;
    try {
      Uinv = U.inv(2 * cfg.N + 8);
    } catch (const Error& e) {
      throw InstanceError("conjugator is not invertible");
    }
    sigma = Auto::inner(U, Uinv).compose(sigma);
  }
  I.sigma = sigma;
  I.t = matrix(cfg.t);
  try {
    I.datum = std::make_shared<const SkewDatum>(I.R, I.sigma, I.t, std::max<long>(cfg.M, 8));
  } catch (const HypothesisFail& e) {
    throw InstanceError("sigma(t) = t fails");
  } catch (const PrecisionTooLow& e) {
    throw InstanceError("precision too low: N must be at least 2");
  }
  if (cfg.central_element) I.central = parse_laurent(F, *cfg.central_element);
  return I;
}

// ---- suites

namespace {

Value poly_residual(const OrePoly& f) {
  Value v = kInf;
  for (const auto& q : f.coeffs()) v = vmin(v, q.certified());
  return v;
}

std::vector<QElem> samples(const QRing& R, Rng& g, int extra) {
  std::vector<QElem> out = R.residue_basis();
  for (int i = 0; i < extra; ++i) out.push_back(R.random(g, static_cast<long>(uniform(g, 3))));
  return out;
}

OrePoly random_poly(const DatumPtr& d, Rng& g, long deg) {
  std::vector<QElem> c;
  for (long i = 0; i <= deg; ++i) c.push_back(d->ring().random(g));
  return OrePoly(d, c);
}

BoundedSeries random_series(const DatumPtr& d, Rng& g, long deg) {
  return BoundedSeries::from_poly(random_poly(d, g, std::min(deg, d->jmax())));
}

// Precision lost to the conjugator and to t.
Value guarantee(const Instance& I) {
  Value N = I.R.N;
  const Auto& s = I.sigma;
  if (s.has_conjugator()) N += std::min<Value>(0, s.conjugator().u() + s.conjugator_inv().u());
  N += std::min<Value>(0, I.t.u());
  return N;
}

void set_min(std::map<std::string, Value>& m, const std::string& k, Value v) {
  auto it = m.find(k);
  if (it == m.end())
    m[k] = v;
  else
    it->second = vmin(it->second, v);
}

long count(SuiteContext& c, long base) { return base * std::max(1L, c.scale); }

void suite_relations(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  const QRing& R = d->ring();
  auto smp = samples(R, c.rng, static_cast<int>(count(c, 6)));
  OrePoly X = OrePoly::x_pow(d, 1);
  bool ok = true;
  for (std::size_t i = 0; i < smp.size(); ++i) {
    const QElem& q = smp[i];
    OrePoly diff = X * OrePoly::constant(d, q) -
                   (OrePoly::constant(d, d->apply_sigma(q)) * X + OrePoly::constant(d, d->delta(q)));
    set_min(r.residuals, "x q - sigma(q) x - delta(q)", poly_residual(diff));
    ok = ok && diff.is_zero();
    QElem comm = d->apply_sigma(d->delta(q)) - d->delta(d->apply_sigma(q));
    set_min(r.residuals, "sigma delta - delta sigma", comm.certified());
    ok = ok && comm.is_zero();
    const QElem& q2 = smp[(i * 7 + 3) % smp.size()];
    QElem leib = d->delta(q * q2) - (d->delta(q) * q2 + d->apply_sigma(q) * d->delta(q2));
    set_min(r.residuals, "skew Leibniz", leib.certified());
    ok = ok && leib.is_zero();
  }
  r.counters["samples"] = static_cast<long>(smp.size());
  r.pass = ok;
}

void suite_field_axioms(SuiteContext& c, SuiteRecord& r) {
  const FiniteField& F = *c.inst.R.F;
  const std::uint64_t q = F.order();
  long checked = 0, failures = 0;
  auto check = [&](Elem a, Elem b, Elem e) {
    ++checked;
    bool ok = F.add(F.add(a, b), e) == F.add(a, F.add(b, e)) && F.mul(F.mul(a, b), e) == F.mul(a, F.mul(b, e)) &&
              F.mul(a, F.add(b, e)) == F.add(F.mul(a, b), F.mul(a, e)) && F.mul(a, b) == F.mul(b, a) &&
              F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1)) &&
              F.frob(F.add(a, b), 1) == F.add(F.frob(a, 1), F.frob(b, 1)) && F.frob(a, F.k()) == a &&
              (a == 0 || F.mul(a, F.inv(a)) == 1) && F.add(a, F.neg(a)) == 0;
    if (!ok) ++failures;
  };
  if (q <= 32) {
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b)
        for (Elem e = 0; e < q; ++e) check(a, b, e);
  } else {
    for (long i = 0; i < count(c, 2000); ++i)
      check(static_cast<Elem>(uniform(c.rng, q)), static_cast<Elem>(uniform(c.rng, q)),
            static_cast<Elem>(uniform(c.rng, q)));
  }
  r.counters["checked"] = checked;
  r.counters["failures"] = failures;
  r.pass = failures == 0;
}

void suite_degree_of_maps(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  const QRing& R = d->ring();
  struct Named {
    std::string name;
    FiltMap f;
  };
  std::vector<Named> maps{{"sigma - id", FiltMap::sigma_minus_id(d->sigma_map())}, {"delta", d->delta_map()}};
  long violations = 0, checked = 0;
  for (const auto& m : maps) {
    DegreeResult dr = degree_of_map(m.f, R);
    r.residuals["deg(" + m.name + ")"] = dr.degree;
    for (long i = 0; i < count(c, 12); ++i) {
      QElem q = random_exact(R, c.rng, static_cast<long>(uniform(c.rng, 5)) - 2, 3);
      if (q.is_zero()) continue;
      ++checked;
      QElem img = m.f(q);
      // images are only known to the precision of sigma
      Value bound = vadd(dr.degree, q.u());
      if (img.certified() < std::min<Value>(bound, img.prec())) ++violations;
    }
  }
  r.counters["checked"] = checked;
  r.counters["violations"] = violations;
  r.pass = violations == 0;
}

Elem absolute_trace(const FiniteField& F, Elem a) {
  Elem t = 0, x = a;
  for (unsigned i = 0; i < F.k(); ++i) {
    t = F.add(t, x);
    x = F.frob(x, 1);
  }
  return t;
}

void suite_artin_schreier(SuiteContext& c, SuiteRecord& r) {
  const FieldPtr& F = c.inst.R.F;
  const unsigned p = F->p();
  std::vector<Elem> as;
  if (F->order() <= 64) {
    for (Elem a = 0; a < F->order(); ++a) as.push_back(a);
  } else {
    for (long i = 0; i < count(c, 16); ++i) as.push_back(static_cast<Elem>(uniform(c.rng, F->order())));
  }
  long failures = 0, split = 0;
  for (Elem a : as) {
    ArtinSchreier s = artin_schreier_split(F, a);
    const FiniteField& L = *s.splitting;
    Elem aa = s.embedding(a);
    bool ok = s.roots.size() == p;
    for (Elem x : s.roots) ok = ok && L.sub(L.pow(x, p), x) == aa;
    ok = ok && s.splits_in_base == (absolute_trace(*F, a) == 0);
    if (s.splits_in_base) ++split;
    if (!ok) ++failures;
  }
  r.counters["elements"] = static_cast<long>(as.size());
  r.counters["split-in-base"] = split;
  r.counters["failures"] = failures;
  r.pass = failures == 0;
}

void suite_adjoin_root(SuiteContext& c, SuiteRecord& r) {
  const FieldPtr& F = c.inst.R.F;
  LaurentElem pi = LaurentElem::monomial(F, 1, 1);
  LaurentElem z0 = c.inst.central ? *c.inst.central : pi;
  std::vector<std::pair<LaurentElem, long>> cases{{z0, 2}, {z0, 3}, {pi.pow(2, kInf) + pi.pow(3, kInf), 2}};
  bool ok = true;
  long formula_checks = 0;
  std::ostringstream det;
  for (const auto& [z, C] : cases) {
    if (z.val() <= 0) continue;
    Adjunction A = adjoin_root_of_unit_power(z, C, 4 * c.inst.R.N);
    const FiltBasis& B = A.basis;
    LaurentElem diff = A.zeta0.pow(C, kInf) - B.embed(z);
    Value prec = A.zeta0.prec();
    Value res = diff.certified();
    set_min(r.residuals, "zeta0^C - z", res);
    ok = ok && diff.is_zero();
    for (long i = 0; i < count(c, 10); ++i) {
      std::vector<LaurentElem> zs;
      for (std::size_t idx = 0; idx < B.elements.size(); ++idx) {
        std::vector<Elem> cs(2);
        for (auto& x : cs) x = static_cast<Elem>(uniform(c.rng, F->order()));
        zs.push_back(LaurentElem::from_coeffs(F, static_cast<long>(uniform(c.rng, 5)) - 2, cs, kInf));
      }
      ++formula_checks;
      ok = ok && B.formula(zs) == B.combine(zs).val();
    }
    det << "C=" << C << ": e=" << B.e << " f=" << B.f << " prec=" << vstr(prec) << "; ";
  }
  r.counters["formula-checks"] = formula_checks;
  r.detail = det.str();
  r.pass = ok;
}

void suite_compatibility(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  const QRing& R = d->ring();
  r.detail = d->compat().str();
  bool ok = d->certified();
  const long p = d->p();
  std::vector<DegreeResult> degs;
  for (long m = 0; m <= 3; ++m) {
    Auto sp = d->sigma().pow(ipow(p, m)).with_prec(4 * R.N);
    degs.push_back(degree_of_map(FiltMap::sigma_minus_id(FiltMap::automorphism(sp)), R));
    r.residuals["deg(sigma^{p^" + std::to_string(m) + "} - id)"] = degs.back().degree;
  }
  long checked = 0;
  for (long m = 0; m + 1 < static_cast<long>(degs.size()); ++m) {
    Value a = degs[m].degree, b = degs[m + 1].degree;
    if (is_inf(a) || a < 1) continue;
    ++checked;
    // a bound that is only zero at precision cannot be exceeded
    if (degs[m + 1].exact && b < p * a) ok = false;
  }
  r.counters["collapse-checks"] = checked;
  r.counters["m"] = d->m();
  r.pass = ok;
}

void suite_frobenius_relations(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  bool ok = true;
  long checked = 0;
  for (long n = 0; n <= 2 && ipow(d->p(), n) <= d->jmax(); ++n) {
    for (long i = 0; i < count(c, 5); ++i) {
      QElem s = d->ring().random(c.rng);
      FrobeniusRelation fr = frobenius_power_relation(d, s, n);
      ++checked;
      set_min(r.residuals, "n=" + std::to_string(n), poly_residual(fr.lhs - fr.rhs));
      ok = ok && fr.equal && fr.only_two_positions;
    }
  }
  r.counters["checked"] = checked;
  r.pass = ok;
}

void suite_ore_associativity(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  const long deg = std::min<long>(5, d->jmax() / 3);
  long failures = 0;
  for (long i = 0; i < count(c, 10); ++i) {
    OrePoly f = random_poly(d, c.rng, deg), g = random_poly(d, c.rng, deg), h = random_poly(d, c.rng, deg);
    OrePoly a = (f * g) * h - f * (g * h);
    OrePoly b = f * (g + h) - (f * g + f * h);
    OrePoly e = (f + g) * h - (f * h + g * h);
    set_min(r.residuals, "associativity", poly_residual(a));
    set_min(r.residuals, "distributivity", vmin(poly_residual(b), poly_residual(e)));
    if (!a.is_zero() || !b.is_zero() || !e.is_zero()) ++failures;
  }
  r.counters["triples"] = count(c, 10);
  r.counters["failures"] = failures;
  r.pass = failures == 0;
}

void suite_mult_formula(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  const long deg = std::min<long>(5, d->jmax() / 2);
  long failures = 0;
  for (long i = 0; i < count(c, 10); ++i) {
    OrePoly f = random_poly(d, c.rng, deg), g = random_poly(d, c.rng, deg);
    BoundedSeries prod = series_mul(BoundedSeries::from_poly(f), BoundedSeries::from_poly(g));
    BoundedSeries diff = prod - BoundedSeries::from_poly(ore_mul(f, g));
    set_min(r.residuals, "series_mul - ore_mul", diff.residual());
    if (!diff.is_zero()) ++failures;
  }
  r.counters["pairs"] = count(c, 10);
  r.counters["failures"] = failures;
  r.pass = failures == 0;
}

void suite_unit_inversion(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  BoundedSeries g = g_element(d);
  BoundedSeries h = invert_unit_series(g);
  Value a = (series_mul(g, h) - BoundedSeries::one(d)).residual();
  Value b = (series_mul(h, g) - BoundedSeries::one(d)).residual();
  r.residuals["g h - 1"] = a;
  r.residuals["h g - 1"] = b;
  r.pass = a >= guarantee(c.inst) && b >= guarantee(c.inst);
}

void suite_crossed_decomposition(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  const long m = std::max(1L, d->m());
  long failures = 0;
  for (long i = 0; i < count(c, 4); ++i) {
    BoundedSeries f = random_series(d, c.rng, std::min<long>(d->jmax(), 12));
    CrossedDecomp cd = decompose(f, m);
    BoundedSeries back = recompose(cd, d);
    set_min(r.residuals, "recompose - f", (back - f).residual());
    if (!(back - f).is_zero()) ++failures;
  }
  r.counters["m"] = m;
  r.counters["failures"] = failures;
  r.pass = failures == 0;
}

void suite_g_relations(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  auto smp = samples(d->ring(), c.rng, static_cast<int>(count(c, 4)));
  GRelations g = check_g_relations(d, smp);
  r.residuals["g q - sigma(q) g"] = g.sigma_residual;
  r.residuals["g x - x g"] = g.x_residual;
  r.pass = g.sigma_residual >= guarantee(c.inst) && g.x_residual >= guarantee(c.inst);
}

void suite_iwasawa(SuiteContext& c, SuiteRecord& r) {
  const DatumPtr& d = c.inst.datum;
  auto smp = samples(d->ring(), c.rng, static_cast<int>(count(c, 4)));
  IwasawaCert w = iwasawa_normalize(d, smp);
  r.residuals["relation"] = w.relation_residual;
  r.residuals["delta0 - (sigma0 - id)"] = w.delta_residual;
  r.residuals["powers"] = w.power_residual;
  r.residuals["sigma0(t) - t"] = w.t_fixed_residual;
  const Value G = guarantee(c.inst);
  r.pass = w.relation_residual >= G && w.delta_residual >= G && w.power_residual >= G && w.t_fixed_residual >= G;
}

unsigned testbed_prime(const Instance& I) { return I.R.F->p() == 3 ? 3 : 2; }

void suite_derivative_invariance(SuiteContext& c, SuiteRecord& r) {
  ArtinSchreierTestbed tb = make_artin_schreier_testbed(testbed_prime(c.inst), c.inst.R.N, 16);
  bool ok = true;
  for (long i = 0; i < count(c, 5); ++i) {
    BoundedSeries g = random_series(tb.datum, c.rng, 5);
    InvarianceResult ir = derivative_invariance_check(g, tb.alpha, tb.i);
    set_min(r.residuals, "invariance", ir.residual);
    set_min(r.residuals, "multiplied", ir.multiplied_residual);
    ok = ok && ir.holds;
  }
  r.counters["p"] = testbed_prime(c.inst);
  r.counters["samples"] = count(c, 5);
  r.pass = ok;
}

void suite_component_extraction(SuiteContext& c, SuiteRecord& r) {
  ArtinSchreierTestbed tb = make_artin_schreier_testbed(testbed_prime(c.inst), c.inst.R.N, 16);
  long failures = 0;
  for (long i = 0; i < count(c, 5); ++i) {
    BoundedSeries f = random_series(tb.datum, c.rng, 12);
    auto a = extract_components_by_derivative(f);
    auto b = split_by_residue_class(f);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!(a[j] - b[j]).is_zero()) ++failures;
  }
  r.counters["failures"] = failures;
  r.pass = failures == 0;
}

struct FdCase {
  std::string name;
  FdCrossed R;
};

std::vector<FdCase> prime_agreement_cases() {
  FieldPtr F2 = FiniteField::make(2, 1);
  FqMat U{{1, 1}, {0, 1}};
  std::vector<FdCase> out;
  out.push_back({"F2[Z/2]", FdCrossed::group_algebra(2, 1)});
  out.push_back({"F2[Z/4]", FdCrossed::group_algebra(2, 2)});
  out.push_back({"F3[Z/3]", FdCrossed::group_algebra(3, 1)});
  out.push_back({"F4*Z/2 Frobenius", FdCrossed::twisted(2, 2, 1, 1, 1)});
  out.push_back({"F4[Z/2] g^2=w", FdCrossed::twisted(2, 2, 0, 1, 2)});
  FdAlgebra M2 = FdAlgebra::matrix(2, F2);
  out.push_back({"M2(F2)", FdCrossed(M2, 0, M2.unit)});
  out.push_back({"M2(F2)[Z/2]", FdCrossed(M2, 1, M2.unit)});
  FdAlgebra M2U = FdAlgebra::matrix(2, F2, U);
  out.push_back({"M2(F2)*Z/2 conj U", FdCrossed(M2U, 1, M2U.unit)});
  out.push_back({"F16*Z/2 Frobenius^2", FdCrossed::twisted(2, 4, 2, 1, 1)});
  out.push_back({"F27*Z/3 Frobenius", FdCrossed::twisted(3, 3, 1, 1, 1)});
  return out;
}

void suite_supp_lemma(SuiteContext& c, SuiteRecord& r) {
  std::vector<FdCase> cases;
  cases.push_back({"F2[Z/4]", FdCrossed::group_algebra(2, 2)});
  FdAlgebra F4 = FdAlgebra::field(2, 2, 0);
  cases.push_back({"F4[Z/4]", FdCrossed(F4, 2, F4.unit)});
  cases.push_back({"F4*Z/4 Frobenius", FdCrossed::twisted(2, 2, 1, 2, 1)});
  bool ok = true;
  for (auto& fc : cases) {
    SuppLemmaReport s = supp_lemma_check(fc.R, 4096, c.rng);
    r.counters[fc.name + " examined"] = s.examined;
    r.counters[fc.name + " qualifying"] = s.qualifying;
    r.counters[fc.name + " violations"] = s.violations;
    ok = ok && s.violations == 0 && s.exhaustive;
  }
  r.pass = ok;
}

bool is_central(const FdCrossed& R, const FqVec& a) {
  for (int i = 0; i < R.dim(); ++i) {
    FqVec e = R.algebra().basis(i);
    if (R.mul(a, e) != R.mul(e, a)) return false;
  }
  return true;
}

void suite_central_minimal(SuiteContext&, SuiteRecord& r) {
  std::vector<FdCase> cases{{"F2[Z/2]", FdCrossed::group_algebra(2, 1)},
                            {"F2[Z/4]", FdCrossed::group_algebra(2, 2)},
                            {"F3[Z/3]", FdCrossed::group_algebra(3, 1)}};
  bool ok = true;
  std::ostringstream det;
  for (auto& fc : cases) {
    const FdCrossed& R = fc.R;
    FdIdeal I = nilradical_fd(R);
    CentralMinimal cm = central_minimal_with_p_nilpotence(I, R);
    bool good = cm.ok;
    if (good) {
      const long step = ipow(R.p(), R.m() - 1);
      good = !is_zero_vec(R.coeff(cm.a, 0)) && is_zero_vec(R.pow(cm.a, R.p())) && is_central(R, cm.a) &&
             I.contains(cm.a);
      for (long i : R.support(cm.a)) good = good && i % step == 0;
    }
    det << fc.name << ": " << (cm.ok ? R.str(cm.a) : "failed at " + cm.failed_step) << "; ";
    r.counters[fc.name + " ok"] = good ? 1 : 0;
    ok = ok && good;
  }
  r.detail = det.str();
  r.pass = ok;
}

void suite_nilradical_prime(SuiteContext&, SuiteRecord& r) {
  long agree = 0, total = 0, radical_checks = 0;
  bool ok = true;
  for (auto& fc : prime_agreement_cases()) {
    ++total;
    bool prime = is_prime_fd(fc.R);
    FdIdeal N = nilradical_fd(fc.R);
    if (prime == N.is_zero()) ++agree;
    if (fc.R.algebra().size() <= (1u << 12)) {
      ++radical_checks;
      ok = ok && radical_bruteforce(fc.R.algebra()) == N;
    }
  }
  r.counters["instances"] = total;
  r.counters["agree"] = agree;
  r.counters["radical-vs-bruteforce"] = radical_checks;
  r.pass = ok && agree == total;
}

void suite_phi_psi(SuiteContext&, SuiteRecord& r) {
  // The correspondence needs sigma to move the centre of A.
  PhiPsiReport in = phi_psi_check(FdCrossed::twisted(2, 2, 1, 2, 1));
  PhiPsiReport out = phi_psi_check(FdCrossed::group_algebra(2, 2));
  r.counters["F4*Z/4 ideals"] = in.ideals_R;
  r.counters["F4*Z/4 failures"] = in.failures;
  r.counters["F2[Z/4] ideals"] = out.ideals_R;
  r.counters["F2[Z/4] failures (sigma = id)"] = out.failures;
  r.detail = out.ok() ? "" : "F2[Z/4]: " + out.counterexample;
  r.pass = in.ok();
}

void tensor_check(SuiteContext& c, SuiteRecord& r, const FiltBasis& B, const std::string& name, bool& ok) {
  const QRing& R = c.inst.R;
  long mism = 0, reps = 0;
  for (long i = 0; i < count(c, 10); ++i) {
    std::vector<QElem> parts;
    for (std::size_t idx = 0; idx < B.elements.size(); ++idx) parts.push_back(random_exact(R, c.rng, -2, 3));
    Value ut = tensor_filtration(B, parts);
    QElem x = tensor_to_QK(B, parts);
    if (ut != x.u()) ++mism;
    auto back = decompose_tensor(B, x);
    for (std::size_t idx = 0; idx < parts.size(); ++idx)
      if (!(back[idx] - parts[idx]).is_zero()) ++mism;
    for (int k = 0; k < 5; ++k) {
      TensorRep rep = random_representation(B, parts, R, c.rng, 3);
      ++reps;
      if (!(representation_to_QK(B, rep) - x).is_zero() || representation_value(B, rep) > ut) ++mism;
    }
  }
  r.counters[name + " representations"] = reps;
  r.counters[name + " mismatches"] = mism;
  ok = ok && mism == 0;
}

void suite_tensor_filtration(SuiteContext& c, SuiteRecord& r) {
  const FieldPtr& F = c.inst.R.F;
  bool ok = true;
  Adjunction ram = adjoin_root_of_unit_power(LaurentElem::monomial(F, 1, 1), 2, 4 * c.inst.R.N);
  tensor_check(c, r, ram.basis, "ramified", ok);
  tensor_check(c, r, unramified_extension(F, 2), "unramified", ok);
  r.pass = ok;
}

DatumPtr centre_trivial_datum(const Instance& I) {
  long n = order_on_centre(*I.datum), s = 0;
  while (n > 1) {
    n /= I.datum->p();
    ++s;
  }
  return s ? std::make_shared<const SkewDatum>(I.datum->iterate(s)) : I.datum;
}

void suite_theta(SuiteContext& c, SuiteRecord& r) {
  DatumPtr d = centre_trivial_datum(c.inst);
  const FieldPtr& F = c.inst.R.F;
  Adjunction A = adjoin_root_of_unit_power(LaurentElem::monomial(F, 1, 1), 2, 4 * c.inst.R.N);
  ExtendedDatum E = build_extended_datum(d, A.basis, c.inst.cfg.seed);
  r.residuals["AE3 c1"] = E.cert.c1;
  r.residuals["AE3 c2"] = E.cert.c2;
  long failures = 0;
  const long deg = std::min<long>(4, d->jmax() / 2);
  for (long i = 0; i < count(c, 5); ++i) {
    BoundedSeries f = random_series(d, c.rng, deg), g = random_series(d, c.rng, deg);
    BoundedSeries lhs = theta_map(series_mul(f, g), E);
    BoundedSeries rhs = series_mul(theta_map(f, E), theta_map(g, E));
    BoundedSeries diff = lhs - rhs;
    set_min(r.residuals, "theta(fg) - theta(f) theta(g)", diff.residual());
    if (!diff.is_zero()) ++failures;
    BoundedSeries tf = theta_map(f, E);
    if (!(theta_inverse(tf, E) - f).is_zero()) ++failures;
    if (!f.is_zero() && tf.is_zero()) ++failures;
  }
  r.counters["failures"] = failures;
  r.pass = failures == 0;
}

void suite_convergence(SuiteContext& c, SuiteRecord& r) {
  const unsigned p = c.inst.R.F->p();
  const long d = p == 3 ? 2 : 3;
  FieldPtr Fp = FiniteField::make(p, 1);
  QRing R1{Fp, 1, c.inst.R.N};
  ConvergenceRun run = converge_inner(R1.one() + R1.pi_pow(1), d, Auto::identity(), R1);
  bool ok = run.ok;
  for (std::size_t j = 0; j < run.sj.size(); ++j) {
    long pj = ipow(p, static_cast<long>(j + 1) * run.r);
    ok = ok && run.sj[j] == (pj - 1) / d;
  }
  r.counters["d"] = d;
  r.counters["r"] = run.r;
  r.counters["s"] = run.s;
  r.residuals["scalar tau residual"] = run.tau_residual;
  // tau = conjugation by c with c1 = c^d
  QRing R2{Fp, 2, c.inst.R.N};
  QElem cm = R2.one() + R2.unit_matrix(0, 1, 1, 1);
  Auto tau = Auto::inner(cm, invert_in_O(cm.with_prec(R2.N), R2.N));
  ConvergenceRun run2 = converge_inner(cm.pow(d, kInf).with_prec(R2.N), d, tau, R2);
  r.residuals["matrix tau residual"] = run2.tau_residual;
  r.residuals["matrix c - c_expected"] = (run2.c - cm).certified();
  ok = ok && run2.ok;
  r.pass = ok;
}

void suite_sfoh(SuiteContext& c, SuiteRecord& r) {
  SfohOptions opt;
  opt.central_element = c.inst.central;
  opt.seed = c.inst.cfg.seed;
  SfohReport rep = reduce_to_sfoh(c.inst.R, c.inst.sigma, c.inst.t, opt);
  r.residuals["witness"] = rep.witness_residual;
  r.residuals["original"] = rep.original_residual;
  r.residuals["u_K(c)"] = rep.uc;
  r.residuals["u_K(c^-1)"] = rep.uc_inv;
  r.counters["s"] = rep.s;
  r.counters["ell"] = rep.ell;
  r.counters["stages"] = static_cast<long>(rep.stages.size());
  r.detail = rep.extension + "; c = " + rep.c.str();
  r.pass = rep.ok;
}

}  // namespace

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> reg{
      {"field-axioms", "finite field arithmetic", suite_field_axioms},
      {"artin-schreier", "Artin-Schreier splitting", suite_artin_schreier},
      {"adjoin-root", "adjunction of a root of a central element", suite_adjoin_root},
      {"degree-of-maps", "degree of a filtered map", suite_degree_of_maps},
      {"compatibility", "compatibility of the skew derivation with the filtration", suite_compatibility},
      {"relations", "defining relations of the inner skew derivation", suite_relations},
      {"ore-associativity", "associativity of the skew polynomial ring", suite_ore_associativity},
      {"frobenius-relations", "Frobenius power relations", suite_frobenius_relations},
      {"mult-formula", "multiplication formula for bounded series", suite_mult_formula},
      {"unit-inversion", "inversion of x - t", suite_unit_inversion},
      {"crossed-decomposition", "crossed product decomposition over the x^P-subring", suite_crossed_decomposition},
      {"g-relations", "relations of g = x - t", suite_g_relations},
      {"iwasawa", "Iwasawa normalization", suite_iwasawa},
      {"derivative-invariance", "invariance of the formal derivative", suite_derivative_invariance},
      {"component-extraction", "component extraction by derivatives", suite_component_extraction},
      {"supp-lemma", "support of p-th powers", suite_supp_lemma},
      {"central-minimal", "central minimal p-nilpotent element", suite_central_minimal},
      {"nilradical-prime", "primeness versus nilradical", suite_nilradical_prime},
      {"phi-psi-fd", "ideal correspondence with the g^p-subring", suite_phi_psi},
      {"tensor-filtration", "tensor product filtration", suite_tensor_filtration},
      {"theta-morphism", "coefficient extension morphism", suite_theta},
      {"convergence", "convergence of inner automorphisms", suite_convergence},
      {"sfoh-pipeline", "reduction to the strong finite order hypothesis", suite_sfoh},
  };
  return reg;
}

const SuiteInfo* find_suite(const std::string& id) {
  for (const auto& s : suite_registry())
    if (s.id == id) return &s;
  return nullptr;
}

std::string list_suites() {
  std::ostringstream os;
  for (const auto& s : suite_registry()) os << s.id << "  " << s.citation << "\n";
  return os.str();
}

std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite) {
  // FNV-1a of the id, mixed into the run seed with splitmix64
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : suite) h = (h ^ ch) * 1099511628211ULL;
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (h | 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool Report::pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

Report run_suites(const Instance& inst, const std::vector<std::string>& ids, bool timings, long scale) {
  std::vector<const SuiteInfo*> chosen;
  if (ids.empty()) {
    for (const auto& s : suite_registry()) chosen.push_back(&s);
  } else {
    for (const auto& s : suite_registry())
      if (std::find(ids.begin(), ids.end(), s.id) != ids.end()) chosen.push_back(&s);
    for (const auto& id : ids)
      if (!find_suite(id)) throw ConfigError("unknown suite '" + id + "'");
  }
  std::vector<std::future<SuiteRecord>> jobs;
  for (const SuiteInfo* s : chosen) {
    jobs.push_back(std::async(std::launch::async, [&inst, s, timings, scale] {
      SuiteRecord rec;
      rec.suite = s->id;
      rec.citation = s->citation;
      rec.instance = inst.cfg.id;
      SuiteContext ctx{inst, Rng(suite_seed(inst.cfg.seed, s->id)), scale};
      auto t0 = std::chrono::steady_clock::now();
      try {
        s->fn(ctx, rec);
      } catch (const Error& e) {
        rec.pass = false;
        rec.detail = e.what();
      }
      if (timings)
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return rec;
    }));
  }
  Report rep;
  rep.instance = inst.cfg.id;
  rep.cfg = inst.cfg;
  for (auto& j : jobs) rep.records.push_back(j.get());
  std::sort(rep.records.begin(), rep.records.end(),
            [](const SuiteRecord& a, const SuiteRecord& b) { return a.suite < b.suite; });
  return rep;
}

Report run(const std::string& config_path, bool timings) {
  InstanceConfig cfg = load_config(config_path);
  Instance inst = build_instance(cfg);
  Report rep = run_suites(inst, cfg.suites, timings);
  write_file(report_destination(cfg), report_json(rep, timings));
  return rep;
}

// ---- reports

namespace {

json value_json(Value v) {
  if (is_inf(v)) return "inf";
  if (v <= -kInf) return "-inf";
  return v;
}

json qelem_json(const QElem& q) {
  json rows = json::array();
  for (int i = 0; i < q.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < q.size(); ++j) row.push_back(q(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

json config_json(const InstanceConfig& c) {
  return json{{"id", c.id}, {"p", c.p}, {"k", c.k}, {"s", c.s}, {"N", c.N}, {"M", c.M}, {"seed", c.seed}};
}

}  // namespace

std::string report_json(const Report& r, bool timings) {
  json j;
  j["schema"] = "skewps-report/1";
  j["instance"] = r.instance;
  j["config"] = config_json(r.cfg);
  j["pass"] = r.pass();
  json recs = json::array();
  for (const auto& rec : r.records) {
    json x;
    x["suite"] = rec.suite;
    x["citation"] = rec.citation;
    x["instance"] = rec.instance;
    x["pass"] = rec.pass;
    json res = json::object();
    for (const auto& [k, v] : rec.residuals) res[k] = value_json(v);
    x["residuals"] = res;
    x["counters"] = json(rec.counters);
    x["detail"] = rec.detail;
    if (timings && rec.wall_ms >= 0) x["wall_ms"] = rec.wall_ms;
    recs.push_back(x);
  }
  j["records"] = recs;
  return j.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  for (const auto& rec : r.records) {
    os << (rec.pass ? "PASS " : "FAIL ") << rec.suite << "  (" << rec.citation << ")";
    for (const auto& [k, v] : rec.residuals) os << "  " << k << "=" << vstr(v);
    os << "\n";
    if (!rec.detail.empty()) os << "     " << rec.detail << "\n";
  }
  os << (r.pass() ? "all suites passed" : "some suites failed") << " on " << r.instance << "\n";
  return os.str();
}

std::string report_destination(const InstanceConfig& cfg, const std::string& suffix) {
  std::filesystem::path p = cfg.report_path.empty() ? cfg.id + ".json" : cfg.report_path;
  if (suffix != ".json") p.replace_extension(suffix);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SKEWPS_REPORT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::string decompose_json(const Instance& inst, long m) {
  if (m < 0) throw ConfigError("--m must be non-negative");
  Rng g(suite_seed(inst.cfg.seed, "decompose"));
  const DatumPtr& d = inst.datum;
  BoundedSeries f = random_series(d, g, std::min<long>(inst.cfg.M, 12));
  CrossedDecomp cd = decompose(f, m);
  BoundedSeries back = recompose(cd, d);
  json j;
  j["schema"] = "skewps-decompose/1";
  j["instance"] = inst.cfg.id;
  j["m"] = m;
  j["P"] = cd.P;
  json comps = json::array();
  for (const auto& c : cd.components) {
    json cs = json::array();
    for (const auto& q : c.coeffs()) cs.push_back(qelem_json(q));
    comps.push_back(cs);
  }
  j["components"] = comps;
  j["roundtrip_residual"] = value_json((back - f).residual());
  j["roundtrip_exact"] = (back - f).is_zero();
  return j.dump(2) + "\n";
}

std::string sfoh_json(const Instance& inst, const SfohReport& rep) {
  json j;
  j["schema"] = "skewps-sfoh/1";
  j["instance"] = inst.cfg.id;
  j["ok"] = rep.ok;
  j["s"] = rep.s;
  j["ell"] = rep.ell;
  j["extension"] = rep.extension;
  j["short_circuit"] = rep.short_circuit;
  j["c"] = qelem_json(rep.c);
  j["a_original"] = qelem_json(rep.a_original);
  j["witness_residual"] = value_json(rep.witness_residual);
  j["original_residual"] = value_json(rep.original_residual);
  j["u_c"] = value_json(rep.uc);
  j["u_c_inv"] = value_json(rep.uc_inv);
  json st = json::array();
  for (const auto& s : rep.stages) {
    json x{{"name", s.name}, {"citation", s.citation}, {"extension", s.extension}, {"unit", s.unit}, {"ok", s.ok}};
    json res = json::object();
    for (const auto& [k, v] : s.residuals) res[k] = value_json(v);
    x["residuals"] = res;
    st.push_back(x);
  }
  j["stages"] = st;
  return j.dump(2) + "\n";
}

}  // namespace skewps
