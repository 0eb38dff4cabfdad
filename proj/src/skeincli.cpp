#include "skein/skeincli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <array>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "skein/chainlab.hpp"
#include "skein/heckecore.hpp"
#include "skein/symalg.hpp"

namespace skein {

namespace {

using Params = std::map<std::string, int>;
using Pairs = std::vector<std::pair<int, int>>;

struct Outcome {
  CheckStatus status = CheckStatus::Pass;
  std::string witness;
};

Outcome verdict(bool pass, const std::string& witness, bool stabilized = true) {
  if (!pass) return {CheckStatus::Fail, witness.empty() ? "mismatch" : witness};
  if (!stabilized) return {CheckStatus::NotStabilized, "Hom dimension changed between D and D+2"};
  return {};
}

struct Task {
  std::string check;
  Params params;
  int truncation = 0;
  std::function<Outcome()> run;
};

class Planner {
 public:
  explicit Planner(const RunOptions& o) : o_(o) {}

  // Color pairs to visit: the defaults, narrowed by --a/--b. A pair given in
  // full that is not among the defaults is run on its own.
  Pairs grid(const Pairs& defaults) const {
    if (o_.a && o_.b && std::find(defaults.begin(), defaults.end(), std::make_pair(*o_.a, *o_.b)) == defaults.end())
      return {{*o_.a, *o_.b}};
    Pairs out;
    for (const auto& p : defaults)
      if (matches(p.first, p.second)) out.push_back(p);
    return out;
  }
  bool matches(int a, int b) const { return (!o_.a || *o_.a == a) && (!o_.b || *o_.b == b); }
  int trunc(int a, int b) const { return o_.truncation.value_or(defaultTruncation(a, b)); }
  int pinned(int d) const { return o_.truncation.value_or(d); }

  void add(std::string check, Params params, int truncation, std::function<Outcome()> run) {
    tasks.push_back({std::move(check), std::move(params), truncation, std::move(run)});
  }

  std::vector<Task> tasks;

 private:
  RunOptions o_;
};

Pairs upTo(int n, int from = 0) {
  Pairs out;
  for (int a = from; a <= n; ++a)
    for (int b = from; b <= n; ++b) out.push_back({a, b});
  return out;
}

std::vector<ColorSeq> compositionsUpTo(int total) {
  std::vector<ColorSeq> out, frontier{{}};
  while (!frontier.empty()) {
    std::vector<ColorSeq> next;
    for (const auto& c : frontier) {
      if (!c.empty()) out.push_back(c);
      for (int x = 1; colorSum(c) + x <= total; ++x) {
        auto d = c;
        d.push_back(x);
        next.push_back(std::move(d));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

int colorsCode(const ColorSeq& c) {
  int code = 0;
  for (int x : c) code = code * 10 + x;
  return code;
}

std::string excerpt(std::string s) {
  if (s.size() > 300) s = s.substr(0, 300) + "...";
  return s;
}

// ---------------------------------------------------------------------------
// Suites

void symSuite(Planner& p) {
  for (int k = 0; k <= 10; ++k)
    p.add("sym.he", {{"k", k}}, 0, [k] {
      for (int size = 0; size <= 3; ++size)
        if (!checkIdentity(Identity::HE, {k, size, 0})) return verdict(false, "fails with |X| = " + std::to_string(size));
      return verdict(true, "");
    });
  const std::vector<std::pair<std::string, Identity>> ids{
      {"sym.newton", Identity::Newton}, {"sym.he2", Identity::HE2},
      {"sym.some-relations-a", Identity::SomeRel1a}, {"sym.some-relations-b", Identity::SomeRel1b}};
  for (const auto& [name, id] : ids)
    for (int r = 0; r <= 6; ++r)
      p.add(name, {{"r", r}}, 0, [id = id, r] {
        for (int sx = 0; sx <= 3; ++sx)
          for (int sy = 0; sy <= 3; ++sy)
            if (!checkIdentity(id, {r, sx, sy}))
              return verdict(false, "fails with sizes (" + std::to_string(sx) + "," + std::to_string(sy) + ")");
        return verdict(true, "");
      });
  for (int r = 1; r <= 6; ++r)
    p.add("sym.cancellation", {{"r", r}}, 0, [r] {
      const auto x1 = AlphabetExpr::alphabet("X1", 2), x2 = AlphabetExpr::alphabet("X2", 2),
                 x0 = AlphabetExpr::alphabet("X0", 3);
      const SymExpr with = evalH(r, x1 + x0 - x2 - x0), without = evalH(r, x1 - x2);
      return verdict(with.str() == without.str(), with.str() + " vs " + without.str());
    });
  for (int r = 0; r <= 6; ++r)
    p.add("sym.rational-coefficient", {{"r", r}}, 0, [r] {
      // h_r of half a one-letter alphabet is binom(2r, r) / 4^r x^r.
      const SymExpr h = evalH(r, Rational(1, 2) * AlphabetExpr::alphabet("X", 1));
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), 2 * r, r);
      mpz_class four = 1;
      for (int i = 0; i < r; ++i) four *= 4;
      Rational coeff(binom, four);
      coeff.canonicalize();
      const Poly expected = Poly::monomial(Mono::var(h.ambient->variable("X", 1), r), coeff);
      return verdict(h.poly == expected, h.str());
    });
}

void heckeSuite(Planner& p) {
  const Laurent q = Laurent::monomial(1);
  for (const auto& c : compositionsUpTo(5))
    p.add("hecke.idempotent", {{"colors", colorsCode(c)}}, 0, [c, q] {
      const int n = colorSum(c);
      const HeckeElement e = idempotent(c);
      if (!(e * e == e)) return verdict(false, "not idempotent");
      int offset = 0;
      for (int m : c) {
        for (int j = 1; j < m; ++j) {
          const auto t = HeckeElement::generator(n, offset + j);
          if (!(t * e == e.scaled(q)) || !(e * t == e.scaled(q)))
            return verdict(false, "eigenvalue fails for T_" + std::to_string(offset + j));
        }
        offset += m;
      }
      const HeckeElement full = idempotent({n});
      return verdict(full * e == full && e * full == full, "absorption fails");
    });
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; a + b <= 5; ++b)
      p.add("hecke.digon", {{"a", a}, {"b", b}}, 0, [a, b] {
        const Web digon = compose(Web::merge(1, {a, b}), Web::split(1, {a + b}, a, b));
        return verdict(webClass(digon) == qbinom(a + b, a) * identityMorphism({a + b}), "digon class differs");
      });
  for (const auto& [a, b] : p.grid({{1, 1}, {2, 1}, {2, 2}}))
    p.add("hecke.crossing-cable", {{"a", a}, {"b", b}}, 0, [a = a, b = b] {
      for (int sign : {1, -1}) {
        const ColoredBraidWord w{{a, b}, {{1, sign}}};
        if (!(eulerCrossing(a, b, sign > 0) == cable(w)))
          return verdict(false, std::string(sign > 0 ? "positive" : "negative") + " crossing differs from its cable");
      }
      return verdict(true, "");
    });
  for (const auto& c : compositionsUpTo(5)) {
    if (c.size() != 3) continue;
    p.add("hecke.braid-relations", {{"colors", colorsCode(c)}}, 0, [c] {
      const ColoredBraidWord left{c, {{1, 1}, {2, 1}, {1, 1}}}, right{c, {{2, 1}, {1, 1}, {2, 1}}};
      if (!(cable(left) == cable(right))) return verdict(false, "braid relation fails");
      for (int i : {1, 2})
        for (int sign : {1, -1}) {
          const ColoredBraidWord r2{c, {{i, sign}, {i, -sign}}};
          if (!(cable(r2) == identityMorphism(c)))
            return verdict(false, "Reidemeister II fails at position " + std::to_string(i));
        }
      return verdict(true, "");
    });
  }
  for (const auto& [a, b] : p.grid({{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}))
    p.add("skein", {{"a", a}, {"b", b}}, 0, [a = a, b = b] {
      const SkeinReport r = verifySkein(a, b);
      return verdict(r.pass(), excerpt(r.digonWitness + r.crossingWitness));
    });
}

void homSuite(Planner& p) {
  const std::vector<std::array<int, 3>> triples{{2, 2, 2}, {2, 1, 2}, {3, 2, 3}};
  for (const auto& [a, b, d] : triples) {
    if (!p.matches(a, b)) continue;
    const int D = p.trunc(a, b);
    for (int k = 0; k < std::min(b, d); ++k)
      p.add("hom.lowest-chi", {{"a", a}, {"b", b}, {"d", d}, {"k", k}}, D, [a = a, b = b, d = d, k, D] {
        const auto src = GradedBimodule::of(Ladder{a, b, d - k, b - k}.web());
        const auto tgt = GradedBimodule::of(Ladder{a, b, d - k - 1, b - k - 1}.web());
        bool stable = true;
        for (int below = 0; below <= 4; ++below) {
          const HomSpace h = homSolve(src, tgt, a - d + 1 - below, D);
          stable = stable && h.stabilized();
          const int expected = below == 0 ? 1 : 0;
          if (h.dimension != expected)
            return verdict(false, "dimension " + std::to_string(h.dimension) + " in degree " +
                                      std::to_string(a - d + 1 - below));
        }
        return verdict(true, "", stable);
      });
    for (int k = 0; k <= std::min(b, d - 1); ++k)
      for (int q = 0; q <= 2 && k + q <= std::min(b, d - 1); ++q)
        p.add("hom.shifted-rickard", {{"a", a}, {"b", b}, {"d", d}, {"k", k}, {"p", q}}, D,
              [a = a, b = b, d = d, k, q, D] {
                const auto src = GradedBimodule::of(Ladder{a, b, d - k - 1, b - k}.web());
                const auto tgt = GradedBimodule::of(Ladder{a, b, d - k - q - 1, b - k - q}.web());
                const int lowest = q * (a - d + q + 1);
                bool stable = true;
                for (int below = 0; below <= 4; ++below) {
                  const HomSpace h = homSolve(src, tgt, lowest - below, D);
                  stable = stable && h.stabilized();
                  const int expected = below == 0 ? 1 : 0;
                  if (h.dimension != expected)
                    return verdict(false, "dimension " + std::to_string(h.dimension) + " in degree " +
                                              std::to_string(lowest - below));
                }
                return verdict(true, "", stable);
              });
  }
}

Outcome complexOutcome(const ChainComplex& x) {
  validate(x);
  auto w = dSquaredWitness(x);
  return verdict(!w, w ? excerpt(*w) : "");
}

void rickardSuite(Planner& p) {
  for (const auto& [a, b] : p.grid(upTo(2)))
    for (int positive : {1, 0}) {
      const int D = p.trunc(a, b);
      p.add("rickard.d2", {{"a", a}, {"b", b}, {"positive", positive}}, D, [a = a, b = b, positive, D] {
        const ChainComplex x = rickard(a, b, positive != 0, D);
        Outcome o = complexOutcome(x);
        if (o.status == CheckStatus::Pass && !(eulerCharacteristic(x) == eulerCrossing(a, b, positive != 0)))
          o = verdict(false, "Euler characteristic differs from the crossing class");
        return o;
      });
    }
  for (const auto& [a, b] : p.grid(upTo(2)))
    for (int ell = 0; ell <= 2; ++ell) {
      if ((a + b + ell) % 2) continue;
      const int c = (a + b + ell) / 2, d = a + b - c;
      if (d < 0) continue;
      const int D = p.trunc(a, b);
      p.add("shifted-rickard.d2", {{"a", a}, {"b", b}, {"ell", ell}}, D,
            [=] { return complexOutcome(shiftedRickard(c, d, a, b, D)); });
    }
  for (const auto& [c, d, a, b] : std::vector<std::array<int, 4>>{{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 1, 2, 2}}) {
    if (!p.matches(a, b)) continue;
    for (int r : {0, 1}) {
      const int D = p.trunc(a, b);
      p.add("rickard.dot-sliding", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"r", r}}, D,
            [c = c, d = d, a = a, b = b, r, D] {
              const ChainComplex x = shiftedRickard(c, d, a, b, D);
              const int degree = a - d + r + 1;
              const ComplexMap f = centralAction(x, [degree](const GradedBimodule& B) {
                return B.complete(degree, B.alphabet("X2") - B.alphabet("X1'"));
              });
              const HomotopyResult h = nullHomotopy(x, f, D);
              const bool ok = h.homotopy && commutator(x, x, *h.homotopy) == f;
              return verdict(ok, "no null-homotopy at this truncation", h.stabilized);
            });
    }
  }
  if (p.matches(1, 4)) {
    const int D = p.trunc(1, 4);
    p.add("rickard.contractible", {{"a", 1}, {"b", 4}, {"c", 3}, {"d", 2}}, D, [D] {
      const EquivalenceResult e = equivalenceCertificate(shiftedRickard(3, 2, 1, 4, D), ChainComplex{}, D);
      return verdict(e.certificate.has_value(), "no contraction found at this truncation", e.stabilized);
    });
  }
}

void kmcsSuite(Planner& p) {
  for (const auto& [a, b] : p.grid(upTo(2))) {
    const int D = p.trunc(a, b);
    p.add("kmcs.d2", {{"a", a}, {"b", b}}, D, [a = a, b = b, D] { return complexOutcome(kmcs(a, b, D)); });
    p.add("kmcs.euler", {{"a", a}, {"b", b}}, D, [a = a, b = b, D] {
      Laurent factor = Laurent::monomial(0);
      for (int i = 1; i <= b; ++i) factor *= Laurent::monomial(0) - Laurent::monomial(2 * i);
      const bool ok = eulerCharacteristic(kmcs(a, b, D)) == factor * eulerCharacteristic(shiftedRickard(a, b, a, b, D));
      return verdict(ok, "Euler characteristic is not the exterior factor times that of the shifted complex");
    });
  }
}

using Arrow = std::pair<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>>;

std::set<Arrow> arrowSet(const FilteredComplex& f, const ComplexMap& m) {
  std::set<Arrow> out;
  for (const auto& [k, g] : m.parts)
    out.insert({{f.blocks[k.first].k, f.zeta.objects[k.first].odd}, {f.blocks[k.second].k, f.zeta.objects[k.second].odd}});
  return out;
}

Outcome workedExample(int D) {
  const FilteredComplex f = zetaTransform(kmcs(2, 2, D), 2, 2);
  auto arrow = [](int k1, std::vector<int> j1, int k2, std::vector<int> j2) -> Arrow { return {{k1, j1}, {k2, j2}}; };
  const std::set<Arrow> vertical{arrow(2, {1, 2}, 2, {1}), arrow(2, {1, 2}, 2, {2}), arrow(2, {2}, 2, {}),
                                 arrow(2, {1}, 2, {}),     arrow(1, {1, 2}, 1, {2}), arrow(1, {1}, 1, {})};
  const std::set<Arrow> horizontal{arrow(2, {2}, 1, {1}), arrow(1, {2}, 0, {1}), arrow(1, {2}, 0, {2}),
                                   arrow(2, {1}, 1, {1}), arrow(2, {}, 1, {}),   arrow(1, {}, 0, {})};
  const std::set<Arrow> connecting{arrow(2, {1, 2}, 1, {1, 2}), arrow(1, {1, 2}, 0, {1, 2}), arrow(2, {2}, 1, {2}),
                                   arrow(1, {1}, 0, {1})};
  if (arrowSet(f, f.dv) != vertical) return verdict(false, "vertical arrows differ");
  if (arrowSet(f, f.dh) != horizontal) return verdict(false, "horizontal arrows differ");
  if (arrowSet(f, f.dc) != connecting) return verdict(false, "connecting arrows differ");
  for (int i = 0; i < f.zeta.size(); ++i)
    if (f.zeta.objects[i].odd.empty() && f.zeta.objects[i].shift.q != -4 + f.blocks[i].k)
      return verdict(false, "shift of " + f.zeta.objects[i].label);
  const PatternReport pattern = zetaPattern(f);
  return verdict(pattern.verticalEntries, pattern.witness);
}

void zetaSuite(Planner& p) {
  for (const auto& [a, b] : p.grid(upTo(2))) {
    const int D = p.trunc(a, b);
    p.add("zeta.invertible", {{"a", a}, {"b", b}}, D, [a = a, b = b, D] {
      const FilteredComplex f = zetaTransform(kmcs(a, b, D), a, b);
      const ComplexMap id = identityMap(f.xi);
      const bool ok = compose(f.fromXi, f.toXi) == id && compose(f.toXi, f.fromXi) == id &&
                      f.dv + f.dh + f.dc == f.zeta.differential;
      return verdict(ok, "basis change is not inverse to its substitution");
    });
    p.add("zeta.pattern", {{"a", a}, {"b", b}}, D, [a = a, b = b, D] {
      const PatternReport r = zetaPattern(zetaTransform(kmcs(a, b, D), a, b));
      return verdict(r.pass(), r.witness);
    });
    for (int s = 0; s <= b; ++s)
      for (int r = 1; r <= b; ++r)
        p.add("zeta.theta", {{"a", a}, {"b", b}, {"r", r}, {"s", s}}, D, [a = a, b = b, r, s, D] {
          const ThetaReport rep = thetaCheck(zetaTransform(kmcs(a, b, D), a, b), s, r);
          return verdict(rep.pass, rep.witness);
        });
  }
  if (p.matches(2, 2)) {
    const int D = p.trunc(2, 2);
    p.add("zeta.worked-example", {{"a", 2}, {"b", 2}}, D, [D] { return workedExample(D); });
  }
}

void mccsSuite(Planner& p) {
  for (const auto& [a, b] : p.grid(upTo(2))) {
    const int D = p.trunc(a, b);
    for (int s = 0; s <= b; ++s)
      p.add("mccs.d2", {{"a", a}, {"b", b}, {"s", s}}, D,
            [a = a, b = b, s, D] { return complexOutcome(mccs(zetaTransform(kmcs(a, b, D), a, b), s)); });
    p.add("mccs.structure", {{"a", a}, {"b", b}}, D, [a = a, b = b, D] {
      const StructureReport r = verifyMainStructure(zetaTransform(kmcs(a, b, D), a, b));
      return verdict(r.objects && r.blocks && r.triangular, r.witness);
    });
  }
  for (const auto& [a, b] : p.grid({{2, 1}})) {
    const int D = p.trunc(a, b);
    for (int l = 0; l <= b; ++l)
      p.add("mccs.row", {{"a", a}, {"b", b}, {"l", l}}, D, [a = a, b = b, l, D] {
        const ChainComplex r = row(zetaTransform(kmcs(a, b, D), a, b), l);
        const Laurent scale = Laurent::monomial(-(b - l), 0, (b - l) % 2 ? -1 : 1);
        const AlgebroidMorphism expected =
            scale * (webClass(Ladder{b, a, l, a - b + l}.web()) * eulerCrossing(a, b, true));
        return verdict(eulerCharacteristic(r) == expected, "row Euler characteristic differs");
      });
  }
  for (int r = 0; r <= 3; ++r)
    for (int s = 0; r + s <= 3; ++s)
      p.add("mccs.thick-digon", {{"r", r}, {"s", s}}, 0, [r, s] {
        auto dividedF = [](int a, int b, int x) {
          return Web::split(2, {a, b}, x, b - x).then(Web::merge(1, {a, x, b - x}));
        };
        for (int a = 0; a <= 1; ++a) {
          const int b = r + s;
          Laurent expected;
          for (const auto& alpha : partitionsInBox(r, s)) expected += Laurent::monomial(2 * alpha.size() - r * s);
          expected *= GradedBimodule::of(dividedF(a, b, r + s))->generatorSeries();
          const Laurent actual = GradedBimodule::of(dividedF(a, b, r).then(dividedF(a + r, b - r, s)))->generatorSeries();
          if (!(actual == expected)) return verdict(false, actual.str() + " vs " + expected.str());
        }
        return verdict(true, "");
      });
}

void fullTwistSuite(Planner& p) {
  if (p.matches(1, 1)) {
    const int D = p.pinned(12);
    p.add("fulltwist.certificate", {{"a", 1}, {"b", 1}}, D, [D] {
      const ChainComplex model = fullTwistModel(D);
      const ChainComplex twist = mccs(zetaTransform(kmcs(1, 1, D), 1, 1), 0);
      const EquivalenceResult e = equivalenceCertificate(twist, model, D);
      return verdict(e.certificate.has_value(), "no equivalence certificate at this truncation", e.stabilized);
    });
  }
  for (const auto& [a, b] : p.grid({{1, 1}, {2, 1}, {2, 2}})) {
    const int D = p.trunc(a, b);
    p.add("fulltwist.euler", {{"a", a}, {"b", b}}, D, [a = a, b = b, D] {
      const AlgebroidMorphism chi = eulerCharacteristic(mccs(zetaTransform(kmcs(a, b, D), a, b), 0));
      return verdict(chi == cable(ColoredBraidWord{{a, b}, {{1, 1}, {1, 1}}}), "differs from the cabled full twist");
    });
  }
}

void inducedSuite(Planner& p) {
  for (const auto& [a, b] : p.grid({{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}}))
    for (int k = 0; k <= std::min(a, b - 1); ++k)
      for (int s = 1; k + s <= b; ++s)
        p.add("induced.digon-removal", {{"a", a}, {"b", b}, {"k", k}, {"s", s}}, 0, [a = a, b = b, k, s] {
          auto w = digonRemovalWitness(digonRemoval(a, b, k, s));
          return verdict(!w, w.value_or(""));
        });
  for (const auto& [a, b, s] : std::vector<std::array<int, 3>>{{2, 2, 1}, {2, 1, 1}, {2, 2, 2}}) {
    if (!p.matches(a, b)) continue;
    const int D = p.trunc(a, b);
    p.add("induced.intertwiner", {{"a", a}, {"b", b}, {"s", s}}, D, [a = a, b = b, s = s, D] {
      const InducedReport r = verifyInduced(a, b, s, D);
      return verdict(r.inverses && r.intertwines, r.witness);
    });
  }
}

const std::map<std::string, std::function<void(Planner&)>>& suites() {
  static const std::map<std::string, std::function<void(Planner&)>> table{
      {"sym", symSuite},     {"hecke-skein", heckeSuite}, {"hom-dims", homSuite},
      {"rickard", rickardSuite}, {"kmcs", kmcsSuite},     {"zeta", zetaSuite},
      {"mccs", mccsSuite},   {"fulltwist", fullTwistSuite}, {"induced", inducedSuite}};
  return table;
}

}  // namespace

std::string statusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotStabilized: return "not-stabilized";
  }
  return "fail";
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names{"sym",  "hecke-skein", "hom-dims",  "rickard", "kmcs",
                                              "zeta", "mccs",        "fulltwist", "induced", "all"};
  return names;
}

bool isSuite(const std::string& name) {
  const auto& n = suiteNames();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<CheckReport> runSuite(const std::string& suite, const RunOptions& options) {
  if (!isSuite(suite)) throw std::invalid_argument("unknown suite " + suite);
  Planner planner(options);
  for (const auto& [name, build] : suites())
    if (suite == "all" || suite == name) build(planner);

  std::vector<CheckReport> reports(planner.tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < planner.tasks.size(); i = next++) {
      const Task& t = planner.tasks[i];
      const auto start = std::chrono::steady_clock::now();
      Outcome o;
      try {
        o = t.run();
      } catch (const NotStabilizedError& e) {
        o = {CheckStatus::NotStabilized, e.what()};
      } catch (const std::exception& e) {
        o = {CheckStatus::Fail, std::string("exception: ") + e.what()};
      }
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      reports[i] = {t.check, t.params, o.status, o.witness, t.truncation, static_cast<long>(ms.count())};
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::sort(reports.begin(), reports.end(), [](const CheckReport& x, const CheckReport& y) {
    return std::tie(x.check, x.params) < std::tie(y.check, y.params);
  });
  return reports;
}

int exitCode(const std::vector<CheckReport>& reports) {
  bool unstable = false;
  for (const auto& r : reports) {
    if (r.status == CheckStatus::Fail) return 1;
    unstable = unstable || r.status == CheckStatus::NotStabilized;
  }
  return unstable ? 3 : 0;
}

std::string schemaHeader() { return nlohmann::json{{"schema", "skein-lab/1"}}.dump(); }

std::string toJsonLine(const CheckReport& r, bool withTiming) {
  nlohmann::json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["status"] = statusName(r.status);
  j["witness"] = r.witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.witness);
  j["truncation"] = r.truncation;
  if (withTiming) j["elapsed_ms"] = r.elapsedMs;
  return j.dump();
}

std::string toText(const CheckReport& r) {
  std::string line = statusName(r.status) + "  " + r.check;
  for (const auto& [k, v] : r.params) line += " " + k + "=" + std::to_string(v);
  if (r.truncation > 0) line += " D=" + std::to_string(r.truncation);
  line += " (" + std::to_string(r.elapsedMs) + " ms)";
  if (!r.witness.empty()) line += "\n    " + r.witness;
  return line;
}

}  // namespace skein
