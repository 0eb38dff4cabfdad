#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skein/bimodeng.hpp"
#include "skein/heckecore.hpp"

namespace skein {

// One chain group: a shifted bimodule q^{shift.q} t^{shift.t} B. The t part
// of the shift is the homological degree.
struct ChainObject {
  BimodulePtr bimodule;
  GradingShift shift;
  std::string label;
  // Index of the object this one was built from (column of a Koszul or
  // zeta complex), and the sorted indices of its exterior generators.
  int base = -1;
  std::vector<int> odd;
};

// A map between complexes of weight q^qweight t^tweight, stored as a sparse
// matrix of bimodule maps indexed by (source object, target object). The
// component between objects with shifts s1 and s2 has bimodule degree
// qweight + s1.q - s2.q. Missing components are zero.
struct ComplexMap {
  int qweight = 0;
  int tweight = 0;
  std::map<std::pair<int, int>, BimoduleMap> parts;

  void add(int from, int to, const BimoduleMap& f);
  const BimoduleMap* find(int from, int to) const;
  bool isZero() const;
  // Drops components that are zero.
  ComplexMap pruned() const;
  ComplexMap operator+(const ComplexMap& o) const;
  ComplexMap operator-(const ComplexMap& o) const;
  ComplexMap scaled(const Rational& c) const;
  bool operator==(const ComplexMap& o) const;
  // Restriction to components whose source and target both lie in `keep`.
  ComplexMap restricted(const std::vector<int>& keep) const;
};

// g after f.
ComplexMap compose(const ComplexMap& g, const ComplexMap& f);

struct ChainComplex {
  std::vector<ChainObject> objects;
  ComplexMap differential{0, 1, {}};

  int size() const { return static_cast<int>(objects.size()); }
  int add(ChainObject o);
};

// Bimodule degree of a component of weight q^qweight from `from` to `to`.
int componentDegree(const ChainObject& from, const ChainObject& to, int qweight);

// Throws if a component has the wrong bimodule degree or t-degree, or joins
// bimodules with different boundaries.
void validate(const ChainComplex& x, const ComplexMap& f, const ChainComplex& target);
void validate(const ChainComplex& x);

ChainComplex shifted(ChainComplex x, GradingShift s);
ComplexMap identityMap(const ChainComplex& x);
// Sub-complex on the listed objects (in that order), keeping the components
// of the differential between them.
ChainComplex subquotient(const ChainComplex& x, const std::vector<int>& keep);

// d_B f - (-1)^{tweight(f)} f d_A.
ComplexMap commutator(const ChainComplex& a, const ChainComplex& b, const ComplexMap& f);
// Empty optional iff d^2 = 0; otherwise a description of a nonzero component.
std::optional<std::string> dSquaredWitness(const ChainComplex& x);

// Central action of a symmetric function of the boundary alphabets, built
// per object by `f`, as an endomorphism of weight q^{deg f}.
ComplexMap centralAction(const ChainComplex& x, const std::function<SymExpr(const GradedBimodule&)>& f);

// ---------------------------------------------------------------------------
// Linear algebra over spaces of complex maps.

// Basis of all maps A -> B of weight q^qweight t^tweight, each supported on a
// single pair of objects. `stabilized` is false if some Hom space between
// objects changed dimension between D and D+2.
struct MapSpace {
  std::vector<ComplexMap> basis;
  bool stabilized = true;
};
MapSpace mapSpace(const ChainComplex& a, const ChainComplex& b, int qweight, int tweight, int truncation);
// Cached homSolve between two bimodules.
const HomSpace& cachedHom(const BimodulePtr& b1, const BimodulePtr& b2, int qdegree, int truncation);

// Coefficients c with sum c_i span_i = target, if any.
std::optional<std::vector<Rational>> solveCombination(const std::vector<ComplexMap>& span, const ComplexMap& target);
// Basis of {c : sum c_i images_i = 0}.
std::vector<std::vector<Rational>> kernel(const std::vector<ComplexMap>& images);
ComplexMap combine(const std::vector<ComplexMap>& span, const std::vector<Rational>& c, int qweight, int tweight);

// ---------------------------------------------------------------------------
// Complexes.

// Two-strand Rickard complex (positive) or its inverse (negative), on the
// ladders C^k = F^(a-k) E^(b-k) with lowest-degree differentials.
ChainComplex rickard(int a, int b, bool positive, int truncation);
// sum_k q^{-k(a-d+1)} t^k F^(d-k) E^(b-k) with lowest-degree differentials.
ChainComplex shiftedRickard(int c, int d, int a, int b, int truncation);
// X tensor an exterior algebra on b generators of weight q^{2i} t^-1,
// twisted by sum_i h_i(X2 - X2') xi_i^*.
ChainComplex koszul(const ChainComplex& x, int b);
ChainComplex kmcs(int a, int b, int truncation);

// The shifted Koszul complex q^{b(a-b-1)} t^b KMCS_{a,b} in the zeta basis,
// with its differential split by the (k, l, s) grading.
struct FilteredComplex {
  int a = 0, b = 0;
  ChainComplex xi;    // shifted, exterior basis xi
  ChainComplex zeta;  // same objects, exterior basis zeta
  ComplexMap toXi;    // zeta coordinates -> xi coordinates
  ComplexMap fromXi;  // inverse
  ComplexMap dv, dh, dc;
  struct Block {
    int k, l, s;
  };
  std::vector<Block> blocks;  // per object

  ComplexMap theta(int r) const;  // Theta_r in the zeta basis
};
FilteredComplex zetaTransform(const ChainComplex& kmcsComplex, int a, int b);

// Checks on the computed zeta differential: d^c raises s by one while d^v
// and d^h keep it; a component (k,I) -> (k-1,J) is nonzero exactly when
// |I| = |J| and every i_p - j_p is 0 or 1; each vertical component that
// drops zeta_j is a multiple of e_j(M) - e_j(M').
struct PatternReport {
  bool triangular = true;
  bool acrossPattern = true;
  bool verticalEntries = true;
  std::string witness;
  bool pass() const { return triangular && acrossPattern && verticalEntries; }
};
PatternReport zetaPattern(const FilteredComplex& f);

// Subquotient with fixed s, shifted by q^{-s(b-1)} t^{-s}; objects keep the
// order of the filtered complex.
ChainComplex mccs(const FilteredComplex& f, int s);
std::vector<int> mccsObjects(const FilteredComplex& f, int s);
// Row l of the s = 0 part, with the horizontal differential only.
ChainComplex row(const FilteredComplex& f, int l);

// [dv + dh, Theta_r^v] = h_r(X2 - X2') on the s-subquotient.
struct ThetaReport {
  bool pass = false;
  bool splitClean = true;  // Theta_r only has vertical and connecting parts
  std::string witness;
};
ThetaReport thetaCheck(const FilteredComplex& f, int s, int r);

// Solves [d, eta] = f for an endomorphism f of t-weight 0.
struct HomotopyResult {
  std::optional<ComplexMap> homotopy;
  bool stabilized = true;
};
HomotopyResult nullHomotopy(const ChainComplex& x, const ComplexMap& f, int truncation);

struct EquivalenceCertificate {
  ComplexMap f, g;    // A -> B, B -> A
  ComplexMap hA, hB;  // g f - id = [d, hA], f g - id = [d, hB]
};
struct EquivalenceResult {
  std::optional<EquivalenceCertificate> certificate;
  bool stabilized = true;
};
EquivalenceResult equivalenceCertificate(const ChainComplex& a, const ChainComplex& b, int truncation);

// q (S.M) -> q^-1 t (S.M) -> q^-2 t^2 id on (1,1), with maps x2 - x2' and
// the lowest-degree map to the identity.
ChainComplex fullTwistModel(int truncation);

// Wraps every object of an endo-complex of (a, l) with a split of l+s into
// (l, s) below and the reverse merge above.
ChainComplex inducedI(int s, const ChainComplex& x);

// Digon removal for W_k on (a,b) with an s-colored strand split off B.
// Source: I^(s)(W'_k) where W'_k is the ladder on (a, b-s). Components are
// indexed by the s-subsets T of {k+1..b}.
struct DigonRemoval {
  int a = 0, b = 0, k = 0, s = 0;
  std::vector<std::vector<int>> subsets;
  std::vector<BimoduleMap> forward;   // I^(s)(W'_k) -> W_k, one per subset
  std::vector<BimoduleMap> backward;  // W_k -> I^(s)(W'_k)
};
DigonRemoval digonRemoval(int a, int b, int k, int s);

// Empty iff forward_T backward_T' = delta id and sum_T backward_T forward_T = id.
std::optional<std::string> digonRemovalWitness(const DigonRemoval& dr);

// Builds the intertwiner mccs(a,b,s) <- inducedI(s, mccs(a,b-s,0)) from the
// digon removal maps, allowing one nonzero scalar per component.
struct InducedReport {
  bool inverses = false;       // mu mu^-1 = id both ways on every W_k
  bool intertwines = false;    // some all-nonzero rescaling is a chain map
  int kernelDimension = 0;
  std::string witness;
};
InducedReport verifyInduced(int a, int b, int s, int truncation);

// Alternating sum of the shifted web classes.
AlgebroidMorphism eulerCharacteristic(const ChainComplex& x);

// Object-by-object and block-by-block comparison of the filtered complex
// with tw_{dc}( sum_s q^{s(b-1)} t^s mccs(a,b,s) ).
struct StructureReport {
  bool objects = false;
  bool blocks = false;
  bool triangular = false;
  std::string witness;
};
StructureReport verifyMainStructure(const FilteredComplex& f);

// Exterior basis helpers.
std::vector<std::vector<int>> subsetsBySize(int n);
std::string oddLabel(const std::string& letter, const std::vector<int>& odd);

}  // namespace skein
