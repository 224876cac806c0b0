#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galg/linalg.hpp"
#include "galg/shriek.hpp"

namespace galg {

// Finite-dimensional graded left module over a shriek algebra (full or
// C-slice). Component degrees run lo .. lo + dims.size() - 1; act[g][i] maps
// the component of degree lo+i to the one of degree lo+i+1 (whose dimension
// is 0 past the end).
struct GradedModule {
  ShriekHandle algebra;
  int lo = 0;
  std::vector<int> dims;
  std::vector<std::vector<Matrix>> act;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  int dim_at(int d) const {
    return d < lo || d > hi() ? 0 : dims[static_cast<size_t>(d - lo)];
  }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  // Action of letter g from degree d; total over all degrees.
  Matrix action(int g, int d) const;
  // Action of a basis word of the algebra from degree d.
  Matrix word_action(const DWord& w, int d) const;
};

GradedModule zero_module(const ShriekHandle& a);
// k concentrated in one degree, all actions zero.
GradedModule simple_module(const ShriekHandle& a, int degree = 0);
// Free module on generators in the given degrees; the regular module is
// free_module(a, {0}). Component basis: generator-major, then the algebra
// basis word, matching resolution boundary bookkeeping.
GradedModule free_module(const ShriekHandle& a, const std::vector<int>& gen_degrees);
// Drops zero components at both ends (pure zero module: dims empty, lo 0).
GradedModule trim_module(const GradedModule& m);
bool same_graded_dims(const GradedModule& a, const GradedModule& b);

// Shape validation throws; the returned strings list violated quadratic
// relations (empty iff m is a genuine module).
std::vector<std::string> check_module(const GradedModule& m);

struct CoverResult {
  GradedModule cover;             // free on gen_degrees
  std::vector<int> gen_degrees;   // ascending
  // Unit-vector generator picks per degree: lifts[i] spans a complement of
  // the radical component of degree m.lo + i inside m.
  std::vector<Matrix> lifts;
  // cover_map[i]: cover component of degree cover.lo + i -> module component
  // of the same degree; certified surjective.
  std::vector<Matrix> cover_map;
};

CoverResult projective_cover(const GradedModule& m);

struct SyzygyResult {
  GradedModule omega;
  // embed[i]: omega component of degree omega.lo + i into the cover
  // component of the same degree.
  std::vector<Matrix> embed;
};

SyzygyResult syzygy_of_cover(const CoverResult& c);
GradedModule syzygy(const GradedModule& m);

// One homological step: free ranks with generation degrees, and for steps
// past the first the boundary matrix over the algebra, entry (j, k) mapping
// generator j of this step into generator k of the previous one.
struct ResolutionStep {
  std::vector<int> gen_degrees;
  std::vector<std::vector<std::vector<std::pair<DWord, Scalar>>>> boundary;
};

struct ResolutionData {
  std::vector<ResolutionStep> steps;  // steps.size() == max_step + 1
  bool minimal = false;               // no boundary entry has a scalar part
};

ResolutionData resolve(const GradedModule& m, int max_step);

struct ExtRow {
  int step = 0;
  int total = 0;
  std::vector<int> degrees;  // generation degrees with multiplicity, ascending
};

// dim Ext^i(M, k) with generator gradings, read off a minimal resolution.
std::vector<ExtRow> ext_dims(const GradedModule& m, int max_step);

// Bounded linearity certificate; requires m generated in a single degree.
bool is_koszul(const GradedModule& m, int max_step);

// b (x) m over the slice, components M_d + M_{d-1}; result certified.
GradedModule induce(const ShriekHandle& b, const GradedModule& m);
// Forget the z action.
GradedModule restrict_to_c(const GradedModule& m);
// Vanishing of the slice syzygy of the restriction.
bool is_f_local(const GradedModule& m);

GradedModule twist_by_nakayama(const GradedModule& m, const NakayamaMap& s);
// Endpoint of the almost split sequence ending at m; rejects projectives.
GradedModule ar_translate_endpoint(const GradedModule& m, const NakayamaMap& s);

// Degree-wise invertible intertwiner between modules over the same algebra,
// found by solving the commutation system and searching scalar combinations
// with a fixed seed; nullopt when none exists (or none was found).
std::optional<std::vector<Matrix>> find_graded_isomorphism(const GradedModule& m,
                                                           const GradedModule& n,
                                                           unsigned seed = 1);

// Module file header: the presentation file it targets and which algebra
// (full or slice) the actions live over.
struct ModuleHeader {
  std::string algebra;
  bool over_c = false;
};

ModuleHeader module_file_header(const std::string& text);
// Full parse against a resolved algebra handle; strict shape checks.
GradedModule parse_module(const std::string& text, const ShriekHandle& a);
std::string print_module(const GradedModule& m, const std::string& algebra_name);

}  // namespace galg
