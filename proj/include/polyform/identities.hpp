#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyform/polygonal.hpp"

namespace polyform {

/// Asserts sum a_i * P_m(x_i) == u*(m-2) + v for every m >= 3.
/// Holds iff sum a_i * P_3(x_i - 1) == u and sum a_i * x_i == v.
struct IdentityClaim {
  std::string label;
  std::vector<std::pair<i64, i64>> terms;  // (coefficient, argument)
  i64 u = 0;
  i64 v = 0;
};

struct IdentityCheck {
  bool pass = false;
  i64 u_residual = 0;  // computed minus claimed, both zero on pass
  i64 v_residual = 0;
};

IdentityCheck verify_affine_identity(const IdentityClaim& claim);

struct IdentitySet {
  std::string name;
  std::vector<IdentityClaim> claims;
};

/// Every identity set shipped with the library, in publication order.
const std::vector<IdentitySet>& builtin_identity_sets();

struct SetReport {
  std::string name;
  int total = 0;
  int passed = 0;
  std::vector<std::string> failures;
};

struct BuiltinReport {
  std::vector<SetReport> sets;
  bool residue_cover_pass = false;  // the {32,...,39} complete-residue claim
  bool all_pass = false;
};

BuiltinReport verify_builtin_sets();

enum class WindowSign { positive, negative };

/// One row of the finite search: P3(x1-1) + 2 P3(x2-1) + 4 P3(x3-1) == A,
/// x1 + 2 x2 + 4 x3 == r (mod 8), functional in [0,100) or (-100,0].
struct ResidueSystemClaim {
  i64 a = 0;
  i64 r = 0;
  WindowSign window = WindowSign::positive;
};

/// Complete witness set; the enumeration box x_i - 1 in [-21, 21] covers all
/// solutions for A <= 160 (P3(21) = 231 > 160).
std::vector<std::array<i64, 3>> solve_residue_system(const ResidueSystemClaim& claim);

enum class PairClass { pos_only, neg_only, both, neither };

struct SGridEntry {
  i64 a = 0;
  i64 r = 0;
  PairClass cls = PairClass::neither;
};

struct SDiffEntry {
  i64 a = 0;
  i64 r = 0;
  std::string detail;  // which side disagrees and what was computed
};

struct SGridReport {
  std::vector<SGridEntry> grid;            // all 161 x 8 pairs, row-major
  std::set<std::pair<i64, i64>> pos_only;  // computed S+
  std::set<std::pair<i64, i64>> neg_only;  // computed S-
  std::vector<SDiffEntry> diff;            // vs. the transcribed tables
  std::vector<std::string> transcription_notes;  // malformed/duplicate tokens
};

SGridReport recompute_s_sets();

/// Published S+/S- tables transcribed verbatim, typos included. Malformed
/// tokens are preserved as strings and surface in transcription_notes.
const std::vector<std::string>& published_s_plus_tokens();
const std::vector<std::string>& published_s_minus_tokens();

}  // namespace polyform
