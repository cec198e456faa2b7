#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyform/polygonal.hpp"

namespace polyform {

/// An m-gonal form: m together with non-decreasing positive coefficients.
/// An empty coefficient tuple is the empty form (represents only 0).
struct MGonalForm {
  i64 m = 3;
  std::vector<i64> coeffs;

  bool operator==(const MGonalForm&) const = default;
  i64 rank() const { return static_cast<i64>(coeffs.size()); }
  i64 coeff_sum() const;
  std::string to_string() const;  // e.g. "m=8 [1,2,4]"

  /// Throws std::invalid_argument unless coefficients are positive and
  /// non-decreasing and m >= 3.
  void validate() const;
};

struct TruantResult {
  std::optional<i64> truant;  // empty means B-universal
  i64 witness_bound = 0;

  bool universal() const { return !truant.has_value(); }
};

/// Bit-vector of integers in [0, bound] represented by a form. Immutable
/// after construction; escalation derives a child table without rescanning
/// the parent's coefficients.
class RepTable {
 public:
  static RepTable build(const MGonalForm& form, i64 bound);

  /// Table for this form with one more coefficient appended.
  /// Throws std::invalid_argument if `a` breaks the non-decreasing order.
  RepTable extended(i64 a) const;

  const MGonalForm& form() const { return form_; }
  i64 bound() const { return bound_; }
  bool test(i64 n) const;

  /// Least unrepresented integer in [1, bound], or B-universal.
  TruantResult truant() const;

  /// True iff every integer in [1, upto] is represented (upto <= bound).
  bool represents_all_up_to(i64 upto) const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  void serialize(std::ostream& os) const;
  static RepTable deserialize(std::istream& is);  // throws std::runtime_error

 private:
  RepTable() = default;
  void fold_coefficient(i64 a);

  MGonalForm form_;
  i64 bound_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class DecomposeStatus { found, absent, inconclusive };

struct Decomposition {
  DecomposeStatus status = DecomposeStatus::absent;
  std::vector<i64> witness;  // indices x_1..x_n when status == found
};

/// Exhaustive witness search: finds x with sum a_i * P_m(x_i) == n, each
/// |x_i| <= search_radius. "absent" is claimed only when the radius provably
/// covers every value <= n for every variable; otherwise "inconclusive".
Decomposition decompose(const MGonalForm& form, i64 n, i64 search_radius = 100000);

}  // namespace polyform
