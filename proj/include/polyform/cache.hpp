#pragma once

#include <filesystem>
#include <optional>

#include "polyform/rep_table.hpp"

namespace polyform {

/// On-disk store of representability tables, keyed by (m, bound, coeffs).
/// Corrupted or version-mismatched entries are dropped and recomputed.
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir);

  /// Cache directory from POLYFORM_CACHE, or empty when unset.
  static std::optional<TableCache> from_environment();

  std::optional<RepTable> load(const MGonalForm& form, i64 bound) const;
  void store(const RepTable& table) const;
  RepTable get_or_build(const MGonalForm& form, i64 bound) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path entry_path(const MGonalForm& form, i64 bound) const;
  std::filesystem::path dir_;
};

}  // namespace polyform
