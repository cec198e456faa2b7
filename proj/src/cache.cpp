#include "polyform/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace polyform {

TableCache::TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<TableCache> TableCache::from_environment() {
  const char* env = std::getenv("POLYFORM_CACHE");
  if (!env || !*env) return std::nullopt;
  return TableCache(env);
}

std::filesystem::path TableCache::entry_path(const MGonalForm& form,
                                             i64 bound) const {
  std::ostringstream name;
  name << "m" << form.m << "_B" << bound;
  for (i64 a : form.coeffs) name << "_" << a;
  name << ".reptable";
  return dir_ / name.str();
}

std::optional<RepTable> TableCache::load(const MGonalForm& form, i64 bound) const {
  auto path = entry_path(form, bound);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    RepTable t = RepTable::deserialize(in);
    if (t.form() != form || t.bound() != bound) return std::nullopt;
    return t;
  } catch (const std::runtime_error& e) {
    std::cerr << "polyform: ignoring cache entry " << path << " (" << e.what()
              << ")\n";
    return std::nullopt;
  }
}

void TableCache::store(const RepTable& table) const {
  auto path = entry_path(table.form(), table.bound());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  table.serialize(out);
}

RepTable TableCache::get_or_build(const MGonalForm& form, i64 bound) const {
  if (auto hit = load(form, bound)) return *hit;
  RepTable t = RepTable::build(form, bound);
  store(t);
  return t;
}

}  // namespace polyform
